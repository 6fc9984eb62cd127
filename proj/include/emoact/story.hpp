#pragma once
// Branching collaborative stories: narration, two-way decision points and
// forced branches, each annotated with the impression it should produce.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "emoact/affect_model.hpp"
#include "emoact/epa.hpp"
#include "emoact/impression.hpp"

namespace emoact {

inline constexpr const char* kStorySchema = "emoact-story/1";
inline constexpr int kDecisionsPerPath = 4;

struct ChoiceOption {
    std::string id;
    std::string text;
    ExpectedSigns expected;
    EmotionLabel expected_emotion = EmotionLabel::Happiness;
    std::string next;
};

struct DecisionNode {
    std::string prompt;
    std::vector<ChoiceOption> options;
};

// Expected signs applied on entry without asking the user.
struct ForcedBranch {
    ExpectedSigns expected;
    EmotionLabel expected_emotion = EmotionLabel::Anger;
    std::string note;
};

struct LinearNode {
    std::string next;
    std::optional<ForcedBranch> forced;
};

struct TerminalNode {};

struct Node {
    std::string id;
    std::vector<std::string> narration;
    std::variant<DecisionNode, LinearNode, TerminalNode> kind;

    bool is_decision() const { return std::holds_alternative<DecisionNode>(kind); }
    bool is_terminal() const { return std::holds_alternative<TerminalNode>(kind); }
    const DecisionNode* decision() const { return std::get_if<DecisionNode>(&kind); }
    const LinearNode* linear() const { return std::get_if<LinearNode>(&kind); }
    const ForcedBranch* forced() const;
    const ChoiceOption* option(std::string_view option_id) const;
};

struct StoryViolation {
    std::string code;     // schema, duplicate-id, dangling, cycle, unreachable, option-arity, ...
    std::string node_id;  // empty when not tied to a node
    std::string message;
};

class StoryError : public std::runtime_error {
public:
    explicit StoryError(std::vector<StoryViolation> violations);
    const std::vector<StoryViolation>& violations() const { return violations_; }
    bool has(std::string_view code) const;

private:
    std::vector<StoryViolation> violations_;
};

class StoryGraph {
public:
    const std::string& id() const { return id_; }
    const std::string& title() const { return title_; }
    const std::string& start() const { return start_; }
    const std::map<std::string, Node>& nodes() const { return nodes_; }
    const Node& node(const std::string& id) const;

    // The document this graph was loaded from (compact JSON text).
    const std::string& source() const { return source_; }

private:
    friend StoryGraph load_story(std::string_view document);
    std::string id_;
    std::string title_;
    std::string start_;
    std::map<std::string, Node> nodes_;
    std::string source_;
};

// Parses and validates; throws StoryError listing every violation found.
StoryGraph load_story(std::string_view document);
StoryGraph load_story_file(const std::filesystem::path& path);

struct AdvanceResult {
    std::vector<std::string> narration;
    std::string next;
    std::optional<ExpectedSigns> expected;
    bool finished = false;
};

// Moves past `cursor`. A choice is required exactly at decision nodes;
// a wrong or missing option throws StoryError("choice").
AdvanceResult advance(const StoryGraph& graph, const std::string& cursor,
                      const std::optional<std::string>& choice);

// One impression-changing step along a path.
struct PathStep {
    std::string node;
    std::optional<std::string> option;  // none for forced branches
    ExpectedSigns expected;
    EmotionLabel expected_emotion;
};

struct StoryPath {
    std::vector<std::string> choices;  // option ids in order
    std::vector<PathStep> steps;
    std::string describe() const;      // "hs1:adventure > hs2:talk > ..."
};

// Every start-to-terminal path. Requires a validated graph.
std::vector<StoryPath> enumerate_paths(const StoryGraph& graph);

struct StepOutcome {
    PathStep step;
    LabelResult from_identity;  // signs applied to a fresh identity-initialized impression
    LabelResult on_path;        // signs applied to the impression accumulated along the path
};

struct PathAnalysis {
    StoryPath path;
    std::vector<StepOutcome> outcomes;
};

struct StoryAnalysis {
    std::vector<PathAnalysis> paths;
    std::vector<StoryViolation> violations;  // empty when the story is fit to ship
};

// Emotion coverage: Anger and Fear annotated on every path, all four basic
// emotions annotated somewhere, and every annotation reproduced by the
// impression -> emotion -> label pipeline from the identity. Anger and
// Fear steps must also hold on the accumulated impression of every path.
StoryAnalysis analyze_story(const StoryGraph& graph, const AffectModel& model);

}  // namespace emoact
