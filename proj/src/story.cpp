#include "emoact/story.hpp"

#include <climits>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace emoact {

using nlohmann::json;

const ForcedBranch* Node::forced() const {
    const auto* lin = linear();
    return lin && lin->forced ? &*lin->forced : nullptr;
}

const ChoiceOption* Node::option(std::string_view option_id) const {
    const auto* dec = decision();
    if (!dec) return nullptr;
    for (const auto& opt : dec->options) {
        if (opt.id == option_id) return &opt;
    }
    return nullptr;
}

namespace {

std::string summarize(const std::vector<StoryViolation>& violations) {
    std::ostringstream os;
    os << "story invalid:";
    for (const auto& v : violations) {
        os << "\n  [" << v.code << "]";
        if (!v.node_id.empty()) os << " " << v.node_id << ":";
        os << " " << v.message;
    }
    return os.str();
}

}  // namespace

StoryError::StoryError(std::vector<StoryViolation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

bool StoryError::has(std::string_view code) const {
    for (const auto& v : violations_) {
        if (v.code == code) return true;
    }
    return false;
}

const Node& StoryGraph::node(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw StoryError({{"dangling", id, "no such node"}});
    return it->second;
}

namespace {

class Parser {
public:
    std::vector<StoryViolation> violations;

    void fail(std::string code, std::string node, std::string message) {
        violations.push_back({std::move(code), std::move(node), std::move(message)});
    }

    std::optional<std::string> string_field(const json& obj, const char* key, const std::string& node,
                                            bool required = true) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail("schema", node, std::string("missing field '") + key + "'");
            return std::nullopt;
        }
        if (!it->is_string()) {
            fail("schema", node, std::string("field '") + key + "' must be a string");
            return std::nullopt;
        }
        return it->get<std::string>();
    }

    std::optional<ExpectedSigns> signs(const json& obj, const std::string& node) {
        auto it = obj.find("expected");
        if (it == obj.end() || !it->is_array() || it->size() != 3) {
            fail("schema", node, "'expected' must be an array of three signs");
            return std::nullopt;
        }
        std::array<int, 3> s{};
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& v = (*it)[i];
            if (!v.is_number_integer() || v.get<int>() < -1 || v.get<int>() > 1) {
                fail("schema", node, "expected signs must be -1, 0 or 1");
                return std::nullopt;
            }
            s[i] = v.get<int>();
        }
        return ExpectedSigns::from_ints(s[0], s[1], s[2]);
    }

    std::optional<EmotionLabel> annotation(const json& obj, const std::string& node) {
        auto name = string_field(obj, "expected_emotion", node);
        if (!name) return std::nullopt;
        auto label = parse_label(*name);
        if (!label || *label == EmotionLabel::Neutral) {
            fail("annotation", node, "expected_emotion must be Anger, Fear, Happiness or Sadness, got '" +
                                         *name + "'");
            return std::nullopt;
        }
        return label;
    }

    std::optional<Node> node(const json& obj) {
        if (!obj.is_object()) {
            fail("schema", "", "node must be an object");
            return std::nullopt;
        }
        auto id = string_field(obj, "id", "");
        if (!id) return std::nullopt;
        Node n;
        n.id = *id;

        if (auto it = obj.find("narration"); it != obj.end()) {
            if (!it->is_array()) {
                fail("schema", n.id, "'narration' must be an array of strings");
            } else {
                for (const auto& line : *it) {
                    if (!line.is_string()) {
                        fail("schema", n.id, "'narration' must be an array of strings");
                        break;
                    }
                    n.narration.push_back(line.get<std::string>());
                }
            }
        }

        auto kind = string_field(obj, "kind", n.id);
        if (!kind) return std::nullopt;
        if (*kind == "decision") {
            DecisionNode d;
            d.prompt = string_field(obj, "prompt", n.id).value_or("");
            auto opts = obj.find("options");
            if (opts == obj.end() || !opts->is_array()) {
                fail("schema", n.id, "decision needs an 'options' array");
                return std::nullopt;
            }
            for (const auto& o : *opts) {
                if (!o.is_object()) {
                    fail("schema", n.id, "option must be an object");
                    continue;
                }
                ChoiceOption opt;
                opt.id = string_field(o, "id", n.id).value_or("");
                opt.text = string_field(o, "text", n.id).value_or("");
                opt.next = string_field(o, "next", n.id).value_or("");
                if (auto s = signs(o, n.id)) opt.expected = *s;
                if (auto l = annotation(o, n.id)) opt.expected_emotion = *l;
                d.options.push_back(std::move(opt));
            }
            if (d.options.size() != 2) {
                fail("option-arity", n.id,
                     "decision has " + std::to_string(d.options.size()) + " options, expected 2");
            }
            if (d.options.size() == 2 && d.options[0].id == d.options[1].id) {
                fail("duplicate-id", n.id, "both options share id '" + d.options[0].id + "'");
            }
            n.kind = std::move(d);
        } else if (*kind == "linear") {
            LinearNode lin;
            lin.next = string_field(obj, "next", n.id).value_or("");
            if (auto f = obj.find("forced"); f != obj.end()) {
                if (!f->is_object()) {
                    fail("schema", n.id, "'forced' must be an object");
                } else {
                    ForcedBranch fb;
                    if (auto s = signs(*f, n.id)) fb.expected = *s;
                    if (auto l = annotation(*f, n.id)) fb.expected_emotion = *l;
                    fb.note = string_field(*f, "note", n.id, false).value_or("");
                    lin.forced = std::move(fb);
                }
            }
            n.kind = std::move(lin);
        } else if (*kind == "terminal") {
            n.kind = TerminalNode{};
        } else {
            fail("schema", n.id, "unknown node kind '" + *kind + "'");
            return std::nullopt;
        }

        if (!n.is_terminal() && n.narration.empty()) {
            fail("empty-narration", n.id, "linear and decision nodes need narration");
        }
        return n;
    }
};

std::vector<std::string> successors(const Node& n) {
    if (const auto* d = n.decision()) {
        std::vector<std::string> out;
        for (const auto& o : d->options) out.push_back(o.next);
        return out;
    }
    if (const auto* l = n.linear()) return {l->next};
    return {};
}

}  // namespace

StoryGraph load_story(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw StoryError({{"schema", "", std::string("not valid JSON: ") + e.what()}});
    }
    Parser parser;
    if (!doc.is_object()) throw StoryError({{"schema", "", "story document must be an object"}});

    auto schema = parser.string_field(doc, "schema", "");
    if (schema && *schema != kStorySchema) {
        parser.fail("schema", "", "unsupported schema '" + *schema + "', expected " + kStorySchema);
    }
    StoryGraph graph;
    graph.id_ = parser.string_field(doc, "id", "").value_or("");
    graph.title_ = parser.string_field(doc, "title", "", false).value_or(graph.id_);
    graph.start_ = parser.string_field(doc, "start", "").value_or("");

    auto nodes = doc.find("nodes");
    if (nodes == doc.end() || !nodes->is_array()) {
        parser.fail("schema", "", "'nodes' must be an array");
        throw StoryError(parser.violations);
    }
    for (const auto& obj : *nodes) {
        auto n = parser.node(obj);
        if (!n) continue;
        if (graph.nodes_.contains(n->id)) {
            parser.fail("duplicate-id", n->id, "node id used twice");
            continue;
        }
        graph.nodes_.emplace(n->id, std::move(*n));
    }
    if (!parser.violations.empty()) throw StoryError(parser.violations);

    // Structural checks need every node to be present.
    if (!graph.nodes_.contains(graph.start_)) {
        parser.fail("dangling", graph.start_, "start node does not exist");
    }
    for (const auto& [id, n] : graph.nodes_) {
        for (const auto& next : successors(n)) {
            if (!graph.nodes_.contains(next)) parser.fail("dangling", id, "edge to unknown node '" + next + "'");
        }
    }
    if (!parser.violations.empty()) throw StoryError(parser.violations);

    // Cycle detection with three-color DFS; also marks reachability.
    enum class Mark { White, Grey, Black };
    std::map<std::string, Mark> mark;
    for (const auto& [id, _] : graph.nodes_) mark[id] = Mark::White;
    std::function<void(const std::string&)> visit = [&](const std::string& id) {
        mark[id] = Mark::Grey;
        for (const auto& next : successors(graph.nodes_.at(id))) {
            if (mark[next] == Mark::Grey) {
                parser.fail("cycle", id, "edge back to '" + next + "' closes a cycle");
            } else if (mark[next] == Mark::White) {
                visit(next);
            }
        }
        mark[id] = Mark::Black;
    };
    visit(graph.start_);
    for (const auto& [id, m] : mark) {
        if (m == Mark::White) parser.fail("unreachable", id, "node cannot be reached from start");
    }
    if (!parser.violations.empty()) throw StoryError(parser.violations);

    // Decision count along every path (DAG, so memoize on min/max).
    std::map<std::string, std::pair<int, int>> span;
    std::function<std::pair<int, int>(const std::string&)> count = [&](const std::string& id) {
        if (auto it = span.find(id); it != span.end()) return it->second;
        const Node& n = graph.nodes_.at(id);
        const int here = n.is_decision() ? 1 : 0;
        std::pair<int, int> result{here, here};
        auto next = successors(n);
        if (!next.empty()) {
            result = {INT_MAX, INT_MIN};
            for (const auto& s : next) {
                auto [lo, hi] = count(s);
                result.first = std::min(result.first, lo + here);
                result.second = std::max(result.second, hi + here);
            }
        }
        span[id] = result;
        return result;
    };
    auto [lo, hi] = count(graph.start_);
    if (lo != kDecisionsPerPath || hi != kDecisionsPerPath) {
        parser.fail("decision-count", graph.start_,
                    "paths contain between " + std::to_string(lo) + " and " + std::to_string(hi) +
                        " decision points, expected exactly " + std::to_string(kDecisionsPerPath));
    }
    if (!parser.violations.empty()) throw StoryError(parser.violations);

    graph.source_ = doc.dump();
    return graph;
}

StoryGraph load_story_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw StoryError({{"not-found", "", "story not found: " + path.string()}});
    std::stringstream buf;
    buf << in.rdbuf();
    return load_story(buf.str());
}

AdvanceResult advance(const StoryGraph& graph, const std::string& cursor,
                      const std::optional<std::string>& choice) {
    const Node& n = graph.node(cursor);
    AdvanceResult result;
    result.narration = n.narration;
    if (const auto* d = n.decision()) {
        if (!choice) throw StoryError({{"choice", cursor, "a choice is required at a decision point"}});
        const ChoiceOption* opt = n.option(*choice);
        if (!opt) throw StoryError({{"choice", cursor, "unknown option '" + *choice + "'"}});
        (void)d;
        result.expected = opt->expected;
        result.next = opt->next;
    } else if (const auto* l = n.linear()) {
        if (choice) throw StoryError({{"choice", cursor, "no choice is offered here"}});
        result.next = l->next;
    } else {
        if (choice) throw StoryError({{"choice", cursor, "the story has finished"}});
        result.next = cursor;
        result.finished = true;
    }
    return result;
}

std::string StoryPath::describe() const {
    std::string out;
    for (const auto& s : steps) {
        if (!out.empty()) out += " > ";
        out += s.node;
        out += ":";
        out += s.option ? *s.option : std::string("forced");
    }
    return out;
}

std::vector<StoryPath> enumerate_paths(const StoryGraph& graph) {
    std::vector<StoryPath> paths;
    StoryPath current;
    std::function<void(const std::string&)> walk = [&](const std::string& id) {
        const Node& n = graph.node(id);
        if (const auto* f = n.forced()) {
            current.steps.push_back({id, std::nullopt, f->expected, f->expected_emotion});
        }
        if (const auto* d = n.decision()) {
            for (const auto& opt : d->options) {
                current.choices.push_back(opt.id);
                current.steps.push_back({id, opt.id, opt.expected, opt.expected_emotion});
                walk(opt.next);
                current.steps.pop_back();
                current.choices.pop_back();
            }
        } else if (const auto* l = n.linear()) {
            walk(l->next);
        } else {
            paths.push_back(current);
        }
        if (n.forced()) current.steps.pop_back();
    };
    walk(graph.start());
    return paths;
}

StoryAnalysis analyze_story(const StoryGraph& graph, const AffectModel& model) {
    StoryAnalysis analysis;
    std::set<EmotionLabel> annotated;
    std::set<std::pair<std::string, std::string>> reported;  // (node, option) pipeline mismatches

    const Impression fresh = Impression::from(model.initial_impression);
    for (auto& path : enumerate_paths(graph)) {
        PathAnalysis pa;
        Impression running = fresh;
        bool has_anger = false;
        bool has_fear = false;
        for (const auto& step : path.steps) {
            StepOutcome out{step, {}, {}};
            out.from_identity = model.label_of(apply_choice(fresh, step.expected, model.gains).value);
            running = apply_choice(running, step.expected, model.gains);
            out.on_path = model.label_of(running.value);

            annotated.insert(step.expected_emotion);
            has_anger |= step.expected_emotion == EmotionLabel::Anger;
            has_fear |= step.expected_emotion == EmotionLabel::Fear;

            const std::string where = step.node + ":" + step.option.value_or("forced");
            if (out.from_identity.label != step.expected_emotion &&
                reported.insert({step.node, step.option.value_or("")}).second) {
                analysis.violations.push_back(
                    {"pipeline-mismatch", step.node,
                     where + " is annotated " + std::string(to_string(step.expected_emotion)) +
                         " but the pipeline yields " + std::string(to_string(out.from_identity.label))});
            }
            const bool strict = step.expected_emotion == EmotionLabel::Anger ||
                                step.expected_emotion == EmotionLabel::Fear;
            if (strict && out.on_path.label != step.expected_emotion) {
                analysis.violations.push_back(
                    {"path-mismatch", step.node,
                     where + " yields " + std::string(to_string(out.on_path.label)) + " instead of " +
                         std::string(to_string(step.expected_emotion)) + " on path " + path.describe()});
            }
            pa.outcomes.push_back(std::move(out));
        }
        if (!has_anger) {
            analysis.violations.push_back({"anger-coverage", "", "anger unreachable on path " + path.describe()});
        }
        if (!has_fear) {
            analysis.violations.push_back({"fear-coverage", "", "fear unreachable on path " + path.describe()});
        }
        pa.path = std::move(path);
        analysis.paths.push_back(std::move(pa));
    }
    for (EmotionLabel l : {EmotionLabel::Anger, EmotionLabel::Fear, EmotionLabel::Happiness, EmotionLabel::Sadness}) {
        if (!annotated.contains(l)) {
            analysis.violations.push_back(
                {"emotion-coverage", "", std::string(to_string(l)) + " never appears in the story"});
        }
    }
    return analysis;
}

}  // namespace emoact
