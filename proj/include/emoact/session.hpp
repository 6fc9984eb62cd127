#pragma once
// One story playthrough as a serial event loop:
// perception / choice -> impression -> emotion -> expression cues.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "emoact/config.hpp"
#include "emoact/expression.hpp"
#include "emoact/impression.hpp"
#include "emoact/protocol.hpp"
#include "emoact/story.hpp"

namespace emoact {

enum class Phase { NotStarted, Narrating, AwaitingChoice, Finished };

std::string_view to_string(Phase phase);

struct SessionState {
    Impression impression;
    EpaVector emotion;
    LabelResult label;
    std::string cursor;
    std::size_t sentence = 0;  // next sentence of the cursor node to speak
    Phase phase = Phase::NotStarted;
    std::int64_t next_seq = 0;
    std::int64_t last_t = 0;
    ExpressionMemory expression;
};

struct HandleResult {
    bool accepted = false;
    std::vector<protocol::ServerMessage> outputs;
};

class Session {
public:
    Session(SessionConfig config, std::shared_ptr<const StoryGraph> story);

    // Rejected events (bad seq, clock regression, choice without a pending
    // decision, unknown option, invalid perception) yield one error message
    // and leave the state untouched.
    HandleResult handle(const protocol::ClientMessage& event);

    const SessionState& state() const { return state_; }
    const SessionConfig& config() const { return config_; }
    const StoryGraph& story() const { return *story_; }

private:
    SessionConfig config_;
    std::shared_ptr<const StoryGraph> story_;
    SessionState state_;
};

}  // namespace emoact
