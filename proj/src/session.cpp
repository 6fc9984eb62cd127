#include "emoact/session.hpp"

namespace emoact {

namespace proto = protocol;

std::string_view to_string(Phase phase) {
    switch (phase) {
        case Phase::NotStarted: return "not_started";
        case Phase::Narrating: return "narrating";
        case Phase::AwaitingChoice: return "awaiting_choice";
        case Phase::Finished: return "finished";
    }
    return "not_started";
}

namespace {

struct Rejected {
    std::string code;
    std::string message;
};

// Applies one event to a scratch copy of the state.
class Step {
public:
    Step(const SessionConfig& config, const StoryGraph& story, SessionState& state,
         const proto::ClientMessage& event)
        : config_(config), story_(story), s_(state), event_(event) {}

    std::vector<proto::ServerMessage> run() {
        if (event_.seq != s_.next_seq) {
            throw Rejected{"out-of-order", "expected seq " + std::to_string(s_.next_seq) + ", got " +
                                               std::to_string(event_.seq)};
        }
        if (event_.t < s_.last_t) {
            throw Rejected{"time-regression", "timestamp " + std::to_string(event_.t) + " is before " +
                                                  std::to_string(s_.last_t)};
        }
        std::visit([this](const auto& p) { on(p); }, event_.payload);
        s_.next_seq += 1;
        s_.last_t = event_.t;
        return std::move(out_);
    }

private:
    void on(const proto::StartSession& start) {
        if (s_.phase != Phase::NotStarted) throw Rejected{"already-started", "session already started"};
        if (start.story && *start.story != story_.id()) {
            throw Rejected{"story-mismatch", "session plays '" + story_.id() + "', not '" + *start.story + "'"};
        }
        s_.impression = Impression::from(config_.model.initial_impression);
        refresh();
        s_.phase = Phase::Narrating;
        enter(story_.start());
        speak();
        state_update("start");
    }

    void on(const proto::Choice& choice) {
        if (s_.phase != Phase::AwaitingChoice) {
            throw Rejected{"no-decision-pending", "no decision is waiting for a choice"};
        }
        AdvanceResult adv;
        try {
            adv = advance(story_, s_.cursor, choice.option);
        } catch (const StoryError& e) {
            throw Rejected{"unknown-option", e.violations().front().message};
        }
        s_.impression = apply_choice(s_.impression, *adv.expected, config_.model.gains);
        refresh();
        state_update("option");
        enter(adv.next);
        cue(CueTrigger::ChoiceMade);
        s_.phase = Phase::Narrating;
        speak();
        state_update("choice");
    }

    void on(const proto::Perception& p) {
        if (s_.phase == Phase::NotStarted) throw Rejected{"not-started", "start_session must come first"};
        try {
            s_.impression = apply_perception(s_.impression, p.cue, config_.model.gains);
        } catch (const DomainError& e) {
            throw Rejected{"invalid-perception", e.what()};
        }
        refresh();
        state_update("perception");
    }

    void on(const proto::Tick&) {
        if (s_.phase == Phase::NotStarted) throw Rejected{"not-started", "start_session must come first"};
        if (s_.phase == Phase::Narrating) speak();
        state_update("tick");
    }

    void refresh() {
        s_.emotion = config_.model.emotion_of(s_.impression.value);
        s_.label = label_emotion(s_.emotion, config_.model.catalog);
    }

    void enter(const std::string& node_id) {
        s_.cursor = node_id;
        s_.sentence = 0;
        if (const auto* forced = story_.node(node_id).forced()) {
            s_.impression = apply_choice(s_.impression, forced->expected, config_.model.gains);
            refresh();
            state_update("forced");
        }
    }

    // Speaks the next sentence, walking through linear nodes as needed.
    void speak() {
        while (true) {
            const Node& node = story_.node(s_.cursor);
            if (s_.sentence < node.narration.size()) {
                const auto index = s_.sentence++;
                emit(proto::Narration{node.id, static_cast<std::int64_t>(index), node.narration[index]});
                cue(CueTrigger::SentenceSpoken);
                if (s_.sentence == node.narration.size()) settle(node);
                return;
            }
            if (node.is_decision() || node.is_terminal()) {
                settle(node);
                return;
            }
            enter(node.linear()->next);
        }
    }

    // Called once a node's narration is exhausted.
    void settle(const Node& node) {
        if (const auto* d = node.decision()) {
            if (s_.phase == Phase::AwaitingChoice) return;
            s_.phase = Phase::AwaitingChoice;
            proto::DecisionRequest req{node.id, d->prompt, {}};
            for (const auto& o : d->options) req.options.push_back({o.id, o.text});
            emit(std::move(req));
        } else if (node.is_terminal()) {
            s_.phase = Phase::Finished;
        }
    }

    void cue(CueTrigger trigger) {
        auto c = select_cues(s_.label.label, trigger, event_.t, config_.policy, config_.colors,
                             config_.animations, s_.expression);
        if (c) emit(proto::Cue{std::move(*c)});
    }

    void state_update(std::string cause) {
        emit(proto::StateUpdate{std::move(cause), s_.impression.value, s_.emotion, s_.label.label,
                                s_.label.similarity, s_.cursor, std::string(to_string(s_.phase))});
    }

    template <typename T>
    void emit(T payload) {
        out_.push_back(proto::ServerMessage{event_.seq, event_.t, std::move(payload)});
    }

    const SessionConfig& config_;
    const StoryGraph& story_;
    SessionState& s_;
    const proto::ClientMessage& event_;
    std::vector<proto::ServerMessage> out_;
};

}  // namespace

Session::Session(SessionConfig config, std::shared_ptr<const StoryGraph> story)
    : config_(std::move(config)), story_(std::move(story)) {
    if (!story_) throw DomainError("session needs a story");
    state_.expression = ExpressionMemory(config_.seed);
    state_.impression = Impression::from(config_.model.initial_impression);
    state_.cursor = story_->start();
}

HandleResult Session::handle(const proto::ClientMessage& event) {
    SessionState scratch = state_;
    try {
        auto outputs = Step(config_, *story_, scratch, event).run();
        state_ = std::move(scratch);
        return {true, std::move(outputs)};
    } catch (const Rejected& r) {
        return {false, {proto::ServerMessage{event.seq, event.t, proto::Error{r.code, r.message}}}};
    }
}

}  // namespace emoact
