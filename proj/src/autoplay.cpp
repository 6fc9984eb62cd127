#include "emoact/autoplay.hpp"

namespace emoact {

std::vector<protocol::ClientMessage> autoplay(Session& session, const std::vector<std::string>& choices,
                                              const AutoplayOptions& options, const EventSink& sink) {
    std::vector<protocol::ClientMessage> sent;
    std::int64_t t = session.state().last_t;
    std::size_t next_choice = 0;

    auto send = [&](protocol::ClientMessage msg) {
        msg.seq = session.state().next_seq;
        msg.t = t;
        HandleResult result = session.handle(msg);
        if (sink) sink(msg, result);
        if (!result.accepted) {
            const auto& err = std::get<protocol::Error>(result.outputs.front().payload);
            throw DomainError("autoplay event rejected: " + err.code + ": " + err.message);
        }
        sent.push_back(std::move(msg));
    };

    if (session.state().phase == Phase::NotStarted) send({0, 0, protocol::StartSession{}});

    while (session.state().phase != Phase::Finished) {
        if (sent.size() >= options.max_events) throw DomainError("autoplay exceeded the event budget");
        if (session.state().phase == Phase::AwaitingChoice) {
            if (next_choice >= choices.size()) throw DomainError("autoplay ran out of choices");
            t += options.choice_delay_ms;
            send({0, 0, protocol::Choice{choices[next_choice++]}});
        } else {
            t += options.sentence_interval_ms;
            send({0, 0, protocol::Tick{}});
        }
    }
    return sent;
}

}  // namespace emoact
