#pragma once
// Drives a session along a fixed list of choices: one tick per sentence at
// a fixed logical interval, answering each decision from the list.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "emoact/protocol.hpp"
#include "emoact/session.hpp"

namespace emoact {

using EventSink = std::function<void(const protocol::ClientMessage&, const HandleResult&)>;

struct AutoplayOptions {
    std::int64_t sentence_interval_ms = 5000;
    std::int64_t choice_delay_ms = 5000;  // pause between a decision prompt and the answer
    std::size_t max_events = 10000;
};

// Returns every event sent, in order. Throws DomainError if an event is
// rejected, choices run out, or the story does not finish.
std::vector<protocol::ClientMessage> autoplay(Session& session, const std::vector<std::string>& choices,
                                              const AutoplayOptions& options = {}, const EventSink& sink = {});

}  // namespace emoact
