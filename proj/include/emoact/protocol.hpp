#pragma once
// Wire protocol: one JSON object per line, every object tagged "v": 1.
// Field reference: docs/protocol.md.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "emoact/epa.hpp"
#include "emoact/expression.hpp"
#include "emoact/impression.hpp"

namespace emoact::protocol {

inline constexpr int kVersion = 1;

class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// client -> server

struct StartSession {
    std::optional<std::string> story;
    std::optional<DisplayMode> policy;
    std::optional<std::uint64_t> seed;
    friend bool operator==(const StartSession&, const StartSession&) = default;
};

struct Choice {
    std::string option;
    friend bool operator==(const Choice&, const Choice&) = default;
};

struct Perception {
    PerceptionCue cue;
    friend bool operator==(const Perception&, const Perception&) = default;
};

struct Tick {
    friend bool operator==(const Tick&, const Tick&) = default;
};

struct ClientMessage {
    std::int64_t seq = 0;
    std::int64_t t = 0;  // logical clock, milliseconds
    std::variant<StartSession, Choice, Perception, Tick> payload;
    friend bool operator==(const ClientMessage&, const ClientMessage&) = default;
};

// server -> client

struct Narration {
    std::string node;
    std::int64_t index = 0;
    std::string text;
};

struct OptionView {
    std::string id;
    std::string text;
};

struct DecisionRequest {
    std::string node;
    std::string prompt;
    std::vector<OptionView> options;
};

struct Cue {
    ExpressionCue cue;
};

struct StateUpdate {
    std::string cause;  // start, perception, option, forced, choice, tick
    EpaVector impression;
    EpaVector emotion;
    EmotionLabel label = EmotionLabel::Neutral;
    std::optional<double> similarity;
    std::string cursor;
    std::string phase;  // narrating, awaiting_choice, finished
};

struct Error {
    std::string code;
    std::string message;
};

struct ServerMessage {
    std::int64_t seq = 0;
    std::int64_t t = 0;
    std::variant<Narration, DecisionRequest, Cue, StateUpdate, Error> payload;
};

nlohmann::json to_json(const ClientMessage& msg);
nlohmann::json to_json(const ServerMessage& msg);

// Throws ProtocolError on a missing/unknown type, wrong version or bad field.
ClientMessage client_from_json(const nlohmann::json& j);
ServerMessage server_from_json(const nlohmann::json& j);

// Parses one line; when allow_missing_seq is set (scripts), absent "seq"
// and "t" come back as -1 for the caller to fill in.
ClientMessage parse_client_line(const std::string& line, bool allow_missing_seq = false);

std::string encode_line(const nlohmann::json& j);

}  // namespace emoact::protocol
