#include "emoact/protocol.hpp"

namespace emoact::protocol {

using nlohmann::json;

namespace {

json epa(const EpaVector& v) { return json::array({v.e, v.p, v.a}); }

EpaVector epa_from(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ProtocolError("EPA field must be [E, P, A]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

EmotionLabel label_from(const json& j) {
    auto l = parse_label(j.get<std::string>());
    if (!l) throw ProtocolError("unknown label " + j.dump());
    return *l;
}

void check_version(const json& j) {
    if (!j.is_object()) throw ProtocolError("message must be a JSON object");
    auto v = j.find("v");
    if (v == j.end() || !v->is_number_integer() || v->get<int>() != kVersion) {
        throw ProtocolError("message must carry \"v\": " + std::to_string(kVersion));
    }
}

template <typename F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ProtocolError(std::string("malformed message: ") + e.what());
    }
}

}  // namespace

json to_json(const ClientMessage& msg) {
    json j = {{"v", kVersion}, {"seq", msg.seq}, {"t", msg.t}};
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, StartSession>) {
                j["type"] = "start_session";
                if (p.story) j["story"] = *p.story;
                if (p.policy) j["policy"] = to_string(*p.policy);
                if (p.seed) j["seed"] = *p.seed;
            } else if constexpr (std::is_same_v<T, Choice>) {
                j["type"] = "choice";
                j["option"] = p.option;
            } else if constexpr (std::is_same_v<T, Perception>) {
                j["type"] = "perception";
                std::visit(
                    [&](const auto& c) {
                        using C = std::decay_t<decltype(c)>;
                        if constexpr (std::is_same_v<C, UserEmotion>) {
                            j["kind"] = "user_emotion";
                            j["valence"] = c.valence;
                        } else if constexpr (std::is_same_v<C, Gaze>) {
                            j["kind"] = "gaze";
                            j["on_agent"] = c.on_agent;
                        } else {
                            j["kind"] = "proximity";
                            j["distance_m"] = c.distance_m;
                        }
                    },
                    p.cue);
            } else {
                j["type"] = "tick";
            }
        },
        msg.payload);
    return j;
}

json to_json(const ServerMessage& msg) {
    json j = {{"v", kVersion}, {"seq", msg.seq}, {"t", msg.t}};
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Narration>) {
                j["type"] = "narration";
                j["node"] = p.node;
                j["index"] = p.index;
                j["text"] = p.text;
            } else if constexpr (std::is_same_v<T, DecisionRequest>) {
                j["type"] = "decision_request";
                j["node"] = p.node;
                j["prompt"] = p.prompt;
                j["options"] = json::array();
                for (const auto& o : p.options) j["options"].push_back({{"id", o.id}, {"text", o.text}});
            } else if constexpr (std::is_same_v<T, Cue>) {
                j["type"] = "expression_cue";
                j["label"] = to_string(p.cue.label);
                j["eye_color"] = p.cue.eye_color;
                j["animation"] = p.cue.animation ? json(*p.cue.animation) : json(nullptr);
                j["trigger"] = to_string(p.cue.trigger);
            } else if constexpr (std::is_same_v<T, StateUpdate>) {
                j["type"] = "state_update";
                j["cause"] = p.cause;
                j["impression"] = epa(p.impression);
                j["emotion"] = epa(p.emotion);
                j["label"] = to_string(p.label);
                j["similarity"] = p.similarity ? json(*p.similarity) : json(nullptr);
                j["cursor"] = p.cursor;
                j["phase"] = p.phase;
            } else {
                j["type"] = "error";
                j["code"] = p.code;
                j["message"] = p.message;
            }
        },
        msg.payload);
    return j;
}

ClientMessage client_from_json(const json& j) {
    check_version(j);
    return guarded([&] {
        ClientMessage msg;
        msg.seq = j.at("seq").get<std::int64_t>();
        msg.t = j.at("t").get<std::int64_t>();
        const auto type = j.at("type").get<std::string>();
        if (type == "start_session") {
            StartSession s;
            if (j.contains("story")) s.story = j["story"].get<std::string>();
            if (j.contains("policy")) {
                s.policy = parse_display_mode(j["policy"].get<std::string>());
                if (!s.policy) throw ProtocolError("policy must be 'low' or 'high'");
            }
            if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
            msg.payload = s;
        } else if (type == "choice") {
            msg.payload = Choice{j.at("option").get<std::string>()};
        } else if (type == "perception") {
            const auto kind = j.at("kind").get<std::string>();
            if (kind == "user_emotion") {
                msg.payload = Perception{UserEmotion{j.at("valence").get<double>()}};
            } else if (kind == "gaze") {
                msg.payload = Perception{Gaze{j.at("on_agent").get<bool>()}};
            } else if (kind == "proximity") {
                msg.payload = Perception{Proximity{j.at("distance_m").get<double>()}};
            } else {
                throw ProtocolError("unknown perception kind '" + kind + "'");
            }
        } else if (type == "tick") {
            msg.payload = Tick{};
        } else {
            throw ProtocolError("unknown client message type '" + type + "'");
        }
        return msg;
    });
}

ServerMessage server_from_json(const json& j) {
    check_version(j);
    return guarded([&] {
        ServerMessage msg;
        msg.seq = j.at("seq").get<std::int64_t>();
        msg.t = j.at("t").get<std::int64_t>();
        const auto type = j.at("type").get<std::string>();
        if (type == "narration") {
            msg.payload = Narration{j.at("node").get<std::string>(), j.at("index").get<std::int64_t>(),
                                    j.at("text").get<std::string>()};
        } else if (type == "decision_request") {
            DecisionRequest d{j.at("node").get<std::string>(), j.at("prompt").get<std::string>(), {}};
            for (const auto& o : j.at("options")) {
                d.options.push_back({o.at("id").get<std::string>(), o.at("text").get<std::string>()});
            }
            msg.payload = std::move(d);
        } else if (type == "expression_cue") {
            ExpressionCue c;
            c.label = label_from(j.at("label"));
            c.eye_color = j.at("eye_color").get<std::string>();
            if (!j.at("animation").is_null()) c.animation = j["animation"].get<std::string>();
            c.timestamp_ms = msg.t;
            c.trigger = j.at("trigger").get<std::string>() == "sentence" ? CueTrigger::SentenceSpoken
                                                                         : CueTrigger::ChoiceMade;
            msg.payload = Cue{std::move(c)};
        } else if (type == "state_update") {
            StateUpdate s;
            s.cause = j.at("cause").get<std::string>();
            s.impression = epa_from(j.at("impression"));
            s.emotion = epa_from(j.at("emotion"));
            s.label = label_from(j.at("label"));
            if (!j.at("similarity").is_null()) s.similarity = j["similarity"].get<double>();
            s.cursor = j.at("cursor").get<std::string>();
            s.phase = j.at("phase").get<std::string>();
            msg.payload = std::move(s);
        } else if (type == "error") {
            msg.payload = Error{j.at("code").get<std::string>(), j.at("message").get<std::string>()};
        } else {
            throw ProtocolError("unknown server message type '" + type + "'");
        }
        return msg;
    });
}

ClientMessage parse_client_line(const std::string& line, bool allow_missing_seq) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ProtocolError(std::string("not valid JSON: ") + e.what());
    }
    if (allow_missing_seq && j.is_object()) {
        if (!j.contains("seq")) j["seq"] = -1;
        if (!j.contains("t")) j["t"] = -1;
    }
    return client_from_json(j);
}

std::string encode_line(const json& j) { return j.dump() + "\n"; }

}  // namespace emoact::protocol
