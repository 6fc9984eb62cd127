#include <doctest.h>

#include "emoact/config.hpp"
#include "emoact/protocol.hpp"

using namespace emoact;
using nlohmann::json;
namespace proto = emoact::protocol;

TEST_CASE("client messages round-trip through JSON lines") {
    const std::vector<proto::ClientMessage> msgs{
        {0, 0, proto::StartSession{"wizard", DisplayMode::HighFrequency, 42u}},
        {1, 10, proto::StartSession{}},
        {2, 20, proto::Choice{"adventure"}},
        {3, 30, proto::Perception{UserEmotion{-0.6}}},
        {4, 40, proto::Perception{Gaze{false}}},
        {5, 50, proto::Perception{Proximity{1.25}}},
        {6, 60, proto::Tick{}},
    };
    for (const auto& m : msgs) {
        const std::string line = proto::encode_line(proto::to_json(m));
        CHECK(line.find('\n') == line.size() - 1);
        CHECK(json::parse(line).at("v") == 1);
        CHECK(proto::parse_client_line(line) == m);
    }
}

TEST_CASE("server messages round-trip") {
    const std::vector<proto::ServerMessage> msgs{
        {1, 2, proto::Narration{"intro", 0, "Hello."}},
        {1, 2, proto::DecisionRequest{"hs1", "Which way?", {{"a", "A"}, {"b", "B"}}}},
        {1, 2, proto::Cue{{EmotionLabel::Anger, "Red", "Anger2", 2, CueTrigger::ChoiceMade}}},
        {1, 2, proto::StateUpdate{"tick", {1, 2, 3}, {1, 0, 1.5}, EmotionLabel::Anger, 0.866, "hs1", "narrating"}},
        {1, 2, proto::StateUpdate{"tick", {0, 0, 0}, {0, 0, 0}, EmotionLabel::Neutral, std::nullopt, "x", "finished"}},
        {1, 2, proto::Error{"out-of-order", "expected seq 0"}},
    };
    for (const auto& m : msgs) {
        const json j = proto::to_json(m);
        CHECK(proto::to_json(proto::server_from_json(j)) == j);
    }
}

TEST_CASE("protocol errors") {
    CHECK_THROWS_AS(proto::parse_client_line("{"), proto::ProtocolError);
    CHECK_THROWS_AS(proto::parse_client_line(R"({"v":2,"type":"tick","seq":0,"t":0})"), proto::ProtocolError);
    CHECK_THROWS_AS(proto::parse_client_line(R"({"v":1,"type":"dance","seq":0,"t":0})"), proto::ProtocolError);
    CHECK_THROWS_AS(proto::parse_client_line(R"({"v":1,"type":"tick"})"), proto::ProtocolError);
    CHECK_THROWS_AS(proto::parse_client_line(R"({"v":1,"type":"choice","seq":0,"t":0})"), proto::ProtocolError);
    CHECK_THROWS_AS(proto::parse_client_line(R"({"v":1,"type":"perception","kind":"smell","seq":0,"t":0})"),
                    proto::ProtocolError);
    auto lenient = proto::parse_client_line(R"({"v":1,"type":"tick"})", true);
    CHECK(lenient.seq == -1);
    CHECK(lenient.t == -1);
}

TEST_CASE("config defaults, round trip and file loading") {
    const SessionConfig defaults;
    CHECK(defaults.model.identity.value == kDefaultIdentity);
    CHECK(defaults.policy.animation_cooldown_ms == 30000);
    CHECK(config_from_json(json::object()).model.identity.value == kDefaultIdentity);

    SessionConfig c;
    c.seed = 123;
    c.policy.mode = DisplayMode::HighFrequency;
    c.model.generation.delta = 0.75;
    const json j = config_to_json(c);
    CHECK(j.at("schema") == kConfigSchema);
    CHECK(config_to_json(config_from_json(j)) == j);

    const auto file = std::filesystem::path(EMOACT_SOURCE_DIR) / "config" / "engine.json";
    const SessionConfig loaded = load_config_file(file);
    CHECK(std::filesystem::exists(loaded.stories_dir / "detective.json"));

    CHECK_THROWS_AS(config_from_json(json{{"schema", "emoact-config/2"}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"policy", {{"mode", "sometimes"}}}}), ConfigError);
}
