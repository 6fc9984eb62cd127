#include <doctest.h>

#include <set>

#include "emoact/story.hpp"

using namespace emoact;

namespace {

std::filesystem::path source(const std::string& rel) { return std::filesystem::path(EMOACT_SOURCE_DIR) / rel; }

StoryError load_error(const std::string& rel) {
    try {
        load_story_file(source(rel));
    } catch (const StoryError& e) {
        return e;
    }
    FAIL("expected a StoryError for " << rel);
    return StoryError({});
}

std::string codes(const StoryAnalysis& a) {
    std::string s;
    for (const auto& v : a.violations) s += v.code + ": " + v.message + "\n";
    return s;
}

}  // namespace

TEST_CASE("shipped stories load with 16 four-decision paths and pass analysis") {
    for (const char* id : {"detective", "wizard"}) {
        CAPTURE(id);
        const StoryGraph g = load_story_file(source(std::string("stories/") + id + ".json"));
        CHECK(g.id() == id);
        const auto paths = enumerate_paths(g);
        CHECK(paths.size() == 16);
        std::set<std::vector<std::string>> distinct;
        for (const auto& p : paths) {
            CHECK(p.choices.size() == kDecisionsPerPath);
            distinct.insert(p.choices);
        }
        CHECK(distinct.size() == 16);

        const StoryAnalysis a = analyze_story(g, AffectModel{});
        CHECK_MESSAGE(a.violations.empty(), codes(a));
        std::set<EmotionLabel> seen;
        for (const auto& pa : a.paths) {
            bool anger = false, fear = false;
            for (const auto& o : pa.outcomes) {
                seen.insert(o.step.expected_emotion);
                CHECK(o.from_identity.label == o.step.expected_emotion);
                anger |= o.step.expected_emotion == EmotionLabel::Anger;
                fear |= o.step.expected_emotion == EmotionLabel::Fear;
            }
            CHECK(anger);
            CHECK(fear);
        }
        CHECK(seen.size() == 4);
    }
}

TEST_CASE("malformed stories report their violations") {
    CHECK(load_error("tests/fixtures/three_options.json").has("option-arity"));
    CHECK(load_error("tests/fixtures/cyclic.json").has("cycle"));
    CHECK(load_error("tests/fixtures/dangling.json").has("dangling"));
    CHECK(load_error("tests/fixtures/bad_schema.json").has("schema"));
    CHECK_THROWS_AS(load_story("not json"), StoryError);
    CHECK(load_error("tests/fixtures/does_not_exist.json").has("not-found"));
}

TEST_CASE("a story without Fear on some path fails analysis") {
    const StoryGraph g = load_story_file(source("tests/fixtures/no_fear.json"));
    const StoryAnalysis a = analyze_story(g, AffectModel{});
    bool found = false;
    for (const auto& v : a.violations) {
        if (v.code == "fear-coverage") {
            found = true;
            CHECK(v.message.rfind("fear unreachable on path", 0) == 0);
        }
    }
    CHECK(found);
}

TEST_CASE("advance") {
    const StoryGraph g = load_story_file(source("stories/detective.json"));

    SUBCASE("happy option carries positive Evaluation") {
        auto r = advance(g, "hs1", std::string("adventure"));
        REQUIRE(r.expected);
        CHECK(r.expected->e == Sign::Positive);
        CHECK(r.next == "market_together");
        CHECK_FALSE(r.finished);
        CHECK(r.narration == g.node("hs1").narration);
    }
    SUBCASE("letting the robot act leads to a forced Anger failure") {
        auto r = advance(g, "ang", std::string("robot_decrypts"));
        const ForcedBranch* forced = g.node(r.next).forced();
        REQUIRE(forced);
        CHECK(forced->expected_emotion == EmotionLabel::Anger);
    }
    SUBCASE("linear node has no signs") {
        auto r = advance(g, "intro", std::nullopt);
        CHECK_FALSE(r.expected);
        CHECK(r.next == "hs1");
    }
    SUBCASE("terminal finishes") {
        CHECK(advance(g, "end", std::nullopt).finished);
    }
    SUBCASE("wrong or missing choices are rejected") {
        CHECK_THROWS_AS(advance(g, "hs1", std::nullopt), StoryError);
        CHECK_THROWS_AS(advance(g, "hs1", std::string("fly")), StoryError);
        CHECK_THROWS_AS(advance(g, "intro", std::string("adventure")), StoryError);
    }
}
