#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "emoact/epa.hpp"
#include "oracles.hpp"

using namespace emoact;

TEST_CASE("clamp_epa clips each component to [-4, 4]") {
    CHECK(clamp_epa({0, 0, 0}) == EpaVector{0, 0, 0});
    CHECK(clamp_epa({9, 6, 7}) == EpaVector{4, 4, 4});
    CHECK(clamp_epa({-4.5, 3.9, -0.1}) == EpaVector{-4, 3.9, -0.1});
}

TEST_CASE("clamp_epa rejects non-finite components") {
    CHECK_THROWS_AS(clamp_epa({std::numeric_limits<double>::quiet_NaN(), 0, 0}), DomainError);
    CHECK_THROWS_AS(clamp_epa({0, std::numeric_limits<double>::infinity(), 0}), DomainError);
}

TEST_CASE("clamp_epa is idempotent and order-preserving per component") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> wide(-20, 20);
    for (int i = 0; i < 1000; ++i) {
        EpaVector u{wide(rng), wide(rng), wide(rng)};
        EpaVector v{wide(rng), wide(rng), wide(rng)};
        EpaVector cu = clamp_epa(u);
        CHECK(clamp_epa(cu) == cu);
        EpaVector cv = clamp_epa(v);
        for (std::size_t d = 0; d < 3; ++d) {
            if (u[d] <= v[d]) CHECK(cu[d] <= cv[d]);
        }
    }
}

TEST_CASE("cosine_similarity") {
    CHECK(*cosine_similarity({1, 1, 1}, {1, 1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*cosine_similarity({1, 0, 0}, {0, 1, 0}) == 0.0);

    const double expected = oracle::cosine({1, 0, 2}, {1.95, 1.34, 1.78});
    CHECK(expected == doctest::Approx(0.832).epsilon(0.001));
    CHECK(*cosine_similarity({1, 0, 2}, {1.95, 1.34, 1.78}) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(*cosine_similarity({1.95, 1.34, 1.78}, {1, 0, 2}) == *cosine_similarity({1, 0, 2}, {1.95, 1.34, 1.78}));

    SUBCASE("zero vector has no similarity") {
        CHECK_FALSE(cosine_similarity({0, 0, 0}, {1, 2, 3}).has_value());
        CHECK_FALSE(cosine_similarity({1, 2, 3}, {0, 0, 0}).has_value());
    }
}

TEST_CASE("label_emotion on the reference table") {
    EmotionCatalog catalog;
    auto happy = label_emotion({3.54, 2.53, 1.28}, catalog);
    CHECK(happy.label == EmotionLabel::Happiness);
    CHECK(*happy.similarity == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(label_emotion({0, 0, 0}, catalog) == LabelResult{EmotionLabel::Neutral, std::nullopt});

    auto probe = label_emotion({1, 0, 2}, catalog);
    const auto brute = oracle::label({1, 0, 2});
    CHECK(brute.name == "Anger");
    CHECK(probe.label == EmotionLabel::Anger);
    CHECK(*probe.similarity == doctest::Approx(brute.similarity).epsilon(1e-12));
    // runner-up is Happiness at ~0.602, the rest negative
    CHECK(oracle::cosine({1, 0, 2}, {3.54, 2.53, 1.28}) == doctest::Approx(0.602).epsilon(0.002));
}

TEST_CASE("label_emotion falls back to Neutral below the threshold") {
    EmotionCatalog catalog;
    // orthogonal-ish to every prototype
    EpaVector v{1, -1, 0};
    for (const auto& e : catalog.entries()) CHECK(std::abs(*cosine_similarity(v, e.reference)) < 0.6);
    CHECK(label_emotion(v, catalog).label == EmotionLabel::Neutral);
}

TEST_CASE("threshold comparison is inclusive") {
    // a vector whose best similarity is exactly the threshold is accepted
    EmotionCatalog base;
    const double s = *cosine_similarity({1, 0, 2}, base.reference(EmotionLabel::Anger));
    EmotionCatalog at_threshold(base.entries(), s);
    CHECK(label_emotion({1, 0, 2}, at_threshold).label == EmotionLabel::Anger);
    EmotionCatalog above(base.entries(), std::nextafter(s, 2.0));
    CHECK(label_emotion({1, 0, 2}, above).label == EmotionLabel::Neutral);
}

TEST_CASE("ties resolve to the earlier catalog entry") {
    auto entries = EmotionCatalog().entries();
    entries[2].reference = entries[0].reference;  // Happiness duplicates Anger
    EmotionCatalog catalog(entries, 0.6);
    CHECK(label_emotion(entries[0].reference, catalog).label == EmotionLabel::Anger);
}

TEST_CASE("catalog invariants") {
    auto entries = EmotionCatalog().entries();
    CHECK_THROWS_AS(EmotionCatalog(entries, 0.0), DomainError);
    CHECK_THROWS_AS(EmotionCatalog(entries, 1.5), DomainError);
    auto zero = entries;
    zero[1].reference = {0, 0, 0};
    CHECK_THROWS_AS(EmotionCatalog(zero, 0.6), DomainError);
    auto swapped = entries;
    std::swap(swapped[0], swapped[1]);
    CHECK_THROWS_AS(EmotionCatalog(swapped, 0.6), DomainError);
    CHECK_THROWS_AS(EmotionCatalog().reference(EmotionLabel::Neutral), DomainError);
}

TEST_CASE("labeling is scale invariant and self-labels every prototype") {
    EmotionCatalog catalog;
    for (const auto& e : catalog.entries()) {
        auto r = label_emotion(e.reference, catalog);
        CHECK(r.label == e.label);
        CHECK(std::abs(*r.similarity - 1.0) <= 1e-9);
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int i = 0; i < 500; ++i) {
        EpaVector v{u(rng), u(rng), u(rng)};
        auto base = label_emotion(v, catalog);
        for (double k : {0.25, 3.0}) {
            auto scaled = label_emotion(v * k, catalog);
            CHECK(scaled.label == base.label);
            if (base.similarity) CHECK(std::abs(*scaled.similarity - *base.similarity) <= 1e-9);
        }
        CHECK(label_emotion(v, catalog) == base);
    }
}

TEST_CASE("label names round-trip") {
    for (EmotionLabel l : kAllLabels) CHECK(parse_label(to_string(l)) == l);
    CHECK(parse_label("happiness") == EmotionLabel::Happiness);
    CHECK_FALSE(parse_label("Disgust").has_value());
}
