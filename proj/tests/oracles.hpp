#pragma once
// Independent reference computations for the tests. Deliberately written
// straight-line from the model's formulas, without touching the library's
// implementation of them.

#include <array>
#include <cmath>
#include <string>

namespace oracle {

struct Vec3 {
    double e, p, a;
};

// Emotion before clipping, transcribed term by term.
inline Vec3 emotion_raw(Vec3 identity, Vec3 impression, double delta) {
    double emotion_e_partial = impression.e - identity.e + 1;
    double emotion_e = emotion_e_partial + (impression.a - identity.a) * delta;
    double emotion_p_partial = impression.p - identity.p;
    double emotion_p = emotion_p_partial - (impression.a - identity.a);
    double emotion_a = impression.a + identity.a;
    return {emotion_e, emotion_p, emotion_a};
}

inline double cosine(Vec3 u, Vec3 v) {
    double uv = u.e * v.e + u.p * v.p + u.a * v.a;
    double uu = u.e * u.e + u.p * u.p + u.a * u.a;
    double vv = v.e * v.e + v.p * v.p + v.a * v.a;
    return uv / (std::sqrt(uu) * std::sqrt(vv));
}

struct Prototype {
    const char* name;
    Vec3 epa;
};

inline constexpr std::array<Prototype, 4> kPrototypes = {{
    {"Anger", {1.95, 1.34, 1.78}},
    {"Fear", {-2.04, -0.94, -0.70}},
    {"Happiness", {3.54, 2.53, 1.28}},
    {"Sadness", {-2.52, -2.29, -2.21}},
}};

struct Labeled {
    std::string name;
    double similarity;  // NaN when Neutral
};

// Brute force over all four prototypes.
inline Labeled label(Vec3 v, double threshold = 0.6) {
    if (v.e == 0 && v.p == 0 && v.a == 0) return {"Neutral", std::nan("")};
    std::string best;
    double best_sim = -2;
    for (const auto& proto : kPrototypes) {
        double s = cosine(v, proto.epa);
        if (s > best_sim) {
            best_sim = s;
            best = proto.name;
        }
    }
    if (best_sim >= threshold) return {best, best_sim};
    return {"Neutral", std::nan("")};
}

}  // namespace oracle
