#pragma once
// How the user currently sees the agent, and the cue rules that move it.

#include <cstdint>
#include <optional>
#include <variant>

#include "emoact/epa.hpp"

namespace emoact {

// Magnitudes for the perception and choice rules. Only directions are
// fixed by the model; all magnitudes are tunable.
struct ImpressionGains {
    double k_valence = 0.5;        // Evaluation per unit change in user valence
    double gaze_attrib_on = 1.0;   // valence attribution while the user looks at the agent
    double gaze_attrib_off = -0.5; // ... while the user looks away
    double k_gaze_potency = 0.1;
    double k_proximity = 0.3;      // Evaluation and Activity per meter approached
    double choice_step = 0.5;
    double choice_base = 1.0;

    // Throws DomainError on non-finite values or negative magnitudes.
    void validate() const;
    friend bool operator==(const ImpressionGains&, const ImpressionGains&) = default;
};

struct Impression {
    EpaVector value;
    std::optional<double> last_valence;
    std::optional<double> last_distance_m;
    std::optional<bool> gaze_on_agent;

    static Impression from(const EpaVector& initial) { return Impression{clamp_epa(initial), {}, {}, {}}; }
    friend bool operator==(const Impression&, const Impression&) = default;
};

enum class Sign : int { Negative = -1, None = 0, Positive = 1 };

struct ExpectedSigns {
    Sign e = Sign::None;
    Sign p = Sign::None;
    Sign a = Sign::None;

    Sign operator[](std::size_t i) const { return i == 0 ? e : (i == 1 ? p : a); }
    // Throws DomainError unless every value is -1, 0 or +1.
    static ExpectedSigns from_ints(int e, int p, int a);
    friend bool operator==(const ExpectedSigns&, const ExpectedSigns&) = default;
};

struct UserEmotion {
    double valence;  // [-1, +1]
    friend bool operator==(const UserEmotion&, const UserEmotion&) = default;
};
struct Gaze {
    bool on_agent;
    friend bool operator==(const Gaze&, const Gaze&) = default;
};
struct Proximity {
    double distance_m;
    friend bool operator==(const Proximity&, const Proximity&) = default;
};

using PerceptionCue = std::variant<UserEmotion, Gaze, Proximity>;

struct PerceptionEvent {
    std::int64_t timestamp_ms = 0;
    PerceptionCue cue;
    friend bool operator==(const PerceptionEvent&, const PerceptionEvent&) = default;
};

// Evaluation moves with the change in user valence; the sign of the move
// depends on whether the agent is blamed (gaze on) or not (gaze off).
Impression apply_user_emotion(Impression imp, double valence, const ImpressionGains& gains);

// Attention held raises Potency, attention lost lowers it.
Impression apply_gaze(Impression imp, bool on_agent, const ImpressionGains& gains);

// Approaching raises Evaluation and Activity; retreating lowers both.
// The first observation only records the distance.
Impression apply_proximity(Impression imp, double distance_m, const ImpressionGains& gains);

// Matching sign (or zero) steps toward the expected pole; a mismatch snaps
// the axis to expected * choice_base.
Impression apply_choice(Impression imp, const ExpectedSigns& expected, const ImpressionGains& gains);

Impression apply_perception(Impression imp, const PerceptionCue& cue, const ImpressionGains& gains);

}  // namespace emoact
