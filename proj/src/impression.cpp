#include "emoact/impression.hpp"

#include <cmath>
#include <string>

namespace emoact {

namespace {

void require_finite_scalar(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_non_negative(double v, const char* what) {
    require_finite_scalar(v, what);
    if (v < 0.0) throw DomainError(std::string(what) + " must be >= 0");
}

}  // namespace

void ImpressionGains::validate() const {
    require_non_negative(k_valence, "k_valence");
    require_finite_scalar(gaze_attrib_on, "gaze_attrib_on");
    require_finite_scalar(gaze_attrib_off, "gaze_attrib_off");
    require_non_negative(k_gaze_potency, "k_gaze_potency");
    require_non_negative(k_proximity, "k_proximity");
    require_non_negative(choice_step, "choice_step");
    require_non_negative(choice_base, "choice_base");
}

ExpectedSigns ExpectedSigns::from_ints(int e, int p, int a) {
    auto to_sign = [](int v) {
        if (v < -1 || v > 1) throw DomainError("expected sign must be -1, 0 or +1");
        return static_cast<Sign>(v);
    };
    return {to_sign(e), to_sign(p), to_sign(a)};
}

Impression apply_user_emotion(Impression imp, double valence, const ImpressionGains& gains) {
    require_finite_scalar(valence, "valence");
    if (valence < -1.0 || valence > 1.0) throw DomainError("valence must lie in [-1, 1]");

    const double delta = valence - imp.last_valence.value_or(0.0);
    const bool looking = imp.gaze_on_agent.value_or(true);
    const double attrib = looking ? gains.gaze_attrib_on : gains.gaze_attrib_off;
    imp.value = clamp_epa(imp.value + EpaVector{gains.k_valence * delta * attrib, 0.0, 0.0});
    imp.last_valence = valence;
    return imp;
}

Impression apply_gaze(Impression imp, bool on_agent, const ImpressionGains& gains) {
    const double dp = on_agent ? gains.k_gaze_potency : -gains.k_gaze_potency;
    imp.value = clamp_epa(imp.value + EpaVector{0.0, dp, 0.0});
    imp.gaze_on_agent = on_agent;
    return imp;
}

Impression apply_proximity(Impression imp, double distance_m, const ImpressionGains& gains) {
    require_non_negative(distance_m, "distance_m");
    // positive when the user moved closer
    const double approach = imp.last_distance_m.value_or(distance_m) - distance_m;
    const double d = gains.k_proximity * approach;
    imp.value = clamp_epa(imp.value + EpaVector{d, 0.0, d});
    imp.last_distance_m = distance_m;
    return imp;
}

Impression apply_choice(Impression imp, const ExpectedSigns& expected, const ImpressionGains& gains) {
    EpaVector next = imp.value;
    for (std::size_t d = 0; d < 3; ++d) {
        const int s = static_cast<int>(expected[d]);
        if (s == 0) continue;
        const double current = imp.value[d];
        const bool matches = current == 0.0 || (current > 0.0) == (s > 0);
        next[d] = matches ? current + s * gains.choice_step : s * gains.choice_base;
    }
    imp.value = clamp_epa(next);
    return imp;
}

Impression apply_perception(Impression imp, const PerceptionCue& cue, const ImpressionGains& gains) {
    return std::visit(
        [&](const auto& c) -> Impression {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, UserEmotion>) {
                return apply_user_emotion(std::move(imp), c.valence, gains);
            } else if constexpr (std::is_same_v<T, Gaze>) {
                return apply_gaze(std::move(imp), c.on_agent, gains);
            } else {
                return apply_proximity(std::move(imp), c.distance_m, gains);
            }
        },
        cue);
}

}  // namespace emoact
