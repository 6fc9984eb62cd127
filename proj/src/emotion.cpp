#include "emoact/emotion.hpp"

#include <cmath>

namespace emoact {

EpaVector generate_emotion_raw(const Identity& identity, const EpaVector& impression,
                               const GenerationParams& params) {
    require_finite(identity.value, "identity");
    require_finite(impression, "impression");
    if (!std::isfinite(params.delta)) throw DomainError("delta must be finite");

    const EpaVector gap = impression - identity.value;
    return {gap.e + 1.0 + gap.a * params.delta,
            gap.p - gap.a,
            impression.a + identity.value.a};
}

EpaVector generate_emotion(const Identity& identity, const EpaVector& impression,
                           const GenerationParams& params) {
    return clamp_epa(generate_emotion_raw(identity, impression, params));
}

}  // namespace emoact
