#pragma once
// Emotion from the identity/impression discrepancy (Affect Control Theory).

#include "emoact/epa.hpp"

namespace emoact {

struct Identity {
    EpaVector value;
};

struct GenerationParams {
    double delta = 0.5;  // weight of the Activity discrepancy on Evaluation
};

// The emotion before range clipping:
//   E = (imp.E - id.E + 1) + (imp.A - id.A) * delta
//   P = (imp.P - id.P) - (imp.A - id.A)
//   A =  imp.A + id.A
// Stateless; the previous emotion plays no part.
EpaVector generate_emotion_raw(const Identity& identity, const EpaVector& impression,
                               const GenerationParams& params);

// generate_emotion_raw followed by clamp_epa.
EpaVector generate_emotion(const Identity& identity, const EpaVector& impression,
                           const GenerationParams& params);

}  // namespace emoact
