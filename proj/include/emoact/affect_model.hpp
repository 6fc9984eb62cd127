#pragma once

#include "emoact/emotion.hpp"
#include "emoact/epa.hpp"
#include "emoact/impression.hpp"

namespace emoact {

// The default companion identity. Activity is kept moderate so that all
// four basic emotions stay reachable from an identity-confirming start.
inline constexpr EpaVector kDefaultIdentity{1.5, 1.5, 0.75};

// Everything needed to go from an impression to a labeled emotion.
struct AffectModel {
    Identity identity{kDefaultIdentity};
    EpaVector initial_impression = kDefaultIdentity;
    GenerationParams generation;
    ImpressionGains gains;
    EmotionCatalog catalog;

    EpaVector emotion_of(const EpaVector& impression) const {
        return generate_emotion(identity, impression, generation);
    }
    LabelResult label_of(const EpaVector& impression) const {
        return label_emotion(emotion_of(impression), catalog);
    }
};

}  // namespace emoact
