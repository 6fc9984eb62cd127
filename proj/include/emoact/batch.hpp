#pragma once
// Bulk kernels over many identity/impression pairs. Each kernel has a
// serial reference and an OpenMP version; both must agree exactly.

#include <span>
#include <vector>

#include "emoact/emotion.hpp"
#include "emoact/epa.hpp"

namespace emoact::batch {

// out[i] = generate_emotion_raw(identities[i], impressions[i], params).
// All three spans must have equal length.
void generate_raw_serial(std::span<const EpaVector> identities, std::span<const EpaVector> impressions,
                         const GenerationParams& params, std::span<EpaVector> out);
void generate_raw_parallel(std::span<const EpaVector> identities, std::span<const EpaVector> impressions,
                           const GenerationParams& params, std::span<EpaVector> out);

void label_serial(std::span<const EpaVector> emotions, const EmotionCatalog& catalog,
                  std::span<LabelResult> out);
void label_parallel(std::span<const EpaVector> emotions, const EmotionCatalog& catalog,
                    std::span<LabelResult> out);

// Every (identity, impression) pair over values^3 x values^3, identity-major.
struct Grid {
    std::vector<EpaVector> identities;
    std::vector<EpaVector> impressions;
};
Grid cartesian_grid(std::span<const double> values);

// Worker threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace emoact::batch
