#include "emoact/batch.hpp"

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace emoact::batch {

namespace {

void check_sizes(std::size_t a, std::size_t b, std::size_t c) {
    if (a != b || b != c) throw DomainError("batch spans differ in length");
}

}  // namespace

void generate_raw_serial(std::span<const EpaVector> identities, std::span<const EpaVector> impressions,
                         const GenerationParams& params, std::span<EpaVector> out) {
    check_sizes(identities.size(), impressions.size(), out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = generate_emotion_raw(Identity{identities[i]}, impressions[i], params);
    }
}

void generate_raw_parallel(std::span<const EpaVector> identities, std::span<const EpaVector> impressions,
                           const GenerationParams& params, std::span<EpaVector> out) {
    check_sizes(identities.size(), impressions.size(), out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        require_finite(identities[i], "identity");
        require_finite(impressions[i], "impression");
    }
    const auto n = static_cast<std::ptrdiff_t>(out.size());
    const double delta = params.delta;
    // validation done above so the loop body cannot throw
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const EpaVector& id = identities[i];
        const EpaVector& imp = impressions[i];
        const double ge = imp.e - id.e;
        const double gp = imp.p - id.p;
        const double ga = imp.a - id.a;
        out[i] = EpaVector{ge + 1.0 + ga * delta, gp - ga, imp.a + id.a};
    }
}

void label_serial(std::span<const EpaVector> emotions, const EmotionCatalog& catalog,
                  std::span<LabelResult> out) {
    check_sizes(emotions.size(), out.size(), out.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = label_emotion(emotions[i], catalog);
}

void label_parallel(std::span<const EpaVector> emotions, const EmotionCatalog& catalog,
                    std::span<LabelResult> out) {
    check_sizes(emotions.size(), out.size(), out.size());
    for (const auto& v : emotions) require_finite(v, "emotion");
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = label_emotion(emotions[i], catalog);
    }
}

Grid cartesian_grid(std::span<const double> values) {
    std::vector<EpaVector> cube;
    cube.reserve(values.size() * values.size() * values.size());
    for (double e : values)
        for (double p : values)
            for (double a : values) cube.push_back({e, p, a});

    Grid grid;
    grid.identities.reserve(cube.size() * cube.size());
    grid.impressions.reserve(cube.size() * cube.size());
    for (const auto& id : cube) {
        for (const auto& imp : cube) {
            grid.identities.push_back(id);
            grid.impressions.push_back(imp);
        }
    }
    return grid;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace emoact::batch
