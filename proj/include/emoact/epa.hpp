#pragma once
// EPA space: Evaluation / Potency / Activity, each axis spanning [-4, +4].

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace emoact {

constexpr double kEpaMin = -4.0;
constexpr double kEpaMax = 4.0;

// Raised for non-finite or out-of-range inputs anywhere in the engine.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct EpaVector {
    double e = 0.0;
    double p = 0.0;
    double a = 0.0;

    friend bool operator==(const EpaVector&, const EpaVector&) = default;

    EpaVector operator+(const EpaVector& o) const { return {e + o.e, p + o.p, a + o.a}; }
    EpaVector operator-(const EpaVector& o) const { return {e - o.e, p - o.p, a - o.a}; }
    EpaVector operator*(double k) const { return {e * k, p * k, a * k}; }

    double& operator[](std::size_t i) { return i == 0 ? e : (i == 1 ? p : a); }
    double operator[](std::size_t i) const { return i == 0 ? e : (i == 1 ? p : a); }

    bool is_finite() const;
    double norm() const;
    std::string to_string() const;
};

double dot(const EpaVector& u, const EpaVector& v);

// Throws DomainError when any component is NaN or infinite.
void require_finite(const EpaVector& v, std::string_view what);

// Component-wise clip to [-4, +4].
EpaVector clamp_epa(const EpaVector& v);

// nullopt when either argument has zero magnitude.
std::optional<double> cosine_similarity(const EpaVector& u, const EpaVector& v);

enum class EmotionLabel { Anger, Fear, Happiness, Sadness, Neutral };

constexpr std::array<EmotionLabel, 5> kAllLabels = {
    EmotionLabel::Anger, EmotionLabel::Fear, EmotionLabel::Happiness,
    EmotionLabel::Sadness, EmotionLabel::Neutral};

std::string_view to_string(EmotionLabel label);
// Accepts the canonical names ("Anger", ...), case-insensitively.
std::optional<EmotionLabel> parse_label(std::string_view name);

struct CatalogEntry {
    EmotionLabel label;
    EpaVector reference;
};

// Reference vectors for the four basic emotions, in tie-break order.
class EmotionCatalog {
public:
    static constexpr double kDefaultThreshold = 0.6;

    // Anger, Fear, Happiness, Sadness with their published EPA profiles.
    EmotionCatalog();
    // Validates: exactly the four non-neutral labels in canonical order,
    // finite nonzero references, threshold in (0, 1].
    EmotionCatalog(std::array<CatalogEntry, 4> entries, double threshold);

    const std::array<CatalogEntry, 4>& entries() const { return entries_; }
    double threshold() const { return threshold_; }
    const EpaVector& reference(EmotionLabel label) const;

private:
    std::array<CatalogEntry, 4> entries_;
    double threshold_;
};

struct LabelResult {
    EmotionLabel label = EmotionLabel::Neutral;
    std::optional<double> similarity;

    friend bool operator==(const LabelResult&, const LabelResult&) = default;
};

// Nearest reference by cosine similarity, accepted when >= threshold.
// Ties resolve to the earlier catalog entry; the zero vector is Neutral.
LabelResult label_emotion(const EpaVector& emotion, const EmotionCatalog& catalog);

}  // namespace emoact
