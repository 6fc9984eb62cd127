#include "emoact/epa.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace emoact {

bool EpaVector::is_finite() const {
    return std::isfinite(e) && std::isfinite(p) && std::isfinite(a);
}

double EpaVector::norm() const { return std::sqrt(dot(*this, *this)); }

std::string EpaVector::to_string() const {
    std::ostringstream os;
    os << "(" << e << ", " << p << ", " << a << ")";
    return os.str();
}

double dot(const EpaVector& u, const EpaVector& v) {
    return u.e * v.e + u.p * v.p + u.a * v.a;
}

void require_finite(const EpaVector& v, std::string_view what) {
    if (!v.is_finite()) {
        throw DomainError(std::string(what) + " has a non-finite component: " + v.to_string());
    }
}

EpaVector clamp_epa(const EpaVector& v) {
    require_finite(v, "EPA vector");
    return {std::clamp(v.e, kEpaMin, kEpaMax), std::clamp(v.p, kEpaMin, kEpaMax),
            std::clamp(v.a, kEpaMin, kEpaMax)};
}

std::optional<double> cosine_similarity(const EpaVector& u, const EpaVector& v) {
    require_finite(u, "cosine argument");
    require_finite(v, "cosine argument");
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) return std::nullopt;
    return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

std::string_view to_string(EmotionLabel label) {
    switch (label) {
        case EmotionLabel::Anger: return "Anger";
        case EmotionLabel::Fear: return "Fear";
        case EmotionLabel::Happiness: return "Happiness";
        case EmotionLabel::Sadness: return "Sadness";
        case EmotionLabel::Neutral: return "Neutral";
    }
    return "Neutral";
}

std::optional<EmotionLabel> parse_label(std::string_view name) {
    auto lower = [](std::string_view s) {
        std::string out(s);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return out;
    };
    const std::string key = lower(name);
    for (EmotionLabel l : kAllLabels) {
        if (lower(to_string(l)) == key) return l;
    }
    return std::nullopt;
}

EmotionCatalog::EmotionCatalog()
    : EmotionCatalog({{{EmotionLabel::Anger, {1.95, 1.34, 1.78}},
                       {EmotionLabel::Fear, {-2.04, -0.94, -0.70}},
                       {EmotionLabel::Happiness, {3.54, 2.53, 1.28}},
                       {EmotionLabel::Sadness, {-2.52, -2.29, -2.21}}}},
                     kDefaultThreshold) {}

EmotionCatalog::EmotionCatalog(std::array<CatalogEntry, 4> entries, double threshold)
    : entries_(entries), threshold_(threshold) {
    if (!std::isfinite(threshold_) || threshold_ <= 0.0 || threshold_ > 1.0) {
        throw DomainError("catalog threshold must lie in (0, 1]");
    }
    constexpr std::array<EmotionLabel, 4> order = {EmotionLabel::Anger, EmotionLabel::Fear,
                                                   EmotionLabel::Happiness, EmotionLabel::Sadness};
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].label != order[i]) {
            throw DomainError("catalog entries must be Anger, Fear, Happiness, Sadness in order");
        }
        require_finite(entries_[i].reference, "catalog reference");
        if (entries_[i].reference.norm() == 0.0) {
            throw DomainError("catalog reference for " + std::string(to_string(order[i])) +
                              " is the zero vector");
        }
    }
}

const EpaVector& EmotionCatalog::reference(EmotionLabel label) const {
    for (const auto& entry : entries_) {
        if (entry.label == label) return entry.reference;
    }
    throw DomainError("Neutral has no reference vector");
}

LabelResult label_emotion(const EpaVector& emotion, const EmotionCatalog& catalog) {
    require_finite(emotion, "emotion");
    if (emotion.norm() == 0.0) return {};

    LabelResult best;
    double best_sim = -2.0;
    for (const auto& entry : catalog.entries()) {
        const auto sim = cosine_similarity(emotion, entry.reference);
        // strict > keeps the earlier entry on ties
        if (sim && *sim > best_sim) {
            best_sim = *sim;
            best.label = entry.label;
        }
    }
    if (best_sim >= catalog.threshold()) {
        best.similarity = best_sim;
        return best;
    }
    return {};
}

}  // namespace emoact
