#include "emoact/expression.hpp"

#include <algorithm>

namespace emoact {

ColorMap::ColorMap()
    : colors_{{EmotionLabel::Anger, "Red"},
              {EmotionLabel::Fear, "Black"},
              {EmotionLabel::Happiness, "Green"},
              {EmotionLabel::Sadness, "DarkBlue"},
              {EmotionLabel::Neutral, "White"}} {}

ColorMap::ColorMap(std::map<EmotionLabel, std::string> colors) : colors_(std::move(colors)) {
    for (EmotionLabel l : kAllLabels) {
        auto it = colors_.find(l);
        if (it == colors_.end() || it->second.empty()) {
            throw DomainError("color map has no color for " + std::string(to_string(l)));
        }
    }
}

AnimationCatalog::AnimationCatalog()
    : sets_{{EmotionLabel::Anger, {"Anger2", "Anger4"}},
            {EmotionLabel::Fear, {"Fear1", "Fear2"}},
            {EmotionLabel::Happiness, {"Happy1", "Happy2"}},
            {EmotionLabel::Sadness, {"Sad1", "Sad2"}}} {}

AnimationCatalog::AnimationCatalog(std::map<EmotionLabel, std::vector<std::string>> sets)
    : sets_(std::move(sets)) {
    if (sets_.contains(EmotionLabel::Neutral)) throw DomainError("Neutral cannot carry animations");
    for (EmotionLabel l : kAllLabels) {
        if (l == EmotionLabel::Neutral) continue;
        auto it = sets_.find(l);
        if (it == sets_.end() || it->second.empty()) {
            throw DomainError("animation catalog has no animations for " + std::string(to_string(l)));
        }
    }
}

const std::vector<std::string>& AnimationCatalog::animations(EmotionLabel label) const {
    static const std::vector<std::string> none;
    auto it = sets_.find(label);
    return it == sets_.end() ? none : it->second;
}

std::string_view to_string(DisplayMode mode) {
    return mode == DisplayMode::HighFrequency ? "high" : "low";
}

std::optional<DisplayMode> parse_display_mode(std::string_view name) {
    if (name == "low") return DisplayMode::LowFrequency;
    if (name == "high") return DisplayMode::HighFrequency;
    return std::nullopt;
}

std::string_view to_string(CueTrigger trigger) {
    return trigger == CueTrigger::SentenceSpoken ? "sentence" : "choice";
}

namespace {

// Uniform pick with no immediate repeat when the set allows it.
std::string draw_animation(const std::vector<std::string>& set, ExpressionMemory& memory) {
    std::vector<const std::string*> pool;
    for (const auto& name : set) {
        if (set.size() > 1 && memory.last_animation && name == *memory.last_animation) continue;
        pool.push_back(&name);
    }
    const auto index = static_cast<std::size_t>(memory.rng() % pool.size());
    return *pool[index];
}

}  // namespace

std::optional<ExpressionCue> select_cues(EmotionLabel label, CueTrigger trigger, std::int64_t now_ms,
                                         const DisplayPolicy& policy, const ColorMap& colors,
                                         const AnimationCatalog& animations, ExpressionMemory& memory) {
    if (memory.last_animation_ms && now_ms < *memory.last_animation_ms) {
        throw DomainError("cue requested before the last animation time");
    }
    if (policy.mode == DisplayMode::LowFrequency && trigger != CueTrigger::ChoiceMade) {
        return std::nullopt;
    }

    ExpressionCue cue{label, colors.color(label), std::nullopt, now_ms, trigger};
    if (label == EmotionLabel::Neutral) return cue;

    const bool cooling = policy.mode == DisplayMode::HighFrequency && memory.last_animation_ms &&
                         now_ms - *memory.last_animation_ms < policy.animation_cooldown_ms;
    if (cooling) return cue;

    cue.animation = draw_animation(animations.animations(label), memory);
    memory.last_animation_ms = now_ms;
    memory.last_animation = cue.animation;
    return cue;
}

}  // namespace emoact
