#pragma once
// Turning an emotion label into observable cues: eye color + animation.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "emoact/epa.hpp"

namespace emoact {

class ColorMap {
public:
    // Anger Red, Fear Black, Happiness Green, Sadness DarkBlue, Neutral White.
    ColorMap();
    // Must name a color for all five labels.
    explicit ColorMap(std::map<EmotionLabel, std::string> colors);

    const std::string& color(EmotionLabel label) const { return colors_.at(label); }
    const std::map<EmotionLabel, std::string>& colors() const { return colors_; }

private:
    std::map<EmotionLabel, std::string> colors_;
};

inline const std::string& eye_color(EmotionLabel label, const ColorMap& map) { return map.color(label); }

class AnimationCatalog {
public:
    // Two validated animations per emotion: Anger2/Anger4, Fear1/Fear2, Happy1/Happy2, Sad1/Sad2.
    AnimationCatalog();
    // Needs a non-empty list for each of the four basic emotions; Neutral must be absent.
    explicit AnimationCatalog(std::map<EmotionLabel, std::vector<std::string>> sets);

    const std::vector<std::string>& animations(EmotionLabel label) const;
    const std::map<EmotionLabel, std::vector<std::string>>& sets() const { return sets_; }

private:
    std::map<EmotionLabel, std::vector<std::string>> sets_;
};

enum class DisplayMode { LowFrequency, HighFrequency };

std::string_view to_string(DisplayMode mode);
// "low" / "high"
std::optional<DisplayMode> parse_display_mode(std::string_view name);

struct DisplayPolicy {
    DisplayMode mode = DisplayMode::LowFrequency;
    std::int64_t animation_cooldown_ms = 30000;  // HighFrequency only

    friend bool operator==(const DisplayPolicy&, const DisplayPolicy&) = default;
};

enum class CueTrigger { SentenceSpoken, ChoiceMade };

std::string_view to_string(CueTrigger trigger);

struct ExpressionCue {
    EmotionLabel label = EmotionLabel::Neutral;
    std::string eye_color;
    std::optional<std::string> animation;
    std::int64_t timestamp_ms = 0;
    CueTrigger trigger = CueTrigger::ChoiceMade;

    friend bool operator==(const ExpressionCue&, const ExpressionCue&) = default;
};

// What a cue selector remembers between calls.
struct ExpressionMemory {
    std::optional<std::int64_t> last_animation_ms;
    std::optional<std::string> last_animation;
    std::mt19937_64 rng;

    explicit ExpressionMemory(std::uint64_t seed = 0) : rng(seed) {}
};

// Decides whether a cue is shown for this trigger and, if so, which one.
// Updates memory when an animation is played.
std::optional<ExpressionCue> select_cues(EmotionLabel label, CueTrigger trigger, std::int64_t now_ms,
                                         const DisplayPolicy& policy, const ColorMap& colors,
                                         const AnimationCatalog& animations, ExpressionMemory& memory);

}  // namespace emoact
