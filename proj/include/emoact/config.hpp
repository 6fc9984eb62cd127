#pragma once
// Engine configuration: everything a session needs besides the story.

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "emoact/affect_model.hpp"
#include "emoact/expression.hpp"

namespace emoact {

inline constexpr const char* kConfigSchema = "emoact-config/1";

struct SessionConfig {
    AffectModel model;
    ColorMap colors;
    AnimationCatalog animations;
    DisplayPolicy policy;
    std::string story_id = "detective";
    std::uint64_t seed = 0;
    // Where story ids are looked up; relative paths are resolved against
    // the config file's directory when loaded from disk.
    std::filesystem::path stories_dir = "stories";
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every field is optional; missing fields keep their defaults.
SessionConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const SessionConfig& config);

SessionConfig load_config_file(const std::filesystem::path& path);

}  // namespace emoact
