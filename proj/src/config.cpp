#include "emoact/config.hpp"

#include <cmath>
#include <fstream>

namespace emoact {

using nlohmann::json;

namespace {

EpaVector epa_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + " must be [E, P, A]");
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(std::string(what) + " must hold numbers");
    }
    EpaVector v{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    if (!v.is_finite()) throw ConfigError(std::string(what) + " must be finite");
    return v;
}

EpaVector bounded_epa_from(const json& j, const char* what) {
    EpaVector v = epa_from(j, what);
    if (clamp_epa(v) != v) throw ConfigError(std::string(what) + " must lie within [-4, 4]");
    return v;
}

json epa_to(const EpaVector& v) { return json::array({v.e, v.p, v.a}); }

EmotionLabel label_from(const std::string& name) {
    auto l = parse_label(name);
    if (!l) throw ConfigError("unknown emotion label '" + name + "'");
    return *l;
}

template <typename T>
void read_number(const json& obj, const char* key, T& out) {
    if (auto it = obj.find(key); it != obj.end()) {
        if (!it->is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
        out = it->get<T>();
    }
}

}  // namespace

SessionConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    if (auto it = doc.find("schema"); it != doc.end() && *it != kConfigSchema) {
        throw ConfigError("unsupported config schema " + it->dump() + ", expected " + kConfigSchema);
    }
    SessionConfig cfg;
    try {
        if (doc.contains("identity")) {
            cfg.model.identity.value = bounded_epa_from(doc["identity"], "identity");
            cfg.model.initial_impression = cfg.model.identity.value;
        }
        if (doc.contains("initial_impression") && !doc["initial_impression"].is_null()) {
            cfg.model.initial_impression = bounded_epa_from(doc["initial_impression"], "initial_impression");
        }
        read_number(doc, "delta", cfg.model.generation.delta);
        if (!std::isfinite(cfg.model.generation.delta)) throw ConfigError("delta must be finite");

        if (auto it = doc.find("gains"); it != doc.end()) {
            auto& g = cfg.model.gains;
            read_number(*it, "k_valence", g.k_valence);
            read_number(*it, "gaze_attrib_on", g.gaze_attrib_on);
            read_number(*it, "gaze_attrib_off", g.gaze_attrib_off);
            read_number(*it, "k_gaze_potency", g.k_gaze_potency);
            read_number(*it, "k_proximity", g.k_proximity);
            read_number(*it, "choice_step", g.choice_step);
            read_number(*it, "choice_base", g.choice_base);
            g.validate();
        }

        if (auto it = doc.find("catalog"); it != doc.end()) {
            double threshold = EmotionCatalog::kDefaultThreshold;
            read_number(*it, "threshold", threshold);
            auto entries = cfg.model.catalog.entries();
            if (auto e = it->find("entries"); e != it->end()) {
                if (!e->is_array() || e->size() != 4) throw ConfigError("catalog needs exactly four entries");
                for (std::size_t i = 0; i < 4; ++i) {
                    entries[i] = {label_from((*e)[i].at("label").get<std::string>()),
                                  epa_from((*e)[i].at("epa"), "catalog epa")};
                }
            }
            cfg.model.catalog = EmotionCatalog(entries, threshold);
        }

        if (auto it = doc.find("colors"); it != doc.end()) {
            std::map<EmotionLabel, std::string> colors = cfg.colors.colors();
            for (const auto& [name, color] : it->items()) colors[label_from(name)] = color.get<std::string>();
            cfg.colors = ColorMap(std::move(colors));
        }

        if (auto it = doc.find("animations"); it != doc.end()) {
            std::map<EmotionLabel, std::vector<std::string>> sets = cfg.animations.sets();
            for (const auto& [name, list] : it->items()) {
                sets[label_from(name)] = list.get<std::vector<std::string>>();
            }
            cfg.animations = AnimationCatalog(std::move(sets));
        }

        if (auto it = doc.find("policy"); it != doc.end()) {
            if (auto m = it->find("mode"); m != it->end()) {
                auto mode = parse_display_mode(m->get<std::string>());
                if (!mode) throw ConfigError("policy mode must be 'low' or 'high'");
                cfg.policy.mode = *mode;
            }
            read_number(*it, "animation_cooldown_ms", cfg.policy.animation_cooldown_ms);
            if (cfg.policy.animation_cooldown_ms < 0) throw ConfigError("animation_cooldown_ms must be >= 0");
        }

        if (auto it = doc.find("story"); it != doc.end()) cfg.story_id = it->get<std::string>();
        read_number(doc, "seed", cfg.seed);
        if (auto it = doc.find("stories_dir"); it != doc.end()) cfg.stories_dir = it->get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return cfg;
}

json config_to_json(const SessionConfig& cfg) {
    const auto& g = cfg.model.gains;
    json catalog_entries = json::array();
    for (const auto& e : cfg.model.catalog.entries()) {
        catalog_entries.push_back({{"label", to_string(e.label)}, {"epa", epa_to(e.reference)}});
    }
    json colors = json::object();
    for (const auto& [label, color] : cfg.colors.colors()) colors[std::string(to_string(label))] = color;
    json animations = json::object();
    for (const auto& [label, list] : cfg.animations.sets()) animations[std::string(to_string(label))] = list;

    return {
        {"schema", kConfigSchema},
        {"identity", epa_to(cfg.model.identity.value)},
        {"initial_impression", epa_to(cfg.model.initial_impression)},
        {"delta", cfg.model.generation.delta},
        {"gains",
         {{"k_valence", g.k_valence},
          {"gaze_attrib_on", g.gaze_attrib_on},
          {"gaze_attrib_off", g.gaze_attrib_off},
          {"k_gaze_potency", g.k_gaze_potency},
          {"k_proximity", g.k_proximity},
          {"choice_step", g.choice_step},
          {"choice_base", g.choice_base}}},
        {"catalog", {{"threshold", cfg.model.catalog.threshold()}, {"entries", catalog_entries}}},
        {"colors", colors},
        {"animations", animations},
        {"policy",
         {{"mode", to_string(cfg.policy.mode)}, {"animation_cooldown_ms", cfg.policy.animation_cooldown_ms}}},
        {"story", cfg.story_id},
        {"seed", cfg.seed},
        {"stories_dir", cfg.stories_dir.generic_string()},
    };
}

SessionConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config not found: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    SessionConfig cfg = config_from_json(doc);
    if (cfg.stories_dir.is_relative()) cfg.stories_dir = path.parent_path() / cfg.stories_dir;
    return cfg;
}

}  // namespace emoact
