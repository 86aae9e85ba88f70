#include "relnl/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "relnl/errors.hpp"

namespace relnl {

namespace {

using nlohmann::json;

/// Accumulates violations so a bad file reports everything wrong at once.
struct Parser {
    std::vector<std::string> violations;

    void fail(const std::string& message) { violations.push_back(message); }

    void check_keys(const json& j, const std::string& where,
                    const std::set<std::string>& allowed) {
        for (const auto& [key, value] : j.items()) {
            if (!allowed.count(key)) {
                fail(where + ": unknown key '" + key + "'");
            }
        }
    }

    double number(const json& j, const std::string& where, const char* key,
                  std::optional<double> fallback = std::nullopt) {
        if (!j.contains(key)) {
            if (fallback) return *fallback;
            fail(where + ": missing required key '" + key + "'");
            return 0.0;
        }
        if (!j.at(key).is_number()) {
            fail(where + ": '" + key + "' must be a number");
            return fallback.value_or(0.0);
        }
        return j.at(key).get<double>();
    }

    std::string text(const json& j, const std::string& where, const char* key) {
        if (!j.contains(key) || !j.at(key).is_string()) {
            fail(where + ": missing or non-string key '" + key + "'");
            return {};
        }
        return j.at(key).get<std::string>();
    }
};

const std::set<std::string> kTopLevelKeys = {
    "mode", "placement", "devices", "paths_indistinguishable", "visibility",
    "preferred_frame_beta", "model", "settings", "trials", "seed"};

const std::set<std::string> kDeviceKeys = {"id", "kind", "t", "x", "beta",
                                           "phase", "reflectivity"};

std::optional<DeviceKind> kind_from_string(std::string_view s) {
    if (s == "source") return DeviceKind::Source;
    if (s == "beam_splitter") return DeviceKind::BeamSplitter;
    if (s == "detector") return DeviceKind::Detector;
    if (s == "delay_line") return DeviceKind::DelayLine;
    return std::nullopt;
}

Device parse_device(Parser& p, const json& j, std::size_t i) {
    std::ostringstream ctx;
    ctx << "devices[" << i << "]";
    const std::string where = ctx.str();

    Device d;
    if (!j.is_object()) {
        p.fail(where + ": must be an object");
        return d;
    }
    p.check_keys(j, where, kDeviceKeys);
    d.id = p.text(j, where, "id");
    const std::string kind = p.text(j, where, "kind");
    if (auto k = kind_from_string(kind)) {
        d.kind = *k;
    } else if (!kind.empty()) {
        p.fail(where + ": unknown device kind '" + kind + "'");
    }
    const double t = p.number(j, where, "t");
    const double x = p.number(j, where, "x");
    if (std::isfinite(t) && std::isfinite(x)) {
        d.event = Event{t, x};
    } else {
        p.fail(where + ": event coordinates must be finite");
    }
    d.frame = Frame{p.number(j, where, "beta", 0.0)};
    d.phase = p.number(j, where, "phase", 0.0);
    d.reflectivity = p.number(j, where, "reflectivity", 0.5);
    return d;
}

}  // namespace

ConfigDocument parse_config(const json& j) {
    Parser p;
    ConfigDocument doc;

    if (!j.is_object()) {
        throw ConfigError({"config: document must be a JSON object"});
    }
    p.check_keys(j, "config", kTopLevelKeys);

    const std::string mode = p.text(j, "config", "mode");
    if (mode == "single_particle") {
        doc.experiment.mode = Mode::SingleParticle;
    } else if (mode == "two_particle") {
        doc.experiment.mode = Mode::TwoParticle;
    } else if (!mode.empty()) {
        p.fail("config: unknown mode '" + mode + "'");
    }

    const std::string placement = p.text(j, "config", "placement");
    if (placement == "beam_splitter") {
        doc.experiment.placement = ChoicePlacement::AtBeamSplitter;
    } else if (placement == "detector") {
        doc.experiment.placement = ChoicePlacement::AtDetector;
    } else if (!placement.empty()) {
        p.fail("config: unknown placement '" + placement + "'");
    }

    if (!j.contains("devices") || !j.at("devices").is_array()) {
        p.fail("config: missing device list");
    } else {
        const auto& devices = j.at("devices");
        for (std::size_t i = 0; i < devices.size(); ++i) {
            doc.experiment.devices.push_back(parse_device(p, devices[i], i));
        }
    }

    if (j.contains("paths_indistinguishable")) {
        if (!j.at("paths_indistinguishable").is_boolean()) {
            p.fail("config: 'paths_indistinguishable' must be a boolean");
        } else {
            doc.experiment.paths_indistinguishable =
                j.at("paths_indistinguishable").get<bool>();
        }
    }
    doc.experiment.visibility = p.number(j, "config", "visibility", 1.0);
    doc.experiment.preferred_frame =
        Frame{p.number(j, "config", "preferred_frame_beta", 0.0)};

    if (j.contains("model")) {
        if (!j.at("model").is_string()) {
            p.fail("config: 'model' must be a string");
        } else {
            try {
                doc.model = theory_from_string(j.at("model").get<std::string>());
            } catch (const ConfigError& e) {
                for (const auto& v : e.violations()) p.fail(v);
            }
        }
    }

    if (j.contains("settings")) {
        const auto& settings = j.at("settings");
        if (!settings.is_array()) {
            p.fail("config: 'settings' must be an array of [alpha, beta] pairs");
        } else {
            for (std::size_t i = 0; i < settings.size(); ++i) {
                const auto& s = settings[i];
                if (!s.is_array() || s.size() != 2 || !s[0].is_number() ||
                    !s[1].is_number()) {
                    std::ostringstream os;
                    os << "config: settings[" << i
                       << "] must be a [alpha, beta] number pair";
                    p.fail(os.str());
                    continue;
                }
                doc.settings.push_back(
                    Setting{s[0].get<double>(), s[1].get<double>()});
            }
        }
    }

    if (j.contains("trials")) {
        if (!j.at("trials").is_number_integer() ||
            j.at("trials").get<std::int64_t>() < 1) {
            p.fail("config: 'trials' must be a positive integer");
        } else {
            doc.trials = j.at("trials").get<std::int64_t>();
        }
    }

    if (j.contains("seed")) {
        const auto& seed = j.at("seed");
        const bool ok = seed.is_number_unsigned() ||
                        (seed.is_number_integer() && seed.get<std::int64_t>() >= 0);
        if (!ok) {
            p.fail("config: 'seed' must be a nonnegative integer");
        } else {
            doc.seed = seed.get<std::uint64_t>();
        }
    }

    for (const auto& v : validate(doc.experiment)) {
        p.fail(v);
    }

    if (!p.violations.empty()) {
        throw ConfigError(std::move(p.violations));
    }
    return doc;
}

nlohmann::json to_json(const ConfigDocument& doc) {
    json j;
    j["mode"] = std::string(to_string(doc.experiment.mode));
    j["placement"] = std::string(to_string(doc.experiment.placement));
    j["paths_indistinguishable"] = doc.experiment.paths_indistinguishable;
    j["visibility"] = doc.experiment.visibility;
    j["preferred_frame_beta"] = doc.experiment.preferred_frame.beta;

    json devices = json::array();
    for (const auto& d : doc.experiment.devices) {
        devices.push_back({{"id", d.id},
                           {"kind", std::string(to_string(d.kind))},
                           {"t", d.event.t},
                           {"x", d.event.x},
                           {"beta", d.frame.beta},
                           {"phase", d.phase},
                           {"reflectivity", d.reflectivity}});
    }
    j["devices"] = std::move(devices);

    if (doc.model) j["model"] = std::string(to_string(*doc.model));
    if (!doc.settings.empty()) {
        json settings = json::array();
        for (const auto& s : doc.settings) {
            settings.push_back({s.alpha, s.beta_phase});
        }
        j["settings"] = std::move(settings);
    }
    if (doc.trials) j["trials"] = *doc.trials;
    if (doc.seed) j["seed"] = *doc.seed;
    return j;
}

ConfigDocument load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("config: ") + e.what()});
    }
    return parse_config(j);
}

void save_config_file(const std::string& path, const ConfigDocument& doc) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write config file: " + path);
    }
    out << to_json(doc).dump(2) << "\n";
}

Setting default_setting(const ExperimentConfig& cfg) {
    const auto splitters = cfg.of_kind(DeviceKind::BeamSplitter);
    Setting s;
    if (!splitters.empty()) s.alpha = splitters[0]->phase;
    if (splitters.size() > 1) s.beta_phase = splitters[1]->phase;
    return s;
}

}  // namespace relnl
