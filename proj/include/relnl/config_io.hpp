#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relnl/theories.hpp"

namespace relnl {

/// One scenario file: the experiment plus optional run-plan fields. The
/// on-disk form is a flat JSON document with explicit keys and no
/// expressions; unknown keys are rejected so a typo cannot silently change
/// the physics.
struct ConfigDocument {
    ExperimentConfig experiment{};
    std::optional<TheoryModel> model{};
    std::vector<Setting> settings{};  // empty = derive from device phases
    std::optional<std::int64_t> trials{};
    std::optional<std::uint64_t> seed{};
};

/// Parses a document, collecting every violation (unknown key, bad spelling,
/// out-of-range value, broken experiment invariant) into one ConfigError.
ConfigDocument parse_config(const nlohmann::json& j);

/// Inverse of parse_config: parse(to_json(doc)) reproduces doc exactly.
/// Experiment fields are always written in full; absent plan fields are
/// omitted.
nlohmann::json to_json(const ConfigDocument& doc);

/// Reads and parses a config file. Throws IoError if unreadable and
/// ConfigError for malformed or invalid content (parse errors carry the
/// offending position).
ConfigDocument load_config_file(const std::string& path);

void save_config_file(const std::string& path, const ConfigDocument& doc);

/// The setting a document implies when its settings list is empty: side A's
/// beam-splitter phase as alpha and side B's as beta (zero where a side has
/// no splitter of its own).
Setting default_setting(const ExperimentConfig& cfg);

}  // namespace relnl
