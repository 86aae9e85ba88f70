#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "relnl/reports.hpp"

namespace relnl::suite {

/// One row of the reproduction table: a named scenario checked against one
/// acceptance criterion, with the individual check lines kept for
/// diagnostics.
struct ScenarioResult {
    std::string name;
    std::string criterion;
    bool passed{true};
    std::vector<std::string> checks;
    double elapsed_seconds{0.0};
};

struct SuiteOptions {
    std::int64_t trials_single{100000};  // single-particle scenarios
    std::int64_t trials_chsh{50000};     // per CHSH setting
    double tolerance_k{4.0};
    std::uint64_t seed{42};
    /// Test hook: shifts the multisimultaneity engine's probabilities inside
    /// the agreement scenario. Nonzero values must make that scenario fail;
    /// the negative control that proves the suite can catch a broken engine.
    double ms_tamper{0.0};
};

struct SuiteReport {
    SuiteOptions options{};
    std::vector<ScenarioResult> scenarios;
    bool all_passed{true};
    /// True when trial counts are below the canonical ones, so every
    /// statistical window is wider than the headline numbers.
    bool widened_tolerances{false};
};

/// Runs every bundled scenario against the reproduction targets: the
/// single-particle fire-pattern rates in both timing regimes and both
/// models, the CHSH values (2*sqrt(2) where correlations survive, 0 in
/// before-before multisimultaneity), engine agreement on standard-timing
/// experiments, no-signaling scans with a planted-violation control,
/// kinematics properties, and determinism of repeated runs.
SuiteReport run_paper_suite(const SuiteOptions& options = {});

nlohmann::json report_json(const SuiteReport& report);

/// Fixed-width pass/fail table with per-scenario diagnostics on failure.
std::string table(const SuiteReport& report);

}  // namespace relnl::suite
