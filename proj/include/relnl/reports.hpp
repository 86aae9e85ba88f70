#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relnl/stats.hpp"

namespace relnl::reports {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kReportFormat = "relnl-report-v1";
inline constexpr std::string_view kRecordsFormat = "relnl-records-v1";

/// Everything one run produces: the plan it executed, the timing
/// classification (absent for single-site setups), the analytic distribution
/// per setting, the sampled records, and whichever empirical reports apply
/// to the mode and settings. elapsed_seconds covers prediction, sampling and
/// estimation; it never enters the serialized outputs, which stay
/// byte-stable across reruns.
struct RunResult {
    mc::RunPlan plan{};
    std::optional<TimingClass> timing{};
    std::vector<JointDistribution> analytic{};
    std::vector<mc::TrialRecord> records{};
    std::optional<stats::SingleParticleReport> single_particle{};
    std::vector<stats::Correlator> correlators{};
    std::optional<stats::ChshResult> chsh{};
    std::optional<stats::SignalingReport> signaling{};
    double elapsed_seconds{0.0};
};

/// Runs a plan end to end. Per-setting correlators are computed for
/// two-particle runs; the CHSH combination when the plan's settings include
/// all four standard pairs; the no-signaling scan when the settings vary
/// both sides' remote parameter. tolerance_k scales the statistical verdicts
/// (k standard errors).
RunResult execute(const mc::RunPlan& plan, double tolerance_k = 4.0);

/// The consolidated report document (metadata, analytic distributions,
/// empirical estimates with their standard errors).
nlohmann::json report_json(const RunResult& result);

/// One analytic distribution as JSON: setting, probabilities keyed by
/// outcome code, the mode's derived figure (correlation or exclusive-fire
/// probability) and the timing class when one was consulted.
nlohmann::json distribution_json(const JointDistribution& dist);

/// One row per trial: trial, alpha, beta, outcome code. First line is a
/// versioned header comment.
std::string records_csv(const RunResult& result);

/// Same rows as records_csv, as a JSON document.
nlohmann::json records_json(const RunResult& result);

enum class RecordsFileFormat { Csv, Json };

/// Writes records.csv (or records.json) plus report.json under out_dir,
/// creating the directory if needed. Returns the records file path. Throws
/// IoError on filesystem failure.
std::string write_outputs(const RunResult& result, const std::string& out_dir,
                          RecordsFileFormat format);

}  // namespace relnl::reports
