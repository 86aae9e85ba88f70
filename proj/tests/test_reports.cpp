#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "relnl/reports.hpp"
#include "relnl/scenarios.hpp"

using namespace relnl;
using nlohmann::json;

namespace {

mc::RunPlan small_fig1_plan() {
    mc::RunPlan plan;
    plan.config = scenarios::fig1(0.1);
    plan.model = TheoryModel::Multisimultaneity;
    plan.settings = {Setting{0.0, 0.0}};
    plan.trials_per_setting = 2000;
    plan.seed = 42;
    return plan;
}

mc::RunPlan small_chsh_plan(TheoryModel model) {
    mc::RunPlan plan;
    plan.config = scenarios::two_particle(0.0);
    plan.model = model;
    const auto pairs = stats::ChshSettings{}.pairs();
    plan.settings.assign(pairs.begin(), pairs.end());
    plan.trials_per_setting = 2000;
    plan.seed = 42;
    return plan;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("execute fills the single-particle side of the result") {
    const auto result = reports::execute(small_fig1_plan());
    CHECK(result.timing == TimingClass::BeforeBefore);
    REQUIRE(result.analytic.size() == 1);
    CHECK(result.analytic[0].p[outcome_index::kJointFire] == 0.25);
    CHECK(result.records.size() == 2000);
    REQUIRE(result.single_particle.has_value());
    CHECK(result.single_particle->n == 2000);
    CHECK(result.correlators.empty());
    CHECK(!result.chsh.has_value());
    CHECK(!result.signaling.has_value());
    CHECK(result.elapsed_seconds >= 0.0);
}

TEST_CASE("execute fills correlators, chsh and signaling for chsh plans") {
    const auto result = reports::execute(small_chsh_plan(TheoryModel::PreferredFrameQM));
    // The geometry gets classified either way; only the engine ignores it.
    CHECK(result.timing == TimingClass::StandardBeforeAfter);
    for (const auto& dist : result.analytic) CHECK(!dist.timing.has_value());
    CHECK(result.analytic.size() == 4);
    CHECK(result.records.size() == 8000);
    CHECK(result.correlators.size() == 4);
    REQUIRE(result.chsh.has_value());
    CHECK(result.chsh->s > 2.0);
    REQUIRE(result.signaling.has_value());
    CHECK(result.signaling->verdict ==
          stats::SignalingVerdict::ConsistentWithNoSignaling);
    CHECK(!result.single_particle.has_value());
}

TEST_CASE("a lone setting pair yields correlators but no chsh or signaling") {
    auto plan = small_chsh_plan(TheoryModel::PreferredFrameQM);
    plan.settings = {Setting{0.0, 0.5}};
    const auto result = reports::execute(plan);
    CHECK(result.correlators.size() == 1);
    CHECK(!result.chsh.has_value());
    CHECK(!result.signaling.has_value());
}

TEST_CASE("distribution_json carries codes, probabilities and timing") {
    const auto dist = predict(TheoryModel::Multisimultaneity,
                              scenarios::fig1(0.1), 0.0, 0.0);
    const json j = reports::distribution_json(dist);
    CHECK(j["probabilities"]["joint"] == 0.25);
    CHECK(j["probabilities"]["none"] == 0.25);
    CHECK(j["probabilities"]["exclusive_plus"] == 0.25);
    CHECK(j["p_exclusive"] == 0.5);
    CHECK(j["timing_class"] == "before-before");
    CHECK(j["setting"][0] == 0.0);

    const auto qm = qm_predict(scenarios::two_particle(0.0), 0.0, 0.0);
    const json jq = reports::distribution_json(qm);
    CHECK(jq["probabilities"]["++"] == 0.5);
    CHECK(jq["correlation"] == 1.0);
    CHECK(!jq.contains("timing_class"));
    CHECK(!jq.contains("p_exclusive"));
}

TEST_CASE("report_json structure and determinism") {
    const auto result = reports::execute(small_chsh_plan(TheoryModel::Multisimultaneity));
    const json j = reports::report_json(result);
    CHECK(j["format"] == std::string(reports::kReportFormat));
    CHECK(j["meta"]["model"] == "ms");
    CHECK(j["meta"]["mode"] == "two_particle");
    CHECK(j["meta"]["trials_per_setting"] == 2000);
    CHECK(j["meta"]["seed"] == 42);
    CHECK(j["meta"]["settings"].size() == 4);
    CHECK(j["analytic"].size() == 4);
    CHECK(j["empirical"]["chsh"].contains("s"));
    CHECK(j["empirical"]["correlators"].size() == 4);
    CHECK(j["empirical"]["no_signaling"].contains("verdict"));
    CHECK(!j.contains("elapsed_seconds"));

    // Identical plans serialize identically, elapsed time notwithstanding.
    const auto again = reports::execute(small_chsh_plan(TheoryModel::Multisimultaneity));
    CHECK(reports::report_json(again) == j);
}

TEST_CASE("records_csv has the versioned header and one row per trial") {
    auto plan = small_fig1_plan();
    plan.trials_per_setting = 3;
    const auto result = reports::execute(plan);
    const std::string csv = reports::records_csv(result);

    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# relnl-records-v1");
    std::getline(lines, line);
    CHECK(line == "trial,alpha,beta,outcome");
    int rows = 0;
    while (std::getline(lines, line)) {
        if (!line.empty()) {
            if (rows == 0) CHECK(line.rfind("0,0,0,", 0) == 0);
            ++rows;
        }
    }
    CHECK(rows == 3);
}

TEST_CASE("records_json agrees with records_csv row by row") {
    auto plan = small_chsh_plan(TheoryModel::PreferredFrameQM);
    plan.settings = {Setting{0.25, -0.5}};
    plan.trials_per_setting = 50;
    const auto result = reports::execute(plan);

    const json j = reports::records_json(result);
    CHECK(j["format"] == std::string(reports::kRecordsFormat));
    REQUIRE(j["records"].size() == 50);

    std::istringstream lines(reports::records_csv(result));
    std::string line;
    std::getline(lines, line);  // header comment
    std::getline(lines, line);  // column names
    for (const auto& rec : j["records"]) {
        REQUIRE(std::getline(lines, line));
        std::ostringstream expected;
        expected << rec["trial"].get<std::int64_t>() << "," << "0.25" << ","
                 << "-0.5" << "," << rec["outcome"].get<std::string>();
        CHECK(line == expected.str());
    }
}

TEST_CASE("write_outputs produces byte-stable files in both formats") {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "relnl_reports_test";
    fs::remove_all(base);

    auto plan = small_fig1_plan();
    plan.trials_per_setting = 100;
    const auto result = reports::execute(plan);

    const auto csv_path = reports::write_outputs(result, (base / "a").string(),
                                                 reports::RecordsFileFormat::Csv);
    CHECK(csv_path == (base / "a" / "records.csv").string());
    CHECK(fs::exists(base / "a" / "report.json"));

    const auto result2 = reports::execute(plan);
    reports::write_outputs(result2, (base / "b").string(),
                           reports::RecordsFileFormat::Csv);
    CHECK(slurp((base / "a" / "records.csv").string()) ==
          slurp((base / "b" / "records.csv").string()));
    CHECK(slurp((base / "a" / "report.json").string()) ==
          slurp((base / "b" / "report.json").string()));

    const auto json_path = reports::write_outputs(
        result, (base / "c").string(), reports::RecordsFileFormat::Json);
    CHECK(json_path == (base / "c" / "records.json").string());
    const json loaded = json::parse(slurp(json_path));
    CHECK(loaded["records"].size() == 100);

    fs::remove_all(base);
}
