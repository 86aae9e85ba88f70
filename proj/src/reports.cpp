#include "relnl/reports.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <span>

#include "relnl/errors.hpp"

namespace relnl::reports {

namespace {

bool two_choice_sites(const ExperimentConfig& cfg) {
    return !(cfg.mode == Mode::SingleParticle &&
             cfg.placement == ChoicePlacement::AtBeamSplitter);
}

bool covers_chsh_pairs(const std::vector<Setting>& settings) {
    for (const Setting& pair : stats::ChshSettings{}.pairs()) {
        bool found = false;
        for (const Setting& s : settings) {
            if (s == pair) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

bool varies_both_remotes(const std::vector<Setting>& settings) {
    std::set<double> alphas, betas;
    for (const Setting& s : settings) {
        alphas.insert(s.alpha);
        betas.insert(s.beta_phase);
    }
    return alphas.size() >= 2 && betas.size() >= 2;
}

std::string shortest(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

nlohmann::json setting_json(const Setting& s) {
    return nlohmann::json::array({s.alpha, s.beta_phase});
}

nlohmann::json probabilities_json(const JointDistribution& dist) {
    nlohmann::json out = nlohmann::json::object();
    for (int i = 0; i < 4; ++i) {
        out[std::string(Outcome{dist.mode, i}.code())] = dist.p[i];
    }
    return out;
}

nlohmann::json correlator_json(const stats::Correlator& c) {
    nlohmann::json counts = nlohmann::json::object();
    for (int i = 0; i < 4; ++i) {
        counts[std::string(Outcome{Mode::TwoParticle, i}.code())] = c.counts[static_cast<std::size_t>(i)];
    }
    return {
        {"setting", setting_json(c.setting)},
        {"n", c.n()},
        {"counts", std::move(counts)},
        {"e", c.e},
        {"stderr", c.stderr_e},
    };
}

nlohmann::json scan_json(const stats::MarginalScan& scan) {
    return {
        {"max_delta", scan.max_delta},
        {"stderr_delta", scan.stderr_delta},
        {"remote_settings", scan.remote_settings},
    };
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

}  // namespace

RunResult execute(const mc::RunPlan& plan, double tolerance_k) {
    require_valid(plan.config);

    RunResult result;
    result.plan = plan;
    if (two_choice_sites(plan.config)) {
        result.timing = classify_timing(plan.config);
    }

    const auto t0 = std::chrono::steady_clock::now();

    result.analytic.reserve(plan.settings.size());
    for (const Setting& s : plan.settings) {
        result.analytic.push_back(
            predict(plan.model, plan.config, s.alpha, s.beta_phase));
    }

    result.records = mc::run(plan);

    const std::span<const mc::TrialRecord> records(result.records);
    if (plan.config.mode == Mode::SingleParticle) {
        result.single_particle = stats::single_particle_rates(records);
    } else {
        const auto n = static_cast<std::size_t>(plan.trials_per_setting);
        for (std::size_t k = 0; k < plan.settings.size(); ++k) {
            result.correlators.push_back(
                stats::correlator(records.subspan(k * n, n)));
        }
        if (covers_chsh_pairs(plan.settings)) {
            result.chsh = stats::chsh(records, stats::ChshSettings{}, tolerance_k);
        }
        if (varies_both_remotes(plan.settings)) {
            result.signaling = stats::no_signaling_test(records, tolerance_k);
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    result.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
    return result;
}

nlohmann::json distribution_json(const JointDistribution& dist) {
    nlohmann::json entry = {
        {"setting", setting_json(dist.setting)},
        {"probabilities", probabilities_json(dist)},
    };
    if (dist.mode == Mode::TwoParticle) {
        entry["correlation"] = dist.correlation();
    } else {
        entry["p_exclusive"] = dist.p[outcome_index::kExclusivePlus] +
                               dist.p[outcome_index::kExclusiveMinus];
    }
    if (dist.timing) {
        entry["timing_class"] = std::string(to_string(*dist.timing));
    }
    return entry;
}

nlohmann::json report_json(const RunResult& result) {
    nlohmann::json settings = nlohmann::json::array();
    for (const Setting& s : result.plan.settings) {
        settings.push_back(setting_json(s));
    }

    nlohmann::json meta = {
        {"generator", std::string("relnl ") + std::string(kToolVersion)},
        {"model", std::string(to_string(result.plan.model))},
        {"mode", std::string(to_string(result.plan.config.mode))},
        {"placement", std::string(to_string(result.plan.config.placement))},
        {"settings", std::move(settings)},
        {"trials_per_setting", result.plan.trials_per_setting},
        {"seed", result.plan.seed},
    };
    if (result.timing) {
        meta["timing_class"] = std::string(to_string(*result.timing));
    }

    nlohmann::json analytic = nlohmann::json::array();
    for (const JointDistribution& dist : result.analytic) {
        analytic.push_back(distribution_json(dist));
    }

    nlohmann::json empirical = nlohmann::json::object();
    if (result.single_particle) {
        const auto& sp = *result.single_particle;
        empirical["single_particle"] = {
            {"n", sp.n},
            {"p_joint", sp.p_joint},
            {"stderr_joint", sp.stderr_joint},
            {"p_none", sp.p_none},
            {"stderr_none", sp.stderr_none},
            {"p_exclusive", sp.p_exclusive},
            {"stderr_exclusive", sp.stderr_exclusive},
        };
    }
    if (!result.correlators.empty()) {
        nlohmann::json correlators = nlohmann::json::array();
        for (const auto& c : result.correlators) {
            correlators.push_back(correlator_json(c));
        }
        empirical["correlators"] = std::move(correlators);
    }
    if (result.chsh) {
        nlohmann::json chsh_correlators = nlohmann::json::array();
        for (const auto& c : result.chsh->correlators) {
            chsh_correlators.push_back(correlator_json(c));
        }
        empirical["chsh"] = {
            {"s", result.chsh->s},
            {"stderr", result.chsh->stderr_s},
            {"k", result.chsh->k},
            {"violates_local_bound", result.chsh->violates_local_bound},
            {"correlators", std::move(chsh_correlators)},
        };
    }
    if (result.signaling) {
        empirical["no_signaling"] = {
            {"verdict", std::string(stats::to_string(result.signaling->verdict))},
            {"k", result.signaling->k},
            {"side_a", scan_json(result.signaling->side_a)},
            {"side_b", scan_json(result.signaling->side_b)},
        };
    }

    return {
        {"format", std::string(kReportFormat)},
        {"meta", std::move(meta)},
        {"analytic", std::move(analytic)},
        {"empirical", std::move(empirical)},
    };
}

std::string records_csv(const RunResult& result) {
    std::string out;
    out.reserve(result.records.size() * 24 + 64);
    out += "# ";
    out += kRecordsFormat;
    out += "\ntrial,alpha,beta,outcome\n";
    for (const auto& r : result.records) {
        out += std::to_string(r.trial);
        out += ',';
        out += shortest(r.setting.alpha);
        out += ',';
        out += shortest(r.setting.beta_phase);
        out += ',';
        out += r.outcome.code();
        out += '\n';
    }
    return out;
}

nlohmann::json records_json(const RunResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.records) {
        rows.push_back({
            {"trial", r.trial},
            {"alpha", r.setting.alpha},
            {"beta", r.setting.beta_phase},
            {"outcome", std::string(r.outcome.code())},
        });
    }
    return {
        {"format", std::string(kRecordsFormat)},
        {"records", std::move(rows)},
    };
}

std::string write_outputs(const RunResult& result, const std::string& out_dir,
                          RecordsFileFormat format) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + out_dir +
                      "': " + ec.message());
    }

    const auto path_in = [&out_dir](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };

    std::string records_path;
    if (format == RecordsFileFormat::Csv) {
        records_path = path_in("records.csv");
        write_text_file(records_path, records_csv(result));
    } else {
        records_path = path_in("records.json");
        write_text_file(records_path, records_json(result).dump(2) + "\n");
    }
    write_text_file(path_in("report.json"), report_json(result).dump(2) + "\n");
    return records_path;
}

}  // namespace relnl::reports
