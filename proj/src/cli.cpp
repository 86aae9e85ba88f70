#include "relnl/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "relnl/config_io.hpp"
#include "relnl/errors.hpp"
#include "relnl/reports.hpp"
#include "relnl/suite.hpp"

namespace relnl::cli {

namespace {

struct Args {
    std::string config_path;
    std::string model;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<std::int64_t> trials;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string format{"csv"};
    double tolerance_k{4.0};
    double ms_tamper{0.0};
};

/// Builds the run plan a document plus flag overrides describes. need_trials
/// marks the sampling commands; predict does without.
mc::RunPlan plan_from(const ConfigDocument& doc, const Args& a,
                      bool need_trials) {
    mc::RunPlan plan;
    plan.config = doc.experiment;

    std::vector<std::string> violations;

    if (!a.model.empty()) {
        plan.model = theory_from_string(a.model);
    } else if (doc.model) {
        plan.model = *doc.model;
    } else {
        violations.push_back("model: required (set it in the config or pass --model)");
    }

    if (a.alpha || a.beta) {
        Setting s = doc.settings.empty() ? default_setting(doc.experiment)
                                         : doc.settings.front();
        if (a.alpha) s.alpha = *a.alpha;
        if (a.beta) s.beta_phase = *a.beta;
        plan.settings = {s};
    } else if (!doc.settings.empty()) {
        plan.settings = doc.settings;
    } else {
        plan.settings = {default_setting(doc.experiment)};
    }

    if (a.trials) {
        if (*a.trials < 1) {
            violations.push_back("trials: must be a positive integer");
        }
        plan.trials_per_setting = *a.trials;
    } else if (doc.trials) {
        plan.trials_per_setting = *doc.trials;
    } else if (need_trials) {
        violations.push_back("trials: required (set it in the config or pass --trials)");
    }

    plan.seed = a.seed ? *a.seed : doc.seed.value_or(0);

    if (!violations.empty()) {
        throw ConfigError(std::move(violations));
    }
    return plan;
}

std::string point(const Event& e) {
    std::ostringstream os;
    os << std::setprecision(10) << "(t=" << e.t << ", x=" << e.x << ")";
    return os.str();
}

int cmd_classify(const Args& a, std::ostream& out) {
    const ConfigDocument doc = load_config_file(a.config_path);
    const auto [site_a, site_b] = choice_events(doc.experiment);
    const TimingClass timing = classify_timing(doc.experiment);

    out << "timing class: " << to_string(timing) << "\n\n";
    out << "choice A: " << site_a.device_id << " at " << point(site_a.event)
        << ", beta = " << site_a.frame.beta << "\n";
    out << "choice B: " << site_b.device_id << " at " << point(site_b.event)
        << ", beta = " << site_b.frame.beta << "\n\n";

    std::size_t width = 6;
    for (const auto& d : doc.experiment.devices) {
        width = std::max(width, d.id.size());
    }

    out << std::left << std::setw(static_cast<int>(width + 2)) << "device"
        << std::setw(15) << "kind" << std::setw(10) << "beta" << std::setw(14)
        << "t'(choice A)" << std::setw(14) << "t'(choice B)" << "sees\n";
    for (const auto& d : doc.experiment.devices) {
        const double ta = boost_time(site_a.event, d.frame);
        const double tb = boost_time(site_b.event, d.frame);
        const char* sees = ta < tb ? "A first" : (tb < ta ? "B first" : "same time");
        out << std::left << std::setw(static_cast<int>(width + 2)) << d.id
            << std::setw(15) << to_string(d.kind) << std::setw(10) << d.frame.beta
            << std::fixed << std::setprecision(6) << std::setw(14) << ta
            << std::setw(14) << tb << std::defaultfloat << sees << "\n";
    }
    return kExitOk;
}

int cmd_predict(const Args& a, std::ostream& out) {
    const ConfigDocument doc = load_config_file(a.config_path);
    const mc::RunPlan plan = plan_from(doc, a, false);
    const Setting s = plan.settings.front();

    const JointDistribution dist =
        predict(plan.model, plan.config, s.alpha, s.beta_phase);

    nlohmann::json j = reports::distribution_json(dist);
    j["model"] = std::string(to_string(plan.model));
    j["mode"] = std::string(to_string(dist.mode));
    out << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_run(const Args& a, std::ostream& out) {
    const ConfigDocument doc = load_config_file(a.config_path);
    const mc::RunPlan plan = plan_from(doc, a, true);

    const reports::RunResult result = reports::execute(plan, a.tolerance_k);
    const auto format = a.format == "json" ? reports::RecordsFileFormat::Json
                                           : reports::RecordsFileFormat::Csv;
    const std::string records_path =
        reports::write_outputs(result, a.out_dir, format);
    const std::string report_path =
        (std::filesystem::path(a.out_dir) / "report.json").string();

    out << "model " << to_string(plan.model) << ", "
        << plan.settings.size() << " setting(s) x " << plan.trials_per_setting
        << " trials, seed " << plan.seed << "\n";
    if (result.timing) {
        out << "timing class: " << to_string(*result.timing) << "\n";
    }
    if (result.single_particle) {
        const auto& sp = *result.single_particle;
        out << std::setprecision(6) << "P(exclusive) = " << sp.p_exclusive
            << ", P(joint) = " << sp.p_joint << ", P(none) = " << sp.p_none
            << "\n";
    }
    if (result.chsh) {
        out << std::setprecision(6) << "S = " << result.chsh->s << " +/- "
            << result.chsh->stderr_s << (result.chsh->violates_local_bound
                                             ? " (violates the local bound)"
                                             : " (within the local bound)")
            << "\n";
    } else {
        for (const auto& c : result.correlators) {
            out << std::setprecision(6) << "E(alpha=" << c.setting.alpha
                << ", beta=" << c.setting.beta_phase << ") = " << c.e
                << " +/- " << c.stderr_e << "\n";
        }
    }
    out << "wrote " << records_path << "\n";
    out << "wrote " << report_path << "\n";
    return kExitOk;
}

int cmd_paper_suite(const Args& a, std::ostream& out) {
    suite::SuiteOptions options;
    if (a.trials) {
        if (*a.trials < 1) {
            throw ConfigError({"trials: must be a positive integer"});
        }
        options.trials_single = *a.trials;
        options.trials_chsh = *a.trials;
    }
    if (a.seed) {
        options.seed = *a.seed;
    }
    options.tolerance_k = a.tolerance_k;
    options.ms_tamper = a.ms_tamper;

    const suite::SuiteReport report = suite::run_paper_suite(options);
    out << suite::table(report);

    if (!a.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(a.out_dir, ec);
        if (ec) {
            throw IoError("cannot create output directory '" + a.out_dir +
                          "': " + ec.message());
        }
        const std::string path =
            (std::filesystem::path(a.out_dir) / "suite_report.json").string();
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            throw IoError("cannot open '" + path + "' for writing");
        }
        file << suite::report_json(report).dump(2) << "\n";
        if (!file) {
            throw IoError("write to '" + path + "' failed");
        }
        out << "wrote " << path << "\n";
    }
    return report.all_passed ? kExitOk : kExitScenarioFailure;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two nonlocal theories head to head: preferred-frame quantum "
                 "mechanics vs multisimultaneity, on interferometers with "
                 "moving beam-splitters and detectors"};
    app.name("relnl");
    app.require_subcommand(1);

    Args a;

    CLI::App* classify = app.add_subcommand(
        "classify", "Timing classification of a config's choice events");
    classify->add_option("--config", a.config_path, "Scenario config file")
        ->required();

    CLI::App* predict = app.add_subcommand(
        "predict", "Analytic outcome distribution, no sampling");
    predict->add_option("--config", a.config_path, "Scenario config file")
        ->required();
    predict->add_option("--model", a.model, "qm | ms (overrides the config)");
    predict->add_option("--alpha", a.alpha, "Side A phase in radians");
    predict->add_option("--beta", a.beta, "Side B phase in radians");

    CLI::App* run_cmd = app.add_subcommand(
        "run", "Sample trials and write records plus a report");
    run_cmd->add_option("--config", a.config_path, "Scenario config file")
        ->required();
    run_cmd->add_option("--model", a.model, "qm | ms (overrides the config)");
    run_cmd->add_option("--alpha", a.alpha, "Side A phase in radians");
    run_cmd->add_option("--beta", a.beta, "Side B phase in radians");
    run_cmd->add_option("--trials", a.trials,
                        "Trials per setting (overrides the config)");
    run_cmd->add_option("--seed", a.seed, "Master seed (overrides the config)");
    run_cmd->add_option("--out", a.out_dir, "Output directory")->required();
    run_cmd->add_option("--format", a.format, "Records file format")
        ->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_option("--tolerance-k", a.tolerance_k,
                        "Statistical verdicts use k standard errors");

    CLI::App* suite_cmd = app.add_subcommand(
        "paper-suite",
        "Run every bundled scenario against the reproduction targets");
    suite_cmd->add_option("--trials", a.trials,
                          "Trials per scenario (reduced runs widen tolerances)");
    suite_cmd->add_option("--seed", a.seed, "Master seed");
    suite_cmd->add_option("--tolerance-k", a.tolerance_k,
                          "Statistical verdicts use k standard errors");
    suite_cmd->add_option("--out", a.out_dir,
                          "Directory for the JSON suite report");
    // Negative-control hook: shifts the multisimultaneity probabilities in
    // the agreement scenario, which must then fail.
    suite_cmd->add_option("--tamper-ms", a.ms_tamper, "")->group("");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (classify->parsed()) return cmd_classify(a, out);
        if (predict->parsed()) return cmd_predict(a, out);
        if (run_cmd->parsed()) return cmd_run(a, out);
        return cmd_paper_suite(a, out);
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kExitValidation;
    } catch (const UndefinedRegimeError& e) {
        err << "undefined regime: " << e.what() << "\n";
        return kExitUndefinedRegime;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace relnl::cli
