#include "relnl/suite.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "relnl/scenarios.hpp"

namespace relnl::suite {

namespace {

constexpr double kTwoRootTwo = 2.0 * std::numbers::sqrt2;
constexpr double kAnalyticTol = 1e-12;
constexpr std::int64_t kPlantedTrials = 10000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

class Checker {
public:
    Checker(std::string name, std::string criterion) {
        result_.name = std::move(name);
        result_.criterion = std::move(criterion);
    }

    void require(bool ok, const std::string& what) {
        result_.checks.push_back((ok ? "ok: " : "FAIL: ") + what);
        if (!ok) result_.passed = false;
    }

    void close(const std::string& what, double got, double want, double tol) {
        require(std::fabs(got - want) <= tol,
                what + " = " + fmt(got) + " (target " + fmt(want) + " within " +
                    fmt(tol) + ")");
    }

    void exact(const std::string& what, double got, double want) {
        require(got == want,
                what + " = " + fmt(got) + " (target exactly " + fmt(want) + ")");
    }

    ScenarioResult finish(double elapsed) {
        result_.elapsed_seconds = elapsed;
        return std::move(result_);
    }

private:
    ScenarioResult result_;
};

double binomial_3sigma(double p, std::int64_t n) {
    return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double uniform(mc::SplitMix64& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.next_double();
}

reports::RunResult run_single(const ExperimentConfig& cfg, TheoryModel model,
                              const SuiteOptions& o) {
    mc::RunPlan plan;
    plan.config = cfg;
    plan.model = model;
    plan.settings = {default_setting(cfg)};
    plan.trials_per_setting = o.trials_single;
    plan.seed = o.seed;
    return reports::execute(plan, o.tolerance_k);
}

reports::RunResult run_chsh(const ExperimentConfig& cfg, TheoryModel model,
                            const SuiteOptions& o) {
    const auto pairs = stats::ChshSettings{}.pairs();
    mc::RunPlan plan;
    plan.config = cfg;
    plan.model = model;
    plan.settings.assign(pairs.begin(), pairs.end());
    plan.trials_per_setting = o.trials_chsh;
    plan.seed = o.seed;
    return reports::execute(plan, o.tolerance_k);
}

ScenarioResult fig1_moving_ms(const SuiteOptions& o) {
    Checker c("fig1-moving-ms", "1");
    const auto r = run_single(scenarios::fig1(0.1),
                              TheoryModel::Multisimultaneity, o);

    c.require(r.timing == TimingClass::BeforeBefore,
              "timing class is before-before");
    const auto& dist = r.analytic.front();
    c.close("analytic P(joint)", dist.p[outcome_index::kJointFire], 0.25,
            kAnalyticTol);
    c.close("analytic P(none)", dist.p[outcome_index::kNoFire], 0.25,
            kAnalyticTol);

    const auto& sp = *r.single_particle;
    c.close("P(joint)", sp.p_joint, 0.25, binomial_3sigma(0.25, sp.n));
    c.close("P(none)", sp.p_none, 0.25, binomial_3sigma(0.25, sp.n));
    c.close("P(exclusive)", sp.p_exclusive, 0.5, binomial_3sigma(0.5, sp.n));
    c.require(r.elapsed_seconds < 5.0,
              "runtime " + fmt(r.elapsed_seconds) + "s under the 5s target");
    return c.finish(r.elapsed_seconds);
}

ScenarioResult fig1_qm(const SuiteOptions& o, double detector_beta,
                       const std::string& name) {
    Checker c(name, "2");
    const auto r = run_single(scenarios::fig1(detector_beta),
                              TheoryModel::PreferredFrameQM, o);

    const auto& dist = r.analytic.front();
    c.close("analytic P(exclusive_plus)",
            dist.p[outcome_index::kExclusivePlus], 0.5, kAnalyticTol);
    c.close("analytic P(exclusive_minus)",
            dist.p[outcome_index::kExclusiveMinus], 0.5, kAnalyticTol);

    const auto& sp = *r.single_particle;
    c.exact("P(exclusive)", sp.p_exclusive, 1.0);
    c.exact("P(joint)", sp.p_joint, 0.0);
    c.exact("P(none)", sp.p_none, 0.0);
    return c.finish(r.elapsed_seconds);
}

ScenarioResult fig1_rest_ms(const SuiteOptions& o) {
    Checker c("fig1-rest-ms", "3");
    const auto r = run_single(scenarios::fig1(0.0),
                              TheoryModel::Multisimultaneity, o);

    c.require(r.timing == TimingClass::StandardBeforeAfter,
              "timing class is standard before-after");
    const auto& sp = *r.single_particle;
    c.exact("P(exclusive)", sp.p_exclusive, 1.0);
    c.exact("P(joint)", sp.p_joint, 0.0);
    c.exact("P(none)", sp.p_none, 0.0);
    return c.finish(r.elapsed_seconds);
}

ScenarioResult chsh_before_before(const SuiteOptions& o) {
    Checker c("chsh-bb-ms", "4");
    const auto r = run_chsh(scenarios::two_particle(0.1),
                            TheoryModel::Multisimultaneity, o);

    c.require(r.timing == TimingClass::BeforeBefore,
              "timing class is before-before");
    const std::array<JointDistribution, 4> dists = {
        r.analytic[0], r.analytic[1], r.analytic[2], r.analytic[3]};
    c.close("analytic S", stats::chsh_exact(dists).s, 0.0, kAnalyticTol);

    static constexpr std::array<const char*, 4> kLabels = {
        "E(a,b)", "E(a,b')", "E(a',b)", "E(a',b')"};
    const auto& ch = *r.chsh;
    for (std::size_t i = 0; i < 4; ++i) {
        c.close(kLabels[i], ch.correlators[i].e, 0.0,
                o.tolerance_k * ch.correlators[i].stderr_e);
    }
    c.require(!ch.violates_local_bound,
              "S = " + fmt(ch.s) + " within the local bound");
    c.require(r.signaling &&
                  r.signaling->verdict ==
                      stats::SignalingVerdict::ConsistentWithNoSignaling,
              "empirical marginals consistent with no-signaling");
    return c.finish(r.elapsed_seconds);
}

ScenarioResult chsh_correlated(const SuiteOptions& o, TheoryModel model,
                               const std::string& name, bool runtime_target) {
    Checker c(name, "5");
    const auto r = run_chsh(scenarios::two_particle(0.0), model, o);

    c.require(r.timing == TimingClass::StandardBeforeAfter,
              "timing class is standard before-after");
    const std::array<JointDistribution, 4> dists = {
        r.analytic[0], r.analytic[1], r.analytic[2], r.analytic[3]};
    c.close("analytic S", stats::chsh_exact(dists).s, kTwoRootTwo, kAnalyticTol);

    const auto& ch = *r.chsh;
    c.close("sampled S", ch.s, kTwoRootTwo, o.tolerance_k * ch.stderr_s);
    c.require(ch.violates_local_bound,
              "S = " + fmt(ch.s) + " violates the local bound by more than " +
                  fmt(o.tolerance_k) + " stderr");
    c.require(r.signaling &&
                  r.signaling->verdict ==
                      stats::SignalingVerdict::ConsistentWithNoSignaling,
              "empirical marginals consistent with no-signaling");
    if (runtime_target) {
        c.require(r.elapsed_seconds < 10.0,
                  "runtime " + fmt(r.elapsed_seconds) + "s under the 10s target");
    }
    return c.finish(r.elapsed_seconds);
}

/// A random valid config whose classified timing is StandardBeforeAfter,
/// drawn by rejection over device velocities, choice-event times, phases,
/// visibility and reflectivity.
ExperimentConfig random_standard_config(mc::SplitMix64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const bool two = rng.next_double() < 0.5;
        ExperimentConfig cfg =
            two ? scenarios::two_particle(0.0) : scenarios::fig1(0.0);

        cfg.visibility = uniform(rng, 0.0, 1.0);
        cfg.preferred_frame = Frame{uniform(rng, -0.9, 0.9)};
        if (rng.next_double() < 0.25) cfg.paths_indistinguishable = false;

        if (two) {
            if (rng.next_double() < 0.5) {
                cfg.placement = ChoicePlacement::AtDetector;
            }
            cfg.devices[1].event = Event{uniform(rng, 9.5, 10.5), -1.0};
            cfg.devices[1].frame = Frame{uniform(rng, -0.9, 0.9)};
            cfg.devices[2].event = Event{uniform(rng, 9.5, 10.5), 1.0};
            cfg.devices[2].frame = Frame{uniform(rng, -0.9, 0.9)};
            const Event station_a{uniform(rng, 10.6, 11.6), -2.0};
            const Frame frame_a{uniform(rng, -0.9, 0.9)};
            const Event station_b{uniform(rng, 10.6, 11.6), 2.0};
            const Frame frame_b{uniform(rng, -0.9, 0.9)};
            cfg.devices[3].event = station_a;
            cfg.devices[3].frame = frame_a;
            cfg.devices[4].event = station_a;
            cfg.devices[4].frame = frame_a;
            cfg.devices[5].event = station_b;
            cfg.devices[5].frame = frame_b;
            cfg.devices[6].event = station_b;
            cfg.devices[6].frame = frame_b;
        } else {
            cfg.devices[1].reflectivity = uniform(rng, 0.0, 1.0);
            cfg.devices[3].event = Event{uniform(rng, 9.5, 10.5), 1.0};
            cfg.devices[3].frame = Frame{uniform(rng, -0.9, 0.9)};
            cfg.devices[4].event = Event{uniform(rng, 9.5, 10.5), -1.0};
            cfg.devices[4].frame = Frame{uniform(rng, -0.9, 0.9)};
        }

        if (classify_timing(cfg) == TimingClass::StandardBeforeAfter) {
            return cfg;
        }
    }
    throw std::logic_error("random_standard_config: rejection sampling stalled");
}

ScenarioResult ms_qm_agreement(const SuiteOptions& o) {
    const auto t0 = Clock::now();
    Checker c("ms-qm-agreement", "6");

    mc::SplitMix64 rng(mc::sub_seed(o.seed, 97));
    constexpr int kConfigs = 200;
    double worst = 0.0;
    for (int i = 0; i < kConfigs; ++i) {
        const ExperimentConfig cfg = random_standard_config(rng);
        const double alpha = uniform(rng, -std::numbers::pi, std::numbers::pi);
        const double beta = uniform(rng, -std::numbers::pi, std::numbers::pi);

        const auto qm =
            predict(TheoryModel::PreferredFrameQM, cfg, alpha, beta);
        auto ms = predict(TheoryModel::Multisimultaneity, cfg, alpha, beta);
        ms.p[0] += o.ms_tamper;
        ms.p[1] -= o.ms_tamper;

        for (int j = 0; j < 4; ++j) {
            worst = std::max(worst, std::fabs(ms.p[j] - qm.p[j]));
        }
    }
    c.require(worst <= 1e-12,
              "max |ms - qm| over 200 standard-timing configs = " + fmt(worst) +
                  " (must be <= 1e-12)");
    return c.finish(seconds_since(t0));
}

ScenarioResult no_signaling(const SuiteOptions& o) {
    const auto t0 = Clock::now();
    Checker c("no-signaling", "7");

    // Analytic marginals at 1/2 for both engines, both timing regimes, all
    // standard settings.
    double worst = 0.0;
    for (const TheoryModel model : {TheoryModel::PreferredFrameQM,
                                    TheoryModel::Multisimultaneity}) {
        for (const double splitter_beta : {0.0, 0.1}) {
            const ExperimentConfig cfg = scenarios::two_particle(splitter_beta);
            for (const Setting& s : stats::ChshSettings{}.pairs()) {
                const auto dist = predict(model, cfg, s.alpha, s.beta_phase);
                worst = std::max(worst, std::fabs(dist.marginal_plus(0) - 0.5));
                worst = std::max(worst, std::fabs(dist.marginal_plus(1) - 0.5));
            }
        }
    }
    c.require(worst <= 1e-12,
              "analytic marginals flat at 1/2 (worst deviation " + fmt(worst) +
                  ")");

    // Planted violation: side A's marginal depends on the remote setting by
    // 0.2, far outside any statistical window. The scan must say so.
    JointDistribution flat;
    flat.mode = Mode::TwoParticle;
    flat.p = {0.25, 0.25, 0.25, 0.25};
    JointDistribution skewed = flat;
    skewed.p = {0.35, 0.35, 0.15, 0.15};

    std::vector<mc::TrialRecord> planted;
    const std::array<Setting, 4> settings = {Setting{0.0, 0.0}, Setting{0.0, 1.0},
                                             Setting{1.0, 0.0}, Setting{1.0, 1.0}};
    for (std::size_t i = 0; i < settings.size(); ++i) {
        JointDistribution dist = settings[i].beta_phase > 0.5 ? skewed : flat;
        dist.setting = settings[i];
        auto part = mc::sample(dist, kPlantedTrials, mc::sub_seed(o.seed, 50 + i));
        planted.insert(planted.end(), part.begin(), part.end());
    }
    const auto report = stats::no_signaling_test(planted, o.tolerance_k);
    c.require(report.verdict == stats::SignalingVerdict::SignalingDetected,
              "planted marginal violation detected");
    c.close("planted side-A marginal shift", report.side_a.max_delta, 0.2,
            0.05);
    return c.finish(seconds_since(t0));
}

ScenarioResult kinematics_properties(const SuiteOptions& o) {
    const auto t0 = Clock::now();
    Checker c("kinematics-properties", "8");

    mc::SplitMix64 rng(mc::sub_seed(o.seed, 88));

    double worst_interval = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Event a{uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0)};
        const Event b{uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0)};
        const Frame f{uniform(rng, -0.99, 0.99)};
        const double lab = classify_interval(a, b).squared;
        const double boosted =
            classify_interval(boost_event(a, f), boost_event(b, f)).squared;
        worst_interval = std::max(worst_interval, std::fabs(lab - boosted));
    }
    c.require(worst_interval <= 1e-9,
              "interval invariant across 1000 random boosts (worst drift " +
                  fmt(worst_interval) + ")");

    int timelike_ok = 0;
    for (int i = 0; i < 1000; ++i) {
        const double dt = uniform(rng, 1.0, 10.0) *
                          (rng.next_double() < 0.5 ? -1.0 : 1.0);
        const double dx = uniform(rng, 0.0, 0.99 * std::fabs(dt)) *
                          (rng.next_double() < 0.5 ? -1.0 : 1.0);
        const Event a{uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0)};
        const Event b{a.t + dt, a.x + dx};
        const Frame f{uniform(rng, -0.99, 0.99)};
        if (order_in_frame(a, b, f) == order_in_frame(a, b, Frame{0.0})) {
            ++timelike_ok;
        }
    }
    c.require(timelike_ok == 1000,
              "timelike order invariant in 1000 random frames (" +
                  std::to_string(timelike_ok) + "/1000)");

    int flips_ok = 0;
    for (int i = 0; i < 1000; ++i) {
        const double dx = uniform(rng, 1.0, 10.0) *
                          (rng.next_double() < 0.5 ? -1.0 : 1.0);
        const double dt = uniform(rng, 0.01, 0.99 * std::fabs(dx)) *
                          (rng.next_double() < 0.5 ? -1.0 : 1.0);
        const Event a{uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0)};
        const Event b{a.t + dt, a.x + dx};
        const auto beta = order_flip_boost(a, b);
        if (!beta || !(std::fabs(*beta) < 1.0)) continue;
        const Order lab = order_in_frame(a, b, Frame{0.0});
        const Order moved = order_in_frame(a, b, Frame{*beta});
        if (lab != Order::Simultaneous && moved != Order::Simultaneous &&
            lab != moved) {
            ++flips_ok;
        }
    }
    c.require(flips_ok == 1000,
              "order flips under the returned boost for 1000 spacelike pairs (" +
                  std::to_string(flips_ok) + "/1000)");
    return c.finish(seconds_since(t0));
}

ScenarioResult rerun_determinism(const SuiteOptions& o) {
    const auto t0 = Clock::now();
    Checker c("rerun-determinism", "9");

    mc::RunPlan plan;
    plan.config = scenarios::fig1(0.1);
    plan.model = TheoryModel::Multisimultaneity;
    plan.settings = {default_setting(plan.config)};
    plan.trials_per_setting = std::min<std::int64_t>(o.trials_single, 20000);
    plan.seed = o.seed;

    const auto first = reports::execute(plan, o.tolerance_k);
    const auto second = reports::execute(plan, o.tolerance_k);
    c.require(reports::records_csv(first) == reports::records_csv(second),
              "records byte-identical across reruns");
    c.require(reports::report_json(first) == reports::report_json(second),
              "report identical across reruns");
    return c.finish(seconds_since(t0));
}

}  // namespace

SuiteReport run_paper_suite(const SuiteOptions& options) {
    SuiteReport report;
    report.options = options;
    report.widened_tolerances =
        options.trials_single < 100000 || options.trials_chsh < 50000;

    report.scenarios.push_back(fig1_moving_ms(options));
    report.scenarios.push_back(fig1_qm(options, 0.0, "fig1-rest-qm"));
    report.scenarios.push_back(fig1_qm(options, 0.1, "fig1-moving-qm"));
    report.scenarios.push_back(fig1_rest_ms(options));
    report.scenarios.push_back(chsh_before_before(options));
    report.scenarios.push_back(chsh_correlated(
        options, TheoryModel::PreferredFrameQM, "chsh-qm", true));
    report.scenarios.push_back(chsh_correlated(
        options, TheoryModel::Multisimultaneity, "chsh-std-ms", false));
    report.scenarios.push_back(ms_qm_agreement(options));
    report.scenarios.push_back(no_signaling(options));
    report.scenarios.push_back(kinematics_properties(options));
    report.scenarios.push_back(rerun_determinism(options));

    for (const auto& s : report.scenarios) {
        report.all_passed = report.all_passed && s.passed;
    }
    return report;
}

nlohmann::json report_json(const SuiteReport& report) {
    nlohmann::json scenarios = nlohmann::json::array();
    for (const auto& s : report.scenarios) {
        scenarios.push_back({
            {"name", s.name},
            {"criterion", s.criterion},
            {"passed", s.passed},
            {"checks", s.checks},
            {"elapsed_seconds", s.elapsed_seconds},
        });
    }
    return {
        {"format", "relnl-suite-v1"},
        {"options",
         {
             {"trials_single", report.options.trials_single},
             {"trials_chsh", report.options.trials_chsh},
             {"tolerance_k", report.options.tolerance_k},
             {"seed", report.options.seed},
         }},
        {"widened_tolerances", report.widened_tolerances},
        {"all_passed", report.all_passed},
        {"scenarios", std::move(scenarios)},
    };
}

std::string table(const SuiteReport& report) {
    std::size_t width = 8;
    for (const auto& s : report.scenarios) {
        width = std::max(width, s.name.size());
    }

    std::ostringstream os;
    os << "reproduction suite: seed " << report.options.seed << ", trials "
       << report.options.trials_single << " single / "
       << report.options.trials_chsh << " per CHSH setting, k = "
       << report.options.tolerance_k << "\n\n";
    os << "  " << std::left << std::setw(static_cast<int>(width + 2))
       << "scenario" << std::setw(6) << "crit" << std::setw(10) << "time"
       << "result\n";

    int passed = 0;
    for (const auto& s : report.scenarios) {
        std::ostringstream time;
        time << std::fixed << std::setprecision(3) << s.elapsed_seconds << "s";
        os << "  " << std::left << std::setw(static_cast<int>(width + 2))
           << s.name << std::setw(6) << s.criterion << std::setw(10)
           << time.str() << (s.passed ? "PASS" : "FAIL") << "\n";
        if (s.passed) {
            ++passed;
        } else {
            for (const auto& line : s.checks) {
                os << "      " << line << "\n";
            }
        }
    }

    if (report.widened_tolerances) {
        os << "\nnote: trial counts below the canonical 100000/50000; every "
              "statistical window is correspondingly wider\n";
    }
    os << "\noverall: " << (report.all_passed ? "PASS" : "FAIL") << " ("
       << passed << "/" << report.scenarios.size() << " scenarios)\n";
    return os.str();
}

}  // namespace relnl::suite
