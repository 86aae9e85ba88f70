#include "relnl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace relnl::stats {

namespace {

using namespace outcome_index;

double binomial_stderr(double p, std::int64_t n) {
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

struct SettingKey {
    double alpha;
    double beta_phase;
    bool operator<(const SettingKey& o) const {
        if (alpha != o.alpha) return alpha < o.alpha;
        return beta_phase < o.beta_phase;
    }
};

std::map<SettingKey, std::vector<const mc::TrialRecord*>> group_by_setting(
    std::span<const mc::TrialRecord> records) {
    std::map<SettingKey, std::vector<const mc::TrialRecord*>> groups;
    for (const auto& r : records) {
        groups[SettingKey{r.setting.alpha, r.setting.beta_phase}].push_back(&r);
    }
    return groups;
}

Correlator correlator_of_group(const Setting& setting,
                               std::span<const mc::TrialRecord* const> group) {
    Correlator c;
    c.setting = setting;
    for (const auto* r : group) {
        if (r->outcome.mode != Mode::TwoParticle) {
            throw std::invalid_argument("correlator: two-particle records only");
        }
        ++c.counts[static_cast<std::size_t>(r->outcome.index)];
    }
    const double n = static_cast<double>(c.n());
    c.e = (static_cast<double>(c.counts[kPlusPlus] + c.counts[kMinusMinus]) -
           static_cast<double>(c.counts[kPlusMinus] + c.counts[kMinusPlus])) / n;
    c.stderr_e = std::sqrt(std::max(1.0 - c.e * c.e, 0.0) / n);
    return c;
}

/// Marginal P(sigma = +1) of one side within one remote-setting group.
struct Marginal {
    double p;
    std::int64_t n;
};

MarginalScan scan_side(const std::vector<Marginal>& marginals) {
    MarginalScan scan;
    scan.remote_settings = marginals.size();
    for (std::size_t i = 0; i < marginals.size(); ++i) {
        for (std::size_t j = i + 1; j < marginals.size(); ++j) {
            const double delta = std::fabs(marginals[i].p - marginals[j].p);
            if (delta >= scan.max_delta) {
                scan.max_delta = delta;
                scan.stderr_delta = std::sqrt(
                    binomial_stderr(marginals[i].p, marginals[i].n) *
                        binomial_stderr(marginals[i].p, marginals[i].n) +
                    binomial_stderr(marginals[j].p, marginals[j].n) *
                        binomial_stderr(marginals[j].p, marginals[j].n));
            }
        }
    }
    return scan;
}

}  // namespace

Correlator correlator(std::span<const mc::TrialRecord> records) {
    if (records.empty()) {
        throw std::invalid_argument("correlator: no records");
    }
    const Setting setting = records.front().setting;
    for (const auto& r : records) {
        if (!(r.setting == setting)) {
            throw std::invalid_argument("correlator: records mix settings");
        }
    }
    std::vector<const mc::TrialRecord*> group;
    group.reserve(records.size());
    for (const auto& r : records) group.push_back(&r);
    return correlator_of_group(setting, group);
}

Correlator correlator_exact(const JointDistribution& dist) {
    Correlator c;
    c.setting = dist.setting;
    c.e = dist.correlation();
    c.stderr_e = 0.0;
    return c;
}

ChshResult chsh(std::span<const mc::TrialRecord> records,
                const ChshSettings& settings, double k) {
    auto groups = group_by_setting(records);
    ChshResult result;
    result.k = k;
    const auto pairs = settings.pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto it = groups.find(SettingKey{pairs[i].alpha, pairs[i].beta_phase});
        if (it == groups.end() || it->second.empty()) {
            throw std::invalid_argument(
                "chsh: no records for setting pair (alpha=" +
                std::to_string(pairs[i].alpha) +
                ", beta=" + std::to_string(pairs[i].beta_phase) + ")");
        }
        result.correlators[i] = correlator_of_group(pairs[i], it->second);
    }

    const auto& c = result.correlators;
    result.s = c[0].e + c[1].e + c[2].e - c[3].e;
    result.stderr_s = std::sqrt(c[0].stderr_e * c[0].stderr_e +
                                c[1].stderr_e * c[1].stderr_e +
                                c[2].stderr_e * c[2].stderr_e +
                                c[3].stderr_e * c[3].stderr_e);
    result.violates_local_bound = result.s - 2.0 > k * result.stderr_s;
    return result;
}

ChshResult chsh_exact(const std::array<JointDistribution, 4>& dists, double k) {
    ChshResult result;
    result.k = k;
    for (std::size_t i = 0; i < dists.size(); ++i) {
        result.correlators[i] = correlator_exact(dists[i]);
    }
    const auto& c = result.correlators;
    result.s = c[0].e + c[1].e + c[2].e - c[3].e;
    result.stderr_s = 0.0;
    result.violates_local_bound = result.s > 2.0;
    return result;
}

SignalingReport no_signaling_test(std::span<const mc::TrialRecord> records,
                                  double k) {
    for (const auto& r : records) {
        if (r.outcome.mode != Mode::TwoParticle) {
            throw std::invalid_argument(
                "no_signaling_test: two-particle records only");
        }
    }

    // Side A's marginal grouped by the remote setting beta; side B's by the
    // remote alpha.
    std::map<double, std::pair<std::int64_t, std::int64_t>> by_beta, by_alpha;
    for (const auto& r : records) {
        auto& a = by_beta[r.setting.beta_phase];
        a.second += 1;
        if (r.outcome.sigma_a() > 0) a.first += 1;
        auto& b = by_alpha[r.setting.alpha];
        b.second += 1;
        if (r.outcome.sigma_b() > 0) b.first += 1;
    }
    if (by_beta.size() < 2 || by_alpha.size() < 2) {
        throw std::invalid_argument(
            "no_signaling_test: need records covering at least two remote "
            "settings per side");
    }

    const auto marginals = [](const auto& groups) {
        std::vector<Marginal> out;
        for (const auto& [setting, counts] : groups) {
            out.push_back(Marginal{
                static_cast<double>(counts.first) / static_cast<double>(counts.second),
                counts.second});
        }
        return out;
    };

    SignalingReport report;
    report.k = k;
    report.side_a = scan_side(marginals(by_beta));
    report.side_b = scan_side(marginals(by_alpha));
    const bool signaling =
        report.side_a.max_delta > k * report.side_a.stderr_delta ||
        report.side_b.max_delta > k * report.side_b.stderr_delta;
    report.verdict = signaling ? SignalingVerdict::SignalingDetected
                               : SignalingVerdict::ConsistentWithNoSignaling;
    return report;
}

SingleParticleReport single_particle_rates(
    std::span<const mc::TrialRecord> records) {
    if (records.empty()) {
        throw std::invalid_argument("single_particle_rates: no records");
    }
    std::int64_t joint = 0, none = 0, exclusive = 0;
    for (const auto& r : records) {
        if (r.outcome.mode != Mode::SingleParticle) {
            throw std::invalid_argument(
                "single_particle_rates: single-particle records only");
        }
        switch (r.outcome.index) {
            case kJointFire: ++joint; break;
            case kNoFire: ++none; break;
            default: ++exclusive; break;
        }
    }
    SingleParticleReport report;
    report.n = static_cast<std::int64_t>(records.size());
    report.p_joint = static_cast<double>(joint) / static_cast<double>(report.n);
    report.p_none = static_cast<double>(none) / static_cast<double>(report.n);
    report.p_exclusive =
        static_cast<double>(exclusive) / static_cast<double>(report.n);
    report.stderr_joint = binomial_stderr(report.p_joint, report.n);
    report.stderr_none = binomial_stderr(report.p_none, report.n);
    report.stderr_exclusive = binomial_stderr(report.p_exclusive, report.n);
    return report;
}

std::string_view to_string(SignalingVerdict verdict) {
    return verdict == SignalingVerdict::SignalingDetected
               ? "signaling detected"
               : "consistent with no-signaling";
}

}  // namespace relnl::stats
