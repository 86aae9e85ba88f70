#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>

#include "relnl/montecarlo.hpp"

namespace relnl::stats {

/// Correlation estimate at one setting pair.
/// E = (N++ + N-- - N+- - N-+) / N, stderr = sqrt((1 - E^2) / N).
struct Correlator {
    Setting setting{};
    double e{0.0};
    double stderr_e{0.0};
    std::array<std::int64_t, 4> counts{};  // canonical two-particle order

    std::int64_t n() const {
        return counts[0] + counts[1] + counts[2] + counts[3];
    }
};

/// Estimates the correlator from records sharing one setting pair. Throws
/// std::invalid_argument on empty input, mixed settings, or records that are
/// not two-particle.
Correlator correlator(std::span<const mc::TrialRecord> records);

/// Closed-form correlator of an analytic distribution (the N -> infinity
/// limit); stderr is zero and counts stay empty.
Correlator correlator_exact(const JointDistribution& dist);

/// The four setting pairs of the CHSH combination
/// S = E(a,b) + E(a,b') + E(a',b) - E(a',b').
struct ChshSettings {
    double a{0.0};
    double a_prime{std::numbers::pi / 2};
    double b{-std::numbers::pi / 4};
    double b_prime{std::numbers::pi / 4};

    std::array<Setting, 4> pairs() const {
        return {Setting{a, b}, Setting{a, b_prime}, Setting{a_prime, b},
                Setting{a_prime, b_prime}};
    }
};

struct ChshResult {
    double s{0.0};
    double stderr_s{0.0};
    std::array<Correlator, 4> correlators{};  // (a,b), (a,b'), (a',b), (a',b')
    bool violates_local_bound{false};         // s - 2 > k * stderr_s
    double k{4.0};
};

/// Groups records by setting, requires every CHSH pair present, and
/// propagates the stderr in root-sum-square.
ChshResult chsh(std::span<const mc::TrialRecord> records,
                const ChshSettings& settings = {}, double k = 4.0);

/// CHSH from four analytic distributions ordered like ChshSettings::pairs().
ChshResult chsh_exact(const std::array<JointDistribution, 4>& dists,
                      double k = 4.0);

enum class SignalingVerdict { ConsistentWithNoSignaling, SignalingDetected };

/// Marginal scan of one side: its P(sigma = +1) per remote setting, and the
/// largest discrepancy between any two remote settings.
struct MarginalScan {
    double max_delta{0.0};      // max |P(+|remote) - P(+|remote')|
    double stderr_delta{0.0};   // stderr of that worst pair's difference
    std::size_t remote_settings{0};
};

struct SignalingReport {
    MarginalScan side_a;  // P(sigma_a = +1) scanned across remote beta
    MarginalScan side_b;  // P(sigma_b = +1) scanned across remote alpha
    double k{4.0};
    SignalingVerdict verdict{SignalingVerdict::ConsistentWithNoSignaling};
};

/// Flags signaling when either side's marginal moves with the remote setting
/// by more than k standard errors. Requires two-particle records covering at
/// least two remote settings per side.
SignalingReport no_signaling_test(std::span<const mc::TrialRecord> records,
                                  double k = 4.0);

/// Single-particle fire-pattern rates with binomial standard errors.
struct SingleParticleReport {
    double p_joint{0.0};
    double p_none{0.0};
    double p_exclusive{0.0};
    double stderr_joint{0.0};
    double stderr_none{0.0};
    double stderr_exclusive{0.0};
    std::int64_t n{0};
};

SingleParticleReport single_particle_rates(std::span<const mc::TrialRecord> records);

std::string_view to_string(SignalingVerdict verdict);

}  // namespace relnl::stats
