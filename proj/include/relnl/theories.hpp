#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "relnl/experiment.hpp"

namespace relnl {

enum class TheoryModel { PreferredFrameQM, Multisimultaneity };

/// Canonical outcome indices. Both engines, the sampler and the estimators
/// share this ordering; the inverse-CDF sampler depends on it being stable.
namespace outcome_index {
// two-particle: joint detector signs (side A, side B)
inline constexpr int kPlusPlus = 0;
inline constexpr int kPlusMinus = 1;
inline constexpr int kMinusPlus = 2;
inline constexpr int kMinusMinus = 3;
// single-particle: fire pattern of D(+), D(-)
inline constexpr int kExclusivePlus = 0;
inline constexpr int kExclusiveMinus = 1;
inline constexpr int kJointFire = 2;
inline constexpr int kNoFire = 3;
}  // namespace outcome_index

/// One trial's detector result, encoded against the canonical ordering.
struct Outcome {
    Mode mode{Mode::SingleParticle};
    int index{0};

    static Outcome two_particle(int sigma_a, int sigma_b);
    static Outcome single_particle(bool plus_fired, bool minus_fired);

    int sigma_a() const;       // two-particle, +1 or -1
    int sigma_b() const;       // two-particle, +1 or -1
    bool plus_fired() const;   // single-particle
    bool minus_fired() const;  // single-particle

    /// Stable serialization code: "++", "+-", "-+", "--" for two-particle;
    /// "exclusive_plus", "exclusive_minus", "joint", "none" otherwise.
    std::string_view code() const;

    static Outcome from_code(Mode mode, std::string_view code);

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// A local-setting pair: alpha on side A, beta on side B (radians).
struct Setting {
    double alpha{0.0};
    double beta_phase{0.0};

    friend bool operator==(const Setting&, const Setting&) = default;
};

/// Probabilities over the four canonical outcomes of one mode, stamped with
/// the engine and settings that produced them. `timing` is the timing class
/// the multisimultaneity rule consulted; engines that never consult one
/// (preferred-frame QM, single-site setups) leave it empty.
struct JointDistribution {
    Mode mode{Mode::SingleParticle};
    std::array<double, 4> p{};
    TheoryModel theory{TheoryModel::PreferredFrameQM};
    Setting setting{};
    std::optional<TimingClass> timing{};

    double total() const { return p[0] + p[1] + p[2] + p[3]; }

    /// Two-particle correlation E = sum sigma_a sigma_b P.
    double correlation() const;

    /// Marginal P(sigma = +1) of one side (two-particle).
    double marginal_plus(int side) const;
};

/// Preferred-frame quantum prediction. Two-particle:
/// P(sa, sb) = (1 + sa sb V cos(alpha + beta)) / 4, with the fringe washed
/// out (V = 0) when the path pairs are distinguishable. Single-particle:
/// exclusive firing split by the beam-splitter reflectivity. Independent of
/// every device velocity and of the preferred frame itself: the frame is
/// narratively required but observationally hidden.
JointDistribution qm_predict(const ExperimentConfig& cfg, double alpha,
                             double beta_phase);

/// Multisimultaneity prediction for a given timing classification. Each
/// choice device correlates with the remote side only if, in its own rest
/// frame, the remote choice already happened (and the path pairs are
/// indistinguishable); otherwise it chooses on local parameters alone.
/// Boundary timing throws UndefinedRegimeError whenever the rule would
/// actually need it.
JointDistribution ms_predict(const ExperimentConfig& cfg, double alpha,
                             double beta_phase, TimingClass timing);

/// Dispatcher: routes to qm_predict, or classifies the timing and routes to
/// ms_predict. Single-site setups (single-particle with the choice at the
/// beam-splitter) skip classification; the multisimultaneity rule is vacuous
/// there and reduces to the quantum prediction.
JointDistribution predict(TheoryModel model, const ExperimentConfig& cfg,
                          double alpha, double beta_phase,
                          double tol = kSimultaneityTol);

std::string_view to_string(TheoryModel model);

/// Parses "qm" / "ms" (also accepts the long names). Throws ConfigError on
/// anything else.
TheoryModel theory_from_string(std::string_view name);

}  // namespace relnl
