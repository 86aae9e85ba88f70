#pragma once

#include <cstdint>
#include <vector>

#include "relnl/theories.hpp"

namespace relnl::mc {

/// SplitMix64 finalizer: the avalanche mix applied to each point of the
/// Weyl sequence. Exposed because the sub-seed rule is part of the output
/// contract, not an implementation detail.
std::uint64_t mix64(std::uint64_t z);

/// SplitMix64 (Steele/Lea/Flood): a counter-based generator walking a Weyl
/// sequence with stride 0x9E3779B97F4A7C15 through mix64. Stable across
/// platforms and versions; splitting streams is a seed derivation, so runs
/// parallelize without any shared state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    /// Uniform in [0, 1) with the full 53-bit mantissa.
    double next_double();

private:
    std::uint64_t state_;
};

/// Sub-seed rule, fixed for all time: the per-setting seed is the
/// (setting_index + 1)-th output of a SplitMix64 stream seeded with the
/// master seed.
std::uint64_t sub_seed(std::uint64_t master_seed, std::size_t setting_index);

struct TrialRecord {
    std::int64_t trial{0};      // index within its setting
    int setting_index{0};
    Setting setting{};
    Outcome outcome{};
    TheoryModel theory{TheoryModel::PreferredFrameQM};
    std::optional<TimingClass> timing{};
};

struct RunPlan {
    ExperimentConfig config{};
    TheoryModel model{TheoryModel::PreferredFrameQM};
    std::vector<Setting> settings{};
    std::int64_t trials_per_setting{0};
    std::uint64_t seed{0};
};

/// Draws n outcomes from a normalized distribution by inverse CDF over the
/// canonical outcome order. Identical inputs and seed give identical
/// records; outcomes of probability zero are never drawn. Throws
/// std::invalid_argument if the distribution is unnormalized or n < 1.
std::vector<TrialRecord> sample(const JointDistribution& dist, std::int64_t n,
                                std::uint64_t seed);

/// Executes a plan: one analytic prediction and one sampling pass per
/// setting, settings fanned out in parallel. The sub-seed rule makes the
/// merged stream independent of scheduling; records come back sorted by
/// (setting index, trial index).
std::vector<TrialRecord> run(const RunPlan& plan);

}  // namespace relnl::mc
