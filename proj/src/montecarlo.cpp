#include "relnl/montecarlo.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "relnl/errors.hpp"

namespace relnl::mc {

namespace {

constexpr std::uint64_t kWeylStride = 0x9E3779B97F4A7C15ULL;
constexpr double kNormalizationTol = 1e-12;

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
    state_ += kWeylStride;
    return mix64(state_);
}

double SplitMix64::next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t sub_seed(std::uint64_t master_seed, std::size_t setting_index) {
    return mix64(master_seed + kWeylStride * (static_cast<std::uint64_t>(setting_index) + 1));
}

std::vector<TrialRecord> sample(const JointDistribution& dist, std::int64_t n,
                                std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("sample: need n >= 1");
    }
    for (double p : dist.p) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument("sample: negative outcome probability");
        }
    }
    if (std::fabs(dist.total() - 1.0) > kNormalizationTol) {
        throw std::invalid_argument("sample: distribution is not normalized");
    }

    // Last outcome of nonzero probability absorbs any rounding gap at the
    // top of the CDF.
    int last_support = 0;
    for (int i = 0; i < 4; ++i) {
        if (dist.p[i] > 0.0) last_support = i;
    }

    std::vector<TrialRecord> records;
    records.reserve(static_cast<std::size_t>(n));
    SplitMix64 rng(seed);
    for (std::int64_t trial = 0; trial < n; ++trial) {
        const double u = rng.next_double();
        int picked = last_support;
        double acc = 0.0;
        for (int i = 0; i < 4; ++i) {
            acc += dist.p[i];
            if (u < acc) {
                picked = i;
                break;
            }
        }
        records.push_back(TrialRecord{trial, 0, dist.setting,
                                      Outcome{dist.mode, picked}, dist.theory,
                                      dist.timing});
    }
    return records;
}

std::vector<TrialRecord> run(const RunPlan& plan) {
    if (plan.settings.empty()) {
        throw std::invalid_argument("run: settings list must be nonempty");
    }
    if (plan.trials_per_setting < 1) {
        throw std::invalid_argument("run: trials per setting must be >= 1");
    }
    require_valid(plan.config);

    auto sample_setting = [&plan](std::size_t k) {
        const Setting& s = plan.settings[k];
        const JointDistribution dist =
            predict(plan.model, plan.config, s.alpha, s.beta_phase);
        auto records = sample(dist, plan.trials_per_setting, sub_seed(plan.seed, k));
        for (auto& r : records) {
            r.setting_index = static_cast<int>(k);
        }
        return records;
    };

    std::vector<std::future<std::vector<TrialRecord>>> futures;
    futures.reserve(plan.settings.size());
    for (std::size_t k = 0; k < plan.settings.size(); ++k) {
        futures.push_back(std::async(std::launch::async, sample_setting, k));
    }

    std::vector<TrialRecord> merged;
    merged.reserve(plan.settings.size() *
                   static_cast<std::size_t>(plan.trials_per_setting));
    for (auto& f : futures) {
        auto part = f.get();
        merged.insert(merged.end(), part.begin(), part.end());
    }
    return merged;
}

}  // namespace relnl::mc
