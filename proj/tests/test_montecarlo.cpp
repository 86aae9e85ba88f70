#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <doctest.h>

#include "relnl/errors.hpp"
#include "relnl/scenarios.hpp"
#include "relnl/stats.hpp"

using namespace relnl;
using namespace relnl::outcome_index;

namespace {

bool records_equal(const std::vector<mc::TrialRecord>& a,
                   const std::vector<mc::TrialRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].trial != b[i].trial) return false;
        if (a[i].setting_index != b[i].setting_index) return false;
        if (!(a[i].setting == b[i].setting)) return false;
        if (!(a[i].outcome == b[i].outcome)) return false;
        if (a[i].theory != b[i].theory) return false;
        if (a[i].timing != b[i].timing) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("splitmix64 emits the published stream") {
    mc::SplitMix64 zero(0);
    CHECK(zero.next() == 0xe220a8397b1dcdafULL);
    CHECK(zero.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(zero.next() == 0x06c45d188009454fULL);
    CHECK(zero.next() == 0xf88bb8a8724c81ecULL);

    mc::SplitMix64 seeded(42);
    CHECK(seeded.next() == 0xbdd732262feb6e95ULL);
    CHECK(seeded.next() == 0x28efe333b266f103ULL);
    CHECK(seeded.next() == 0x47526757130f9f52ULL);
    CHECK(seeded.next() == 0x581ce1ff0e4ae394ULL);
}

TEST_CASE("next_double: frozen values, always in [0, 1)") {
    mc::SplitMix64 rng(42);
    CHECK(rng.next_double() == 0.7415648787718233);
    CHECK(rng.next_double() == 0.1599103928769201);
    CHECK(rng.next_double() == 0.27860113025513866);
    CHECK(rng.next_double() == 0.34419071652363753);

    mc::SplitMix64 walker(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = walker.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("sub_seed is the k+1-th output of the master stream") {
    CHECK(mc::sub_seed(42, 0) == 0xbdd732262feb6e95ULL);
    CHECK(mc::sub_seed(42, 1) == 0x28efe333b266f103ULL);
    CHECK(mc::sub_seed(42, 2) == 0x47526757130f9f52ULL);

    mc::SplitMix64 master(991);
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(mc::sub_seed(991, k) == master.next());
    }
}

TEST_CASE("sample is deterministic and indexes trials from zero") {
    const auto dist = qm_predict(scenarios::two_particle(0.0), 0.0, 0.5);
    const auto a = mc::sample(dist, 500, 42);
    const auto b = mc::sample(dist, 500, 42);
    REQUIRE(a.size() == 500);
    CHECK(records_equal(a, b));
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].trial == static_cast<std::int64_t>(i));
        CHECK(a[i].setting_index == 0);
        CHECK(a[i].setting == dist.setting);
    }

    const auto c = mc::sample(dist, 500, 43);
    CHECK(!records_equal(a, c));
}

TEST_CASE("outcomes of probability zero are never drawn") {
    const auto dist = qm_predict(scenarios::fig1(0.0), 0.0, 0.0);
    REQUIRE(dist.p[kJointFire] == 0.0);
    REQUIRE(dist.p[kNoFire] == 0.0);
    for (const auto& r : mc::sample(dist, 20000, 42)) {
        REQUIRE(r.outcome.index < 2);
    }
}

TEST_CASE("sample rejects bad inputs") {
    auto dist = qm_predict(scenarios::fig1(0.0), 0.0, 0.0);
    CHECK_THROWS_AS(mc::sample(dist, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(mc::sample(dist, -5, 1), std::invalid_argument);

    auto skew = dist;
    skew.p[0] = 0.9;  // total 1.4
    CHECK_THROWS_AS(mc::sample(skew, 10, 1), std::invalid_argument);

    auto negative = dist;
    negative.p[0] = -0.25;
    negative.p[1] = 1.25;
    CHECK_THROWS_AS(mc::sample(negative, 10, 1), std::invalid_argument);
}

TEST_CASE("run fans settings out and merges them back in order") {
    mc::RunPlan plan;
    plan.config = scenarios::two_particle(0.0);
    plan.model = TheoryModel::PreferredFrameQM;
    plan.settings = {Setting{0.0, 0.0}, Setting{0.0, 0.5}, Setting{1.0, 0.5},
                     Setting{1.0, -0.5}};
    plan.trials_per_setting = 500;
    plan.seed = 42;

    const auto records = mc::run(plan);
    REQUIRE(records.size() == 2000);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const int k = static_cast<int>(i / 500);
        REQUIRE(records[i].setting_index == k);
        REQUIRE(records[i].trial == static_cast<std::int64_t>(i % 500));
        REQUIRE(records[i].setting == plan.settings[static_cast<std::size_t>(k)]);
    }
}

TEST_CASE("run equals per-setting sample under the sub-seed rule") {
    mc::RunPlan plan;
    plan.config = scenarios::two_particle(0.1);
    plan.model = TheoryModel::Multisimultaneity;
    plan.settings = {Setting{0.0, 0.0}, Setting{0.3, 0.7}};
    plan.trials_per_setting = 300;
    plan.seed = 9001;

    const auto merged = mc::run(plan);
    REQUIRE(merged.size() == 600);
    for (std::size_t k = 0; k < plan.settings.size(); ++k) {
        const auto& s = plan.settings[k];
        const auto dist = predict(plan.model, plan.config, s.alpha, s.beta_phase);
        const auto part = mc::sample(dist, 300, mc::sub_seed(9001, k));
        for (std::size_t i = 0; i < part.size(); ++i) {
            const auto& got = merged[k * 300 + i];
            REQUIRE(got.outcome == part[i].outcome);
            REQUIRE(got.timing == dist.timing);
        }
    }
}

TEST_CASE("joint-fire frequency converges at canonical statistics") {
    const auto dist = predict(TheoryModel::Multisimultaneity,
                              scenarios::fig1(0.1), 0.0, 0.0);
    std::int64_t joint = 0;
    for (const auto& r : mc::sample(dist, 100000, 7)) {
        if (r.outcome.index == kJointFire) ++joint;
    }
    const double freq = static_cast<double>(joint) / 100000.0;
    CHECK(std::fabs(freq - 0.25) <= 0.0041);  // 3 sigma binomial
}

TEST_CASE("empirical frequencies track 100 random distributions") {
    mc::SplitMix64 gen(2025);
    const std::int64_t n = 100000;
    int within = 0;
    for (int i = 0; i < 100; ++i) {
        std::array<double, 4> p{};
        double total = 0.0;
        for (double& entry : p) {
            entry = gen.next_double() < 0.15 ? 0.0 : 0.05 + 0.95 * gen.next_double();
            total += entry;
        }
        if (total == 0.0) {
            p[0] = 1.0;
            total = 1.0;
        }
        for (double& entry : p) entry /= total;

        JointDistribution dist;
        dist.mode = Mode::TwoParticle;
        dist.p = p;

        std::array<std::int64_t, 4> counts{};
        for (const auto& r : mc::sample(dist, n, mc::sub_seed(2025, i))) {
            ++counts[static_cast<std::size_t>(r.outcome.index)];
        }
        bool all_close = true;
        for (int j = 0; j < 4; ++j) {
            const double freq = static_cast<double>(counts[j]) / static_cast<double>(n);
            const double window =
                3.0 * std::sqrt(p[j] * (1.0 - p[j]) / static_cast<double>(n));
            if (std::fabs(freq - p[j]) > window) all_close = false;
        }
        if (all_close) ++within;
    }
    // Four checks at 3 sigma each leave a hair under 99% per distribution.
    CHECK(within >= 99);
}

TEST_CASE("run rejects empty plans and invalid configs") {
    mc::RunPlan plan;
    plan.config = scenarios::fig1(0.0);
    plan.trials_per_setting = 10;
    CHECK_THROWS_AS(mc::run(plan), std::invalid_argument);  // no settings

    plan.settings = {Setting{}};
    plan.trials_per_setting = 0;
    CHECK_THROWS_AS(mc::run(plan), std::invalid_argument);

    plan.trials_per_setting = 10;
    plan.config.devices[1].reflectivity = 1.5;
    CHECK_THROWS_AS(mc::run(plan), ConfigError);
}
