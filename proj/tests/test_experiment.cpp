#include <algorithm>

#include <doctest.h>

#include "relnl/errors.hpp"
#include "relnl/scenarios.hpp"

using namespace relnl;

namespace {

bool mentions(const std::vector<std::string>& violations, const char* needle) {
    return std::any_of(violations.begin(), violations.end(),
                       [needle](const std::string& v) {
                           return v.find(needle) != std::string::npos;
                       });
}

}  // namespace

TEST_CASE("canonical configs validate cleanly") {
    CHECK(validate(scenarios::fig1(0.0)).empty());
    CHECK(validate(scenarios::fig1(0.1)).empty());
    CHECK(validate(scenarios::two_particle(0.0)).empty());
    CHECK(validate(scenarios::two_particle(0.1)).empty());
}

TEST_CASE("validation reports every violation at once") {
    ExperimentConfig cfg = scenarios::fig1(0.0);
    cfg.devices[3].frame = Frame{1.2};
    cfg.devices[4].id = "src";
    cfg.devices[1].reflectivity = 1.5;
    cfg.visibility = -0.25;

    const auto violations = validate(cfg);
    CHECK(violations.size() == 4);
    CHECK(mentions(violations, "frame speed violation"));
    CHECK(mentions(violations, "duplicate device id"));
    CHECK(mentions(violations, "reflectivity"));
    CHECK(mentions(violations, "visibility"));
}

TEST_CASE("device count rules per mode") {
    ExperimentConfig cfg = scenarios::fig1(0.0);
    cfg.devices.pop_back();
    CHECK(mentions(validate(cfg), "requires exactly 2 detector"));

    ExperimentConfig two = scenarios::two_particle(0.0);
    two.devices.push_back(two.devices.back());
    two.devices.back().id = "extra";
    CHECK(mentions(validate(two), "requires exactly 4 detector"));

    // Delay lines are unconstrained.
    ExperimentConfig with_delay = scenarios::two_particle(0.0);
    Device delay;
    delay.id = "loop";
    delay.kind = DeviceKind::DelayLine;
    delay.event = Event{3.0, 0.5};
    with_delay.devices.push_back(delay);
    CHECK(validate(with_delay).empty());
}

TEST_CASE("two-particle collapse at detection needs shared stations") {
    ExperimentConfig cfg = scenarios::two_particle(0.0);
    cfg.placement = ChoicePlacement::AtDetector;
    CHECK(validate(cfg).empty());

    cfg.devices[4].event = Event{11.05, -2.0};
    CHECK(mentions(validate(cfg), "side A detectors must share"));
}

TEST_CASE("require_valid throws ConfigError with the violation list") {
    ExperimentConfig cfg = scenarios::fig1(0.0);
    cfg.devices[3].frame = Frame{-1.0};
    CHECK_THROWS_AS(require_valid(cfg), ConfigError);
    try {
        require_valid(cfg);
    } catch (const ConfigError& e) {
        CHECK(e.violations().size() == 1);
        CHECK(mentions(e.violations(), "frame speed violation"));
    }
}

TEST_CASE("choice_events picks sites by placement") {
    const auto [a, b] = choice_events(scenarios::fig1(0.1));
    CHECK(a.device_id == "d_plus");
    CHECK(b.device_id == "d_minus");
    CHECK(a.frame.beta == 0.1);

    const auto [sa, sb] = choice_events(scenarios::two_particle(0.1));
    CHECK(sa.device_id == "bs_a");
    CHECK(sb.device_id == "bs_b");

    ExperimentConfig stations = scenarios::two_particle(0.1);
    stations.placement = ChoicePlacement::AtDetector;
    const auto [da, db] = choice_events(stations);
    CHECK(da.device_id == "da_plus");
    CHECK(db.device_id == "db_plus");
}

TEST_CASE("single-particle beam-splitter placement has one choice site") {
    ExperimentConfig cfg = scenarios::fig1(0.0);
    cfg.placement = ChoicePlacement::AtBeamSplitter;
    CHECK_THROWS_AS(choice_events(cfg), ConfigError);
    CHECK_THROWS_AS(classify_timing(cfg), ConfigError);
}

TEST_CASE("timing classes of the canonical geometry") {
    CHECK(classify_timing(scenarios::fig1(0.0)) == TimingClass::StandardBeforeAfter);
    CHECK(classify_timing(scenarios::fig1(0.1)) == TimingClass::BeforeBefore);
    CHECK(classify_timing(scenarios::fig1(0.05)) == TimingClass::Boundary);
    CHECK(classify_timing(scenarios::two_particle(0.0)) ==
          TimingClass::StandardBeforeAfter);
    CHECK(classify_timing(scenarios::two_particle(0.1)) ==
          TimingClass::BeforeBefore);
}

TEST_CASE("after-after: each choice happens last in its own frame") {
    // Moving D(-) past the boundary instead of D(+) reverses both verdicts.
    ExperimentConfig cfg = scenarios::fig1(0.0);
    cfg.devices[4].frame = Frame{0.1};
    CHECK(classify_timing(cfg) == TimingClass::AfterAfter);
}

TEST_CASE("classification is symmetric under side relabeling") {
    ExperimentConfig cfg = scenarios::two_particle(0.1);
    const TimingClass original = classify_timing(cfg);

    std::swap(cfg.devices[1], cfg.devices[2]);
    CHECK(classify_timing(cfg) == original);
}

TEST_CASE("enum spellings") {
    CHECK(to_string(TimingClass::StandardBeforeAfter) == "standard-before-after");
    CHECK(to_string(TimingClass::BeforeBefore) == "before-before");
    CHECK(to_string(TimingClass::AfterAfter) == "after-after");
    CHECK(to_string(TimingClass::Boundary) == "boundary");
    CHECK(to_string(DeviceKind::BeamSplitter) == "beam_splitter");
    CHECK(to_string(Mode::TwoParticle) == "two_particle");
    CHECK(to_string(ChoicePlacement::AtDetector) == "detector");
}
