#include "relnl/scenarios.hpp"

#include <numbers>

namespace relnl::scenarios {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

Device device(std::string id, DeviceKind kind, double t, double x,
              double beta = 0.0, double phase = 0.0) {
    Device d;
    d.id = std::move(id);
    d.kind = kind;
    d.event = Event{t, x};
    d.frame = Frame{beta};
    d.phase = phase;
    return d;
}

// The four standard CHSH settings (a, b), (a, b'), (a', b), (a', b').
std::vector<Setting> chsh_settings() {
    return {
        Setting{0.0, -kQuarterPi},
        Setting{0.0, kQuarterPi},
        Setting{kHalfPi, -kQuarterPi},
        Setting{kHalfPi, kQuarterPi},
    };
}

}  // namespace

ExperimentConfig fig1(double detector_plus_beta) {
    ExperimentConfig cfg;
    cfg.mode = Mode::SingleParticle;
    cfg.placement = ChoicePlacement::AtDetector;
    cfg.devices = {
        device("src", DeviceKind::Source, 0.0, 0.0),
        device("bs", DeviceKind::BeamSplitter, 1.0, 0.0),
        device("delay", DeviceKind::DelayLine, 5.0, -0.5),
        device("d_plus", DeviceKind::Detector, 10.0, 1.0, detector_plus_beta),
        device("d_minus", DeviceKind::Detector, 9.9, -1.0),
    };
    return cfg;
}

ExperimentConfig two_particle(double splitter_b_beta) {
    ExperimentConfig cfg;
    cfg.mode = Mode::TwoParticle;
    cfg.placement = ChoicePlacement::AtBeamSplitter;
    cfg.devices = {
        device("src", DeviceKind::Source, 0.0, 0.0),
        device("bs_a", DeviceKind::BeamSplitter, 9.9, -1.0),
        device("bs_b", DeviceKind::BeamSplitter, 10.0, 1.0, splitter_b_beta,
               kQuarterPi),
        device("da_plus", DeviceKind::Detector, 11.0, -2.0),
        device("da_minus", DeviceKind::Detector, 11.0, -2.0),
        device("db_plus", DeviceKind::Detector, 11.1, 2.0),
        device("db_minus", DeviceKind::Detector, 11.1, 2.0),
    };
    return cfg;
}

ConfigDocument fig1_rest() {
    ConfigDocument doc;
    doc.experiment = fig1(0.0);
    doc.model = TheoryModel::Multisimultaneity;
    doc.trials = 100000;
    doc.seed = 42;
    return doc;
}

ConfigDocument fig1_moving() {
    ConfigDocument doc;
    doc.experiment = fig1(0.1);
    doc.model = TheoryModel::Multisimultaneity;
    doc.trials = 100000;
    doc.seed = 42;
    return doc;
}

ConfigDocument two_particle_standard() {
    ConfigDocument doc;
    doc.experiment = two_particle(0.0);
    doc.model = TheoryModel::Multisimultaneity;
    doc.trials = 50000;
    doc.seed = 42;
    return doc;
}

ConfigDocument two_particle_before_before() {
    ConfigDocument doc;
    doc.experiment = two_particle(0.1);
    doc.model = TheoryModel::Multisimultaneity;
    doc.trials = 50000;
    doc.seed = 42;
    return doc;
}

ConfigDocument chsh_qm() {
    ConfigDocument doc;
    doc.experiment = two_particle(0.0);
    doc.model = TheoryModel::PreferredFrameQM;
    doc.settings = chsh_settings();
    doc.trials = 50000;
    doc.seed = 42;
    return doc;
}

ConfigDocument chsh_before_before() {
    ConfigDocument doc;
    doc.experiment = two_particle(0.1);
    doc.model = TheoryModel::Multisimultaneity;
    doc.settings = chsh_settings();
    doc.trials = 50000;
    doc.seed = 42;
    return doc;
}

std::vector<std::pair<std::string, ConfigDocument>> all() {
    return {
        {"fig1_rest", fig1_rest()},
        {"fig1_moving", fig1_moving()},
        {"twoparticle_std", two_particle_standard()},
        {"twoparticle_bb", two_particle_before_before()},
        {"chsh_qm", chsh_qm()},
        {"chsh_bb", chsh_before_before()},
    };
}

}  // namespace relnl::scenarios
