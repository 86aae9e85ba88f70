#include "relnl/theories.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "relnl/errors.hpp"

namespace relnl {

namespace {

using namespace outcome_index;

void require_mode(const Outcome& o, Mode mode, const char* what) {
    if (o.mode != mode) {
        throw std::logic_error(std::string(what) + ": wrong outcome mode");
    }
}

/// Reflectivity of the single-particle beam-splitter, read as the
/// probability that the particle heads toward D(+). The default 0.5 is the
/// 50-50 splitter every canonical scenario uses.
double plus_arm_probability(const ExperimentConfig& cfg) {
    return cfg.of_kind(DeviceKind::BeamSplitter)[0]->reflectivity;
}

JointDistribution base(const ExperimentConfig& cfg, TheoryModel theory,
                       double alpha, double beta_phase) {
    JointDistribution d;
    d.mode = cfg.mode;
    d.theory = theory;
    d.setting = Setting{alpha, beta_phase};
    return d;
}

std::array<double, 4> two_particle_cos_law(const ExperimentConfig& cfg,
                                           double alpha, double beta_phase) {
    const double v = cfg.paths_indistinguishable ? cfg.visibility : 0.0;
    const double c = v * std::cos(alpha + beta_phase);
    return {(1.0 + c) / 4.0, (1.0 - c) / 4.0, (1.0 - c) / 4.0, (1.0 + c) / 4.0};
}

constexpr std::array<double, 4> kFlatProduct{0.25, 0.25, 0.25, 0.25};

}  // namespace

Outcome Outcome::two_particle(int sigma_a, int sigma_b) {
    if ((sigma_a != 1 && sigma_a != -1) || (sigma_b != 1 && sigma_b != -1)) {
        throw std::invalid_argument("Outcome: detector signs must be +1 or -1");
    }
    const int index = (sigma_a < 0 ? 2 : 0) + (sigma_b < 0 ? 1 : 0);
    return Outcome{Mode::TwoParticle, index};
}

Outcome Outcome::single_particle(bool plus_fired, bool minus_fired) {
    int index = kNoFire;
    if (plus_fired && minus_fired) index = kJointFire;
    else if (plus_fired) index = kExclusivePlus;
    else if (minus_fired) index = kExclusiveMinus;
    return Outcome{Mode::SingleParticle, index};
}

int Outcome::sigma_a() const {
    require_mode(*this, Mode::TwoParticle, "sigma_a");
    return index < 2 ? 1 : -1;
}

int Outcome::sigma_b() const {
    require_mode(*this, Mode::TwoParticle, "sigma_b");
    return index % 2 == 0 ? 1 : -1;
}

bool Outcome::plus_fired() const {
    require_mode(*this, Mode::SingleParticle, "plus_fired");
    return index == kExclusivePlus || index == kJointFire;
}

bool Outcome::minus_fired() const {
    require_mode(*this, Mode::SingleParticle, "minus_fired");
    return index == kExclusiveMinus || index == kJointFire;
}

std::string_view Outcome::code() const {
    static constexpr std::array<std::string_view, 4> two{"++", "+-", "-+", "--"};
    static constexpr std::array<std::string_view, 4> one{
        "exclusive_plus", "exclusive_minus", "joint", "none"};
    return mode == Mode::TwoParticle ? two[index] : one[index];
}

Outcome Outcome::from_code(Mode mode, std::string_view code) {
    for (int i = 0; i < 4; ++i) {
        Outcome o{mode, i};
        if (o.code() == code) return o;
    }
    throw std::invalid_argument("Outcome: unknown code '" + std::string(code) + "'");
}

double JointDistribution::correlation() const {
    if (mode != Mode::TwoParticle) {
        throw std::logic_error("correlation: two-particle distributions only");
    }
    return p[kPlusPlus] - p[kPlusMinus] - p[kMinusPlus] + p[kMinusMinus];
}

double JointDistribution::marginal_plus(int side) const {
    if (mode != Mode::TwoParticle) {
        throw std::logic_error("marginal_plus: two-particle distributions only");
    }
    return side == 0 ? p[kPlusPlus] + p[kPlusMinus]
                     : p[kPlusPlus] + p[kMinusPlus];
}

JointDistribution qm_predict(const ExperimentConfig& cfg, double alpha,
                             double beta_phase) {
    require_valid(cfg);
    JointDistribution d = base(cfg, TheoryModel::PreferredFrameQM, alpha, beta_phase);
    if (cfg.mode == Mode::TwoParticle) {
        d.p = two_particle_cos_law(cfg, alpha, beta_phase);
    } else {
        // One photon, one count: the particle leaves the splitter by exactly
        // one arm, whichever frames the detectors ride in.
        const double r = plus_arm_probability(cfg);
        d.p = {r, 1.0 - r, 0.0, 0.0};
    }
    return d;
}

JointDistribution ms_predict(const ExperimentConfig& cfg, double alpha,
                             double beta_phase, TimingClass timing) {
    require_valid(cfg);
    JointDistribution d = base(cfg, TheoryModel::Multisimultaneity, alpha, beta_phase);

    if (cfg.mode == Mode::SingleParticle &&
        cfg.placement == ChoicePlacement::AtBeamSplitter) {
        // One choice site only: there is nothing remote to consult and the
        // rule collapses onto the quantum prediction.
        const double r = plus_arm_probability(cfg);
        d.p = {r, 1.0 - r, 0.0, 0.0};
        return d;
    }

    if (cfg.mode == Mode::TwoParticle && !cfg.paths_indistinguishable) {
        // Distinguishable path pairs: neither side ever takes the remote
        // phases into account, in every timing class.
        d.p = kFlatProduct;
        d.timing = timing;
        return d;
    }

    if (timing == TimingClass::Boundary) {
        throw UndefinedRegimeError(
            "multisimultaneity: choice events simultaneous in a device frame; "
            "no rule applies on the boundary");
    }

    d.timing = timing;

    if (cfg.mode == Mode::TwoParticle) {
        if (timing == TimingClass::BeforeBefore) {
            // Each particle chooses on local parameters alone.
            d.p = kFlatProduct;
        } else {
            // One side (or both, in the after-after completion) takes the
            // remote phase into account; the quantum correlation survives.
            d.p = two_particle_cos_law(cfg, alpha, beta_phase);
        }
        return d;
    }

    // Single-particle, collapse at detection.
    const double r = plus_arm_probability(cfg);
    if (timing == TimingClass::BeforeBefore) {
        // Neither detector can consult the other: each fires independently
        // with its own arm probability. One photon, two counts 25% of the
        // time (and no count another 25%) at the canonical 50-50 splitter.
        d.p = {r * r, (1.0 - r) * (1.0 - r), r * (1.0 - r), (1.0 - r) * r};
    } else {
        // The frame-later detector takes account of the earlier choice and
        // anti-correlates with it, enforcing exclusive firing.
        d.p = {r, 1.0 - r, 0.0, 0.0};
    }
    return d;
}

JointDistribution predict(TheoryModel model, const ExperimentConfig& cfg,
                          double alpha, double beta_phase, double tol) {
    require_valid(cfg);
    if (model == TheoryModel::PreferredFrameQM) {
        return qm_predict(cfg, alpha, beta_phase);
    }
    if (cfg.mode == Mode::SingleParticle &&
        cfg.placement == ChoicePlacement::AtBeamSplitter) {
        // Timing argument is never consulted for a single choice site.
        return ms_predict(cfg, alpha, beta_phase, TimingClass::StandardBeforeAfter);
    }
    return ms_predict(cfg, alpha, beta_phase, classify_timing(cfg, tol));
}

std::string_view to_string(TheoryModel model) {
    return model == TheoryModel::PreferredFrameQM ? "qm" : "ms";
}

TheoryModel theory_from_string(std::string_view name) {
    if (name == "qm" || name == "preferred_frame_qm") {
        return TheoryModel::PreferredFrameQM;
    }
    if (name == "ms" || name == "multisimultaneity") {
        return TheoryModel::Multisimultaneity;
    }
    throw ConfigError({"model: unknown theory '" + std::string(name) +
                       "' (expected qm or ms)"});
}

}  // namespace relnl
