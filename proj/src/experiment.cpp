#include "relnl/experiment.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "relnl/errors.hpp"

namespace relnl {

namespace {

std::string describe(const Device& d, std::size_t i) {
    std::ostringstream os;
    os << "devices[" << i << "] '" << d.id << "'";
    return os.str();
}

bool same_site(const Device& a, const Device& b) {
    return a.event.t == b.event.t && a.event.x == b.event.x &&
           a.frame.beta == b.frame.beta;
}

ChoiceSite site_of(const Device& d) {
    return ChoiceSite{d.id, d.event, d.frame};
}

}  // namespace

std::vector<const Device*> ExperimentConfig::of_kind(DeviceKind kind) const {
    std::vector<const Device*> out;
    for (const auto& d : devices) {
        if (d.kind == kind) out.push_back(&d);
    }
    return out;
}

std::vector<std::string> validate(const ExperimentConfig& cfg) {
    std::vector<std::string> violations;

    std::set<std::string> ids;
    for (std::size_t i = 0; i < cfg.devices.size(); ++i) {
        const Device& d = cfg.devices[i];
        if (!ids.insert(d.id).second) {
            violations.push_back(describe(d, i) + ": duplicate device id");
        }
        if (!(std::fabs(d.frame.beta) < 1.0)) {
            std::ostringstream os;
            os << describe(d, i) << ": frame speed violation (|beta| = "
               << std::fabs(d.frame.beta) << " must be < 1)";
            violations.push_back(os.str());
        }
        if (!(d.reflectivity >= 0.0 && d.reflectivity <= 1.0)) {
            violations.push_back(describe(d, i) +
                                 ": reflectivity must lie in [0, 1]");
        }
    }

    if (!(std::fabs(cfg.preferred_frame.beta) < 1.0)) {
        violations.push_back("preferred_frame: frame speed violation (|beta| must be < 1)");
    }
    if (!(cfg.visibility >= 0.0 && cfg.visibility <= 1.0)) {
        violations.push_back("visibility must lie in [0, 1]");
    }

    const auto sources = cfg.of_kind(DeviceKind::Source);
    const auto splitters = cfg.of_kind(DeviceKind::BeamSplitter);
    const auto detectors = cfg.of_kind(DeviceKind::Detector);

    const auto count_rule = [&](std::string_view what, std::size_t got,
                                std::size_t want) {
        if (got != want) {
            std::ostringstream os;
            os << "device count violation: " << to_string(cfg.mode)
               << " mode requires exactly " << want << " " << what
               << " device(s), found " << got;
            violations.push_back(os.str());
        }
    };

    if (cfg.mode == Mode::SingleParticle) {
        count_rule("source", sources.size(), 1);
        count_rule("beam_splitter", splitters.size(), 1);
        count_rule("detector", detectors.size(), 2);
    } else {
        count_rule("source", sources.size(), 1);
        count_rule("beam_splitter", splitters.size(), 2);
        count_rule("detector", detectors.size(), 4);
        if (cfg.placement == ChoicePlacement::AtDetector &&
            detectors.size() == 4) {
            // Collapse at detection needs one detection station per side.
            if (!same_site(*detectors[0], *detectors[1])) {
                violations.push_back(
                    "placement=detector: side A detectors must share one "
                    "arrival event and frame");
            }
            if (!same_site(*detectors[2], *detectors[3])) {
                violations.push_back(
                    "placement=detector: side B detectors must share one "
                    "arrival event and frame");
            }
        }
    }

    return violations;
}

void require_valid(const ExperimentConfig& cfg) {
    auto violations = validate(cfg);
    if (!violations.empty()) {
        throw ConfigError(std::move(violations));
    }
}

std::pair<ChoiceSite, ChoiceSite> choice_events(const ExperimentConfig& cfg) {
    require_valid(cfg);

    if (cfg.placement == ChoicePlacement::AtBeamSplitter) {
        if (cfg.mode == Mode::SingleParticle) {
            throw ConfigError({"placement=beam_splitter: single-particle setup "
                               "has only one choice site (one beam-splitter)"});
        }
        const auto splitters = cfg.of_kind(DeviceKind::BeamSplitter);
        return {site_of(*splitters[0]), site_of(*splitters[1])};
    }

    const auto detectors = cfg.of_kind(DeviceKind::Detector);
    if (cfg.mode == Mode::SingleParticle) {
        return {site_of(*detectors[0]), site_of(*detectors[1])};
    }
    // Two-particle, collapse at detection: validate() guaranteed each side's
    // pair shares a station.
    return {site_of(*detectors[0]), site_of(*detectors[2])};
}

TimingClass classify_timing(const ExperimentConfig& cfg, double tol) {
    const auto [site_a, site_b] = choice_events(cfg);

    const Order a_view = order_in_frame(site_a.event, site_b.event, site_a.frame, tol);
    const Order b_view = order_in_frame(site_b.event, site_a.event, site_b.frame, tol);

    if (a_view == Order::Simultaneous || b_view == Order::Simultaneous) {
        return TimingClass::Boundary;
    }
    // A device sees its own impact first exactly when the other event has
    // not yet happened on its clock.
    const bool a_own_first = a_view == Order::After;
    const bool b_own_first = b_view == Order::After;
    if (a_own_first && b_own_first) return TimingClass::BeforeBefore;
    if (!a_own_first && !b_own_first) return TimingClass::AfterAfter;
    return TimingClass::StandardBeforeAfter;
}

std::string_view to_string(DeviceKind kind) {
    switch (kind) {
        case DeviceKind::Source: return "source";
        case DeviceKind::BeamSplitter: return "beam_splitter";
        case DeviceKind::Detector: return "detector";
        case DeviceKind::DelayLine: return "delay_line";
    }
    return "?";
}

std::string_view to_string(ChoicePlacement placement) {
    return placement == ChoicePlacement::AtBeamSplitter ? "beam_splitter"
                                                        : "detector";
}

std::string_view to_string(Mode mode) {
    return mode == Mode::SingleParticle ? "single_particle" : "two_particle";
}

std::string_view to_string(TimingClass timing) {
    switch (timing) {
        case TimingClass::StandardBeforeAfter: return "standard-before-after";
        case TimingClass::BeforeBefore: return "before-before";
        case TimingClass::AfterAfter: return "after-after";
        case TimingClass::Boundary: return "boundary";
    }
    return "?";
}

}  // namespace relnl
