#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relnl/kinematics.hpp"

namespace relnl {

enum class DeviceKind { Source, BeamSplitter, Detector, DelayLine };

/// Where the outcome of a trial becomes determined: at the beam-splitters
/// (the multisimultaneity picture) or at the detectors (collapse at
/// detection).
enum class ChoicePlacement { AtBeamSplitter, AtDetector };

enum class Mode { SingleParticle, TwoParticle };

/// Frame-relational classification of the two choice events. BeforeBefore
/// means each event precedes the other in the rest frame of its own device;
/// Boundary means at least one device frame sees them simultaneous within
/// tolerance.
enum class TimingClass { StandardBeforeAfter, BeforeBefore, AfterAfter, Boundary };

struct Device {
    std::string id;
    DeviceKind kind{DeviceKind::Source};
    Event event{};        // impact / arrival event hosted by the device (lab frame)
    Frame frame{};        // rest frame of the device
    double phase{0.0};    // local setting in radians; meaningful for beam-splitter arms
    double reflectivity{0.5};
};

/// Declarative description of an optical setup. Device roles follow listing
/// order:
///   single_particle: one Source, one BeamSplitter, two Detectors; the
///     first-listed Detector is D(+), the second D(-).
///   two_particle: one Source, two BeamSplitters (first = side A, whose
///     setting is alpha; second = side B), four Detectors (first two are
///     side A's +/- outputs, last two side B's +/- outputs).
/// DelayLine devices are legal anywhere and ignored by the physics; arrival
/// times are specified directly on the devices that host them.
struct ExperimentConfig {
    Mode mode{Mode::SingleParticle};
    std::vector<Device> devices;
    ChoicePlacement placement{ChoicePlacement::AtDetector};
    Frame preferred_frame{};   // narrative collapse ordering; never observable
    double visibility{1.0};
    bool paths_indistinguishable{true};

    std::vector<const Device*> of_kind(DeviceKind kind) const;
};

/// A choice event together with the rest frame of its host device.
struct ChoiceSite {
    std::string device_id;
    Event event;
    Frame frame;
};

/// Every broken invariant, one message each, naming field and rule. Empty
/// means the config is valid.
std::vector<std::string> validate(const ExperimentConfig& cfg);

/// Throws ConfigError with the full violation list unless validate() is
/// clean.
void require_valid(const ExperimentConfig& cfg);

/// The two choice events selected by cfg.placement, side A first. With
/// placement AtDetector in two-particle mode each side's detector pair must
/// share one arrival event and frame (the detection station). Throws
/// ConfigError for configs lacking two choice sites, e.g. single-particle
/// with placement AtBeamSplitter.
std::pair<ChoiceSite, ChoiceSite> choice_events(const ExperimentConfig& cfg);

/// Evaluates the before/after predicate for each choice event in its own
/// device frame against the other.
TimingClass classify_timing(const ExperimentConfig& cfg,
                            double tol = kSimultaneityTol);

std::string_view to_string(DeviceKind kind);
std::string_view to_string(ChoicePlacement placement);
std::string_view to_string(Mode mode);
std::string_view to_string(TimingClass timing);

}  // namespace relnl
