#pragma once

#include <string>
#include <utility>
#include <vector>

#include "relnl/config_io.hpp"

namespace relnl::scenarios {

/// Canonical single-particle interferometer: source, 50-50 splitter, delay
/// line, and two far-apart detectors with the D(-) arrival a little before
/// D(+) in the lab (t = 9.9 vs 10.0 at x = -1 and +1). detector_plus_beta
/// moves D(+); the simultaneity boundary for this geometry sits at
/// beta* = 0.05, so 0.1 puts the arrivals in before-before timing.
ExperimentConfig fig1(double detector_plus_beta);

/// Canonical two-particle setup with the same impact geometry on the two
/// beam-splitters (side A at (9.9, -1), side B at (10, +1)).
/// splitter_b_beta = 0.1 produces before-before timing.
ExperimentConfig two_particle(double splitter_b_beta);

// Scenario documents matching the files shipped under configs/.
ConfigDocument fig1_rest();
ConfigDocument fig1_moving();
ConfigDocument two_particle_standard();
ConfigDocument two_particle_before_before();
ConfigDocument chsh_qm();
ConfigDocument chsh_before_before();

/// All bundled scenarios as (file stem, document) pairs.
std::vector<std::pair<std::string, ConfigDocument>> all();

}  // namespace relnl::scenarios
