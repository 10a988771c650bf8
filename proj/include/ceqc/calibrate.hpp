#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ceqc/battery.hpp"

namespace ceqc {

/*
 * Evidence-backed selection of one engine propagation constant. `nominal`
 * is the doubling-convention value the update rules are usually quoted
 * with; `evidence` lists every candidate with its worst total variation
 * distance against the dense simulator over the discriminating probes.
 * `deviates` is set when the selected value differs from the nominal one.
 */
struct ConstantCalibration {
  std::string name;
  double nominal = 0.0;
  double selected = 0.0;
  bool deviates = false;
  std::vector<std::pair<double, double>> evidence;  // candidate -> worst TVD
  std::string note;
};

struct CalibrationReport {
  std::vector<ConstantCalibration> constants;
  int battery_circuits = 0;
  double battery_worst_tvd = 0.0;
  std::string battery_worst_name;
  bool consistent = false;  // battery worst TVD under the selected constants
};

/*
 * Sweeps each propagation constant over its candidate values on dedicated
 * interference probes, selects the best-matching value (ties within
 * statistical resolution break toward the algebraically derived default),
 * then replays the whole probe battery under the selected constants.
 */
CalibrationReport run_calibration(int samples_per_point = 20000,
                                  std::uint64_t seed = 12);

std::string calibration_text(const CalibrationReport& r);

}  // namespace ceqc
