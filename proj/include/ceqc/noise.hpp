#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ceqc/circuit.hpp"
#include "ceqc/rng.hpp"

namespace ceqc {

enum class CcPolicy { Off, Fixed, RandomPerTrial, RandomPerLayer };

std::string cc_policy_name(CcPolicy p);
CcPolicy parse_cc_policy(const std::string& s);  // throws std::invalid_argument

struct NoiseModel {
  double p = 0.0;       // gate error rate
  double gamma = 1.0;   // idle-to-gate ratio
  CcPolicy cc_policy = CcPolicy::RandomPerTrial;
  double theta = 0.0;   // used when cc_policy == Fixed
  std::uint64_t seed = 0;
};

/*
 * One sampled fault. `pauli` encodes the error operator:
 *   single-qubit locations: 1=X 2=Y 3=Z on loc.q0
 *   two-qubit locations: 1..15 = 4*a + b with a on loc.q0, b on loc.q1,
 *     letters 0=I 1=X 2=Y 3=Z (a = b = 0 excluded)
 *   measurement locations: pauli unused; the outcome bit is flipped
 */
struct Fault {
  Location loc;
  int pauli = 0;
};

inline bool letter_has_x(int letter) { return letter == 1 || letter == 2; }
inline bool letter_has_z(int letter) { return letter == 2 || letter == 3; }

struct FaultAssignment {
  std::vector<Fault> faults;       // sorted by layer, then location order
  std::vector<double> cc_phases;   // one entry per circuit layer
};

/*
 * Per-trial sampling context. Holds the trial's dedicated stream plus the
 * master-clock phase so that a protocol spanning several circuit segments
 * (e.g. two extraction rounds) sees one consistent theta under
 * RandomPerTrial while still drawing fresh faults for each segment.
 */
struct TrialNoise {
  Rng rng;
  double theta_trial = 0.0;

  static TrialNoise start(const NoiseModel& m, std::uint64_t trial_index);
};

/*
 * Caches the fault-location census of one circuit so that repeated trials
 * skip the per-call location enumeration. `sample` draws from the trial
 * stream in a fixed order (two-qubit gates, preparations, idles,
 * measurements, then CC phases), so results for a given stream state are
 * reproducible across call sites.
 */
struct FaultSampler {
  std::vector<Location> locations;
  std::vector<int> gate2, prep1, idle, meas1;  // indices into `locations`
  std::size_t n_layers = 0;

  explicit FaultSampler(const LayeredCircuit& c);
  FaultAssignment sample(const NoiseModel& m, TrialNoise& tn) const;
};

// Draws faults and CC phases for one circuit segment from the trial stream.
FaultAssignment sample_faults(const LayeredCircuit& c, const NoiseModel& m,
                              TrialNoise& tn);

// Convenience for single-segment use: starts the trial stream internally.
FaultAssignment sample_faults(const LayeredCircuit& c, const NoiseModel& m,
                              std::uint64_t trial_index);

/*
 * Flat key=value configuration text: one pair per line, '#' comments,
 * blank lines ignored. Later duplicates win.
 */
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(const std::string& text);  // throws std::invalid_argument

// Reads p, gamma, cc_policy, theta, seed (all optional, defaults kept).
NoiseModel noise_from_config(const KeyValues& kv);

}  // namespace ceqc
