#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ceqc/bits.hpp"
#include "ceqc/circuit.hpp"
#include "ceqc/noise.hpp"
#include "ceqc/rng.hpp"

namespace ceqc {

/*
 * One tracked coherent factor exp(i*phi*Z^c). sign_dropped marks a record
 * whose phase sign became unknowable after a Z-basis measurement removed a
 * support qubit; the magnitude is still exact, and the sign only matters if
 * the record later merges with another.
 */
struct CoherentRecord {
  double phi = 0.0;
  BitVec c;
  bool sign_dropped = false;
};

/*
 * What to do when a measurement finds more than one record on the measured
 * qubit. HardError refuses (the single-record collapse rule no longer
 * applies); JointPair handles exactly two records by the exact joint rule,
 * which is valid whenever the cross expectation values vanish — true for the
 * cat and excitation-preserving ancilla states these circuits prepare.
 */
enum class OverlapPolicy { HardError, JointPair };

struct EngineConfig {
  double kappa_cc = -2.0;   // phase factor per frame-X qubit at a rotation slot
  double kappa_c0 = -1.0;   // extra record multiplier through C0X
  double kappa_c0z = 1.0;   // record multiplier through C0Z (diagonal: no-op)
  bool negate_on_x = true;  // conjugate records past newly inserted X parts
  OverlapPolicy overlap = OverlapPolicy::HardError;
  std::ostream* debug = nullptr;  // per-layer state dump when non-null
};

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/*
 * Pauli frame plus coherent records. The represented error is
 * (product of records) * X^a Z^b, records to the left of the frame.
 * outcomes lists (qubit, flip) in measurement order, where flip is relative
 * to the fault-free run of the same circuit.
 */
struct SimState {
  BitVec a, b;
  BitVec live;
  std::vector<CoherentRecord> records;
  std::vector<std::pair<int, int>> outcomes;
  long sign_ambiguous_merges = 0;

  static SimState fresh(const LayeredCircuit& c);
};

// Runs one circuit segment on a persistent state (multi-round protocols call
// this once per round). rng drives measurement collapse only; faults and
// phases come pre-sampled in f.
void simulate(SimState& s, const LayeredCircuit& c, const FaultAssignment& f,
              const EngineConfig& cfg, Rng& rng);

// Single-segment convenience: fresh state, run, return.
SimState simulate(const LayeredCircuit& c, const FaultAssignment& f,
                  const EngineConfig& cfg, Rng& rng);

// End-of-trial collapse: each surviving record independently applies Z on its
// support with probability sin^2(phi); records are cleared.
void finalize_records(SimState& s, Rng& rng);

}  // namespace ceqc
