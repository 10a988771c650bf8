#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ceqc/circuit.hpp"
#include "ceqc/engine.hpp"
#include "ceqc/noise.hpp"

namespace ceqc {

/*
 * One probe: a small rotation-slotted circuit (at most ten qubits) with a
 * fixed set of injected faults. The collection exercises every engine rule
 * against the dense reference simulator: frame propagation through all four
 * gate kinds, record creation at rotation slots, record transport through
 * zero-controlled couplings, measurement collapse in both bases, and the
 * two-record joint rule. Probes stay within the engine's exactness domain:
 * at most one record-creating fault per circuit (collapse rules assume the
 * cross expectation values vanish on the premeasurement state).
 */
struct ProbeCase {
  std::string name;
  LayeredCircuit circuit;     // rotation slots already enabled
  std::vector<Fault> faults;  // sorted by layer
};

std::vector<ProbeCase> probe_battery();

/*
 * Total variation distance between the frame engine's empirical outcome
 * distribution and the dense simulator's exact one, with phase `theta` on
 * every rotation slot. The empirical side draws a fault-free reference
 * outcome and applies the engine's flips, mirroring how trials are scored.
 */
double probe_tvd(const ProbeCase& pc, double theta, int samples,
                 std::uint64_t seed, const EngineConfig& cfg);

}  // namespace ceqc
