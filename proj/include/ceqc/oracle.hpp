#pragma once

#include <cstdint>
#include <map>

#include "ceqc/circuit.hpp"
#include "ceqc/noise.hpp"
#include "ceqc/rng.hpp"

namespace ceqc {

/*
 * Exact probability distribution over measurement outcome bitstrings.
 * Bit i of a key is the i-th measurement in circuit order (the same order
 * the frame engine reports its flips).
 */
struct OutcomeDist {
  std::map<std::uint64_t, double> p;
  int n_bits = 0;
};

/*
 * Dense state-vector reference run: enumerates every measurement branch and
 * returns the exact outcome distribution. Faults and rotation phases come
 * pre-assigned in f, exactly as the frame engine consumes them. Branches
 * below the prune weight are dropped.
 *
 * Limits: n_qubits <= 14 and at most 63 measured bits (throws
 * std::invalid_argument beyond either).
 */
OutcomeDist run_statevector(const LayeredCircuit& c, const FaultAssignment& f,
                            double prune = 1e-12);

// Draws one outcome bitstring from the distribution.
std::uint64_t sample_from(const OutcomeDist& d, Rng& rng);

// Total variation distance between two outcome distributions.
double tvd(const OutcomeDist& d1, const OutcomeDist& d2);
double tvd(const std::map<std::uint64_t, double>& p1,
           const std::map<std::uint64_t, double>& p2);

}  // namespace ceqc
