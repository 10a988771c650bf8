#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ceqc/code.hpp"
#include "ceqc/engine.hpp"
#include "ceqc/extraction.hpp"
#include "ceqc/noise.hpp"

namespace ceqc {

// Packed syndrome: bit g is generator g's bit, in the code's listed order.
using Syndrome = std::uint64_t;

Syndrome pack_syndrome(const std::vector<int>& bits);

// Body-level data-block error held as frame masks.
struct FrameError {
  BitVec x, z;
  bool none() const { return x.none() && z.none(); }
  int weight() const { return (x | z).popcount(); }
  friend bool operator==(const FrameError&, const FrameError&) = default;
};

std::string frame_error_string(const FrameError& e, int n);

/*
 * Ideal decoder: a minimum-weight representative per syndrome, precomputed
 * to full coverage (weights enumerated in increasing order, first writer
 * wins). Decoding succeeds when residual times leader lies in the
 * stabilizer group at the body level.
 */
struct PerfectDecoder {
  StabilizerCode code;
  int distance = 0;
  int t = 0;  // correctable weight floor((d-1)/2)
  std::map<Syndrome, FrameError> leaders;

  static PerfectDecoder build(const CssCode& c);
  Syndrome syndrome_bits(const FrameError& e) const;
  bool decode_success(const FrameError& residual) const;
};

/*
 * Scenario that first wrote a table entry: an input data error, or a single
 * circuit fault in one of the two protocol rounds.
 */
struct TableProvenance {
  FrameError input;
  std::optional<std::pair<int, Fault>> fault;  // (round index, fault)
};

struct TableEntry {
  FrameError correction;
  std::string origin;
  TableProvenance provenance;
  int sources = 1;  // scenarios that landed on this key
};

struct LogicalCollisionError : std::runtime_error {
  std::string certificate;
  explicit LogicalCollisionError(std::string cert)
      : std::runtime_error("correction table has a logical collision"),
        certificate(std::move(cert)) {}
};

/*
 * Round-2 syndrome to correction. The zero syndrome is never stored and
 * always means identity. Collisions whose residuals agree modulo the
 * stabilizer group merge; residuals differing by a logical operator abort
 * the build with a certificate; other differences keep the first entry and
 * are counted.
 */
struct SyndromeTable {
  std::map<Syndrome, TableEntry> entries;
  int merged_collisions = 0;
  int mixed_collisions = 0;

  const TableEntry* find(Syndrome s) const;
};

// Enumerates weight <= t input errors noiselessly, then every single
// location fault with every value across the two-round schedule.
SyndromeTable build_lookup_table(const CssCode& code,
                                 const ExtractionRound& round,
                                 const PerfectDecoder& dec);

std::string serialize_table(const SyndromeTable& t, int n_qubits);

// Re-runs the scenario that produced an entry and returns the round-2
// syndrome it keys (0 when round 2 does not trigger).
Syndrome replay_syndrome(const ExtractionRound& round,
                         const TableProvenance& prov);

/*
 * Two-round protocol trace: round 2 runs only when round 1 reads a nonzero
 * syndrome; an unknown round-2 syndrome falls back to identity and is
 * flagged.
 */
struct FtecTrace {
  Syndrome s1 = 0, s2 = 0;
  int rounds = 1;
  bool unknown_syndrome = false;
  FrameError correction;
};

struct ProtocolRun {
  FtecTrace trace;
  FrameError residual;  // data-block error after the table correction
};

// Deterministic protocol run: the given input error plus the listed
// (round index, fault) pairs, with no sampled noise and no rotations.
ProtocolRun run_ftec(const ExtractionRound& round, const SyndromeTable& table,
                     const FrameError& input,
                     const std::vector<std::pair<int, Fault>>& faults);

struct TrialConfig {
  EngineConfig engine;
  bool cc_round2_fresh = false;  // redraw the trial angle before round 2
  TrialConfig() { engine.overlap = OverlapPolicy::JointPair; }
};

struct TrialResult {
  FtecTrace trace;
  FrameError residual;  // after correction and record finalization
  bool failed = false;
  long sign_ambiguous_merges = 0;
};

// One stochastic protocol trial. The round's circuit must already carry
// rotation slots when the model's phase policy is not off. The sampler
// variant lets callers reuse one location census across many trials.
TrialResult run_ftec_trial(const ExtractionRound& round,
                           const SyndromeTable& table,
                           const PerfectDecoder& dec,
                           const FaultSampler& sampler, const NoiseModel& m,
                           std::uint64_t trial, const TrialConfig& tc = {});

TrialResult run_ftec_trial(const ExtractionRound& round,
                           const SyndromeTable& table,
                           const PerfectDecoder& dec, const NoiseModel& m,
                           std::uint64_t trial, const TrialConfig& tc = {});

/*
 * Exhaustive protocol-level check at t = min(1, decoder t):
 *   (a) every (input, fault) pair with combined size <= t decodes back to
 *       the input's codeword under the ideal decoder;
 *   (b) every single fault on a clean input, and every weight-1 input with
 *       no fault, leaves a residual of stabilizer-coset weight <= 1.
 */
struct FtecRecord {
  std::string input;  // "I" or a Pauli string
  std::string fault;  // "none" or a location description
  int rounds = 1;
  Syndrome s2 = 0;
  std::string residual;
  bool checked_a = false, checked_b = false;
  bool decode_ok = true;
  int coset_weight = 0;       // modulo stabilizers
  int normalizer_weight = 0;  // modulo stabilizers and logicals
  std::string status;         // ok / violation:a / violation:b / violation:ab
};

struct FtecReport {
  int cases_a = 0, cases_b = 0;
  std::vector<FtecRecord> records;
  std::vector<std::size_t> violations;  // indices into records
  bool unknown_syndrome_seen = false;
  bool passed() const { return violations.empty(); }
};

FtecReport verify_fault_tolerance(const CssCode& code,
                                  const ExtractionRound& round,
                                  const SyndromeTable& table,
                                  const PerfectDecoder& dec);

std::string ftec_report_csv(const FtecReport& r);

}  // namespace ceqc
