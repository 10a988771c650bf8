#include "ceqc/ftec.hpp"

#include <doctest.h>

#include <string>
#include <vector>

#include "ceqc/code.hpp"
#include "ceqc/extraction.hpp"

using namespace ceqc;

namespace {

FrameError fe(const std::string& s) {
  Pauli p = parse_pauli(s);
  return {p.x, p.z};
}

FrameError body_of(const Pauli& p) { return {p.x, p.z}; }

Location first_location(const LayeredCircuit& c, LocationKind kind) {
  for (const Location& loc : enumerate_locations(c))
    if (loc.kind == kind) return loc;
  REQUIRE(false);
  return {};
}

}  // namespace

TEST_CASE("syndrome packing and body strings") {
  CHECK(pack_syndrome({}) == 0);
  CHECK(pack_syndrome({1, 0, 1}) == 0x5);
  CHECK(pack_syndrome({0, 1, 0, 0, 1}) == 0x12);

  CHECK(frame_error_string(fe("XIZI"), 4) == "XIZI");
  CHECK(frame_error_string(fe("IYII"), 4) == "IYII");
  CHECK(frame_error_string({}, 3) == "III");
  CHECK(fe("XYZI").weight() == 3);
  CHECK(fe("IIII").none());
}

TEST_CASE("ideal decoder classifies residuals for the four-qubit code") {
  CssCode c4 = builtin("c4");
  PerfectDecoder dec = PerfectDecoder::build(c4);
  CHECK(dec.distance == 2);
  CHECK(dec.t == 0);
  CHECK(dec.leaders.size() == 8);  // full coverage of three generator bits

  CHECK(dec.decode_success({}));
  CHECK(dec.decode_success(fe("XXXX")));
  CHECK(dec.decode_success(fe("ZZII")));
  CHECK(dec.decode_success(fe("YYXX")));
  CHECK_FALSE(dec.decode_success(fe("XXII")));  // logical, zero syndrome
  CHECK_FALSE(dec.decode_success(fe("IZZI")));
}

TEST_CASE("ideal decoder on the twelve-qubit code") {
  CssCode c12 = builtin("c12");
  PerfectDecoder dec = PerfectDecoder::build(c12);
  CHECK(dec.distance == 3);
  CHECK(dec.t == 1);
  CHECK(dec.leaders.size() == 2048);

  for (const Pauli& g : c12.base().generators)
    CHECK(dec.decode_success(body_of(g)));
  for (int q = 0; q < 12; ++q) {
    FrameError x, z;
    x.x.set(q);
    z.z.set(q);
    CHECK(dec.decode_success(x));
    CHECK(dec.decode_success(z));
  }
  CHECK_FALSE(dec.decode_success(fe("IIIIIIZIZIIZ")));

  // Success is a property of the stabilizer coset.
  Rng rng = Rng::keyed(7, 0);
  for (int i = 0; i < 20; ++i) {
    FrameError r;
    for (int q = 0; q < 12; ++q) {
      if (rng.next_below(2)) r.x.set(q);
      if (rng.next_below(2)) r.z.set(q);
    }
    bool base = dec.decode_success(r);
    for (const Pauli& g : c12.base().generators) {
      FrameError shifted = {r.x ^ g.x, r.z ^ g.z};
      CHECK(dec.decode_success(shifted) == base);
    }
  }
}

TEST_CASE("lookup table for a distance-2 code stays detect-only") {
  CssCode c4 = builtin("c4");
  ExtractionRound round = build_shor_round(c4);
  PerfectDecoder dec = PerfectDecoder::build(c4);
  SyndromeTable table = build_lookup_table(c4, round, dec);
  CHECK(table.entries.empty());
  CHECK(table.find(0x1) == nullptr);
}

TEST_CASE("lookup table for the twelve-qubit code resolves cleanly") {
  CssCode c12 = builtin("c12");
  ExtractionRound round = build_shor_round(c12);
  PerfectDecoder dec = PerfectDecoder::build(c12);
  SyndromeTable table = build_lookup_table(c12, round, dec);

  // 6 distinct phase-flip classes plus 12 bit-flip and 12 combined
  // patterns: every entry a weight-1 residual.
  CHECK(table.entries.size() == 30);
  CHECK(table.find(0) == nullptr);

  // A single Z on the first qubit trips exactly the first generator.
  FrameError z1 = fe("ZIIIIIIIIIII");
  CHECK(dec.syndrome_bits(z1) == 0x1);
  const TableEntry* e = table.find(0x1);
  REQUIRE(e != nullptr);
  CHECK(in_group_body(c12.base(),
                      parse_pauli(frame_error_string(
                          {e->correction.x ^ z1.x, e->correction.z ^ z1.z},
                          12))));

  // Every entry reproduces its key when its recorded scenario is re-run.
  for (const auto& [key, entry] : table.entries)
    CHECK(replay_syndrome(round, entry.provenance) == key);
}

TEST_CASE("deterministic protocol traces") {
  CssCode c12 = builtin("c12");
  ExtractionRound round = build_shor_round(c12);
  PerfectDecoder dec = PerfectDecoder::build(c12);
  SyndromeTable table = build_lookup_table(c12, round, dec);

  SUBCASE("clean run stops after one round") {
    ProtocolRun run = run_ftec(round, table, {}, {});
    CHECK(run.trace.rounds == 1);
    CHECK(run.trace.s1 == 0);
    CHECK(run.trace.correction.none());
    CHECK(run.residual.none());
  }

  SUBCASE("an input flip is corrected up to a stabilizer") {
    FrameError x1 = fe("XIIIIIIIIIII");
    ProtocolRun run = run_ftec(round, table, x1, {});
    CHECK(run.trace.rounds == 2);
    CHECK(run.trace.s1 == dec.syndrome_bits(x1));
    CHECK(run.trace.s2 == dec.syndrome_bits(x1));
    CHECK_FALSE(run.trace.unknown_syndrome);
    CHECK(in_group_body(c12.base(),
                        parse_pauli(frame_error_string(run.residual, 12))));
  }

  SUBCASE("a readout flip repairs itself on the repeat round") {
    Fault f;
    f.loc = first_location(round.circuit, LocationKind::Meas1);
    f.pauli = 0;
    ProtocolRun run = run_ftec(round, table, {}, {{0, f}});
    CHECK(run.trace.rounds == 2);
    CHECK(run.trace.s1 != 0);
    CHECK(run.trace.s2 == 0);
    CHECK(run.trace.correction.none());
    CHECK(run.residual.none());
  }

  SUBCASE("a round-2 fault never fires when round 1 is clean") {
    Fault f;
    f.loc = first_location(round.circuit, LocationKind::Meas1);
    f.pauli = 0;
    ProtocolRun run = run_ftec(round, table, {}, {{1, f}});
    CHECK(run.trace.rounds == 1);
    CHECK(run.residual.none());
  }
}

TEST_CASE("zero-noise trials leave the state untouched") {
  CssCode c12 = builtin("c12");
  ExtractionRound round = build_shor_round(c12);
  PerfectDecoder dec = PerfectDecoder::build(c12);
  SyndromeTable table = build_lookup_table(c12, round, dec);

  NoiseModel quiet;
  quiet.p = 0.0;
  quiet.cc_policy = CcPolicy::Off;
  FaultSampler sampler(round.circuit);
  for (std::uint64_t trial = 0; trial < 10000; ++trial) {
    TrialResult r = run_ftec_trial(round, table, dec, sampler, quiet, trial);
    CHECK(r.trace.rounds == 1);
    CHECK(r.trace.correction.none());
    CHECK_FALSE(r.failed);
    CHECK(r.residual.none());
  }

  // Collective rotations alone cannot fire a detector or corrupt the data.
  ExtractionRound rotated = round;
  rotated.circuit = insert_cc_layers(round.circuit);
  NoiseModel spinning;
  spinning.p = 0.0;
  spinning.cc_policy = CcPolicy::RandomPerTrial;
  FaultSampler rotated_sampler(rotated.circuit);
  for (std::uint64_t trial = 0; trial < 2000; ++trial) {
    TrialResult r =
        run_ftec_trial(rotated, table, dec, rotated_sampler, spinning, trial);
    CHECK(r.trace.rounds == 1);
    CHECK_FALSE(r.failed);
  }

  // A phase policy without rotation slots in the circuit is a usage error.
  CHECK_THROWS_AS(run_ftec_trial(round, table, dec, spinning, 0), EngineError);
}

TEST_CASE("full fault census finds no uncorrectable single faults") {
  SUBCASE("four-qubit code detects but cannot correct") {
    CssCode c4 = builtin("c4");
    ExtractionRound round = build_shor_round(c4);
    PerfectDecoder dec = PerfectDecoder::build(c4);
    SyndromeTable table = build_lookup_table(c4, round, dec);
    FtecReport rep = verify_fault_tolerance(c4, round, table, dec);
    CHECK(rep.passed());
    CHECK(rep.cases_a == 1);  // only the clean case fits weight 0
    CHECK(rep.cases_b > 100);
    CHECK(rep.unknown_syndrome_seen);  // empty table, every key is new
  }

  SUBCASE("twelve-qubit code with ancilla-parity readout") {
    CssCode c12 = builtin("c12");
    ExtractionRound round = build_shor_round(c12);
    PerfectDecoder dec = PerfectDecoder::build(c12);
    SyndromeTable table = build_lookup_table(c12, round, dec);
    FtecReport rep = verify_fault_tolerance(c12, round, table, dec);
    CHECK(rep.passed());
    CHECK(rep.violations.empty());
    CHECK(rep.cases_a == rep.cases_b + 1);
    CHECK(rep.cases_b > 1000);
    CHECK_FALSE(rep.unknown_syndrome_seen);
  }

  SUBCASE("twelve-qubit code with paired-block readout") {
    CssCode c12 = builtin("c12");
    ExtractionRound round = build_steane_round(c12, "c12");
    PerfectDecoder dec = PerfectDecoder::build(c12);
    SyndromeTable table = build_lookup_table(c12, round, dec);
    FtecReport rep = verify_fault_tolerance(c12, round, table, dec);
    CHECK(rep.passed());
    CHECK(rep.cases_a == rep.cases_b + 1);
    CHECK_FALSE(rep.unknown_syndrome_seen);
  }
}

TEST_CASE("trial and report serialization formats") {
  CssCode c12 = builtin("c12");
  ExtractionRound round = build_shor_round(c12);
  PerfectDecoder dec = PerfectDecoder::build(c12);
  SyndromeTable table = build_lookup_table(c12, round, dec);

  std::string text = serialize_table(table, 12);
  CHECK(text.rfind("0x", 0) == 0);
  CHECK(text.find(" -> ") != std::string::npos);

  FtecReport rep = verify_fault_tolerance(c12, round, table, dec);
  std::string csv = ftec_report_csv(rep);
  CHECK(csv.rfind("input,fault,rounds,syndrome2,residual,checked_a,checked_b,"
                  "decode_ok,coset_weight,normalizer_weight,status\n",
                  0) == 0);
  // One row per record, no stray separators from fault descriptions.
  std::size_t rows = 0;
  for (char ch : csv)
    if (ch == '\n') ++rows;
  CHECK(rows == rep.records.size() + 1);
}
