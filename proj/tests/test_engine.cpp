#include "ceqc/engine.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "doctest.h"

using namespace ceqc;

namespace {

Layer idle_layer() {
  Layer l;
  l.kind = LayerKind::Gates;
  return l;
}

Layer gates(std::vector<Gate> gs) {
  Layer l;
  l.kind = LayerKind::Gates;
  l.gates = std::move(gs);
  return l;
}

Layer meas(MeasBasis b, std::vector<int> qs) {
  Layer l;
  l.kind = LayerKind::Meas;
  l.meas.basis = b;
  l.meas.qubits = std::move(qs);
  return l;
}

LayeredCircuit all_data(int n) {
  LayeredCircuit c;
  c.n_qubits = n;
  c.data_begin = 0;
  c.data_end = n;
  return c;
}

Fault idle_fault(int layer, int q, int pauli) {
  Fault f;
  f.loc.kind = LocationKind::Idle;
  f.loc.layer = layer;
  f.loc.q0 = q;
  f.pauli = pauli;
  return f;
}

FaultAssignment no_faults(const LayeredCircuit& c, double theta = 0.0) {
  FaultAssignment fa;
  fa.cc_phases.assign(c.layers.size(), theta);
  return fa;
}

int flip_of(const SimState& s, int q) {
  for (auto& [qq, f] : s.outcomes)
    if (qq == q) return f;
  return -1;
}

}  // namespace

TEST_CASE("fault-free run leaves frame, records and outcomes clean") {
  LayeredCircuit c = all_data(3);
  c.layers.push_back(gates({{GateKind::CX, 0, 1}}));
  c.layers.push_back(gates({{GateKind::CZ, 1, 2}}));
  c.layers.push_back(meas(MeasBasis::X, {2}));
  c.layers.push_back(meas(MeasBasis::Z, {0, 1}));
  c = insert_cc_layers(c);
  EngineConfig cfg;
  Rng rng = Rng::keyed(1, 1);
  SimState s = simulate(c, no_faults(c, 0.7), cfg, rng);
  CHECK(s.a.none());
  CHECK(s.b.none());
  CHECK(s.records.empty());
  for (auto& [q, f] : s.outcomes) CHECK(f == 0);
  CHECK(s.outcomes.size() == 3);
}

TEST_CASE("a frame X leaves a rotation record at each slot") {
  LayeredCircuit c = all_data(1);
  c.layers.push_back(idle_layer());
  c.layers.push_back(idle_layer());
  c = insert_cc_layers(c);
  FaultAssignment fa = no_faults(c, 0.3);
  fa.faults.push_back(idle_fault(0, 0, 1));  // X
  EngineConfig cfg;
  Rng rng = Rng::keyed(2, 0);
  SimState s = simulate(c, fa, cfg, rng);
  CHECK(s.a.get(0));
  REQUIRE(s.records.size() == 1);
  CHECK(s.records[0].c == BitVec::single(0));
  // Two slots at theta=0.3, visits merge: phi = 2 * (-2 * 0.3).
  CHECK(s.records[0].phi == doctest::Approx(-1.2));
}

TEST_CASE("Z faults toggle the frame without creating records") {
  LayeredCircuit c = all_data(2);
  c.layers.push_back(idle_layer());
  c.layers.push_back(meas(MeasBasis::X, {0}));
  c.layers.push_back(meas(MeasBasis::Z, {1}));
  c = insert_cc_layers(c);
  FaultAssignment fa = no_faults(c, 0.4);
  fa.faults.push_back(idle_fault(0, 0, 3));  // Z -> X readout flips
  fa.faults.push_back(idle_fault(0, 1, 1));  // X -> Z readout flips
  EngineConfig cfg;
  Rng rng = Rng::keyed(3, 0);
  SimState s = simulate(c, fa, cfg, rng);
  CHECK(flip_of(s, 0) == 1);
  CHECK(flip_of(s, 1) == 1);
}

TEST_CASE("inserting an X part negates overlapping record phases") {
  LayeredCircuit c = all_data(1);
  c.layers.push_back(idle_layer());
  c.layers.push_back(idle_layer());
  c.layers.push_back(idle_layer());
  c = insert_cc_layers(c);
  FaultAssignment fa;
  fa.cc_phases = {0.3, 0.0, 0.0};
  fa.faults.push_back(idle_fault(0, 0, 1));
  fa.faults.push_back(idle_fault(1, 0, 1));  // second X undoes the frame bit
  EngineConfig cfg;
  Rng rng = Rng::keyed(4, 0);
  SimState s = simulate(c, fa, cfg, rng);
  CHECK(!s.a.get(0));
  REQUIRE(s.records.size() == 1);
  CHECK(s.records[0].phi == doctest::Approx(0.6));  // sign flipped

  cfg.negate_on_x = false;
  Rng rng2 = Rng::keyed(4, 0);
  SimState s2 = simulate(c, fa, cfg, rng2);
  CHECK(s2.records[0].phi == doctest::Approx(-0.6));
}

TEST_CASE("controlled-X grows record supports from target to control") {
  LayeredCircuit c = all_data(2);
  c.layers.push_back(idle_layer());
  c.layers.push_back(gates({{GateKind::CX, 1, 0}}));
  c = insert_cc_layers(c);
  FaultAssignment fa;
  fa.cc_phases = {0.25, 0.0};
  fa.faults.push_back(idle_fault(0, 0, 1));
  EngineConfig cfg;
  Rng rng = Rng::keyed(5, 0);
  SimState s = simulate(c, fa, cfg, rng);
  // The zero-phase second slot adds an inert single-qubit record.
  REQUIRE(s.records.size() == 2);
  BitVec both;
  both.set(0);
  both.set(1);
  CHECK(s.records[0].c == both);
  CHECK(s.records[0].phi == doctest::Approx(-0.5));
  CHECK(s.records[1].phi == 0.0);
}

TEST_CASE("zero-control variant also multiplies the record phase") {
  LayeredCircuit c = all_data(2);
  c.layers.push_back(idle_layer());
  c.layers.push_back(gates({{GateKind::C0X, 1, 0}}));
  c = insert_cc_layers(c);
  FaultAssignment fa;
  fa.cc_phases = {0.25, 0.0};
  fa.faults.push_back(idle_fault(0, 0, 1));
  EngineConfig cfg;
  cfg.kappa_c0 = -1.0;
  Rng rng = Rng::keyed(6, 0);
  SimState s = simulate(c, fa, cfg, rng);
  REQUIRE(s.records.size() == 2);  // grown record plus an inert zero-phase one
  CHECK(s.records[0].phi == doctest::Approx(0.5));
  Rng rng2 = Rng::keyed(6, 0);
  cfg.kappa_c0 = -2.0;
  SimState s2 = simulate(c, fa, cfg, rng2);
  CHECK(s2.records[0].phi == doctest::Approx(1.0));
}

TEST_CASE("phase gates leave records alone but mix the frame") {
  LayeredCircuit c = all_data(2);
  c.layers.push_back(idle_layer());
  c.layers.push_back(gates({{GateKind::CZ, 0, 1}}));
  c = insert_cc_layers(c);
  FaultAssignment fa;
  fa.cc_phases = {0.2, 0.0};
  fa.faults.push_back(idle_fault(0, 0, 1));
  EngineConfig cfg;
  Rng rng = Rng::keyed(7, 0);
  SimState s = simulate(c, fa, cfg, rng);
  CHECK(s.a.get(0));
  CHECK(s.b.get(1));  // X_0 -> X_0 Z_1
  REQUIRE(s.records.size() == 1);
  CHECK(s.records[0].c == BitVec::single(0));
  CHECK(s.records[0].phi == doctest::Approx(-0.4));
}

TEST_CASE("X readout of a single record flips at the squared sine rate") {
  // X on qubit 0, slot, CX(0->1), slot, read qubit 1 in the X basis: the
  // readout sees a fresh single-qubit record at -2*theta.
  const double kTheta = 0.3;
  LayeredCircuit c = all_data(2);
  c.layers.push_back(idle_layer());
  c.layers.push_back(gates({{GateKind::CX, 0, 1}}));
  c.layers.push_back(meas(MeasBasis::X, {1}));
  c = insert_cc_layers(c);
  FaultAssignment fa;
  fa.cc_phases = {kTheta, kTheta, 0.0};  // no slot at the readout layer
  fa.faults.push_back(idle_fault(0, 0, 1));
  EngineConfig cfg;
  int flips = 0, zflips = 0;
  const int kTrials = 100000;
  for (int t = 0; t < kTrials; ++t) {
    Rng rng = Rng::keyed(8, t);
    SimState s = simulate(c, fa, cfg, rng);
    flips += flip_of(s, 1);
    finalize_records(s, rng);
    zflips += s.b.get(0);
    CHECK(s.records.empty());
  }
  const double kFlipRate = std::sin(2 * kTheta) * std::sin(2 * kTheta);
  const double kResidRate = std::sin(4 * kTheta) * std::sin(4 * kTheta);
  CHECK(flips > kTrials * kFlipRate - 750);
  CHECK(flips < kTrials * kFlipRate + 750);
  CHECK(zflips > kTrials * kResidRate - 600);
  CHECK(zflips < kTrials * kResidRate + 600);
}

TEST_CASE("full-period rotation has no observable effect") {
  const double kTheta = std::atan(1.0) * 2;  // pi/2: record phase pi
  LayeredCircuit c = all_data(1);
  c.layers.push_back(idle_layer());
  c.layers.push_back(meas(MeasBasis::X, {0}));
  c = insert_cc_layers(c);
  FaultAssignment fa;
  fa.cc_phases = {kTheta, 0.0};
  fa.faults.push_back(idle_fault(0, 0, 1));
  EngineConfig cfg;
  for (int t = 0; t < 2000; ++t) {
    Rng rng = Rng::keyed(9, t);
    SimState s = simulate(c, fa, cfg, rng);
    CHECK(flip_of(s, 0) == 0);  // sin^2(pi) = 0
  }
}

TEST_CASE("two records on one measured qubit follow the joint rule") {
  const double kA = 0.4, kB = 0.25;
  LayeredCircuit c = all_data(2);
  c.layers.push_back(idle_layer());  // X on 1, slot a
  c.layers.push_back(idle_layer());  // X on 1 again, X on 0, slot b
  c.layers.push_back(gates({{GateKind::CX, 1, 0}}));
  c.layers.push_back(meas(MeasBasis::X, {1}));
  c = insert_cc_layers(c);
  FaultAssignment fa;
  fa.cc_phases = {kA, kB, 0.0, 0.0};
  fa.faults.push_back(idle_fault(0, 1, 1));
  fa.faults.push_back(idle_fault(1, 0, 1));
  fa.faults.push_back(idle_fault(1, 1, 1));
  EngineConfig cfg;
  cfg.overlap = OverlapPolicy::JointPair;
  // Records at readout: ({1}, +2a) and ({0,1}, -2b), plus an inert ({0}, 0).
  const double c1 = std::cos(2 * kA), s1 = std::sin(2 * kA);
  const double c2 = std::cos(2 * kB), s2 = std::sin(2 * kB);
  std::map<std::pair<int, int>, int> cells;
  const int kTrials = 200000;
  for (int t = 0; t < kTrials; ++t) {
    Rng rng = Rng::keyed(10, t);
    SimState s = simulate(c, fa, cfg, rng);
    int flip = flip_of(s, 1);
    finalize_records(s, rng);
    cells[{flip, s.b.get(0)}]++;
  }
  auto near = [&](int count, double prob) {
    CHECK(count > kTrials * prob - 1100);
    CHECK(count < kTrials * prob + 1100);
  };
  near(cells[{0, 0}], c1 * c1 * c2 * c2);
  near(cells[{0, 1}], s1 * s1 * s2 * s2);
  near(cells[{1, 1}], c1 * c1 * s2 * s2);
  near(cells[{1, 0}], s1 * s1 * c2 * c2);

  cfg.overlap = OverlapPolicy::HardError;
  Rng rng = Rng::keyed(10, 0);
  bool threw = false;
  try {
    simulate(c, fa, cfg, rng);
  } catch (const EngineError&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("Z readout drops the measured qubit from record supports") {
  LayeredCircuit c = all_data(2);
  c.layers.push_back(idle_layer());
  c.layers.push_back(gates({{GateKind::CX, 1, 0}}));
  c.layers.push_back(meas(MeasBasis::Z, {1}));
  c = insert_cc_layers(c);
  FaultAssignment fa;
  fa.cc_phases = {0.3, 0.0, 0.0};
  fa.faults.push_back(idle_fault(0, 0, 1));
  EngineConfig cfg;
  Rng rng = Rng::keyed(11, 0);
  SimState s = simulate(c, fa, cfg, rng);
  // The ({0,1}, -0.6) record loses qubit 1 and merges with the slot's
  // inert ({0}, 0) record; the relative sign is ambiguous, so flagged.
  REQUIRE(s.records.size() == 1);
  CHECK(s.records[0].c == BitVec::single(0));
  CHECK(std::abs(s.records[0].phi) == doctest::Approx(0.6));
  CHECK(s.records[0].sign_dropped);
  CHECK(s.sign_ambiguous_merges == 1);
}

TEST_CASE("preparation rejects qubits still inside a record") {
  LayeredCircuit c;
  c.n_qubits = 2;
  c.data_begin = 0;
  c.data_end = 1;
  c.ancilla_begin = 1;
  c.ancilla_end = 2;
  Layer prep;
  prep.kind = LayerKind::Prep;
  prep.prep.kind = PrepKind::CatCe;
  prep.prep.w = 1;
  prep.prep.qubits = {0, 1};  // touches the data qubit carrying a record
  c.layers.push_back(idle_layer());
  c.layers.push_back(prep);
  c = insert_cc_layers(c);
  FaultAssignment fa = no_faults(c, 0.2);
  fa.faults.push_back(idle_fault(0, 0, 1));
  EngineConfig cfg;
  Rng rng = Rng::keyed(12, 0);
  bool threw = false;
  try {
    simulate(c, fa, cfg, rng);
  } catch (const EngineError&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("preparation resets the frame on its qubits") {
  LayeredCircuit c;
  c.n_qubits = 2;
  c.data_begin = 0;
  c.data_end = 0;
  c.ancilla_begin = 0;
  c.ancilla_end = 2;
  Layer prep;
  prep.kind = LayerKind::Prep;
  prep.prep.kind = PrepKind::CatCe;
  prep.prep.w = 1;
  prep.prep.qubits = {0, 1};
  c.layers.push_back(prep);
  c.layers.push_back(idle_layer());
  c.layers.push_back(meas(MeasBasis::X, {0, 1}));
  FaultAssignment fa = no_faults(c);
  fa.faults.push_back(idle_fault(1, 0, 3));  // Z after prep
  EngineConfig cfg;
  Rng rng = Rng::keyed(13, 0);
  SimState s = SimState::fresh(c);
  s.a.set(0);  // stale frame from an earlier segment
  s.b.set(1);
  simulate(s, c, fa, cfg, rng);
  CHECK(flip_of(s, 0) == 1);  // only the injected Z shows up
  CHECK(flip_of(s, 1) == 0);
}

TEST_CASE("without rotation slots the engine is a plain frame simulator") {
  // Independent reference: propagate X/Z masks through the conjugation
  // table and read flips directly.
  Rng gen = Rng::keyed(77, 0);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + gen.next_below(6);
    LayeredCircuit c = all_data(n);
    int n_layers = 1 + gen.next_below(5);
    for (int i = 0; i < n_layers; ++i) {
      Layer l;
      l.kind = LayerKind::Gates;
      int a = gen.next_below(n), b = gen.next_below(n);
      if (a != b) {
        GateKind ks[4] = {GateKind::CX, GateKind::C0X, GateKind::CZ,
                          GateKind::C0Z};
        l.gates.push_back({ks[gen.next_below(4)], a, b});
      }
      c.layers.push_back(l);
    }
    Layer mx = meas(MeasBasis::X, {});
    Layer mz = meas(MeasBasis::Z, {});
    for (int q = 0; q < n; ++q)
      (q % 2 ? mx : mz).meas.qubits.push_back(q);
    if (!mz.meas.qubits.empty()) c.layers.push_back(mz);
    if (!mx.meas.qubits.empty()) c.layers.push_back(mx);
    REQUIRE(validate_circuit(c).empty());

    NoiseModel m;
    m.p = 0.3;
    m.gamma = 1.0;
    m.seed = 1000 + trial;
    m.cc_policy = CcPolicy::Off;
    FaultAssignment fa = sample_faults(c, m, trial);

    EngineConfig cfg;
    Rng rng = Rng::keyed(0, 0);
    SimState s = simulate(c, fa, cfg, rng);  // slots disabled: no records
    CHECK(s.records.empty());

    // Reference frame walk.
    std::vector<int> rx(n, 0), rz(n, 0);
    std::map<int, int> ref_flip;
    std::size_t fi = 0;
    for (std::size_t li = 0; li < c.layers.size(); ++li) {
      const Layer& l = c.layers[li];
      if (l.kind == LayerKind::Gates)
        for (const Gate& g : l.gates) {
          int cc = g.control, tt = g.target;
          if (g.kind == GateKind::CX || g.kind == GateKind::C0X) {
            rx[tt] ^= rx[cc];
            rz[cc] ^= rz[tt];
          } else {
            rz[tt] ^= rx[cc];
            rz[cc] ^= rx[tt];
          }
        }
      std::vector<int> flips;
      while (fi < fa.faults.size() &&
             fa.faults[fi].loc.layer == static_cast<int>(li)) {
        const Fault& f = fa.faults[fi];
        if (f.loc.kind == LocationKind::Meas1) {
          flips.push_back(f.loc.q0);
        } else if (f.loc.kind == LocationKind::Gate2) {
          rx[f.loc.q0] ^= letter_has_x(f.pauli >> 2);
          rz[f.loc.q0] ^= letter_has_z(f.pauli >> 2);
          rx[f.loc.q1] ^= letter_has_x(f.pauli & 3);
          rz[f.loc.q1] ^= letter_has_z(f.pauli & 3);
        } else {
          rx[f.loc.q0] ^= letter_has_x(f.pauli);
          rz[f.loc.q0] ^= letter_has_z(f.pauli);
        }
        ++fi;
      }
      if (l.kind == LayerKind::Meas)
        for (int q : l.meas.qubits) {
          int v = l.meas.basis == MeasBasis::X ? rz[q] : rx[q];
          for (int fq : flips)
            if (fq == q) v ^= 1;
          ref_flip[q] = v;
        }
    }
    for (auto& [q, f] : s.outcomes) CHECK(f == ref_flip.at(q));
  }
}

TEST_CASE("debug stream reports one line per layer") {
  LayeredCircuit c = all_data(1);
  c.layers.push_back(idle_layer());
  c.layers.push_back(meas(MeasBasis::X, {0}));
  c = insert_cc_layers(c);
  FaultAssignment fa = no_faults(c, 0.2);
  fa.faults.push_back(idle_fault(0, 0, 1));
  std::ostringstream dump;
  EngineConfig cfg;
  cfg.debug = &dump;
  Rng rng = Rng::keyed(14, 0);
  simulate(c, fa, cfg, rng);
  std::string text = dump.str();
  CHECK(text.find("t=0 kind=gates a=1 b=0 records=[(-0.4,1)]") !=
        std::string::npos);
  CHECK(text.find("t=1 kind=meas") != std::string::npos);
}
