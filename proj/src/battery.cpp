#include "ceqc/battery.hpp"

#include <map>

#include "ceqc/oracle.hpp"

namespace ceqc {

namespace {

LayeredCircuit all_data(int n) {
  LayeredCircuit c;
  c.n_qubits = n;
  c.data_begin = 0;
  c.data_end = n;
  c.ancilla_begin = n;
  c.ancilla_end = n;
  return c;
}

Layer gate_layer(std::vector<Gate> gs) {
  Layer l;
  l.kind = LayerKind::Gates;
  l.gates = std::move(gs);
  return l;
}

Layer idle_layer() { return gate_layer({}); }

Layer cat_layer(std::vector<int> qs) {
  Layer l;
  l.kind = LayerKind::Prep;
  l.prep.kind = PrepKind::CatCe;
  l.prep.w = static_cast<int>(qs.size()) / 2;
  l.prep.qubits = std::move(qs);
  return l;
}

Layer code_layer(const std::string& name, std::vector<int> qs) {
  Layer l;
  l.kind = LayerKind::Prep;
  l.prep.kind = PrepKind::Logical0;
  l.prep.code_name = name;
  l.prep.qubits = std::move(qs);
  return l;
}

Layer meas_layer(MeasBasis basis, std::vector<int> qs) {
  Layer l;
  l.kind = LayerKind::Meas;
  l.meas.basis = basis;
  l.meas.qubits = std::move(qs);
  return l;
}

Fault one_qubit_fault(int layer, int q, int letter) {
  Fault f;
  f.loc.kind = LocationKind::Idle;
  f.loc.layer = layer;
  f.loc.q0 = q;
  f.pauli = letter;
  return f;
}

Fault gate_fault(int layer, int control, int target, int pair) {
  Fault f;
  f.loc.kind = LocationKind::Gate2;
  f.loc.layer = layer;
  f.loc.q0 = control;
  f.loc.q1 = target;
  f.pauli = pair;
  return f;
}

Fault meas_flip(int layer, int q, MeasBasis basis) {
  Fault f;
  f.loc.kind = LocationKind::Meas1;
  f.loc.layer = layer;
  f.loc.q0 = q;
  f.loc.basis = basis;
  f.pauli = 0;
  return f;
}

/* Two data qubits: idle, CX (or C0X), then X- and Z-basis readout. */
LayeredCircuit chain_circuit(GateKind kind) {
  LayeredCircuit c = all_data(2);
  c.layers.push_back(idle_layer());
  c.layers.push_back(gate_layer({{kind, 0, 1}}));
  c.layers.push_back(meas_layer(MeasBasis::X, {1}));
  c.layers.push_back(meas_layer(MeasBasis::Z, {0}));
  return insert_cc_layers(c);
}

/* Cat pair (or quad) with an idle window and a full X readout. */
LayeredCircuit cat_circuit(int n) {
  LayeredCircuit c = all_data(n);
  std::vector<int> qs;
  for (int q = 0; q < n; ++q) qs.push_back(q);
  c.layers.push_back(cat_layer(qs));
  c.layers.push_back(idle_layer());
  c.layers.push_back(meas_layer(MeasBasis::X, qs));
  return insert_cc_layers(c);
}

/*
 * Identity gadget: a cat ancilla pair coupled rail-by-rail onto a cat data
 * pair, ancilla readout in X. The X-coupled form uses CX from the odd rail
 * and C0X from the even one; the Z-coupled form uses CZ / C0Z. `data_first`
 * reads the data pair before the ancillas so that transported records meet
 * slot-merged ones on the same measurement.
 */
LayeredCircuit gadget_circuit(bool x_type, bool data_first,
                              MeasBasis data_basis) {
  LayeredCircuit c = all_data(4);
  c.layers.push_back(cat_layer({0, 1}));
  c.layers.push_back(cat_layer({2, 3}));
  c.layers.push_back(
      gate_layer({{x_type ? GateKind::CX : GateKind::CZ, 0, 2},
                  {x_type ? GateKind::C0X : GateKind::C0Z, 1, 3}}));
  Layer anc = meas_layer(MeasBasis::X, {0, 1});
  Layer data = meas_layer(data_basis, {2, 3});
  if (data_first) {
    c.layers.push_back(data);
    c.layers.push_back(anc);
  } else {
    c.layers.push_back(anc);
    c.layers.push_back(data);
  }
  return insert_cc_layers(c);
}

/*
 * One Shor-style generator readout on the four-qubit code: logical zero,
 * then a cat block coupled across the generator's support. `zz_pair` 0 or 1
 * selects one of the weight-two Z generators; -1 selects the weight-four X
 * generator with a four-qubit cat.
 */
LayeredCircuit c4_generator_circuit(int zz_pair) {
  const bool x_type = zz_pair < 0;
  const int n = x_type ? 8 : 6;
  LayeredCircuit c = all_data(n);
  c.layers.push_back(code_layer("c4", {0, 1, 2, 3}));
  std::vector<int> block;
  for (int q = 4; q < n; ++q) block.push_back(q);
  c.layers.push_back(cat_layer(block));
  std::vector<Gate> gs;
  const int base = zz_pair > 0 ? 2 : 0;
  for (std::size_t j = 0; j < block.size(); ++j) {
    const bool zero_control = (j % 2 == 1);
    Gate g;
    g.kind = x_type ? (zero_control ? GateKind::C0X : GateKind::CX)
                    : (zero_control ? GateKind::C0Z : GateKind::CZ);
    g.control = block[j];
    g.target = base + static_cast<int>(j);
    gs.push_back(g);
  }
  c.layers.push_back(gate_layer(gs));
  c.layers.push_back(meas_layer(MeasBasis::X, block));
  return insert_cc_layers(c);
}

/* Both weight-two Z generators read out in sequence on fresh cat pairs. */
LayeredCircuit c4_two_gadget_circuit() {
  LayeredCircuit c = all_data(8);
  c.layers.push_back(code_layer("c4", {0, 1, 2, 3}));
  c.layers.push_back(cat_layer({4, 5}));
  c.layers.push_back(
      gate_layer({{GateKind::CZ, 4, 0}, {GateKind::C0Z, 5, 1}}));
  c.layers.push_back(meas_layer(MeasBasis::X, {4, 5}));
  c.layers.push_back(cat_layer({6, 7}));
  c.layers.push_back(
      gate_layer({{GateKind::CZ, 6, 2}, {GateKind::C0Z, 7, 3}}));
  c.layers.push_back(meas_layer(MeasBasis::X, {6, 7}));
  return insert_cc_layers(c);
}

void add(std::vector<ProbeCase>& out, std::string name, LayeredCircuit c,
         std::vector<Fault> faults) {
  out.push_back({std::move(name), std::move(c), std::move(faults)});
}

}  // namespace

std::vector<ProbeCase> probe_battery() {
  std::vector<ProbeCase> out;

  // Two-qubit chains: fault, propagate, read out both bases.
  add(out, "chain_cx_clean", chain_circuit(GateKind::CX), {});
  add(out, "chain_cx_x0", chain_circuit(GateKind::CX),
      {one_qubit_fault(0, 0, 1)});
  add(out, "chain_cx_y0", chain_circuit(GateKind::CX),
      {one_qubit_fault(0, 0, 2)});
  add(out, "chain_cx_z0", chain_circuit(GateKind::CX),
      {one_qubit_fault(0, 0, 3)});
  add(out, "chain_cx_x1", chain_circuit(GateKind::CX),
      {one_qubit_fault(0, 1, 1)});
  add(out, "chain_c0x_x1", chain_circuit(GateKind::C0X),
      {one_qubit_fault(0, 1, 1)});
  add(out, "chain_cx_gate_xz", chain_circuit(GateKind::CX),
      {gate_fault(1, 0, 1, 4 * 1 + 3)});
  add(out, "chain_cx_x0_measflip", chain_circuit(GateKind::CX),
      {one_qubit_fault(0, 0, 1), meas_flip(2, 1, MeasBasis::X)});

  // Cat parity probes.
  add(out, "cat2_clean", cat_circuit(2), {});
  add(out, "cat2_x0", cat_circuit(2), {one_qubit_fault(1, 0, 1)});
  add(out, "cat2_z0", cat_circuit(2), {one_qubit_fault(1, 0, 3)});
  add(out, "cat2_y1", cat_circuit(2), {one_qubit_fault(1, 1, 2)});
  add(out, "cat2_measflip", cat_circuit(2), {meas_flip(2, 0, MeasBasis::X)});
  add(out, "cat4_x1", cat_circuit(4), {one_qubit_fault(1, 1, 1)});
  add(out, "cat4_z2", cat_circuit(4), {one_qubit_fault(1, 2, 3)});
  add(out, "cat4_y3", cat_circuit(4), {one_qubit_fault(1, 3, 2)});

  // X-coupled identity gadgets (records ride through C0X).
  LayeredCircuit gx = gadget_circuit(true, false, MeasBasis::X);
  add(out, "gadget_xx_clean", gx, {});
  add(out, "gadget_xx_data_x3", gx, {one_qubit_fault(1, 3, 1)});
  add(out, "gadget_xx_data_z2", gx, {one_qubit_fault(1, 2, 3)});
  add(out, "gadget_xx_anc_x0", gx, {one_qubit_fault(1, 0, 1)});
  add(out, "gadget_xx_gate_fault", gx, {gate_fault(2, 1, 3, 4 * 1 + 0)});
  add(out, "gadget_xx_pair_meet", gadget_circuit(true, true, MeasBasis::X),
      {one_qubit_fault(1, 3, 1)});

  // Z-coupled identity gadgets (diagonal couplings leave records alone).
  LayeredCircuit gz = gadget_circuit(false, false, MeasBasis::X);
  add(out, "gadget_zz_clean", gz, {});
  add(out, "gadget_zz_data_x3", gz, {one_qubit_fault(1, 3, 1)});
  add(out, "gadget_zz_data_z2", gadget_circuit(false, false, MeasBasis::Z),
      {one_qubit_fault(1, 2, 3)});
  add(out, "gadget_zz_anc_z0", gz, {one_qubit_fault(1, 0, 3)});
  add(out, "gadget_zz_measflip", gz, {meas_flip(3, 1, MeasBasis::X)});

  // Single-generator readouts on the four-qubit code.
  add(out, "c4_zz_clean", c4_generator_circuit(0), {});
  add(out, "c4_zz_data_x0", c4_generator_circuit(0),
      {one_qubit_fault(2, 0, 1)});
  add(out, "c4_zz_data_x1", c4_generator_circuit(0),
      {one_qubit_fault(1, 1, 1)});
  add(out, "c4_zz_measflip", c4_generator_circuit(0),
      {meas_flip(3, 4, MeasBasis::X)});
  add(out, "c4_xxxx_clean", c4_generator_circuit(-1), {});
  add(out, "c4_xxxx_data_z2", c4_generator_circuit(-1),
      {one_qubit_fault(1, 2, 3)});
  add(out, "c4_xxxx_data_x1", c4_generator_circuit(-1),
      {one_qubit_fault(1, 1, 1)});
  add(out, "c4_two_zz_mid_x2", c4_two_gadget_circuit(),
      {one_qubit_fault(3, 2, 1)});

  return out;
}

double probe_tvd(const ProbeCase& pc, double theta, int samples,
                 std::uint64_t seed, const EngineConfig& cfg) {
  FaultAssignment fa;
  fa.faults = pc.faults;
  fa.cc_phases.assign(pc.circuit.layers.size(), theta);
  FaultAssignment clean;
  clean.cc_phases.assign(pc.circuit.layers.size(), 0.0);

  OutcomeDist exact = run_statevector(pc.circuit, fa);
  OutcomeDist reference = run_statevector(pc.circuit, clean);

  std::map<std::uint64_t, double> empirical;
  Rng ref_rng = Rng::keyed(seed, 0x5e1fULL);
  const double wt = 1.0 / samples;
  for (int t = 0; t < samples; ++t) {
    Rng rng = Rng::keyed(seed, static_cast<std::uint64_t>(t) + 1);
    SimState s = simulate(pc.circuit, fa, cfg, rng);
    std::uint64_t key = sample_from(reference, ref_rng);
    for (std::size_t i = 0; i < s.outcomes.size(); ++i)
      key ^= static_cast<std::uint64_t>(s.outcomes[i].second) << i;
    empirical[key] += wt;
  }
  return tvd(exact.p, empirical);
}

}  // namespace ceqc
