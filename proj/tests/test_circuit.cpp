#include "ceqc/circuit.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"

using namespace ceqc;

namespace {

LayeredCircuit three_qubit_cx() {
  LayeredCircuit c;
  c.n_qubits = 3;
  c.data_begin = 0;
  c.data_end = 3;
  Layer l;
  l.kind = LayerKind::Gates;
  l.gates.push_back({GateKind::CX, 0, 1});
  c.layers.push_back(l);
  return c;
}

Layer gates(std::vector<Gate> gs) {
  Layer l;
  l.kind = LayerKind::Gates;
  l.gates = std::move(gs);
  return l;
}

Layer cat_prep(int w, std::vector<int> qs) {
  Layer l;
  l.kind = LayerKind::Prep;
  l.prep.kind = PrepKind::CatCe;
  l.prep.w = w;
  l.prep.qubits = std::move(qs);
  return l;
}

Layer meas(MeasBasis b, std::vector<int> qs) {
  Layer l;
  l.kind = LayerKind::Meas;
  l.meas.basis = b;
  l.meas.qubits = std::move(qs);
  return l;
}

int count_kind(const std::vector<Location>& locs, LocationKind k) {
  return static_cast<int>(
      std::count_if(locs.begin(), locs.end(),
                    [&](const Location& l) { return l.kind == k; }));
}

bool mentions(const std::vector<std::string>& msgs, const std::string& frag) {
  return std::any_of(msgs.begin(), msgs.end(), [&](const std::string& m) {
    return m.find(frag) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("well-formed circuit validates cleanly") {
  CHECK(validate_circuit(three_qubit_cx()).empty());
}

TEST_CASE("two gates sharing a qubit in one layer are rejected") {
  LayeredCircuit c = three_qubit_cx();
  c.layers[0].gates.push_back({GateKind::CZ, 1, 2});
  auto bad = validate_circuit(c);
  REQUIRE(!bad.empty());
  CHECK(mentions(bad, "qubit 1 used twice"));
  CHECK(mentions(bad, "layer 0"));
}

TEST_CASE("gate with control equal to target is rejected") {
  LayeredCircuit c = three_qubit_cx();
  c.layers[0].gates[0] = {GateKind::CX, 0, 0};
  auto bad = validate_circuit(c);
  CHECK(mentions(bad, "controls its own target"));
}

TEST_CASE("gate on an unprepared ancilla is rejected") {
  LayeredCircuit c;
  c.n_qubits = 2;
  c.data_begin = 0;
  c.data_end = 1;
  c.ancilla_begin = 1;
  c.ancilla_end = 2;
  c.layers.push_back(gates({{GateKind::CX, 1, 0}}));
  CHECK(mentions(validate_circuit(c), "non-live qubit 1"));
}

TEST_CASE("measuring a qubit twice is rejected") {
  LayeredCircuit c;
  c.n_qubits = 1;
  c.data_end = 1;
  c.layers.push_back(meas(MeasBasis::Z, {0}));
  c.layers.push_back(meas(MeasBasis::Z, {0}));
  auto bad = validate_circuit(c);
  CHECK(mentions(bad, "layer 1"));
  CHECK(mentions(bad, "measured twice"));
}

TEST_CASE("preparing a measured qubit is rejected") {
  LayeredCircuit c;
  c.n_qubits = 2;
  c.ancilla_end = 2;
  c.data_begin = c.data_end = 0;
  c.layers.push_back(cat_prep(1, {0, 1}));
  c.layers.push_back(meas(MeasBasis::X, {0, 1}));
  c.layers.push_back(cat_prep(1, {0, 1}));
  CHECK(mentions(validate_circuit(c), "preparation on measured qubit"));
}

TEST_CASE("role ranges must cover the qubits exactly") {
  LayeredCircuit c;
  c.n_qubits = 3;
  c.data_end = 2;  // qubit 2 unassigned
  CHECK(mentions(validate_circuit(c), "do not cover"));
  c.ancilla_begin = 1;
  c.ancilla_end = 3;
  CHECK(mentions(validate_circuit(c), "overlap"));
}

TEST_CASE("one gate layer on three live qubits yields one gate and one idle") {
  auto locs = enumerate_locations(three_qubit_cx());
  CHECK(locs.size() == 2);
  CHECK(count_kind(locs, LocationKind::Gate2) == 1);
  CHECK(count_kind(locs, LocationKind::Idle) == 1);
  CHECK(locs[0].q0 == 0);
  CHECK(locs[0].q1 == 1);
  CHECK(locs[1].q0 == 2);
}

TEST_CASE("cat preparation and measurement each count one location per qubit") {
  LayeredCircuit c;
  c.n_qubits = 4;
  c.data_begin = c.data_end = 0;
  c.ancilla_end = 4;
  c.layers.push_back(cat_prep(2, {0, 1, 2, 3}));
  c.layers.push_back(meas(MeasBasis::X, {0, 1, 2, 3}));
  REQUIRE(validate_circuit(c).empty());
  auto locs = enumerate_locations(c);
  CHECK(count_kind(locs, LocationKind::Prep1) == 4);
  CHECK(count_kind(locs, LocationKind::Meas1) == 4);
  CHECK(count_kind(locs, LocationKind::Idle) == 0);
}

TEST_CASE("idle sites appear for live untouched qubits only") {
  LayeredCircuit c;
  c.n_qubits = 4;
  c.data_begin = 0;
  c.data_end = 2;
  c.ancilla_begin = 2;
  c.ancilla_end = 4;
  c.layers.push_back(cat_prep(1, {2, 3}));     // data 0,1 idle
  c.layers.push_back(gates({{GateKind::CX, 2, 0}}));  // 1 and 3 idle
  c.layers.push_back(meas(MeasBasis::X, {2, 3}));     // data 0,1 idle
  REQUIRE(validate_circuit(c).empty());
  auto locs = enumerate_locations(c);
  CHECK(count_kind(locs, LocationKind::Idle) == 6);
  // After the measurement retires 2 and 3, a trailing layer idles only data.
  c.layers.push_back(gates({{GateKind::CX, 0, 1}}));
  locs = enumerate_locations(c);
  CHECK(count_kind(locs, LocationKind::Idle) == 6);
}

TEST_CASE("live mask includes qubits prepared or measured in the same layer") {
  LayeredCircuit c;
  c.n_qubits = 3;
  c.data_begin = 0;
  c.data_end = 1;
  c.ancilla_begin = 1;
  c.ancilla_end = 3;
  c.layers.push_back(cat_prep(1, {1, 2}));
  c.layers.push_back(meas(MeasBasis::X, {1, 2}));
  c.layers.push_back(gates({}));
  REQUIRE(validate_circuit(c).empty());
  auto masks = live_masks(c);
  REQUIRE(masks.size() == 3);
  CHECK(masks[0].get(1));   // prepared this layer
  CHECK(masks[1].get(1));   // still live at its own measurement
  CHECK(!masks[2].get(1));  // retired afterwards
  CHECK(masks[2].get(0));
}

TEST_CASE("coherent slot marking is idempotent") {
  LayeredCircuit c = three_qubit_cx();
  CHECK(!c.cc_layers_enabled);
  LayeredCircuit once = insert_cc_layers(c);
  CHECK(once.cc_layers_enabled);
  CHECK(insert_cc_layers(once) == once);
}

TEST_CASE("text round trip preserves every layer") {
  std::string text =
      "ceqc v1\n"
      "qubits 14\n"
      "data 0..11\n"
      "ancilla 12..13\n"
      "prep cat_ce(1) 12 13\n"
      "layer: CX 12 0 ; C0X 13 1\n"
      "layer: CZ 12 2\n"
      "MX 12 13\n";
  LayeredCircuit c = parse_circuit(text);
  CHECK(c.n_qubits == 14);
  CHECK(c.data_end == 12);
  CHECK(c.ancilla_begin == 12);
  REQUIRE(c.layers.size() == 4);
  CHECK(c.layers[1].gates.size() == 2);
  CHECK(c.layers[1].gates[1] == Gate{GateKind::C0X, 13, 1});
  std::string out = serialize_circuit(c);
  CHECK(parse_circuit(out) == c);
  CHECK(serialize_circuit(parse_circuit(out)) == out);
}

TEST_CASE("semicolons bind tightly or loosely") {
  std::string tight =
      "ceqc v1\nqubits 4\ndata 0..1\nancilla 2..3\n"
      "prep cat_ce(1) 2 3\nlayer: CX 2 0; C0X 3 1\nMX 2 3\n";
  std::string loose =
      "ceqc v1\nqubits 4\ndata 0..1\nancilla 2..3\n"
      "prep cat_ce(1) 2 3\nlayer: CX 2 0 ; C0X 3 1\nMX 2 3\n";
  CHECK(parse_circuit(tight) == parse_circuit(loose));
}

TEST_CASE("parse reports the offending line") {
  auto line_of = [](const std::string& text) {
    try {
      parse_circuit(text);
    } catch (const CircuitParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("nonsense\n") == 1);
  CHECK(line_of("ceqc v1\nqubits two\n") == 2);
  CHECK(line_of("ceqc v1\nqubits 2\ndata 0..1\nlayer: XX 0 1\n") == 4);
  CHECK(line_of("ceqc v1\ndata 0..1\n") == 2);  // missing qubit count
  // Validation failures surface with the last line read.
  CHECK(line_of("ceqc v1\nqubits 2\ndata 0..1\nlayer: CX 0 0\n") == 4);
}

TEST_CASE("logical preparation parses with a code name") {
  std::string text =
      "ceqc v1\nqubits 4\ndata 0..3\n"
      "prep logical0 c4 0 1 2 3\nMZ 0 1 2 3\n";
  LayeredCircuit c = parse_circuit(text);
  CHECK(c.layers[0].prep.kind == PrepKind::Logical0);
  CHECK(c.layers[0].prep.code_name == "c4");
  CHECK(c.layers[0].prep.qubits == std::vector<int>{0, 1, 2, 3});
  CHECK(parse_circuit(serialize_circuit(c)) == c);
}

TEST_CASE("comments and a trailing sidecar section are ignored") {
  std::string text =
      "ceqc v1   # format header\n"
      "qubits 2\n"
      "data 0..1\n"
      "MZ 0 1    # read both\n"
      "meta:\n"
      "anything at all ; even ] garbage\n";
  LayeredCircuit c = parse_circuit(text);
  CHECK(c.layers.size() == 1);
  CHECK(c.layers[0].meas.qubits.size() == 2);
}

TEST_CASE("location total matches the per-layer tally") {
  LayeredCircuit c;
  c.n_qubits = 6;
  c.data_begin = 0;
  c.data_end = 4;
  c.ancilla_begin = 4;
  c.ancilla_end = 6;
  c.layers.push_back(cat_prep(1, {4, 5}));
  c.layers.push_back(gates({{GateKind::CX, 4, 0}, {GateKind::C0X, 5, 1}}));
  c.layers.push_back(gates({{GateKind::CZ, 4, 2}}));
  c.layers.push_back(meas(MeasBasis::X, {4, 5}));
  REQUIRE(validate_circuit(c).empty());
  auto locs = enumerate_locations(c);
  auto masks = live_masks(c);
  // prep layer: 2 preps + 4 idles; gates: 2 gates + 2 idles; 1 gate + 4
  // idles; meas: 2 meas + 4 idles.
  CHECK(masks[2].popcount() == 6);
  CHECK(count_kind(locs, LocationKind::Gate2) == 3);
  CHECK(count_kind(locs, LocationKind::Prep1) == 2);
  CHECK(count_kind(locs, LocationKind::Meas1) == 2);
  CHECK(count_kind(locs, LocationKind::Idle) == 4 + 2 + 4 + 4);
  CHECK(locs.size() == 3 + 2 + 2 + 14);
}
