#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ceqc/bits.hpp"

namespace ceqc {

enum class GateKind { CX, C0X, CZ, C0Z };

struct Gate {
  GateKind kind = GateKind::CX;
  int control = -1;
  int target = -1;
  friend bool operator==(const Gate&, const Gate&) = default;
};

enum class PrepKind { CatCe, Logical0, LogicalPlus };

struct PrepOp {
  PrepKind kind = PrepKind::CatCe;
  int w = 0;              // CatCe: the excitation number (2w qubits)
  std::string code_name;  // Logical0 / LogicalPlus
  std::vector<int> qubits;
  friend bool operator==(const PrepOp&, const PrepOp&) = default;
};

enum class MeasBasis { X, Z };

struct MeasOp {
  MeasBasis basis = MeasBasis::X;
  std::vector<int> qubits;
  friend bool operator==(const MeasOp&, const MeasOp&) = default;
};

enum class LayerKind { Gates, Prep, Meas };

// One depth step: a set of disjoint two-qubit gates, one preparation, or one
// bitwise measurement.
struct Layer {
  LayerKind kind = LayerKind::Gates;
  std::vector<Gate> gates;
  PrepOp prep;
  MeasOp meas;
  friend bool operator==(const Layer&, const Layer&) = default;
};

struct LayeredCircuit {
  int n_qubits = 0;
  int data_begin = 0, data_end = 0;        // half-open qubit range
  int ancilla_begin = 0, ancilla_end = 0;  // half-open qubit range
  std::vector<Layer> layers;
  bool cc_layers_enabled = false;

  bool is_data(int q) const { return q >= data_begin && q < data_end; }
  friend bool operator==(const LayeredCircuit&, const LayeredCircuit&) =
      default;
};

enum class LocationKind { Gate2, Prep1, Idle, Meas1 };

// One fault site. Gate2 carries both qubits; the other kinds one.
struct Location {
  LocationKind kind = LocationKind::Idle;
  int layer = -1;
  int q0 = -1;
  int q1 = -1;  // Gate2 target; -1 otherwise
  GateKind gate = GateKind::CX;
  MeasBasis basis = MeasBasis::X;
};

struct CircuitParseError : std::runtime_error {
  int line;  // 1-based
  CircuitParseError(const std::string& msg, int line_no)
      : std::runtime_error(msg), line(line_no) {}
};

// All invariant violations, each naming the layer and qubit; empty when ok.
std::vector<std::string> validate_circuit(const LayeredCircuit& c);

// Live-qubit mask at each layer's coherent slot: prepared (or data) and not
// yet retired by an earlier measurement; a qubit measured in the layer is
// still live for that layer's slot.
std::vector<BitVec> live_masks(const LayeredCircuit& c);

// Deterministic fault-site list: per layer, one site per gate / prepared
// qubit / measured qubit, plus one idle site per untouched live qubit.
std::vector<Location> enumerate_locations(const LayeredCircuit& c);

// Marks one coherent-rotation slot per layer (before collapse on measurement
// layers). Idempotent.
LayeredCircuit insert_cc_layers(LayeredCircuit c);

// Text format round trip. parse ignores everything from a "meta:" line on
// (sidecar sections belong to the round builders).
LayeredCircuit parse_circuit(const std::string& text);
std::string serialize_circuit(const LayeredCircuit& c);

const char* gate_name(GateKind k);

}  // namespace ceqc
