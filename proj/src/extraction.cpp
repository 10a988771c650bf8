#include "ceqc/extraction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ceqc {

namespace {

std::vector<int> support_of(const Pauli& g) {
  std::vector<int> s;
  for (int q = 0; q < g.n; ++q)
    if (g.x.get(q) || g.z.get(q)) s.push_back(q);
  return s;
}

int sign_bit_of(const Pauli& g) { return real_sign(g) < 0 ? 1 : 0; }

std::vector<int> range(int begin, int count) {
  std::vector<int> v(count);
  std::iota(v.begin(), v.end(), begin);
  return v;
}

}  // namespace

CatSpec build_ce_cat(int w) {
  if (w < 1) throw CodeError("cat excitation number must be at least 1");
  CatSpec spec;
  spec.w = w;
  const int m = 2 * w;
  spec.qubits = range(0, m);
  Pauli xall = Pauli::identity(m);
  for (int q = 0; q < m; ++q) xall.x.set(q);
  spec.stabilizers.push_back(xall);
  for (int i = 0; i + 1 < m; ++i) {
    Pauli zz = Pauli::identity(m);
    zz.z.set(i);
    zz.z.set(i + 1);
    zz.phase = 2;
    spec.stabilizers.push_back(zz);
  }
  return spec;
}

ExtractionRound build_shor_round(const CssCode& code) {
  if (!code.is_css)
    throw CodeError("probe rounds need a CSS generator split");
  const StabilizerCode& base = code.base();

  ExtractionRound r;
  r.method = ExtractionMethod::Shor;
  r.n_generators = static_cast<int>(base.generators.size());
  LayeredCircuit& c = r.circuit;
  c.data_begin = 0;
  c.data_end = base.n;
  c.ancilla_begin = base.n;

  std::vector<int> order = code.z_rows;
  order.insert(order.end(), code.x_rows.begin(), code.x_rows.end());

  int next = base.n;
  for (int gi : order) {
    const Pauli& g = base.generators[gi];
    const bool x_type = g.x.any();
    const std::vector<int> supp = support_of(g);
    const int m = static_cast<int>(supp.size());
    const int w = (m + 1) / 2;
    const int na = 2 * w;
    const std::vector<int> block = range(next, na);

    Layer prep;
    prep.kind = LayerKind::Prep;
    prep.prep.kind = PrepKind::CatCe;
    prep.prep.w = w;
    prep.prep.qubits = block;

    Layer gates;
    gates.kind = LayerKind::Gates;
    for (int j = 0; j < m; ++j) {
      Gate gate;
      const bool zero_control = (j % 2 == 1);  // even rail of the cat
      gate.kind = x_type ? (zero_control ? GateKind::C0X : GateKind::CX)
                         : (zero_control ? GateKind::C0Z : GateKind::CZ);
      gate.control = next + j;
      gate.target = supp[j];
      gates.gates.push_back(gate);
    }

    Layer meas;
    meas.kind = LayerKind::Meas;
    meas.meas.basis = MeasBasis::X;
    meas.meas.qubits = block;

    c.layers.push_back(prep);
    c.layers.push_back(gates);
    c.layers.push_back(meas);

    GeneratorReadout ro;
    ro.generator = gi;
    ro.ancillas = block;
    ro.sign_bit = sign_bit_of(g);
    r.readouts.push_back(ro);
    next += na;
  }
  c.n_qubits = next;
  c.ancilla_end = next;
  return r;
}

ExtractionRound build_steane_round(const CssCode& code,
                                   const std::string& code_name) {
  if (!code.is_css)
    throw CodeError("block rounds need a CSS generator split");
  const StabilizerCode& base = code.base();
  const int n = base.n;
  if (n % 2 != 0)
    throw CodeError("block rounds need the paired-rail layout (even n)");
  for (int q = 0; q + 1 < n; q += 2) {
    bool paired = false;
    for (int gi : code.z_rows) {
      const Pauli& g = base.generators[gi];
      if (g.z.popcount() == 2 && g.z.get(q) && g.z.get(q + 1)) paired = true;
    }
    if (!paired) {
      std::ostringstream os;
      os << "no rail pair stabilizer at qubits " << q << "," << q + 1;
      throw CodeError(os.str());
    }
  }

  ExtractionRound r;
  r.method = ExtractionMethod::Steane;
  r.n_generators = static_cast<int>(base.generators.size());
  LayeredCircuit& c = r.circuit;
  c.data_begin = 0;
  c.data_end = n;
  c.ancilla_begin = n;
  c.ancilla_end = 3 * n;
  c.n_qubits = 3 * n;
  const std::vector<int> block_a = range(n, n);
  const std::vector<int> block_b = range(2 * n, n);

  auto coupling = [&](bool block_a_controls) {
    Layer gates;
    gates.kind = LayerKind::Gates;
    for (int j = 0; j < n; ++j) {
      Gate gate;
      const bool zero_control = (code.shift_y >> j) & 1u;
      gate.kind = zero_control ? GateKind::C0X : GateKind::CX;
      if (block_a_controls) {
        gate.control = n + j;
        gate.target = j;
      } else {
        gate.control = j;
        gate.target = 2 * n + j;
      }
      gates.gates.push_back(gate);
    }
    return gates;
  };

  Layer prep_a;
  prep_a.kind = LayerKind::Prep;
  prep_a.prep.kind = PrepKind::Logical0;
  prep_a.prep.code_name = code_name;
  prep_a.prep.qubits = block_a;

  Layer meas_a;
  meas_a.kind = LayerKind::Meas;
  meas_a.meas.basis = MeasBasis::X;
  meas_a.meas.qubits = block_a;

  Layer prep_b;
  prep_b.kind = LayerKind::Prep;
  prep_b.prep.kind = PrepKind::LogicalPlus;
  prep_b.prep.code_name = code_name;
  prep_b.prep.qubits = block_b;

  Layer meas_b;
  meas_b.kind = LayerKind::Meas;
  meas_b.meas.basis = MeasBasis::Z;
  meas_b.meas.qubits = block_b;

  c.layers.push_back(prep_a);
  c.layers.push_back(coupling(true));
  c.layers.push_back(meas_a);
  c.layers.push_back(prep_b);
  c.layers.push_back(coupling(false));
  c.layers.push_back(meas_b);

  for (int gi : code.x_rows) {
    GeneratorReadout ro;
    ro.generator = gi;
    for (int q : support_of(base.generators[gi])) ro.ancillas.push_back(n + q);
    ro.sign_bit = sign_bit_of(base.generators[gi]);
    r.readouts.push_back(ro);
  }
  for (int gi : code.z_rows) {
    GeneratorReadout ro;
    ro.generator = gi;
    for (int q : support_of(base.generators[gi]))
      ro.ancillas.push_back(2 * n + q);
    ro.sign_bit = sign_bit_of(base.generators[gi]);
    r.readouts.push_back(ro);
  }
  return r;
}

int interpret_outcome_bits(const std::vector<int>& bits, int sign_bit) {
  int par = sign_bit & 1;
  for (int b : bits) par ^= b & 1;
  return par;
}

namespace {

std::vector<int> interpret_common(
    const ExtractionRound& r,
    const std::vector<std::pair<int, int>>& outcomes, bool add_sign) {
  std::map<int, int> bit_at;
  for (const auto& [q, b] : outcomes) bit_at[q] = b & 1;
  std::vector<int> syn(r.n_generators, 0);
  for (const auto& ro : r.readouts) {
    int par = add_sign ? ro.sign_bit : 0;
    for (int q : ro.ancillas) {
      auto it = bit_at.find(q);
      if (it == bit_at.end()) {
        std::ostringstream os;
        os << "no outcome recorded for qubit " << q;
        throw std::invalid_argument(os.str());
      }
      par ^= it->second;
    }
    syn[ro.generator] = par;
  }
  return syn;
}

}  // namespace

std::vector<int> interpret_absolute(
    const ExtractionRound& r,
    const std::vector<std::pair<int, int>>& outcomes) {
  return interpret_common(r, outcomes, true);
}

std::vector<int> interpret_flips(
    const ExtractionRound& r, const std::vector<std::pair<int, int>>& flips) {
  return interpret_common(r, flips, false);
}

std::string serialize_round(const ExtractionRound& r) {
  std::ostringstream os;
  os << serialize_circuit(r.circuit);
  os << "meta:\n";
  os << "method " << (r.method == ExtractionMethod::Shor ? "shor" : "steane")
     << "\n";
  os << "generators " << r.n_generators << "\n";
  for (const auto& ro : r.readouts) {
    os << "readout " << ro.generator << " " << ro.sign_bit;
    for (int q : ro.ancillas) os << " " << q;
    os << "\n";
  }
  return os.str();
}

ExtractionRound parse_round(const std::string& text) {
  ExtractionRound r;
  r.circuit = parse_circuit(text);

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool in_meta = false;
  bool saw_method = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (!in_meta) {
      if (toks[0] == "meta:") in_meta = true;
      continue;
    }
    try {
      if (toks[0] == "method" && toks.size() == 2) {
        if (toks[1] == "shor")
          r.method = ExtractionMethod::Shor;
        else if (toks[1] == "steane")
          r.method = ExtractionMethod::Steane;
        else
          throw CircuitParseError("unknown method " + toks[1], line_no);
        saw_method = true;
      } else if (toks[0] == "generators" && toks.size() == 2) {
        r.n_generators = std::stoi(toks[1]);
      } else if (toks[0] == "readout" && toks.size() >= 3) {
        GeneratorReadout ro;
        ro.generator = std::stoi(toks[1]);
        ro.sign_bit = std::stoi(toks[2]);
        for (std::size_t i = 3; i < toks.size(); ++i)
          ro.ancillas.push_back(std::stoi(toks[i]));
        r.readouts.push_back(ro);
      } else {
        throw CircuitParseError("unrecognized meta line", line_no);
      }
    } catch (const std::invalid_argument&) {
      throw CircuitParseError("bad number in meta line", line_no);
    }
  }
  if (!in_meta || !saw_method)
    throw CircuitParseError("missing meta section with a method line",
                            line_no);
  for (const auto& ro : r.readouts)
    if (ro.generator < 0 || ro.generator >= r.n_generators)
      throw CircuitParseError("readout generator index out of range", line_no);
  return r;
}

}  // namespace ceqc
