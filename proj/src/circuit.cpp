#include "ceqc/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace ceqc {

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::CX:
      return "CX";
    case GateKind::C0X:
      return "C0X";
    case GateKind::CZ:
      return "CZ";
    case GateKind::C0Z:
      return "C0Z";
  }
  return "?";
}

namespace {

std::vector<int> layer_qubits(const Layer& l) {
  std::vector<int> qs;
  switch (l.kind) {
    case LayerKind::Gates:
      for (const Gate& g : l.gates) {
        qs.push_back(g.control);
        qs.push_back(g.target);
      }
      break;
    case LayerKind::Prep:
      qs = l.prep.qubits;
      break;
    case LayerKind::Meas:
      qs = l.meas.qubits;
      break;
  }
  return qs;
}

}  // namespace

std::vector<std::string> validate_circuit(const LayeredCircuit& c) {
  std::vector<std::string> bad;
  auto note = [&](int layer, const std::string& msg) {
    bad.push_back("layer " + std::to_string(layer) + ": " + msg);
  };
  if (c.n_qubits < 1 || c.n_qubits > kMaxQubits)
    bad.push_back("qubit count out of range");
  auto range_ok = [&](int lo, int hi) {
    return lo >= 0 && lo <= hi && hi <= c.n_qubits;
  };
  if (!range_ok(c.data_begin, c.data_end) ||
      !range_ok(c.ancilla_begin, c.ancilla_end))
    bad.push_back("role ranges out of bounds");
  else {
    bool overlap = std::max(c.data_begin, c.ancilla_begin) <
                   std::min(c.data_end, c.ancilla_end);
    if (overlap) bad.push_back("data and ancilla ranges overlap");
    int covered = (c.data_end - c.data_begin) +
                  (c.ancilla_end - c.ancilla_begin);
    if (covered != c.n_qubits) bad.push_back("role ranges do not cover all qubits");
  }
  if (!bad.empty()) return bad;  // later checks assume sane ranges

  // Liveness walk. Data qubits live from the start; ancillas from their prep.
  BitVec live, retired;
  for (int q = c.data_begin; q < c.data_end; ++q) live.set(q);
  for (std::size_t li = 0; li < c.layers.size(); ++li) {
    const Layer& l = c.layers[li];
    int layer = static_cast<int>(li);
    auto qs = layer_qubits(l);
    bool out_of_range = false;
    for (int q : qs)
      if (q < 0 || q >= c.n_qubits) {
        note(layer, "qubit " + std::to_string(q) + " out of range");
        out_of_range = true;
      }
    if (out_of_range) continue;  // liveness tracking needs valid indices
    std::vector<int> sorted = qs;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] == sorted[i - 1])
        note(layer, "qubit " + std::to_string(sorted[i]) + " used twice");

    switch (l.kind) {
      case LayerKind::Gates:
        for (const Gate& g : l.gates) {
          if (g.control == g.target)
            note(layer, "gate controls its own target qubit " +
                            std::to_string(g.control));
          for (int q : {g.control, g.target}) {
            if (!live.get(q))
              note(layer, "gate acts on non-live qubit " + std::to_string(q));
            if (retired.get(q))
              note(layer, "gate acts on measured qubit " + std::to_string(q));
          }
        }
        break;
      case LayerKind::Prep: {
        const PrepOp& p = l.prep;
        if (p.kind == PrepKind::CatCe) {
          if (p.w < 1) note(layer, "cat preparation needs w >= 1");
          if (static_cast<int>(p.qubits.size()) != 2 * p.w)
            note(layer, "cat preparation on " +
                            std::to_string(p.qubits.size()) +
                            " qubits, expected " + std::to_string(2 * p.w));
        } else if (p.qubits.empty()) {
          note(layer, "empty preparation");
        }
        for (int q : p.qubits) {
          if (retired.get(q))
            note(layer, "preparation on measured qubit " + std::to_string(q));
          live.set(q);
        }
        break;
      }
      case LayerKind::Meas:
        for (int q : l.meas.qubits) {
          if (!live.get(q))
            note(layer,
                 "measurement of non-live qubit " + std::to_string(q));
          if (retired.get(q))
            note(layer, "qubit " + std::to_string(q) + " measured twice");
          live.clear(q);
          retired.set(q);
        }
        break;
    }
  }
  return bad;
}

std::vector<BitVec> live_masks(const LayeredCircuit& c) {
  std::vector<BitVec> masks;
  masks.reserve(c.layers.size());
  BitVec live;
  for (int q = c.data_begin; q < c.data_end; ++q) live.set(q);
  for (const Layer& l : c.layers) {
    if (l.kind == LayerKind::Prep)
      for (int q : l.prep.qubits) live.set(q);
    masks.push_back(live);  // measured qubits still live for this slot
    if (l.kind == LayerKind::Meas)
      for (int q : l.meas.qubits) live.clear(q);
  }
  return masks;
}

std::vector<Location> enumerate_locations(const LayeredCircuit& c) {
  std::vector<Location> locs;
  auto masks = live_masks(c);
  BitVec live;
  for (int q = c.data_begin; q < c.data_end; ++q) live.set(q);
  for (std::size_t li = 0; li < c.layers.size(); ++li) {
    const Layer& l = c.layers[li];
    int layer = static_cast<int>(li);
    BitVec touched;
    switch (l.kind) {
      case LayerKind::Gates:
        for (const Gate& g : l.gates) {
          Location loc;
          loc.kind = LocationKind::Gate2;
          loc.layer = layer;
          loc.q0 = g.control;
          loc.q1 = g.target;
          loc.gate = g.kind;
          locs.push_back(loc);
          touched.set(g.control);
          touched.set(g.target);
        }
        break;
      case LayerKind::Prep:
        for (int q : l.prep.qubits) {
          Location loc;
          loc.kind = LocationKind::Prep1;
          loc.layer = layer;
          loc.q0 = q;
          locs.push_back(loc);
          touched.set(q);
        }
        break;
      case LayerKind::Meas:
        for (int q : l.meas.qubits) {
          Location loc;
          loc.kind = LocationKind::Meas1;
          loc.layer = layer;
          loc.q0 = q;
          loc.basis = l.meas.basis;
          locs.push_back(loc);
          touched.set(q);
        }
        break;
    }
    const BitVec& mask = masks[li];
    for (int q = 0; q < c.n_qubits; ++q) {
      if (mask.get(q) && !touched.get(q)) {
        Location loc;
        loc.kind = LocationKind::Idle;
        loc.layer = layer;
        loc.q0 = q;
        locs.push_back(loc);
      }
    }
  }
  return locs;
}

LayeredCircuit insert_cc_layers(LayeredCircuit c) {
  c.cc_layers_enabled = true;
  return c;
}

namespace {

int parse_int(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw CircuitParseError("bad integer '" + tok + "'", line_no);
  }
}

// "i..j" inclusive range -> half-open pair.
std::pair<int, int> parse_range(const std::string& tok, int line_no) {
  auto dots = tok.find("..");
  if (dots == std::string::npos)
    throw CircuitParseError("expected range i..j, got '" + tok + "'",
                            line_no);
  int lo = parse_int(tok.substr(0, dots), line_no);
  int hi = parse_int(tok.substr(dots + 2), line_no);
  return {lo, hi + 1};
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::string spaced;
  for (char ch : line) {  // let ';' bind tight or loose
    if (ch == ';') spaced += " ; ";
    else spaced += ch;
  }
  std::istringstream in(spaced);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

}  // namespace

LayeredCircuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool header_seen = false;
  LayeredCircuit c;
  bool qubits_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (!header_seen) {
      if (toks.size() != 2 || toks[0] != "ceqc" || toks[1] != "v1")
        throw CircuitParseError("expected header 'ceqc v1'", line_no);
      header_seen = true;
      continue;
    }
    if (toks[0] == "meta:") break;  // sidecar section, not ours
    if (toks[0] == "qubits") {
      if (toks.size() != 2)
        throw CircuitParseError("qubits takes one count", line_no);
      c.n_qubits = parse_int(toks[1], line_no);
      qubits_seen = true;
    } else if (toks[0] == "data" || toks[0] == "ancilla") {
      if (toks.size() != 2)
        throw CircuitParseError(toks[0] + " takes one range", line_no);
      auto [lo, hi] = parse_range(toks[1], line_no);
      if (toks[0] == "data") {
        c.data_begin = lo;
        c.data_end = hi;
      } else {
        c.ancilla_begin = lo;
        c.ancilla_end = hi;
      }
    } else if (toks[0] == "layer:") {
      Layer l;
      l.kind = LayerKind::Gates;
      std::vector<std::string> cur;
      auto flush = [&]() {
        if (cur.empty()) return;
        if (cur.size() != 3)
          throw CircuitParseError("gate needs a name and two qubits",
                                  line_no);
        Gate g;
        if (cur[0] == "CX")
          g.kind = GateKind::CX;
        else if (cur[0] == "C0X")
          g.kind = GateKind::C0X;
        else if (cur[0] == "CZ")
          g.kind = GateKind::CZ;
        else if (cur[0] == "C0Z")
          g.kind = GateKind::C0Z;
        else
          throw CircuitParseError("unknown gate '" + cur[0] + "'", line_no);
        g.control = parse_int(cur[1], line_no);
        g.target = parse_int(cur[2], line_no);
        l.gates.push_back(g);
        cur.clear();
      };
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i] == ";")
          flush();
        else
          cur.push_back(toks[i]);
      }
      flush();
      if (l.gates.empty())
        throw CircuitParseError("empty gate layer", line_no);
      c.layers.push_back(l);
    } else if (toks[0] == "prep") {
      if (toks.size() < 3)
        throw CircuitParseError("prep needs a kind and qubits", line_no);
      Layer l;
      l.kind = LayerKind::Prep;
      PrepOp& p = l.prep;
      std::size_t qstart = 2;
      if (toks[1].rfind("cat_ce(", 0) == 0 && toks[1].back() == ')') {
        p.kind = PrepKind::CatCe;
        p.w = parse_int(toks[1].substr(7, toks[1].size() - 8), line_no);
      } else if (toks[1] == "logical0" || toks[1] == "logicalplus") {
        p.kind = toks[1] == "logical0" ? PrepKind::Logical0
                                       : PrepKind::LogicalPlus;
        if (toks.size() < 4)
          throw CircuitParseError("logical prep needs a code name and qubits",
                                  line_no);
        p.code_name = toks[2];
        qstart = 3;
      } else {
        throw CircuitParseError("unknown preparation '" + toks[1] + "'",
                                line_no);
      }
      for (std::size_t i = qstart; i < toks.size(); ++i)
        p.qubits.push_back(parse_int(toks[i], line_no));
      c.layers.push_back(l);
    } else if (toks[0] == "MX" || toks[0] == "MZ") {
      if (toks.size() < 2)
        throw CircuitParseError("measurement needs qubits", line_no);
      Layer l;
      l.kind = LayerKind::Meas;
      l.meas.basis = toks[0] == "MX" ? MeasBasis::X : MeasBasis::Z;
      for (std::size_t i = 1; i < toks.size(); ++i)
        l.meas.qubits.push_back(parse_int(toks[i], line_no));
      c.layers.push_back(l);
    } else {
      throw CircuitParseError("unknown directive '" + toks[0] + "'", line_no);
    }
  }
  if (!header_seen)
    throw CircuitParseError("missing 'ceqc v1' header", line_no);
  if (!qubits_seen)
    throw CircuitParseError("missing 'qubits' line", line_no);
  auto bad = validate_circuit(c);
  if (!bad.empty()) throw CircuitParseError(bad.front(), line_no);
  return c;
}

std::string serialize_circuit(const LayeredCircuit& c) {
  std::ostringstream out;
  out << "ceqc v1\n";
  out << "qubits " << c.n_qubits << "\n";
  if (c.data_end > c.data_begin)
    out << "data " << c.data_begin << ".." << c.data_end - 1 << "\n";
  if (c.ancilla_end > c.ancilla_begin)
    out << "ancilla " << c.ancilla_begin << ".." << c.ancilla_end - 1 << "\n";
  for (const Layer& l : c.layers) {
    switch (l.kind) {
      case LayerKind::Gates: {
        out << "layer:";
        for (std::size_t i = 0; i < l.gates.size(); ++i) {
          const Gate& g = l.gates[i];
          out << (i ? " ; " : " ") << gate_name(g.kind) << " " << g.control
              << " " << g.target;
        }
        out << "\n";
        break;
      }
      case LayerKind::Prep: {
        out << "prep ";
        if (l.prep.kind == PrepKind::CatCe)
          out << "cat_ce(" << l.prep.w << ")";
        else
          out << (l.prep.kind == PrepKind::Logical0 ? "logical0"
                                                    : "logicalplus")
              << " " << l.prep.code_name;
        for (int q : l.prep.qubits) out << " " << q;
        out << "\n";
        break;
      }
      case LayerKind::Meas: {
        out << (l.meas.basis == MeasBasis::X ? "MX" : "MZ");
        for (int q : l.meas.qubits) out << " " << q;
        out << "\n";
        break;
      }
    }
  }
  return out.str();
}

}  // namespace ceqc
