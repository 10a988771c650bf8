#include "ceqc/engine.hpp"

#include <cmath>
#include <ostream>

namespace ceqc {

SimState SimState::fresh(const LayeredCircuit& c) {
  SimState s;
  for (int q = c.data_begin; q < c.data_end; ++q) s.live.set(q);
  return s;
}

namespace {

/*
 * Keeps the one-record-per-support invariant: equal supports sum their
 * phases. A merge touching a sign-dropped record has an ambiguous relative
 * sign; the diagnostic counter lets callers see how often that happened.
 */
void merge_record(SimState& s, double phi, const BitVec& c,
                  bool sign_dropped = false) {
  if (c.none()) return;  // pure global phase
  for (CoherentRecord& r : s.records) {
    if (r.c == c) {
      if (r.sign_dropped || sign_dropped) ++s.sign_ambiguous_merges;
      r.phi += phi;
      r.sign_dropped = r.sign_dropped || sign_dropped;
      return;
    }
  }
  s.records.push_back({phi, c, sign_dropped});
}

// Conjugates every record past a newly inserted Pauli with X part on xs:
// X^s Z^c X^s = (-1)^{|s & c|} Z^c.
void negate_overlapping(SimState& s, const BitVec& xs) {
  for (CoherentRecord& r : s.records)
    if (r.c.dot(xs)) r.phi = -r.phi;
}

void apply_pauli_fault(SimState& s, const Fault& f, const EngineConfig& cfg) {
  BitVec xs, zs;
  if (f.loc.kind == LocationKind::Gate2) {
    int la = f.pauli >> 2, lb = f.pauli & 3;
    if (letter_has_x(la)) xs.set(f.loc.q0);
    if (letter_has_z(la)) zs.set(f.loc.q0);
    if (letter_has_x(lb)) xs.set(f.loc.q1);
    if (letter_has_z(lb)) zs.set(f.loc.q1);
  } else {
    if (letter_has_x(f.pauli)) xs.set(f.loc.q0);
    if (letter_has_z(f.pauli)) zs.set(f.loc.q0);
  }
  if (cfg.negate_on_x && xs.any()) negate_overlapping(s, xs);
  s.a ^= xs;
  s.b ^= zs;
}

void apply_gate(SimState& s, const Gate& g, const EngineConfig& cfg) {
  const int c = g.control, t = g.target;
  switch (g.kind) {
    case GateKind::CX:
    case GateKind::C0X: {
      // X_c -> X_c X_t, Z_t -> Z_c Z_t.
      if (s.a.get(c)) s.a.flip(t);
      if (s.b.get(t)) s.b.flip(c);
      bool extra = g.kind == GateKind::C0X;
      bool changed = false;
      for (CoherentRecord& r : s.records) {
        if (r.c.get(t)) {
          r.c.flip(c);  // support may shrink: {c,t} -> {t}
          if (extra) r.phi *= cfg.kappa_c0;
          changed = true;
        }
      }
      if (changed) {
        // Re-merge supports that now coincide.
        std::vector<CoherentRecord> old;
        old.swap(s.records);
        for (const CoherentRecord& r : old)
          merge_record(s, r.phi, r.c, r.sign_dropped);
      }
      break;
    }
    case GateKind::CZ:
    case GateKind::C0Z:
      // X_c -> X_c Z_t, X_t -> Z_c X_t; diagonal, records untouched.
      if (s.a.get(c)) s.b.flip(t);
      if (s.a.get(t)) s.b.flip(c);
      if (g.kind == GateKind::C0Z && cfg.kappa_c0z != 1.0)
        for (CoherentRecord& r : s.records)
          if (r.c.get(t)) r.phi *= cfg.kappa_c0z;
      break;
  }
}

void collapse_x_single(SimState& s, int q, std::size_t ri, int& flip,
                       Rng& rng) {
  CoherentRecord r = s.records[ri];
  s.records.erase(s.records.begin() + static_cast<long>(ri));
  double sp = std::sin(r.phi);
  if (rng.bernoulli(sp * sp)) {
    flip ^= 1;
    r.c.clear(q);
    s.b ^= r.c;
  }
}

/*
 * Exact joint collapse of two records sharing the measured qubit. Expanding
 * exp(i p1 Z^c1) exp(i p2 Z^c2) and projecting onto the X_q eigenspaces
 * gives, when the cross expectation values vanish on the premeasurement
 * state:
 *   keep outcome:  I      w.p. (cos p1 cos p2)^2,
 *                  Z^(c1^c2) w.p. (sin p1 sin p2)^2
 *   flip outcome:  Z^(c2\q) w.p. (cos p1 sin p2)^2,
 *                  Z^(c1\q) w.p. (sin p1 cos p2)^2
 * The four weights sum to 1; draw once and apply.
 */
void collapse_x_pair(SimState& s, int q, std::size_t i1, std::size_t i2,
                     int& flip, Rng& rng) {
  CoherentRecord r1 = s.records[i1], r2 = s.records[i2];
  s.records.erase(s.records.begin() + static_cast<long>(i2));  // i2 > i1
  s.records.erase(s.records.begin() + static_cast<long>(i1));
  double c1 = std::cos(r1.phi), s1 = std::sin(r1.phi);
  double c2 = std::cos(r2.phi), s2 = std::sin(r2.phi);
  double w_keep_i = c1 * c1 * c2 * c2;
  double w_keep_z = s1 * s1 * s2 * s2;
  double w_flip_2 = c1 * c1 * s2 * s2;
  double u = rng.next_double();
  if (u < w_keep_i) return;
  if (u < w_keep_i + w_keep_z) {
    BitVec both = r1.c ^ r2.c;  // q cancels
    s.b ^= both;
    return;
  }
  flip ^= 1;
  BitVec rest = u < w_keep_i + w_keep_z + w_flip_2 ? r2.c : r1.c;
  rest.clear(q);
  s.b ^= rest;
}

void dump_state(std::ostream& out, int layer, const Layer& l,
                const SimState& s) {
  const char* kind = l.kind == LayerKind::Gates  ? "gates"
                     : l.kind == LayerKind::Prep ? "prep"
                                                 : "meas";
  out << "t=" << layer << " kind=" << kind << " a=" << std::hex
      << s.a.low64() << " b=" << s.b.low64() << std::dec << " records=[";
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    if (i) out << " ";
    out << "(" << s.records[i].phi << "," << std::hex
        << s.records[i].c.low64() << std::dec << ")";
  }
  out << "]\n";
}

}  // namespace

void simulate(SimState& s, const LayeredCircuit& c, const FaultAssignment& f,
              const EngineConfig& cfg, Rng& rng) {
  std::size_t fi = 0;
  for (std::size_t li = 0; li < c.layers.size(); ++li) {
    const Layer& l = c.layers[li];
    const int layer = static_cast<int>(li);

    // Ideal operation.
    switch (l.kind) {
      case LayerKind::Gates:
        for (const Gate& g : l.gates) apply_gate(s, g, cfg);
        break;
      case LayerKind::Prep:
        for (int q : l.prep.qubits) {
          for (const CoherentRecord& r : s.records)
            if (r.c.get(q))
              throw EngineError(
                  "record support intersects a prepared qubit " +
                  std::to_string(q));
          s.a.clear(q);
          s.b.clear(q);
          s.live.set(q);
        }
        break;
      case LayerKind::Meas:
        break;  // collapse happens after this layer's faults and slot
    }

    // This layer's stochastic faults (measurement flips handled at collapse).
    std::size_t fbegin = fi;
    while (fi < f.faults.size() && f.faults[fi].loc.layer == layer) ++fi;
    for (std::size_t k = fbegin; k < fi; ++k)
      if (f.faults[k].loc.kind != LocationKind::Meas1)
        apply_pauli_fault(s, f.faults[k], cfg);

    // Collective rotation slot.
    if (c.cc_layers_enabled && layer < static_cast<int>(f.cc_phases.size())) {
      double theta = f.cc_phases[li];
      for (int q = 0; q < c.n_qubits; ++q)
        if (s.live.get(q) && s.a.get(q))
          merge_record(s, cfg.kappa_cc * theta, BitVec::single(q));
    }

    // Measurement collapse.
    if (l.kind == LayerKind::Meas) {
      for (int q : l.meas.qubits) {
        int flip = l.meas.basis == MeasBasis::X ? s.b.get(q) : s.a.get(q);
        for (std::size_t k = fbegin; k < fi; ++k)
          if (f.faults[k].loc.kind == LocationKind::Meas1 &&
              f.faults[k].loc.q0 == q)
            flip ^= 1;
        if (l.meas.basis == MeasBasis::X) {
          std::vector<std::size_t> on_q;
          for (std::size_t ri = 0; ri < s.records.size(); ++ri)
            if (s.records[ri].c.get(q)) on_q.push_back(ri);
          if (on_q.size() == 1) {
            collapse_x_single(s, q, on_q[0], flip, rng);
          } else if (on_q.size() == 2 &&
                     cfg.overlap == OverlapPolicy::JointPair) {
            collapse_x_pair(s, q, on_q[0], on_q[1], flip, rng);
          } else if (on_q.size() >= 2) {
            throw EngineError(
                std::to_string(on_q.size()) +
                " records overlap measured qubit " + std::to_string(q));
          }
        } else {
          // Z-basis readout commutes with the records; the measured qubit
          // just leaves their supports, taking its sign information along.
          for (std::size_t ri = s.records.size(); ri-- > 0;) {
            CoherentRecord& r = s.records[ri];
            if (!r.c.get(q)) continue;
            r.c.clear(q);
            if (r.c.none()) {
              s.records.erase(s.records.begin() + static_cast<long>(ri));
            } else {
              r.sign_dropped = true;
            }
          }
          // Supports may now coincide.
          std::vector<CoherentRecord> old;
          old.swap(s.records);
          for (const CoherentRecord& r : old)
            merge_record(s, r.phi, r.c, r.sign_dropped);
        }
        s.live.clear(q);
        s.outcomes.emplace_back(q, flip);
      }
    }

    if (cfg.debug) dump_state(*cfg.debug, layer, l, s);
  }
}

SimState simulate(const LayeredCircuit& c, const FaultAssignment& f,
                  const EngineConfig& cfg, Rng& rng) {
  SimState s = SimState::fresh(c);
  simulate(s, c, f, cfg, rng);
  return s;
}

void finalize_records(SimState& s, Rng& rng) {
  for (const CoherentRecord& r : s.records) {
    double sp = std::sin(r.phi);
    if (rng.bernoulli(sp * sp)) s.b ^= r.c;
  }
  s.records.clear();
}

}  // namespace ceqc
