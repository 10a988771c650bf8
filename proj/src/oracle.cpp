#include "ceqc/oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ceqc/code.hpp"
#include "ceqc/gf2.hpp"

namespace ceqc {

namespace {

using Amp = std::complex<double>;
using State = std::vector<Amp>;

constexpr double kTiny = 1e-12;

int count_meas_bits(const LayeredCircuit& c) {
  int bits = 0;
  for (const Layer& l : c.layers)
    if (l.kind == LayerKind::Meas) bits += static_cast<int>(l.meas.qubits.size());
  return bits;
}

void apply_x(State& psi, int q) {
  const std::size_t bit = 1ull << q;
  for (std::size_t s = 0; s < psi.size(); ++s)
    if (!(s & bit)) std::swap(psi[s], psi[s | bit]);
}

void apply_z(State& psi, int q) {
  const std::size_t bit = 1ull << q;
  for (std::size_t s = 0; s < psi.size(); ++s)
    if (s & bit) psi[s] = -psi[s];
}

void apply_gate(State& psi, const Gate& g) {
  const std::size_t cb = 1ull << g.control, tb = 1ull << g.target;
  switch (g.kind) {
    case GateKind::CX:
      for (std::size_t s = 0; s < psi.size(); ++s)
        if ((s & cb) && !(s & tb)) std::swap(psi[s], psi[s | tb]);
      break;
    case GateKind::C0X:
      for (std::size_t s = 0; s < psi.size(); ++s)
        if (!(s & cb) && !(s & tb)) std::swap(psi[s], psi[s | tb]);
      break;
    case GateKind::CZ:
      for (std::size_t s = 0; s < psi.size(); ++s)
        if ((s & cb) && (s & tb)) psi[s] = -psi[s];
      break;
    case GateKind::C0Z:
      for (std::size_t s = 0; s < psi.size(); ++s)
        if (!(s & cb) && (s & tb)) psi[s] = -psi[s];
      break;
  }
}

// Collective rotation exp(-i*theta*Z_j) over every live qubit.
void apply_rotation(State& psi, const BitVec& live, int n, double theta) {
  std::uint64_t mask = live.low64();
  int n_live = live.popcount();
  std::vector<Amp> phase(n + 1);
  for (int ones = 0; ones <= n; ++ones) {
    double eigen = n_live - 2.0 * ones;
    phase[ones] = std::polar(1.0, -theta * eigen);
  }
  for (std::size_t s = 0; s < psi.size(); ++s)
    psi[s] *= phase[std::popcount(s & mask)];
}

/*
 * Reset one qubit to |0>. Valid for qubits that are fresh or left in a
 * product state by an earlier measurement: keep the bit-0 component when it
 * has weight, otherwise relabel the bit-1 component.
 */
void reset_qubit(State& psi, int q) {
  const std::size_t bit = 1ull << q;
  double p0 = 0.0;
  for (std::size_t s = 0; s < psi.size(); ++s)
    if (!(s & bit)) p0 += std::norm(psi[s]);
  if (p0 > kTiny) {
    double inv = 1.0 / std::sqrt(p0);
    for (std::size_t s = 0; s < psi.size(); ++s)
      psi[s] = (s & bit) ? Amp{0.0, 0.0} : psi[s] * inv;
  } else {
    for (std::size_t s = 0; s < psi.size(); ++s)
      if (s & bit) {
        psi[s ^ bit] = psi[s];
        psi[s] = Amp{0.0, 0.0};
      }
  }
}

/*
 * Spread the |0...0> component of the prepared qubits over a set of bit
 * patterns with uniform amplitude. Every target state the preparations
 * need (alternating-pair cat, code logical states) is such a superposition.
 */
void spread_patterns(State& psi, const std::vector<int>& qubits,
                     const std::vector<std::uint64_t>& patterns) {
  std::uint64_t qmask = 0;
  for (int q : qubits) qmask |= 1ull << q;
  const double amp = 1.0 / std::sqrt(static_cast<double>(patterns.size()));
  for (std::size_t s = 0; s < psi.size(); ++s) {
    if (s & qmask) continue;
    Amp a = psi[s];
    if (std::norm(a) == 0.0) continue;
    psi[s] = Amp{0.0, 0.0};
    for (std::uint64_t pat : patterns) psi[s | pat] += a * amp;
  }
}

// Maps a support row over code coordinates onto circuit qubit bits.
std::uint64_t place_row(gf2::Row row, const std::vector<int>& qubits) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j)
    if (row >> j & 1) out |= 1ull << qubits[j];
  return out;
}

void apply_prep(State& psi, const PrepOp& p) {
  for (int q : p.qubits) reset_qubit(psi, q);
  std::vector<std::uint64_t> patterns;
  if (p.kind == PrepKind::CatCe) {
    std::uint64_t odd = 0, even = 0;
    for (std::size_t j = 0; j < p.qubits.size(); ++j)
      ((j % 2) ? odd : even) |= 1ull << p.qubits[j];
    patterns = {odd, even};  // (|0101..> + |1010..>)/sqrt(2)
  } else {
    CssCode code = builtin(p.code_name);
    if (static_cast<int>(p.qubits.size()) != code.code.n)
      throw std::invalid_argument("logical preparation arity mismatch");
    std::vector<gf2::Row> gens;
    for (int gi : code.x_rows)
      gens.push_back(code.code.generators[gi].x.low64());
    if (p.kind == PrepKind::LogicalPlus)
      for (const Pauli& lx : code.code.logical_x)
        gens.push_back(lx.x.low64());
    std::uint64_t shift = place_row(code.shift_y, p.qubits);
    for (gf2::Row e : gf2::span_elements(gens))
      patterns.push_back(shift ^ place_row(e, p.qubits));
  }
  spread_patterns(psi, p.qubits, patterns);
}

struct BranchWalk {
  const LayeredCircuit& c;
  const FaultAssignment& f;
  std::vector<BitVec> masks;
  double prune;
  OutcomeDist dist;

  // Applies everything in layer li before its measurements collapse.
  void layer_front(State& psi, std::size_t li) const {
    const Layer& l = c.layers[li];
    if (l.kind == LayerKind::Gates)
      for (const Gate& g : l.gates) apply_gate(psi, g);
    else if (l.kind == LayerKind::Prep)
      apply_prep(psi, l.prep);
    for (const Fault& ft : f.faults) {
      if (ft.loc.layer != static_cast<int>(li)) continue;
      if (ft.loc.kind == LocationKind::Meas1) continue;
      if (ft.loc.kind == LocationKind::Gate2) {
        int la = ft.pauli >> 2, lb = ft.pauli & 3;
        if (letter_has_x(la)) apply_x(psi, ft.loc.q0);
        if (letter_has_z(la)) apply_z(psi, ft.loc.q0);
        if (letter_has_x(lb)) apply_x(psi, ft.loc.q1);
        if (letter_has_z(lb)) apply_z(psi, ft.loc.q1);
      } else {
        if (letter_has_x(ft.pauli)) apply_x(psi, ft.loc.q0);
        if (letter_has_z(ft.pauli)) apply_z(psi, ft.loc.q0);
      }
    }
    if (c.cc_layers_enabled && li < f.cc_phases.size() &&
        f.cc_phases[li] != 0.0)
      apply_rotation(psi, masks[li], c.n_qubits, f.cc_phases[li]);
  }

  bool flip_fault(std::size_t li, int q) const {
    for (const Fault& ft : f.faults)
      if (ft.loc.layer == static_cast<int>(li) &&
          ft.loc.kind == LocationKind::Meas1 && ft.loc.q0 == q)
        return true;
    return false;
  }

  /*
   * Depth-first over measurement branches. (li, mi) points at the next
   * measurement: layer li, qubit index mi within it. bit_pos counts
   * measured bits so far; weight is the branch probability.
   */
  void walk(State psi, std::size_t li, std::size_t mi, int bit_pos,
            std::uint64_t bits, double weight) {
    while (li < c.layers.size()) {
      const Layer& l = c.layers[li];
      if (mi == 0) layer_front(psi, li);
      if (l.kind == LayerKind::Meas) {
        if (mi < l.meas.qubits.size()) {
          int q = l.meas.qubits[mi];
          const std::size_t bit = 1ull << q;
          State proj0 = psi;
          // Outcome 0 keeps the +1 eigenspace (X basis) or |0> (Z basis).
          double p0 = 0.0;
          if (l.meas.basis == MeasBasis::Z) {
            for (std::size_t s = 0; s < proj0.size(); ++s)
              if (s & bit) proj0[s] = Amp{0.0, 0.0};
            for (const Amp& a : proj0) p0 += std::norm(a);
          } else {
            for (std::size_t s = 0; s < proj0.size(); ++s)
              if (!(s & bit)) {
                Amp avg = (proj0[s] + proj0[s | bit]) * 0.5;
                proj0[s] = avg;
                proj0[s | bit] = avg;
              }
            for (const Amp& a : proj0) p0 += std::norm(a);
          }
          bool flipped = flip_fault(li, q);
          // Branch 1 amplitude: psi - proj0 (unnormalized difference).
          State proj1 = std::move(psi);
          double p1 = 0.0;
          for (std::size_t s = 0; s < proj1.size(); ++s) {
            proj1[s] -= proj0[s];
            p1 += std::norm(proj1[s]);
          }
          if (p0 * weight > prune) {
            State b0 = std::move(proj0);
            double inv = 1.0 / std::sqrt(p0);
            for (Amp& a : b0) a *= inv;
            std::uint64_t obit = flipped ? 1ull : 0ull;
            walk(std::move(b0), li, mi + 1, bit_pos + 1,
                 bits | obit << bit_pos, weight * p0);
          }
          if (p1 * weight > prune) {
            double inv = 1.0 / std::sqrt(p1);
            for (Amp& a : proj1) a *= inv;
            std::uint64_t obit = flipped ? 0ull : 1ull;
            walk(std::move(proj1), li, mi + 1, bit_pos + 1,
                 bits | obit << bit_pos, weight * p1);
          }
          return;
        }
      }
      ++li;
      mi = 0;
    }
    dist.p[bits] += weight;
  }
};

}  // namespace

OutcomeDist run_statevector(const LayeredCircuit& c, const FaultAssignment& f,
                            double prune) {
  if (c.n_qubits > 14)
    throw std::invalid_argument("state-vector reference limited to 14 qubits");
  int bits = count_meas_bits(c);
  if (bits > 63)
    throw std::invalid_argument("state-vector reference limited to 63 bits");
  BranchWalk bw{c, f, live_masks(c), prune, {}};
  bw.dist.n_bits = bits;
  State psi(1ull << c.n_qubits, Amp{0.0, 0.0});
  psi[0] = Amp{1.0, 0.0};
  bw.walk(std::move(psi), 0, 0, 0, 0, 1.0);
  return bw.dist;
}

std::uint64_t sample_from(const OutcomeDist& d, Rng& rng) {
  double u = rng.next_double();
  double acc = 0.0;
  std::uint64_t last = 0;
  for (const auto& [bits, p] : d.p) {
    acc += p;
    last = bits;
    if (u < acc) return bits;
  }
  return last;
}

double tvd(const std::map<std::uint64_t, double>& p1,
           const std::map<std::uint64_t, double>& p2) {
  double sum = 0.0;
  auto i1 = p1.begin();
  auto i2 = p2.begin();
  while (i1 != p1.end() || i2 != p2.end()) {
    if (i2 == p2.end() || (i1 != p1.end() && i1->first < i2->first)) {
      sum += std::abs(i1->second);
      ++i1;
    } else if (i1 == p1.end() || i2->first < i1->first) {
      sum += std::abs(i2->second);
      ++i2;
    } else {
      sum += std::abs(i1->second - i2->second);
      ++i1;
      ++i2;
    }
  }
  return 0.5 * sum;
}

double tvd(const OutcomeDist& d1, const OutcomeDist& d2) {
  return tvd(d1.p, d2.p);
}

}  // namespace ceqc
