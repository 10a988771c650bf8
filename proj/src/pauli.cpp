#include "ceqc/pauli.hpp"

namespace ceqc {

Pauli parse_pauli(const std::string& text) {
  int pos = 0;
  std::uint8_t prefix = 0;
  const int len = static_cast<int>(text.size());

  if (pos < len && text[pos] == '+') ++pos;
  if (pos < len && text[pos] == '-') {
    prefix = 2;
    ++pos;
  }
  if (pos < len && text[pos] == 'i') {
    prefix = (prefix + 1) & 3;  // "i" -> i, "-i" -> -i
    ++pos;
  }

  Pauli p;
  p.phase = prefix;
  int q = 0;
  for (; pos < len; ++pos, ++q) {
    if (q >= kMaxQubits) throw PauliParseError("operator too long", pos);
    switch (text[pos]) {
      case 'I':
        break;
      case 'X':
        p.x.set(q);
        break;
      case 'Z':
        p.z.set(q);
        break;
      case 'Y':
        p.x.set(q);
        p.z.set(q);
        p.phase = (p.phase + 1) & 3;  // sigma_Y = i X Z
        break;
      default:
        throw PauliParseError(std::string("invalid Pauli character '") +
                                  text[pos] + "'",
                              pos);
    }
  }
  if (q == 0) throw PauliParseError("empty Pauli body", pos);
  p.n = q;
  return p;
}

std::string format_pauli(const Pauli& p) {
  int n_y = (p.x & p.z).popcount();
  int display = (p.phase - n_y) & 3;
  std::string out;
  switch (display) {
    case 0:
      break;
    case 1:
      out = "i";
      break;
    case 2:
      out = "-";
      break;
    case 3:
      out = "-i";
      break;
  }
  for (int q = 0; q < p.n; ++q) {
    bool bx = p.x.get(q), bz = p.z.get(q);
    out += bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
  }
  return out;
}

bool commutes(const Pauli& p, const Pauli& q) {
  if (p.n != q.n) throw DimensionError("commutes: length mismatch");
  return ((p.x.dot(q.z) + p.z.dot(q.x)) & 1) == 0;
}

Pauli multiply(const Pauli& p, const Pauli& q) {
  if (p.n != q.n) throw DimensionError("multiply: length mismatch");
  Pauli r;
  r.n = p.n;
  // Reordering Z^z1 past X^x2 contributes (-1)^(z1 . x2).
  r.phase = (p.phase + q.phase + 2 * p.z.dot(q.x)) & 3;
  r.x = p.x ^ q.x;
  r.z = p.z ^ q.z;
  return r;
}

Pauli inverse(const Pauli& p) {
  // (i^ph X^x Z^z)^-1 = i^-ph Z^z X^x = i^-ph (-1)^(x.z) X^x Z^z
  Pauli r = p;
  r.phase = (-p.phase + 2 * p.x.dot(p.z)) & 3;
  return r;
}

int real_sign(const Pauli& p) {
  // Sign relative to the letterwise product, which is Hermitian; Y letters
  // each contribute one factor i to the stored exponent.
  int display = (p.phase - (p.x & p.z).popcount()) & 3;
  if (display == 0) return 1;
  if (display == 2) return -1;
  throw std::invalid_argument("real_sign: operator has imaginary phase");
}

}  // namespace ceqc
