#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ceqc/bits.hpp"

namespace ceqc {

/*
 * n-qubit Pauli operator in binary-symplectic form:
 *
 *     operator = i^phase * X^x * Z^z
 *
 * with the X factors written to the left of the Z factors. The letter Y at a
 * position means the operator sigma_Y = i * X * Z there, so a string without a
 * sign prefix always denotes the +1 multiple of the letterwise product. Under
 * this convention multiply(X, Z) on one qubit formats as "-iY".
 */
struct Pauli {
  int n = 0;
  BitVec x, z;
  std::uint8_t phase = 0;  // exponent of i, mod 4

  static Pauli identity(int n_qubits) {
    Pauli p;
    p.n = n_qubits;
    return p;
  }

  bool is_identity_body() const { return x.none() && z.none(); }
  int weight() const { return (x | z).popcount(); }

  friend bool operator==(const Pauli&, const Pauli&) = default;
};

struct PauliParseError : std::runtime_error {
  int position;  // offset into the input text
  PauliParseError(const std::string& msg, int pos)
      : std::runtime_error(msg), position(pos) {}
};

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Pauli parse_pauli(const std::string& text);
std::string format_pauli(const Pauli& p);

// Symplectic commutation test: true iff P.x*Q.z + P.z*Q.x = 0 (mod 2).
bool commutes(const Pauli& p, const Pauli& q);

// Product with exact phase tracking.
Pauli multiply(const Pauli& p, const Pauli& q);

Pauli inverse(const Pauli& p);

// Phase of p as a sign when it is real (+1/-1); throws on imaginary phase.
int real_sign(const Pauli& p);

}  // namespace ceqc
