#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace ceqc {

// Fixed-capacity bit vector indexed by qubit. Two 64-bit words cover every
// circuit this artifact builds (the largest is 14 data qubits plus two
// disjoint rounds of 46 ancillas).
inline constexpr int kMaxQubits = 128;

struct BitVec {
  std::array<std::uint64_t, 2> w{0, 0};

  static BitVec single(int i) {
    BitVec v;
    v.set(i);
    return v;
  }

  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void clear(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void flip(int i) { w[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  bool any() const { return (w[0] | w[1]) != 0; }
  bool none() const { return !any(); }
  int popcount() const {
    return std::popcount(w[0]) + std::popcount(w[1]);
  }

  BitVec& operator^=(const BitVec& o) {
    w[0] ^= o.w[0];
    w[1] ^= o.w[1];
    return *this;
  }
  BitVec& operator&=(const BitVec& o) {
    w[0] &= o.w[0];
    w[1] &= o.w[1];
    return *this;
  }
  BitVec& operator|=(const BitVec& o) {
    w[0] |= o.w[0];
    w[1] |= o.w[1];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  bool intersects(const BitVec& o) const {
    return ((w[0] & o.w[0]) | (w[1] & o.w[1])) != 0;
  }

  // Parity of the AND with another vector: the GF(2) inner product.
  int dot(const BitVec& o) const {
    return (std::popcount(w[0] & o.w[0]) + std::popcount(w[1] & o.w[1])) & 1;
  }

  // Low 64 bits; valid only when no bit >= 64 is set.
  std::uint64_t low64() const { return w[0]; }

  static BitVec from_low64(std::uint64_t m) {
    BitVec v;
    v.w[0] = m;
    return v;
  }
};

}  // namespace ceqc
