#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ceqc {

/*
 * Classical GF(2) linear-code helpers. Codewords are bit masks over n
 * positions; a code is given by an independent basis (the span is
 * enumerated, so k stays small here by design).
 */

// Minimum weight over nonzero span elements; 0 for the trivial code.
int linear_min_distance(const std::vector<std::uint32_t>& basis, int n);

// Coefficients A_w, w = 0..n, of the code's weight enumerator.
std::vector<long long> weight_enumerator(const std::vector<std::uint32_t>& basis,
                                         int n);

// Dual weight enumerator from the primal one via the transform
//   B_j = (1/|C|) sum_w A_w K_j(w),  K_j the binary Krawtchouk polynomial.
std::vector<long long> macwilliams_transform(const std::vector<long long>& A,
                                             int n);

// All vectors orthogonal to every basis element.
std::vector<std::uint32_t> dual_words(const std::vector<std::uint32_t>& basis,
                                      int n);

// Visits every k-dimensional subspace of F_2^m exactly once, presented as
// k reduced-echelon basis rows (low bit = first coordinate).
void for_each_subspace(
    int m, int k,
    const std::function<void(const std::vector<std::uint32_t>&)>& visit);

/*
 * Exhaustive scan over even-weight subcodes C2 of length 5 and dimension
 * at most 3, asking whether any has a dual that is a [5, >=2, >=3] code.
 * The expected answer is that none does. The relaxed variant (used as a
 * self-test) lifts the even-weight restriction and lowers the dual
 * distance demand, where candidates do exist.
 */
struct Lemma3Result {
  bool exists = false;
  long candidates = 0;
  std::vector<std::uint32_t> certificate;  // basis of the first hit, if any
};

Lemma3Result lemma3_search();
Lemma3Result lemma3_search_variant(bool even_only, int min_dual_distance);

std::string lemma3_report(const Lemma3Result& r);

/*
 * Brute-force confirmation of the linear-algebra step ruling out
 * [[n,1,3]] constructions at n = 8, 9: every [n,6] code has a dual of
 * dimension n-6, and no such dual yields minimum distance >= 3 (the
 * parity-check columns cannot all be nonzero and distinct).
 */
struct Lemma2Report {
  int n = 0;
  long candidates = 0;   // dual spaces enumerated
  long qualifying = 0;   // with code distance >= 3
  bool exists = false;
  std::string narrative;
};

Lemma2Report lemma2_check(int n);  // n in {8, 9}

std::string lemma2_report_text(const Lemma2Report& r);

}  // namespace ceqc
