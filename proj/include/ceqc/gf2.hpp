#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace ceqc {
namespace gf2 {

/*
 * GF(2) linear algebra on bit-packed rows. Rows are uint64_t masks, so these
 * routines serve vectors of length <= 64; every classical-code and
 * symplectic computation in this artifact fits (largest is 2n = 28 columns).
 */

using Row = std::uint64_t;

// Reduced basis in decreasing leading-bit order; rank = basis.size().
std::vector<Row> reduce(const std::vector<Row>& rows);

int rank(const std::vector<Row>& rows);

bool in_span(Row v, const std::vector<Row>& basis);

// Solve sum_{i in combo} rows[i] = target; returns the combination as a
// bitmask over row indices, or nullopt if target is outside the span.
// Requires rows.size() <= 64.
std::optional<std::uint64_t> solve_combination(const std::vector<Row>& rows,
                                               Row target);

// Solve the linear system rows[i] . y = rhs[i] (inner products mod 2) for one
// deterministic y: Gaussian elimination, free variables fixed to zero.
// Returns nullopt when the system is inconsistent.
std::optional<Row> solve_inner_system(const std::vector<Row>& rows,
                                      const std::vector<int>& rhs);

// All 2^rank elements spanned by the reduced basis.
std::vector<Row> span_elements(const std::vector<Row>& basis);

// Basis of {v in GF(2)^ncols : rows[i] . v = 0 for all i}.
std::vector<Row> nullspace(const std::vector<Row>& rows, int ncols);

inline int dot(Row a, Row b) {
  return std::popcount(a & b) & 1;
}

inline int weight(Row v) { return std::popcount(v); }

}  // namespace gf2
}  // namespace ceqc
