#include "ceqc/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ceqc {
namespace gf2 {

std::vector<Row> reduce(const std::vector<Row>& rows) {
  std::vector<Row> basis;
  for (Row r : rows) {
    Row cur = r;
    for (Row b : basis) {
      if ((cur ^ b) < cur) cur ^= b;
    }
    if (cur) {
      basis.push_back(cur);
      std::sort(basis.begin(), basis.end(), std::greater<Row>());
    }
  }
  return basis;
}

int rank(const std::vector<Row>& rows) {
  return static_cast<int>(reduce(rows).size());
}

bool in_span(Row v, const std::vector<Row>& basis) {
  Row cur = v;
  for (Row b : basis) {
    if ((cur ^ b) < cur) cur ^= b;
  }
  return cur == 0;
}

std::optional<std::uint64_t> solve_combination(const std::vector<Row>& rows,
                                               Row target) {
  if (rows.size() > 64) throw std::invalid_argument("too many rows");
  // Carry a tag word recording which original rows built each basis row.
  std::vector<std::pair<Row, std::uint64_t>> basis;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Row cur = rows[i];
    std::uint64_t tag = std::uint64_t{1} << i;
    for (auto& [br, bt] : basis) {
      if ((cur ^ br) < cur) {
        cur ^= br;
        tag ^= bt;
      }
    }
    if (cur) {
      basis.emplace_back(cur, tag);
      std::sort(basis.begin(), basis.end(),
                [](auto& a, auto& b) { return a.first > b.first; });
    }
  }
  Row cur = target;
  std::uint64_t tag = 0;
  for (auto& [br, bt] : basis) {
    if ((cur ^ br) < cur) {
      cur ^= br;
      tag ^= bt;
    }
  }
  if (cur != 0) return std::nullopt;
  return tag;
}

std::optional<Row> solve_inner_system(const std::vector<Row>& rows,
                                      const std::vector<int>& rhs) {
  // Row-reduce the augmented system (row, bit).
  std::vector<std::pair<Row, int>> basis;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Row cur = rows[i];
    int t = rhs[i] & 1;
    for (auto& [br, bt] : basis) {
      if ((cur ^ br) < cur) {
        cur ^= br;
        t ^= bt;
      }
    }
    if (cur) {
      basis.emplace_back(cur, t);
      std::sort(basis.begin(), basis.end(),
                [](auto& a, auto& b) { return a.first > b.first; });
    } else if (t) {
      return std::nullopt;  // 0 = 1
    }
  }
  // Back-substitute lowest-pivot first; free variables stay zero.
  Row y = 0;
  std::sort(basis.begin(), basis.end(),
            [](auto& a, auto& b) { return a.first < b.first; });
  for (auto& [br, bt] : basis) {
    Row pivot = Row{1} << (63 - std::countl_zero(br));
    int val = bt ^ dot(y, br ^ pivot);
    if (val) y |= pivot;
  }
  return y;
}

std::vector<Row> nullspace(const std::vector<Row>& rows, int ncols) {
  // Full row-reduce, then read kernel vectors off the free columns.
  std::vector<Row> basis = reduce(rows);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Row pivot = Row{1} << (63 - std::countl_zero(basis[i]));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (j != i && (basis[j] & pivot)) basis[j] ^= basis[i];
    }
  }
  Row pivot_mask = 0;
  for (Row b : basis) pivot_mask |= Row{1} << (63 - std::countl_zero(b));
  std::vector<Row> kernel;
  for (int f = 0; f < ncols; ++f) {
    Row ef = Row{1} << f;
    if (pivot_mask & ef) continue;
    Row v = ef;
    for (Row b : basis) {
      if (b & ef) v |= Row{1} << (63 - std::countl_zero(b));
    }
    kernel.push_back(v);
  }
  return kernel;
}

std::vector<Row> span_elements(const std::vector<Row>& basis) {
  std::vector<Row> out{0};
  out.reserve(std::size_t{1} << basis.size());
  for (Row b : basis) {
    std::size_t sz = out.size();
    for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] ^ b);
  }
  return out;
}

}  // namespace gf2
}  // namespace ceqc
