#ifndef BSZ_LINEAR_HPP
#define BSZ_LINEAR_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsz/rational.hpp"

namespace bsz {

// Sparse row: (column, value) pairs sorted by column, no zero values.
using SparseRow = std::vector<std::pair<std::size_t, BigRat>>;

struct LinearSystem {
  std::size_t num_unknowns = 0;
  std::vector<SparseRow> rows;
  std::vector<BigRat> rhs;
  std::vector<std::string> labels;  // optional, one per unknown

  LinearSystem() = default;
  explicit LinearSystem(std::size_t n) : num_unknowns(n) {}

  // Builds from dense rows; all rows must have `n` entries.
  static LinearSystem dense(const std::vector<std::vector<BigRat>>& a, const std::vector<BigRat>& b) {
    if (a.size() != b.size()) throw InvalidArgument("row count does not match rhs length");
    LinearSystem sys(a.empty() ? 0 : a.front().size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].size() != sys.num_unknowns) throw InvalidArgument("ragged coefficient matrix");
      SparseRow r;
      for (std::size_t j = 0; j < a[i].size(); ++j)
        if (a[i][j] != 0) r.emplace_back(j, a[i][j]);
      sys.add_row(std::move(r), b[i]);
    }
    return sys;
  }

  void add_row(SparseRow row, BigRat value) {
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [c, v] : row)
      if (c >= num_unknowns) throw InvalidArgument("row references unknown out of range");
    rows.push_back(std::move(row));
    rhs.push_back(std::move(value));
  }
};

struct LinearSolution {
  bool feasible = false;
  std::vector<BigRat> x;                      // particular solution, free unknowns set to 0
  std::vector<std::vector<BigRat>> nullspace;  // one basis vector per free unknown
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

namespace detail {

// dst -= factor * src, both sorted sparse rows.
inline void axpy_row(SparseRow& dst, const BigRat& factor, const SparseRow& src) {
  SparseRow out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, -factor * src[j].second);
      ++j;
    } else {
      BigRat v = dst[i].second - factor * src[j].second;
      if (v != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

}  // namespace detail

// Exact sparse Gaussian elimination.
//
// Columns are eliminated in index order. For each column the pivot is the
// shortest remaining row whose leading entry sits in that column, ties
// broken by the lowest row index, so the result is a pure function of the
// input. Free unknowns are set to zero in the particular solution.
inline LinearSolution solve_linear(const LinearSystem& sys, bool want_nullspace = true) {
  const std::size_t n = sys.num_unknowns;
  const std::size_t rhs_col = n;  // the right-hand side rides along as column n

  std::vector<SparseRow> rows;
  rows.reserve(sys.rows.size());
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    SparseRow r = sys.rows[i];
    if (sys.rhs[i] != 0) r.emplace_back(rhs_col, sys.rhs[i]);
    rows.push_back(std::move(r));
  }

  // Unused rows, bucketed by the column of their leading entry.
  std::vector<std::vector<std::size_t>> by_lead(n + 1);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].empty()) by_lead[rows[i].front().first].push_back(i);

  LinearSolution sol;
  std::vector<std::optional<std::size_t>> pivot_row(n);

  for (std::size_t col = 0; col < n; ++col) {
    auto& bucket = by_lead[col];
    if (bucket.empty()) continue;
    std::sort(bucket.begin(), bucket.end());
    std::size_t best = bucket.front();
    for (std::size_t r : bucket)
      if (rows[r].size() < rows[best].size()) best = r;

    SparseRow& piv = rows[best];
    BigRat inv = 1 / piv.front().second;
    for (auto& [c, v] : piv) v *= inv;
    pivot_row[col] = best;
    sol.pivot_columns.push_back(col);

    for (std::size_t r : bucket) {
      if (r == best) continue;
      BigRat factor = rows[r].front().second;
      detail::axpy_row(rows[r], factor, piv);
      if (!rows[r].empty()) by_lead[rows[r].front().first].push_back(r);
    }
    bucket.clear();
  }

  sol.rank = sol.pivot_columns.size();
  // Any leftover row whose leading entry is the rhs column reads 0 = nonzero.
  sol.feasible = by_lead[rhs_col].empty();
  if (!sol.feasible) return sol;

  auto back_substitute = [&](std::vector<BigRat>& x, bool homogeneous) {
    for (auto it = sol.pivot_columns.rbegin(); it != sol.pivot_columns.rend(); ++it) {
      const SparseRow& r = rows[*pivot_row[*it]];
      BigRat v(0);
      for (std::size_t k = 1; k < r.size(); ++k) {
        const auto& [c, a] = r[k];
        if (c == rhs_col) {
          if (!homogeneous) v += a;
        } else if (x[c] != 0) {
          v -= a * x[c];
        }
      }
      x[*it] = v;
    }
  };

  sol.x.assign(n, BigRat(0));
  back_substitute(sol.x, false);

  if (want_nullspace) {
    for (std::size_t f = 0; f < n; ++f) {
      if (pivot_row[f]) continue;
      std::vector<BigRat> v(n, BigRat(0));
      v[f] = 1;
      back_substitute(v, true);
      sol.nullspace.push_back(std::move(v));
    }
  }
  return sol;
}

// Residual check used by tests and the solver's self-verification.
inline bool satisfies(const LinearSystem& sys, const std::vector<BigRat>& x, bool homogeneous = false) {
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    BigRat acc(0);
    for (const auto& [c, v] : sys.rows[i]) acc += v * x[c];
    if (acc != (homogeneous ? BigRat(0) : sys.rhs[i])) return false;
  }
  return true;
}

}  // namespace bsz

#endif  // BSZ_LINEAR_HPP
