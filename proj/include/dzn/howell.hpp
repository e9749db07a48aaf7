#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "dzn/matrix.hpp"
#include "dzn/modulus.hpp"

namespace dzn {

struct Pivot {
  std::size_t row;
  std::size_t col;
  std::uint64_t value;  // divides n
};

/// Canonical row form over Z/n together with a row-operation witness:
/// transform * input == h, rows of h span the same row module as the input,
/// and h is the unique matrix in Howell form with that span.
struct HowellForm {
  MatZn h;
  MatZn transform;
  std::vector<Pivot> pivots;
};

namespace detail {

/// Row reducer: maintains rows in Howell form over the leading pivot_cols
/// columns; trailing columns ride along passively (used for witnesses).
///
/// Howell form means: pivot columns strictly increase, each pivot divides n,
/// entries above a pivot are reduced mod that pivot, and the span is closed:
/// for every row r with pivot p, (n/p)*r lies in the span of the later rows.
/// Closure is enforced by re-inserting the overflow row (n/p)*r whenever a
/// pivot is created or its value shrinks.
class HowellEngine {
public:
  HowellEngine(Modulus mod, std::size_t pivot_cols, std::size_t total_cols)
      : mod_(std::move(mod)), pcols_(pivot_cols), tcols_(total_cols) {}

  void insert(std::vector<std::uint64_t> row) {
    std::deque<std::vector<std::uint64_t>> queue;
    queue.push_back(std::move(row));
    while (!queue.empty()) {
      auto r = std::move(queue.front());
      queue.pop_front();
      reduce_one(std::move(r), queue);
    }
  }

  /// Reduce entries above each pivot into [0, pivot).
  void finish() {
    std::vector<std::size_t> cols;
    cols.reserve(rows_.size());
    for (const auto& [c, _] : rows_) cols.push_back(c);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto& rj = rows_[cols[j]];
      const std::uint64_t p = rj[cols[j]];
      for (std::size_t i = 0; i < j; ++i) {
        auto& ri = rows_[cols[i]];
        const std::uint64_t q = ri[cols[j]] / p;
        if (q != 0) submul(ri, q, rj);
      }
    }
  }

  /// Pivot rows ordered by pivot column.
  std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> result() const {
    return {rows_.begin(), rows_.end()};
  }

private:
  void reduce_one(std::vector<std::uint64_t> r, std::deque<std::vector<std::uint64_t>>& queue) {
    const std::uint64_t n = mod_.n();
    std::size_t col = next_nonzero(r, 0);
    while (col < pcols_) {
      auto it = rows_.find(col);
      if (it == rows_.end()) {
        // New pivot: normalize so the pivot value is gcd(entry, n).
        const std::uint64_t u = associate_unit(r[col], n);
        if (u != 1)
          for (auto& v : r) v = mod_.mul(v, u);
        const std::uint64_t p = r[col];
        rows_.emplace(col, r);
        enqueue_overflow(r, p, queue);
        return;
      }
      auto& pivot_row = it->second;
      const std::uint64_t p = pivot_row[col];
      const std::uint64_t a = r[col];
      if (a % p == 0) {
        submul(r, a / p, pivot_row);
      } else {
        // Unimodular 2x2 combine; pivot value strictly shrinks to gcd(p, a).
        const auto [g, s, t] =
            xgcd(static_cast<std::int64_t>(p), static_cast<std::int64_t>(a));
        const std::uint64_t su = mod_.reduce(s);
        const std::uint64_t tu = mod_.reduce(t);
        const std::uint64_t pg = p / static_cast<std::uint64_t>(g);
        const std::uint64_t ag = a / static_cast<std::uint64_t>(g);
        std::vector<std::uint64_t> new_pivot(tcols_), new_r(tcols_);
        for (std::size_t j = 0; j < tcols_; ++j) {
          new_pivot[j] = mod_.add(mod_.mul(su, pivot_row[j]), mod_.mul(tu, r[j]));
          new_r[j] = mod_.sub(mod_.mul(pg, r[j]), mod_.mul(ag, pivot_row[j]));
        }
        pivot_row = std::move(new_pivot);
        enqueue_overflow(pivot_row, static_cast<std::uint64_t>(g), queue);
        r = std::move(new_r);
      }
      col = next_nonzero(r, col + 1);
    }
    // Zero on all pivot columns: nothing left to place.
  }

  void enqueue_overflow(const std::vector<std::uint64_t>& row, std::uint64_t pivot,
                        std::deque<std::vector<std::uint64_t>>& queue) {
    // pivot | n and pivot < n, so f >= 2; the scaled row may still vanish.
    const std::uint64_t f = mod_.n() / pivot;
    std::vector<std::uint64_t> over(tcols_);
    bool nonzero = false;
    for (std::size_t j = 0; j < tcols_; ++j) {
      over[j] = mod_.mul(f, row[j]);
      nonzero |= over[j] != 0;
    }
    if (nonzero) queue.push_back(std::move(over));
  }

  std::size_t next_nonzero(const std::vector<std::uint64_t>& r, std::size_t from) const {
    for (std::size_t j = from; j < pcols_; ++j)
      if (r[j] != 0) return j;
    return pcols_;
  }

  void submul(std::vector<std::uint64_t>& dst, std::uint64_t q,
              const std::vector<std::uint64_t>& src) {
    q %= mod_.n();
    for (std::size_t j = 0; j < tcols_; ++j)
      dst[j] = mod_.sub(dst[j], mod_.mul(q, src[j]));
  }

  Modulus mod_;
  std::size_t pcols_, tcols_;
  std::map<std::size_t, std::vector<std::uint64_t>> rows_;  // pivot column -> row
};

}  // namespace detail

inline HowellForm howell_form(const MatZn& a) {
  const Modulus& mod = a.modulus();
  const std::size_t r = a.rows(), c = a.cols();
  detail::HowellEngine eng(mod, c, c + r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::uint64_t> row(c + r, 0);
    auto ai = a.row(i);
    std::copy(ai.begin(), ai.end(), row.begin());
    row[c + i] = 1;
    eng.insert(std::move(row));
  }
  eng.finish();
  const auto rows = eng.result();
  MatZn h(mod, rows.size(), c);
  MatZn tr(mod, rows.size(), r);
  std::vector<Pivot> pivots;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [col, row] = rows[i];
    for (std::size_t j = 0; j < c; ++j) h.set(i, j, row[j]);
    for (std::size_t j = 0; j < r; ++j) tr.set(i, j, row[c + j]);
    pivots.push_back({i, col, row[col]});
  }
  return {std::move(h), std::move(tr), std::move(pivots)};
}

/// Where a solve failed: first column whose residual could not be cleared.
/// pivot == 0 means the canonical form has no pivot in that column at all.
struct SolveFailure {
  std::size_t column;
  std::uint64_t residual;
  std::uint64_t pivot;
};

struct SolveOutcome {
  std::optional<std::vector<std::uint64_t>> solution;
  std::optional<SolveFailure> failure;
};

/// Decide a*x = b over Z/n and produce one solution.  Complete: a solution is
/// returned whenever one exists (greedy reduction against the Howell form of
/// the transposed system decides membership exactly).
inline SolveOutcome solve_linear_detailed(const MatZn& a, const std::vector<std::uint64_t>& b) {
  const Modulus& mod = a.modulus();
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: length mismatch");
  const std::size_t r = a.rows(), c = a.cols();

  // Row form of x*a^T = b with identity tracking: howell of [a^T | I_c].
  detail::HowellEngine eng(mod, r + c, r + c);
  for (std::size_t i = 0; i < c; ++i) {
    std::vector<std::uint64_t> row(r + c, 0);
    for (std::size_t j = 0; j < r; ++j) row[j] = a(j, i);
    row[r + i] = 1;
    eng.insert(std::move(row));
  }
  eng.finish();
  const auto rows = eng.result();

  std::vector<std::uint64_t> residual(b);
  for (auto& v : residual) v %= mod.n();
  std::vector<std::uint64_t> x(c, 0);
  std::map<std::size_t, const std::vector<std::uint64_t>*> by_col;
  for (const auto& [col, row] : rows) by_col.emplace(col, &row);

  for (std::size_t col = 0; col < r; ++col) {
    if (residual[col] == 0) continue;
    auto it = by_col.find(col);
    if (it == by_col.end())
      return {std::nullopt, SolveFailure{col, residual[col], 0}};
    const auto& row = *it->second;
    const std::uint64_t p = row[col];
    if (residual[col] % p != 0)
      return {std::nullopt, SolveFailure{col, residual[col], p}};
    const std::uint64_t t = residual[col] / p;
    for (std::size_t j = col; j < r; ++j) residual[j] = mod.sub(residual[j], mod.mul(t, row[j]));
    for (std::size_t j = 0; j < c; ++j) x[j] = mod.add(x[j], mod.mul(t, row[r + j]));
  }
  return {std::move(x), std::nullopt};
}

inline std::optional<std::vector<std::uint64_t>> solve_linear(const MatZn& a,
                                                              const std::vector<std::uint64_t>& b) {
  return solve_linear_detailed(a, b).solution;
}

/// Rows generating {x : a*x = 0}, returned in Howell form (canonical).
/// Complete: every kernel element is a combination of the returned rows.
inline MatZn kernel_basis(const MatZn& a) {
  const Modulus& mod = a.modulus();
  const std::size_t r = a.rows(), c = a.cols();
  detail::HowellEngine eng(mod, r + c, r + c);
  for (std::size_t i = 0; i < c; ++i) {
    std::vector<std::uint64_t> row(r + c, 0);
    for (std::size_t j = 0; j < r; ++j) row[j] = a(j, i);
    row[r + i] = 1;
    eng.insert(std::move(row));
  }
  eng.finish();
  std::vector<std::vector<std::uint64_t>> gens;
  for (const auto& [col, row] : eng.result()) {
    if (col < r) continue;  // touches the a^T block: not a kernel row
    gens.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(r), row.end());
  }
  MatZn k(mod, gens.size(), c);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < c; ++j) k.set(i, j, gens[i][j]);
  return howell_form(k).h;
}

/// Is the row vector v in the row span of m?  Exact decision.
inline bool in_row_span(const MatZn& m, const std::vector<std::uint64_t>& v) {
  return solve_linear_detailed(m.transpose(), v).solution.has_value();
}

}  // namespace dzn
