#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dzn/matrix.hpp"
#include "dzn/modulus.hpp"

namespace dzn {

/// Invariant factor decomposition of a finite Z/n-module:
/// M = Z/d1 + Z/d2 + ... with d1 | d2 | ... | dk, each di | n, each di > 1.
/// The zero module has an empty factor list.
struct InvariantFactors {
  Modulus modulus;
  std::vector<std::uint64_t> factors;

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (auto d : factors) o *= d;
    return o;
  }
  bool trivial() const { return factors.empty(); }

  friend bool operator==(const InvariantFactors& a, const InvariantFactors& b) {
    return a.modulus == b.modulus && a.factors == b.factors;
  }
  friend bool operator!=(const InvariantFactors& a, const InvariantFactors& b) {
    return !(a == b);
  }
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  const __int128 p = static_cast<__int128>(a) * b;
  if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error("smith: entry overflow");
  return static_cast<std::int64_t>(p);
}

/// Pairwise gcd/lcm sweep to enforce d1 | d2 | ... (zeros sort last).
inline std::vector<std::int64_t> divisor_chain(std::vector<std::int64_t> diag) {
  const std::size_t k = diag.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const std::int64_t a = diag[i], b = diag[j];
      if (a == 0 && b == 0) continue;
      const std::int64_t g = std::gcd(a, b);
      if (g == 0) continue;
      const std::int64_t l = (a == 0 || b == 0) ? 0 : checked_mul(a / g, b);
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

}  // namespace detail

/// Diagonal of the integer Smith normal form of m (entries d1 | d2 | ...,
/// nonnegative).  Classic elimination with smallest-pivot selection; inputs
/// here are small lifted matrices, so int64 with overflow guards suffices.
inline std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  const std::size_t steps = rows < cols ? rows : cols;
  std::vector<std::int64_t> diag(steps, 0);

  for (std::size_t t = 0; t < steps; ++t) {
    bool zero_tail = false;
    for (;;) {
      // Smallest-magnitude nonzero pivot in the remaining submatrix.
      std::size_t pi = rows, pj = cols;
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const std::int64_t v = m[i][j] < 0 ? -m[i][j] : m[i][j];
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) {
        zero_tail = true;  // remaining submatrix is zero
        break;
      }
      std::swap(m[pi], m[t]);
      if (pj != t)
        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][pj], m[i][t]);
      if (m[t][t] < 0)
        for (std::size_t j = t; j < cols; ++j) m[t][j] = -m[t][j];

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t q = m[i][t] / m[t][t];
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) m[i][j] -= detail::checked_mul(q, m[t][j]);
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t q = m[t][j] / m[t][t];
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) m[i][j] -= detail::checked_mul(q, m[i][t]);
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;  // remainders became new, smaller pivot candidates

      // Pivot must divide every remaining entry; if not, fold the offending
      // row into the pivot row and re-reduce.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols && divides; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t l = t; l < cols; ++l) m[t][l] += m[i][l];
            divides = false;
          }
      if (divides) {
        diag[t] = m[t][t];
        break;
      }
    }
    if (zero_tail) break;
  }
  return detail::divisor_chain(std::move(diag));
}

/// Structure of (Z/n)^generators / row span(relations): lift to Z, append
/// n * identity, take the integer Smith normal form, and read off the
/// invariant factors (1's dropped).  Canonical under change of presentation.
inline InvariantFactors module_structure(const Modulus& mod, std::size_t generators,
                                         const MatZn& relations) {
  if (relations.cols() != generators)
    throw std::invalid_argument("module_structure: relation width mismatch");
  const std::size_t r = relations.rows();
  std::vector<std::vector<std::int64_t>> m(r + generators,
                                           std::vector<std::int64_t>(generators, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < generators; ++j)
      m[i][j] = static_cast<std::int64_t>(relations(i, j));
  for (std::size_t j = 0; j < generators; ++j)
    m[r + j][j] = static_cast<std::int64_t>(mod.n());

  auto diag = smith_diagonal(std::move(m));
  InvariantFactors out{mod, {}};
  for (auto d : diag) {
    if (d < 0) d = -d;
    if (d == 0 || static_cast<std::uint64_t>(d) > mod.n() ||
        mod.n() % static_cast<std::uint64_t>(d) != 0)
      throw std::logic_error("module_structure: factor does not divide n");
    if (d > 1) out.factors.push_back(static_cast<std::uint64_t>(d));
  }
  return out;
}

/// A finite Z/n-module is projective iff each invariant factor d is a
/// unitary divisor of n: gcd(d, n/d) = 1.
inline bool is_projective(const InvariantFactors& f) {
  const std::uint64_t n = f.modulus.n();
  for (auto d : f.factors)
    if (std::gcd(d, n / d) != 1) return false;
  return true;
}

}  // namespace dzn
