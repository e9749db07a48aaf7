#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dzn/complex.hpp"
#include "dzn/howell.hpp"
#include "dzn/matrix.hpp"

namespace dzn {

/// Why a homotopy system is unsolvable: the first residual the canonical
/// back-substitution could not clear.  Re-derivable from the map alone.
struct InfeasibilityRecord {
  std::size_t equations;
  std::size_t unknowns;
  std::size_t column;
  std::uint64_t residual;
  std::uint64_t pivot;  // 0 when the column has no pivot at all
};

struct NullHomotopyOutcome {
  std::optional<Homotopy> homotopy;
  std::optional<InfeasibilityRecord> infeasibility;
  std::size_t equations = 0;
  std::size_t unknowns = 0;
};

/// Decide whether the degree-0 chain map f is null-homotopic by assembling
/// one linear system over Z/n in all entries of all s[i] and solving it
/// exactly.  Complete: a certificate is returned iff one exists.  Degree-k
/// maps are handled by the caller via to_degree_zero.
inline NullHomotopyOutcome null_homotopy_detailed(const ChainMap& f) {
  if (f.degree() != 0)
    throw std::invalid_argument("null_homotopy: degree must be 0 (use to_degree_zero)");
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  const Modulus& mod = f.modulus();

  // Unknown layout: s[i] is rank_Y(i+1) x rank_X(i), flattened row-major.
  struct Slot {
    int degree;
    std::size_t offset, rows, cols;
  };
  std::vector<Slot> slots;
  std::size_t unknowns = 0;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    const std::size_t r = y.rank(i + 1), c = x.rank(i);
    if (r == 0 || c == 0) continue;
    slots.push_back({i, unknowns, r, c});
    unknowns += r * c;
  }
  auto slot_of = [&](int degree) -> const Slot* {
    for (const auto& s : slots)
      if (s.degree == degree) return &s;
    return nullptr;
  };

  // Equations: f[i] = d^Y[i+1] s[i] + s[i-1] d^X[i], one scalar equation per
  // entry, for every degree where both complexes are present.
  std::size_t equations = 0;
  const int eq_lo = std::max(x.lo(), y.lo());
  const int eq_hi = std::min(x.hi(), y.hi());
  for (int i = eq_lo; i <= eq_hi; ++i) equations += y.rank(i) * x.rank(i);

  MatZn a(mod, equations, unknowns);
  std::vector<std::uint64_t> b(equations, 0);
  std::size_t eq = 0;
  for (int i = eq_lo; i <= eq_hi; ++i) {
    const std::size_t ry = y.rank(i), rx = x.rank(i);
    if (ry == 0 || rx == 0) continue;
    const MatZn fi = f.component(i);
    const MatZn dy = y.boundary(i + 1);   // ry x rank_Y(i+1)
    const MatZn dx = x.boundary(i);       // rank_X(i-1) x rx
    const Slot* cur = slot_of(i);
    const Slot* prev = slot_of(i - 1);
    for (std::size_t p = 0; p < ry; ++p)
      for (std::size_t q = 0; q < rx; ++q) {
        b[eq] = fi(p, q);
        if (cur)  // sum_c dy(p, c) * s[i](c, q)
          for (std::size_t c = 0; c < cur->rows; ++c) {
            const std::uint64_t v = dy(p, c);
            if (v != 0) a.set(eq, cur->offset + c * cur->cols + q, v);
          }
        if (prev)  // sum_c s[i-1](p, c) * dx(c, q)
          for (std::size_t c = 0; c < prev->cols; ++c) {
            const std::uint64_t v = dx(c, q);
            if (v != 0) {
              const std::size_t idx = prev->offset + p * prev->cols + c;
              a.set(eq, idx, mod.add(a(eq, idx), v));
            }
          }
        ++eq;
      }
  }

  NullHomotopyOutcome out;
  out.equations = equations;
  out.unknowns = unknowns;
  auto solved = solve_linear_detailed(a, b);
  if (!solved.solution) {
    const auto& fl = *solved.failure;
    out.infeasibility = InfeasibilityRecord{equations, unknowns, fl.column, fl.residual, fl.pivot};
    return out;
  }
  Homotopy s;
  for (const auto& sl : slots) {
    MatZn m(mod, sl.rows, sl.cols);
    for (std::size_t r = 0; r < sl.rows; ++r)
      for (std::size_t c = 0; c < sl.cols; ++c)
        m.set(r, c, (*solved.solution)[sl.offset + r * sl.cols + c]);
    if (!m.is_zero()) s.comps.emplace(sl.degree, std::move(m));
  }
  if (!verify_homotopy(f, s)) throw std::logic_error("null_homotopy: certificate failed recheck");
  out.homotopy = std::move(s);
  return out;
}

inline std::optional<Homotopy> null_homotopy(const ChainMap& f) {
  return null_homotopy_detailed(f).homotopy;
}

/// A complex is contractible iff its identity is null-homotopic; the
/// homotopy is the contraction certificate.
inline std::optional<Homotopy> is_contractible(const ChainComplex& x) {
  return null_homotopy(ChainMap::identity(x));
}

/// f + ds + sd for arbitrary degree +1 data s; homotopic to f by
/// construction, hence identical on homology.
inline ChainMap homotopy_perturbation(const ChainMap& f, const Homotopy& s) {
  if (f.degree() != 0) throw std::invalid_argument("homotopy_perturbation: degree must be 0");
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  auto comp = [&](int i) -> MatZn {
    auto it = s.comps.find(i);
    if (it != s.comps.end()) return it->second;
    return MatZn(x.modulus(), y.rank(i + 1), x.rank(i));
  };
  std::map<int, MatZn> comps;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    if (x.rank(i) == 0 || y.rank(i) == 0) continue;
    MatZn m = f.component(i) + y.boundary(i + 1) * comp(i) + comp(i - 1) * x.boundary(i);
    if (!m.is_zero()) comps.emplace(i, std::move(m));
  }
  return {x, y, 0, std::move(comps)};
}

}  // namespace dzn
