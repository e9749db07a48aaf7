#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dzn/complex.hpp"
#include "dzn/howell.hpp"
#include "dzn/matrix.hpp"
#include "dzn/smith.hpp"

namespace dzn {

/// Homology of one degree: H_i = cycles / boundaries presented on the
/// canonical cycle generators.  cycle_rows is the Howell form of ker d[i]
/// (one generator per row); relations presents H_i as
/// (Z/n)^g / row span(relations).
struct DegreeHomology {
  int degree;
  MatZn cycle_rows;     // g x rank_i
  MatZn boundary_rows;  // Howell span of im d[i+1], b x rank_i
  MatZn relations;      // rows of coefficients on the g cycle generators
  InvariantFactors factors;

  std::size_t generator_count() const { return cycle_rows.rows(); }
};

/// Solve the row equation lambda * m = v; canonical solution or nothing.
inline std::optional<std::vector<std::uint64_t>> solve_row(const MatZn& m,
                                                           const std::vector<std::uint64_t>& v) {
  return solve_linear(m.transpose(), v);
}

class HomologyData {
public:
  explicit HomologyData(const ChainComplex& x) : mod_(x.modulus()), lo_(x.lo()), hi_(x.hi()) {
    for (int i = lo_; i <= hi_; ++i) degrees_.push_back(compute_degree(x, i));
  }

  const Modulus& modulus() const { return mod_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }

  bool has(int i) const { return i >= lo_ && i <= hi_; }

  const DegreeHomology& at(int i) const {
    if (!has(i)) throw std::out_of_range("homology: degree outside window");
    return degrees_[static_cast<std::size_t>(i - lo_)];
  }

  InvariantFactors factors(int i) const {
    if (!has(i)) return InvariantFactors{mod_, {}};
    return degrees_[static_cast<std::size_t>(i - lo_)].factors;
  }

  bool trivial() const {
    for (const auto& d : degrees_)
      if (!d.factors.trivial()) return false;
    return true;
  }

  /// Is the chain (a row vector in degree i) a boundary?
  bool chain_is_boundary(int i, const std::vector<std::uint64_t>& v) const {
    if (!has(i)) {
      for (auto e : v)
        if (e % mod_.n() != 0) return false;
      return true;
    }
    return in_row_span(at(i).boundary_rows, v);
  }

  /// Is the class with generator coefficients lambda zero in H_i?
  bool class_is_zero(int i, const std::vector<std::uint64_t>& lambda) const {
    return in_row_span(at(i).relations, lambda);
  }

  /// Coefficients mu with mu * cycle_rows = v modulo boundaries; v must be a
  /// cycle in degree i.
  std::vector<std::uint64_t> express_in_generators(int i, const std::vector<std::uint64_t>& v) const {
    const auto& d = at(i);
    MatZn stacked = MatZn::vstack(d.cycle_rows, d.boundary_rows);
    auto sol = solve_row(stacked, v);
    if (!sol) throw std::invalid_argument("express_in_generators: not a cycle");
    return {sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(d.generator_count())};
  }

private:
  DegreeHomology compute_degree(const ChainComplex& x, int i) const {
    const MatZn cycles = kernel_basis(x.boundary(i));
    const MatZn boundaries = howell_form(x.boundary(i + 1).transpose()).h;
    const std::size_t g = cycles.rows();

    // Relations on the cycle generators: each boundary generator expressed
    // in cycle coordinates, plus the kernel of the presentation map itself.
    MatZn bound_coeffs(mod_, boundaries.rows(), g);
    for (std::size_t r = 0; r < boundaries.rows(); ++r) {
      auto mu = solve_row(cycles, boundaries.row(r));
      if (!mu) throw std::logic_error("homology: boundary is not a cycle");
      for (std::size_t j = 0; j < g; ++j) bound_coeffs.set(r, j, (*mu)[j]);
    }
    const MatZn pres_kernel = kernel_basis(cycles.transpose());
    MatZn relations = howell_form(MatZn::vstack(bound_coeffs, pres_kernel)).h;
    InvariantFactors f = module_structure(mod_, g, relations);
    return {i, cycles, boundaries, std::move(relations), std::move(f)};
  }

  Modulus mod_;
  int lo_, hi_;
  std::vector<DegreeHomology> degrees_;
};

inline HomologyData homology(const ChainComplex& x) { return HomologyData(x); }

/// Map induced on homology by a degree-0 chain map, in the canonical cycle
/// generator coordinates.  Row j of matrix(i) expresses the image of the
/// j-th source generator in the target generators (defined mod relations;
/// the canonical solver makes the choice deterministic).
class InducedHomologyMap {
public:
  InducedHomologyMap(const ChainMap& f, HomologyData hx, HomologyData hy)
      : source_(std::move(hx)), target_(std::move(hy)) {
    if (f.degree() != 0)
      throw std::invalid_argument("induced_homology_map: degree must be 0 (pre-suspend)");
    const ChainComplex& x = f.source();
    const Modulus& mod = f.modulus();
    for (int i = source_.lo(); i <= source_.hi(); ++i) {
      const auto& dx = source_.at(i);
      const std::size_t gx = dx.generator_count();
      const std::size_t gy = target_.has(i) ? target_.at(i).generator_count() : 0;
      MatZn m(mod, gx, gy);
      const MatZn ft = f.component(i).transpose();
      bool zero_here = true;
      for (std::size_t j = 0; j < gx; ++j) {
        // Push the j-th cycle generator through f: w = z * f^T.
        std::vector<std::uint64_t> w(ft.cols(), 0);
        {
          auto z = dx.cycle_rows.row(j);
          for (std::size_t a = 0; a < ft.rows(); ++a) {
            if (z[a] == 0) continue;
            for (std::size_t b = 0; b < ft.cols(); ++b)
              w[b] = mod.add(w[b], mod.mul(z[a], ft(a, b)));
          }
        }
        if (!target_.has(i)) {
          for (auto e : w)
            if (e != 0) throw std::logic_error("induced map leaves the target window");
          continue;
        }
        if (target_.chain_is_boundary(i, w)) continue;  // class is zero
        zero_here = false;
        auto mu = target_.express_in_generators(i, w);
        for (std::size_t b = 0; b < gy; ++b) m.set(j, b, mu[b]);
      }
      if (!zero_here) nonzero_degrees_.push_back(i);
      matrices_.emplace(i, std::move(m));
    }
  }

  explicit InducedHomologyMap(const ChainMap& f)
      : InducedHomologyMap(f, HomologyData(f.source()), HomologyData(f.target())) {}

  const HomologyData& source() const { return source_; }
  const HomologyData& target() const { return target_; }

  MatZn matrix(int i) const {
    auto it = matrices_.find(i);
    if (it != matrices_.end()) return it->second;
    const std::size_t gx = source_.has(i) ? source_.at(i).generator_count() : 0;
    const std::size_t gy = target_.has(i) ? target_.at(i).generator_count() : 0;
    return MatZn(source_.modulus(), gx, gy);
  }

  /// Exactly zero: every source generator maps to a boundary.
  bool is_zero() const { return nonzero_degrees_.empty(); }

  const std::vector<int>& nonzero_degrees() const { return nonzero_degrees_; }

  /// Isomorphism on homology in every degree: equal invariant factors plus
  /// surjectivity (equal finite orders make a surjection bijective).
  bool is_isomorphism() const {
    const int lo = std::min(source_.lo(), target_.lo());
    const int hi = std::max(source_.hi(), target_.hi());
    for (int i = lo; i <= hi; ++i) {
      if (source_.factors(i) != target_.factors(i)) return false;
      if (!target_.has(i) || target_.factors(i).trivial()) continue;
      const auto& dy = target_.at(i);
      const std::size_t gy = dy.generator_count();
      // Image classes together with the zero classes must span everything.
      MatZn span = MatZn::vstack(matrix(i), dy.relations);
      for (std::size_t j = 0; j < gy; ++j) {
        std::vector<std::uint64_t> e(gy, 0);
        e[j] = 1;
        if (!in_row_span(span, e)) return false;
      }
    }
    return true;
  }

private:
  HomologyData source_, target_;
  std::map<int, MatZn> matrices_;
  std::vector<int> nonzero_degrees_;
};

inline InducedHomologyMap induced_homology_map(const ChainMap& f) {
  return InducedHomologyMap(f);
}

inline bool is_quasi_iso(const ChainMap& f) {
  if (f.degree() != 0) return is_quasi_iso(to_degree_zero(f));
  return InducedHomologyMap(f).is_isomorphism();
}

}  // namespace dzn
