#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dzn/matrix.hpp"
#include "dzn/modulus.hpp"

namespace dzn {

struct Violation {
  std::string what;
  int degree;
};

/// Bounded chain complex of finitely generated free Z/n-modules, graded
/// homologically: d[i] maps degree i to degree i-1.  Ranks outside the
/// window [lo, hi] are zero.  Values are immutable once built.
class ChainComplex {
public:
  ChainComplex(Modulus mod, int lo, std::vector<std::size_t> ranks, std::vector<MatZn> boundaries)
      : mod_(std::move(mod)), lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(boundaries)) {
    const std::size_t len = ranks_.size();
    if (diffs_.size() != (len == 0 ? 0 : len - 1))
      throw std::invalid_argument("chain complex: boundary count mismatch");
    for (std::size_t j = 0; j < diffs_.size(); ++j) {
      if (diffs_[j].modulus() != mod_)
        throw std::invalid_argument("chain complex: boundary modulus mismatch");
      if (diffs_[j].rows() != ranks_[j] || diffs_[j].cols() != ranks_[j + 1])
        throw std::invalid_argument("chain complex: boundary shape mismatch at degree " +
                                    std::to_string(lo_ + static_cast<int>(j) + 1));
    }
  }

  static ChainComplex zero(const Modulus& mod) { return {mod, 0, {}, {}}; }

  /// The sphere S: a single copy of Z/n in degree 0.
  static ChainComplex sphere(const Modulus& mod) { return free_at(mod, 0, 1); }

  static ChainComplex free_at(const Modulus& mod, int degree, std::size_t rank) {
    return {mod, degree, {rank}, {}};
  }

  const Modulus& modulus() const { return mod_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  bool empty() const { return ranks_.empty(); }

  std::size_t rank(int i) const {
    if (i < lo_ || i > hi()) return 0;
    return ranks_[static_cast<std::size_t>(i - lo_)];
  }

  std::size_t total_rank() const {
    std::size_t t = 0;
    for (auto r : ranks_) t += r;
    return t;
  }

  /// d at degree i, shape rank(i-1) x rank(i); zero outside the stored range.
  MatZn boundary(int i) const {
    if (i > lo_ && i <= hi()) return diffs_[static_cast<std::size_t>(i - lo_ - 1)];
    return MatZn(mod_, rank(i - 1), rank(i));
  }

  /// Check d . d = 0 in every degree; report the first violating degree.
  std::optional<Violation> validate() const {
    for (int i = lo_ + 2; i <= hi(); ++i)
      if (!(boundary(i - 1) * boundary(i)).is_zero())
        return Violation{"boundary composite nonzero", i};
    return std::nullopt;
  }

  friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
    return a.mod_ == b.mod_ && a.lo_ == b.lo_ && a.ranks_ == b.ranks_ && a.diffs_ == b.diffs_;
  }
  friend bool operator!=(const ChainComplex& a, const ChainComplex& b) { return !(a == b); }

private:
  Modulus mod_;
  int lo_;
  std::vector<std::size_t> ranks_;
  std::vector<MatZn> diffs_;  // diffs_[j] = d at degree lo+1+j
};

/// Degree-k chain map f: X -> Y with components f[i]: X_i -> Y_{i+k},
/// satisfying d^Y f[i] = (-1)^k f[i-1] d^X.  All-zero components are not
/// stored, so equal maps have equal representations.
class ChainMap {
public:
  ChainMap(ChainComplex source, ChainComplex target, int degree, std::map<int, MatZn> comps)
      : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
    if (source_.modulus() != target_.modulus())
      throw std::invalid_argument("chain map: modulus mismatch");
    for (auto& [i, m] : comps) {
      if (m.rows() != target_.rank(i + degree_) || m.cols() != source_.rank(i))
        throw std::invalid_argument("chain map: component shape mismatch at degree " +
                                    std::to_string(i));
      if (!m.is_zero()) comps_.emplace(i, std::move(m));
    }
  }

  static ChainMap zero(ChainComplex source, ChainComplex target, int degree = 0) {
    return {std::move(source), std::move(target), degree, {}};
  }

  static ChainMap identity(const ChainComplex& x) {
    std::map<int, MatZn> comps;
    for (int i = x.lo(); i <= x.hi(); ++i)
      if (x.rank(i) > 0) comps.emplace(i, MatZn::identity(x.modulus(), x.rank(i)));
    return {x, x, 0, std::move(comps)};
  }

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  int degree() const { return degree_; }
  const Modulus& modulus() const { return source_.modulus(); }

  MatZn component(int i) const {
    auto it = comps_.find(i);
    if (it != comps_.end()) return it->second;
    return MatZn(source_.modulus(), target_.rank(i + degree_), source_.rank(i));
  }

  const std::map<int, MatZn>& components() const { return comps_; }

  bool is_zero_map() const { return comps_.empty(); }

  /// Check the commutation rule in every degree that could be nonzero.
  std::optional<Violation> validate() const {
    if (auto v = source_.validate()) return v;
    if (auto v = target_.validate()) return v;
    const bool odd = degree_ % 2 != 0;
    for (int i = source_.lo(); i <= source_.hi() + 1; ++i) {
      MatZn lhs = target_.boundary(i + degree_) * component(i);
      MatZn rhs = component(i - 1) * source_.boundary(i);
      if (odd) rhs = rhs.neg();
      if (lhs != rhs) return Violation{"chain map does not commute with boundaries", i};
    }
    return std::nullopt;
  }

  friend bool operator==(const ChainMap& a, const ChainMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.degree_ == b.degree_ &&
           a.comps_ == b.comps_;
  }
  friend bool operator!=(const ChainMap& a, const ChainMap& b) { return !(a == b); }

private:
  ChainComplex source_, target_;
  int degree_;
  std::map<int, MatZn> comps_;
};

/// Degree +1 homotopy data s[i]: X_i -> Y_{i+1} certifying f = ds + sd.
struct Homotopy {
  std::map<int, MatZn> comps;
};

/// Exact certificate check: f[i] == d^Y[i+1] s[i] + s[i-1] d^X[i] for all i.
inline bool verify_homotopy(const ChainMap& f, const Homotopy& s) {
  if (f.degree() != 0) return false;
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  auto comp = [&](int i) -> MatZn {
    auto it = s.comps.find(i);
    if (it != s.comps.end()) return it->second;
    return MatZn(x.modulus(), y.rank(i + 1), x.rank(i));
  };
  for (int i = x.lo() - 1; i <= x.hi() + 1; ++i) {
    MatZn want = f.component(i);
    MatZn got = y.boundary(i + 1) * comp(i) + comp(i - 1) * x.boundary(i);
    if (want != got) return false;
  }
  return true;
}

/// (Sigma^k X)_i = X_{i-k}, boundaries scaled by (-1)^k.
inline ChainComplex suspend(const ChainComplex& x, int k) {
  std::vector<std::size_t> ranks;
  std::vector<MatZn> diffs;
  for (int i = x.lo(); i <= x.hi(); ++i) ranks.push_back(x.rank(i));
  const bool flip = k % 2 != 0;
  for (int i = x.lo() + 1; i <= x.hi(); ++i) {
    MatZn d = x.boundary(i);
    diffs.push_back(flip ? d.neg() : d);
  }
  return {x.modulus(), x.lo() + k, std::move(ranks), std::move(diffs)};
}

/// Reindex a map along suspension of both ends: (Sigma^k f)[i] = f[i-k].
inline ChainMap suspend(const ChainMap& f, int k) {
  std::map<int, MatZn> comps;
  for (const auto& [i, m] : f.components()) comps.emplace(i + k, m);
  return {suspend(f.source(), k), suspend(f.target(), k), f.degree(), std::move(comps)};
}

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (g.source() != f.target()) throw std::invalid_argument("compose: middle mismatch");
  std::map<int, MatZn> comps;
  const ChainComplex& x = f.source();
  for (int i = x.lo(); i <= x.hi(); ++i) {
    if (x.rank(i) == 0) continue;
    MatZn m = g.component(i + f.degree()) * f.component(i);
    if (!m.is_zero()) comps.emplace(i, std::move(m));
  }
  return {f.source(), g.target(), f.degree() + g.degree(), std::move(comps)};
}

inline ChainMap add_maps(const ChainMap& f, const ChainMap& g) {
  if (f.source() != g.source() || f.target() != g.target() || f.degree() != g.degree())
    throw std::invalid_argument("add_maps: shape mismatch");
  std::map<int, MatZn> comps;
  const ChainComplex& x = f.source();
  for (int i = x.lo(); i <= x.hi(); ++i) {
    if (x.rank(i) == 0) continue;
    MatZn m = f.component(i) + g.component(i);
    if (!m.is_zero()) comps.emplace(i, std::move(m));
  }
  return {f.source(), f.target(), f.degree(), std::move(comps)};
}

inline ChainMap scale_map(const ChainMap& f, std::uint64_t r) {
  std::map<int, MatZn> comps;
  for (const auto& [i, m] : f.components()) comps.emplace(i, m.scale(r));
  return {f.source(), f.target(), f.degree(), std::move(comps)};
}

/// Multiplication by the scalar r in every degree; always a chain map.
inline ChainMap scalar_map(const ChainComplex& x, std::uint64_t r) {
  return scale_map(ChainMap::identity(x), r);
}

/// Reduce a degree-k map to an equal degree-0 map out of the suspended
/// source; components are reindexed unchanged.
inline ChainMap to_degree_zero(const ChainMap& f) {
  if (f.degree() == 0) return f;
  std::map<int, MatZn> comps;
  for (const auto& [i, m] : f.components()) comps.emplace(i + f.degree(), m);
  return {suspend(f.source(), f.degree()), f.target(), 0, std::move(comps)};
}

struct Cone {
  ChainComplex complex;     // cone(f)_i = X_{i-1} + Y_i
  ChainMap inclusion;       // Y -> cone(f)
  ChainMap projection;      // cone(f) -> Sigma X
};

/// Mapping cone of a degree-0 chain map, d(x, y) = (-dX x, f x + dY y).
inline Cone cone(const ChainMap& f) {
  if (f.degree() != 0) throw std::invalid_argument("cone: map must have degree 0");
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  const Modulus& mod = f.modulus();

  const int lo = std::min(x.lo() + 1, y.lo());
  const int hi = std::max(x.hi() + 1, y.hi());
  std::vector<std::size_t> ranks;
  for (int i = lo; i <= hi; ++i) ranks.push_back(x.rank(i - 1) + y.rank(i));
  std::vector<MatZn> diffs;
  for (int i = lo + 1; i <= hi; ++i) {
    MatZn d(mod, x.rank(i - 2) + y.rank(i - 1), x.rank(i - 1) + y.rank(i));
    d.paste(0, 0, x.boundary(i - 1).neg());
    d.paste(x.rank(i - 2), 0, f.component(i - 1));
    d.paste(x.rank(i - 2), x.rank(i - 1), y.boundary(i));
    diffs.push_back(std::move(d));
  }
  const int clo = ranks.empty() ? 0 : lo;
  ChainComplex c(mod, clo, std::move(ranks), std::move(diffs));

  std::map<int, MatZn> incl;
  for (int i = y.lo(); i <= y.hi(); ++i) {
    if (y.rank(i) == 0) continue;
    MatZn m(mod, c.rank(i), y.rank(i));
    m.paste(x.rank(i - 1), 0, MatZn::identity(mod, y.rank(i)));
    incl.emplace(i, std::move(m));
  }
  std::map<int, MatZn> proj;
  ChainComplex sx = suspend(x, 1);
  for (int i = c.lo(); i <= c.hi(); ++i) {
    if (c.rank(i) == 0 || x.rank(i - 1) == 0) continue;
    MatZn m(mod, x.rank(i - 1), c.rank(i));
    m.paste(0, 0, MatZn::identity(mod, x.rank(i - 1)));
    proj.emplace(i, std::move(m));
  }
  ChainMap inclusion(y, c, 0, std::move(incl));
  ChainMap projection(c, std::move(sx), 0, std::move(proj));
  return {std::move(c), std::move(inclusion), std::move(projection)};
}

/// Degreewise block sum.
inline ChainComplex direct_sum(const ChainComplex& x, const ChainComplex& y) {
  if (x.modulus() != y.modulus()) throw std::invalid_argument("direct_sum: modulus mismatch");
  if (x.empty()) return y;
  if (y.empty()) return x;
  const Modulus& mod = x.modulus();
  const int lo = std::min(x.lo(), y.lo());
  const int hi = std::max(x.hi(), y.hi());
  std::vector<std::size_t> ranks;
  for (int i = lo; i <= hi; ++i) ranks.push_back(x.rank(i) + y.rank(i));
  std::vector<MatZn> diffs;
  for (int i = lo + 1; i <= hi; ++i) {
    MatZn d(mod, x.rank(i - 1) + y.rank(i - 1), x.rank(i) + y.rank(i));
    d.paste(0, 0, x.boundary(i));
    d.paste(x.rank(i - 1), x.rank(i), y.boundary(i));
    diffs.push_back(std::move(d));
  }
  return {mod, lo, std::move(ranks), std::move(diffs)};
}

/// Block bookkeeping for tensor products: within degree m = p + q the
/// summand X_p (x) Y_q starts at `offset`, listed in descending p.
struct TensorBlock {
  int p, q;
  std::size_t offset;
  std::size_t span;  // rank_X(p) * rank_Y(q)
};

inline std::map<int, std::vector<TensorBlock>> tensor_layout(const ChainComplex& x,
                                                             const ChainComplex& y) {
  std::map<int, std::vector<TensorBlock>> out;
  if (x.empty() || y.empty()) return out;
  for (int m = x.lo() + y.lo(); m <= x.hi() + y.hi(); ++m) {
    std::vector<TensorBlock> blocks;
    std::size_t off = 0;
    for (int p = x.hi(); p >= x.lo(); --p) {
      const int q = m - p;
      const std::size_t span = x.rank(p) * y.rank(q);
      if (span == 0) continue;
      blocks.push_back({p, q, off, span});
      off += span;
    }
    out.emplace(m, std::move(blocks));
  }
  return out;
}

/// Tensor product with the Koszul sign: d(x (x) y) = dx (x) y + (-1)^p x (x) dy.
/// Within a degree, summands are ordered by descending X-degree p, and the
/// basis of X_p (x) Y_q is ordered with the X index major.
inline ChainComplex tensor(const ChainComplex& x, const ChainComplex& y) {
  if (x.modulus() != y.modulus()) throw std::invalid_argument("tensor: modulus mismatch");
  const Modulus& mod = x.modulus();
  if (x.empty() || y.empty()) return ChainComplex::zero(mod);

  auto layout = tensor_layout(x, y);
  auto rank_of = [&](int m) -> std::size_t {
    auto it = layout.find(m);
    if (it == layout.end()) return 0;
    std::size_t t = 0;
    for (const auto& b : it->second) t += b.span;
    return t;
  };
  auto offset_of = [&](int m, int p) -> std::size_t {
    for (const auto& b : layout.at(m))
      if (b.p == p) return b.offset;
    throw std::logic_error("tensor: missing block");
  };

  const int lo = x.lo() + y.lo();
  const int hi = x.hi() + y.hi();
  std::vector<std::size_t> ranks;
  for (int m = lo; m <= hi; ++m) ranks.push_back(rank_of(m));
  std::vector<MatZn> diffs;
  for (int m = lo + 1; m <= hi; ++m) {
    MatZn d(mod, rank_of(m - 1), rank_of(m));
    for (const auto& b : layout.at(m)) {
      // d^X (x) id lands in block (p-1, q).
      if (x.rank(b.p - 1) > 0 && b.span > 0) {
        MatZn blk = MatZn::kronecker(x.boundary(b.p), MatZn::identity(mod, y.rank(b.q)));
        if (!blk.is_zero()) d.paste(offset_of(m - 1, b.p - 1), b.offset, blk);
      }
      // (-1)^p id (x) d^Y lands in block (p, q-1).
      if (y.rank(b.q - 1) > 0 && b.span > 0) {
        MatZn blk = MatZn::kronecker(MatZn::identity(mod, x.rank(b.p)), y.boundary(b.q));
        if (b.p % 2 != 0) blk = blk.neg();
        if (!blk.is_zero()) d.paste(offset_of(m - 1, b.p), b.offset, blk);
      }
    }
    diffs.push_back(std::move(d));
  }
  return {mod, lo, std::move(ranks), std::move(diffs)};
}

/// Duality (DX)_i = Hom(X_{-i}, Z/n): reverse the window and transpose the
/// boundaries.  With this convention d.d = 0 holds, D(DX) == X bit for bit,
/// and D(Sigma X) == Sigma^{-1} D(X).
inline ChainComplex dualize(const ChainComplex& x) {
  if (x.empty()) return x;
  const int lo = -x.hi();
  const int hi = -x.lo();
  std::vector<std::size_t> ranks;
  for (int i = lo; i <= hi; ++i) ranks.push_back(x.rank(-i));
  std::vector<MatZn> diffs;
  for (int i = lo + 1; i <= hi; ++i) diffs.push_back(x.boundary(1 - i).transpose());
  return {x.modulus(), lo, std::move(ranks), std::move(diffs)};
}

}  // namespace dzn
