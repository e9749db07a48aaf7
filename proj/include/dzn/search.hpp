#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dzn/complex.hpp"
#include "dzn/homology.hpp"
#include "dzn/homotopy.hpp"
#include "dzn/howell.hpp"
#include "dzn/matrix.hpp"
#include "dzn/modulus.hpp"
#include "dzn/rng.hpp"

namespace dzn {

inline constexpr std::uint64_t kDefaultSeed = 20060101;

enum class SearchMode { general, target_sphere };

struct SearchConfig {
  std::uint64_t modulus_n = 2;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 500;
  std::size_t max_degrees = 4;  // window width bound
  std::size_t max_rank = 3;     // per-degree rank bound
  SearchMode mode = SearchMode::general;

  friend bool operator==(const SearchConfig& a, const SearchConfig& b) {
    return a.modulus_n == b.modulus_n && a.seed == b.seed && a.samples == b.samples &&
           a.max_degrees == b.max_degrees && a.max_rank == b.max_rank && a.mode == b.mode;
  }
};

/// A map refuting the generating hypothesis at this modulus: induced zero on
/// homology in every degree, yet provably not null-homotopic.
struct SearchWitness {
  ChainMap map;  // embeds both complexes
  std::uint64_t instance_index;
  InfeasibilityRecord infeasibility;
};

struct SearchReport {
  SearchConfig config;
  bool counterexample_found = false;
  std::optional<SearchWitness> witness;
  std::uint64_t instances_tested = 0;
  std::uint64_t instances_certified = 0;  // received verified homotopy certificates
  double elapsed_ms = 0.0;
};

namespace detail {

/// Random valid complex: boundaries sampled top-down, each row of d[i] drawn
/// from the left kernel of d[i+1], so d.d = 0 holds by construction.
inline ChainComplex random_complex(Rng& rng, const Modulus& mod, std::size_t max_degrees,
                                   std::size_t max_rank) {
  const std::size_t len = 1 + rng.below(max_degrees);
  const int lo = static_cast<int>(rng.below(3)) - 1;
  std::vector<std::size_t> ranks(len);
  for (auto& r : ranks) r = rng.below(max_rank + 1);

  std::vector<MatZn> diffs;
  for (std::size_t j = 0; j + 1 < len; ++j) diffs.emplace_back(mod, ranks[j], ranks[j + 1]);
  if (len >= 2) {
    // Topmost boundary is unconstrained.
    MatZn fresh(mod, ranks[len - 2], ranks[len - 1]);
    for (std::size_t r = 0; r < fresh.rows(); ++r)
      for (std::size_t c = 0; c < fresh.cols(); ++c) fresh.set(r, c, rng.below(mod.n()));
    diffs[len - 2] = std::move(fresh);
    for (std::size_t j = len - 2; j-- > 0;) {
      const MatZn& next = diffs[j + 1];  // d at degree lo+j+2
      const MatZn left_kernel = kernel_basis(next.transpose());
      MatZn d(mod, ranks[j], ranks[j + 1]);
      for (std::size_t r = 0; r < d.rows(); ++r) {
        for (std::size_t g = 0; g < left_kernel.rows(); ++g) {
          const std::uint64_t coeff = rng.below(mod.n());
          if (coeff == 0) continue;
          for (std::size_t c = 0; c < d.cols(); ++c)
            d.set(r, c, mod.add(d(r, c), mod.mul(coeff, left_kernel(g, c))));
        }
      }
      diffs[j] = std::move(d);
    }
  }
  ChainComplex x(mod, lo, std::move(ranks), std::move(diffs));
  if (x.validate()) throw std::logic_error("random_complex: constructed invalid complex");
  return x;
}

/// Basis of the module of degree-0 chain maps X -> Y, as rows of flattened
/// component entries.  Offsets describe the flattening.
struct ChainMapSpace {
  struct Slot {
    int degree;
    std::size_t offset, rows, cols;
  };
  std::vector<Slot> slots;
  std::size_t dim = 0;
  MatZn basis;  // rows generate the solution space of the commutation system

  ChainMapSpace(const ChainComplex& x, const ChainComplex& y) : basis(x.modulus(), 0, 0) {
    const Modulus& mod = x.modulus();
    for (int i = x.lo(); i <= x.hi(); ++i) {
      const std::size_t r = y.rank(i), c = x.rank(i);
      if (r == 0 || c == 0) continue;
      slots.push_back({i, dim, r, c});
      dim += r * c;
    }
    auto slot_of = [&](int degree) -> const Slot* {
      for (const auto& s : slots)
        if (s.degree == degree) return &s;
      return nullptr;
    };
    // Commutation d^Y f[i] = f[i-1] d^X as a homogeneous system.
    std::size_t equations = 0;
    const int qlo = std::max(x.lo(), y.lo());
    const int qhi = std::min(x.hi() + 1, y.hi() + 1);
    for (int i = qlo; i <= qhi; ++i) equations += y.rank(i - 1) * x.rank(i);
    MatZn a(mod, equations, dim);
    std::size_t eq = 0;
    for (int i = qlo; i <= qhi; ++i) {
      const std::size_t rows = y.rank(i - 1), cols = x.rank(i);
      if (rows == 0 || cols == 0) continue;
      const MatZn dy = y.boundary(i);
      const MatZn dx = x.boundary(i);
      const Slot* cur = slot_of(i);
      const Slot* prev = slot_of(i - 1);
      for (std::size_t p = 0; p < rows; ++p)
        for (std::size_t q = 0; q < cols; ++q) {
          if (cur)
            for (std::size_t c = 0; c < cur->rows; ++c) {
              const std::uint64_t v = dy(p, c);
              if (v != 0) a.set(eq, cur->offset + c * cur->cols + q, v);
            }
          if (prev)
            for (std::size_t c = 0; c < prev->cols; ++c) {
              const std::uint64_t v = dx(c, q);
              if (v != 0) {
                const std::size_t idx = prev->offset + p * prev->cols + c;
                a.set(eq, idx, mod.sub(a(eq, idx), v));
              }
            }
          ++eq;
        }
    }
    basis = kernel_basis(a);
  }

  ChainMap materialize(const ChainComplex& x, const ChainComplex& y,
                       const std::vector<std::uint64_t>& flat) const {
    std::map<int, MatZn> comps;
    for (const auto& sl : slots) {
      MatZn m(x.modulus(), sl.rows, sl.cols);
      for (std::size_t r = 0; r < sl.rows; ++r)
        for (std::size_t c = 0; c < sl.cols; ++c) m.set(r, c, flat[sl.offset + r * sl.cols + c]);
      if (!m.is_zero()) comps.emplace(sl.degree, std::move(m));
    }
    return {x, y, 0, std::move(comps)};
  }

  ChainMap sample(Rng& rng, const ChainComplex& x, const ChainComplex& y) const {
    const Modulus& mod = x.modulus();
    std::vector<std::uint64_t> flat(dim, 0);
    for (std::size_t g = 0; g < basis.rows(); ++g) {
      const std::uint64_t coeff = rng.below(mod.n());
      if (coeff == 0) continue;
      for (std::size_t j = 0; j < dim; ++j)
        flat[j] = mod.add(flat[j], mod.mul(coeff, basis(g, j)));
    }
    return materialize(x, y, flat);
  }
};

inline Homotopy random_homotopy_data(Rng& rng, const ChainComplex& x, const ChainComplex& y) {
  Homotopy s;
  const Modulus& mod = x.modulus();
  for (int i = x.lo(); i <= x.hi(); ++i) {
    const std::size_t r = y.rank(i + 1), c = x.rank(i);
    if (r == 0 || c == 0) continue;
    MatZn m(mod, r, c);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < c; ++b) m.set(a, b, rng.below(mod.n()));
    if (!m.is_zero()) s.comps.emplace(i, std::move(m));
  }
  return s;
}

}  // namespace detail

/// Instance `index` of the deterministic stream for `config`: a valid pair
/// of complexes within the size bounds and a chain map that induces zero on
/// homology.  Candidates come from the full chain-map module; a bias stage
/// rescales by nilradical multiples and adds homotopy perturbations ds + sd
/// so the nontrivial strata (homology-trivial but not literally zero maps)
/// are reached.  Rejection keeps only homology-trivial candidates; the
/// fallback ds + sd is homology-trivial by construction.
inline ChainMap random_instance(const SearchConfig& config, std::uint64_t index) {
  const Modulus mod(config.modulus_n);
  Rng rng(instance_seed(config.seed, index));
  const ChainComplex x = detail::random_complex(rng, mod, config.max_degrees, config.max_rank);
  const ChainComplex y = config.mode == SearchMode::target_sphere
                             ? ChainComplex::sphere(mod)
                             : detail::random_complex(rng, mod, config.max_degrees, config.max_rank);
  const detail::ChainMapSpace space(x, y);
  const HomologyData hx = homology(x);
  const HomologyData hy = homology(y);
  const std::uint64_t rad = mod.radical();

  constexpr int kAttempts = 48;
  for (int t = 0; t < kAttempts; ++t) {
    ChainMap f = space.sample(rng, x, y);
    if (rng.coin()) {
      // Nilradical rescale: x^k = 0 strata carry the interesting failures.
      const std::uint64_t scalar = mod.mul(rad % mod.n(), rng.below(mod.n()));
      f = scale_map(f, scalar);
    }
    if (rng.coin()) f = homotopy_perturbation(f, detail::random_homotopy_data(rng, x, y));
    if (InducedHomologyMap(f, hx, hy).is_zero()) return f;
  }
  ChainMap zero = ChainMap::zero(x, y);
  return homotopy_perturbation(zero, detail::random_homotopy_data(rng, x, y));
}

/// Re-derive everything a witness claims: the map is valid, its induced
/// homology map vanishes, and the homotopy system is infeasible.
inline bool reverify_witness(const SearchWitness& w) {
  if (w.map.validate()) return false;
  if (!InducedHomologyMap(w.map).is_zero()) return false;
  return !null_homotopy_detailed(w.map).homotopy.has_value();
}

inline SearchReport run_search(const SearchConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SearchReport report;
  report.config = config;
  for (std::uint64_t idx = 0; idx < config.samples; ++idx) {
    ChainMap f = random_instance(config, idx);
    ++report.instances_tested;
    auto outcome = null_homotopy_detailed(f);
    if (outcome.homotopy) {
      if (!verify_homotopy(f, *outcome.homotopy))
        throw std::logic_error("search: certificate failed recheck");
      ++report.instances_certified;
      continue;
    }
    SearchWitness w{std::move(f), idx, *outcome.infeasibility};
    if (!reverify_witness(w)) throw std::logic_error("search: witness failed re-verification");
    report.witness = std::move(w);
    report.counterexample_found = true;
    break;
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Search for a homology-trivial map that is not null-homotopic.  Over a
/// regular (squarefree) modulus this must report none_found with every
/// instance certified.
inline SearchReport gh_search(const SearchConfig& config) {
  if (config.mode != SearchMode::general)
    throw std::invalid_argument("gh_search: config mode must be general");
  return run_search(config);
}

/// Same search with the target pinned to the sphere; Z/n is self-injective,
/// so this must report none_found for every n.
inline SearchReport target_sphere_search(SearchConfig config) {
  config.mode = SearchMode::target_sphere;
  return run_search(config);
}

}  // namespace dzn
