#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dzn/complex.hpp"
#include "dzn/homology.hpp"
#include "dzn/homotopy.hpp"
#include "dzn/koszul.hpp"
#include "dzn/ring.hpp"
#include "dzn/search.hpp"

namespace dzn {

/// Explicit homology-trivial, non-null-homotopic self-map of cone(g) where
/// g = n/p for the smallest prime with p^2 | n.  Exists exactly when n is
/// not squarefree.
struct CanonicalCounterexample {
  std::uint64_t n;
  std::uint64_t prime;      // smallest p with p^2 | n
  std::uint64_t nilpotent;  // g = n/p; g != 0 and g^2 = 0
  ChainMap map;             // degree-1 component [g], degree-0 component 0
  InfeasibilityRecord infeasibility;
};

inline CanonicalCounterexample canonical_counterexample(const Modulus& mod) {
  const std::uint64_t p = mod.smallest_squared_prime();
  if (p == 0)
    throw std::domain_error(
        "canonical_counterexample: " + std::to_string(mod.n()) +
        " is squarefree, so Z/n is von Neumann regular and the generating "
        "hypothesis holds; no counterexample exists");
  const std::uint64_t g = mod.n() / p;

  const ChainComplex s = ChainComplex::sphere(mod);
  const ChainComplex y = cone(scalar_map(s, g)).complex;
  std::map<int, MatZn> comps;
  comps.emplace(1, MatZn::from_rows(mod, {{static_cast<std::int64_t>(g)}}));
  ChainMap h(y, y, 0, std::move(comps));

  if (h.validate()) throw std::logic_error("canonical_counterexample: map is not a chain map");
  if (!InducedHomologyMap(h).is_zero())
    throw std::logic_error("canonical_counterexample: map is not homology-trivial");
  auto outcome = null_homotopy_detailed(h);
  if (outcome.homotopy)
    throw std::logic_error("canonical_counterexample: obstruction unexpectedly solvable");
  return {mod.n(), p, g, std::move(h), *outcome.infeasibility};
}

/// The scaled cone projection z * (cone(f) -> Sigma S).  For z annihilating
/// ann(f) the map kills homology; it is null-homotopic exactly when z lies
/// in (f).  Over Z/n those conditions coincide, which is the residue-ring
/// face of the generating hypothesis.
struct AnnihilatorWitness {
  std::uint64_t f, z;
  ChainMap map;
  bool homology_trivial;
  bool null_homotopic;
};

inline AnnihilatorWitness annihilator_witness(const Modulus& mod, std::uint64_t f,
                                              std::uint64_t z) {
  z = mod.reduce(static_cast<std::int64_t>(z % mod.n()));
  const IdealZn ann = annihilator(mod, IdealZn::from_generators(mod, {f}));
  if (mod.mul(z, ann.generator()) != 0)
    throw std::domain_error("annihilator_witness: z does not annihilate ann(f)");

  const ChainComplex s = ChainComplex::sphere(mod);
  ChainMap w = scale_map(cone(scalar_map(s, f)).projection, z);
  const bool trivial = InducedHomologyMap(w).is_zero();
  const bool null = null_homotopy(w).has_value();
  return {mod.reduce(static_cast<std::int64_t>(f % mod.n())), z, std::move(w), trivial, null};
}

/// Exhaustive contract checks for one Koszul complex S/I.
struct KoszulSuiteReport {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> generators;
  std::uint64_t ideal_divisor = 1;  // I = (d), d | n, d = n encodes (0)
  std::size_t variables = 0;

  bool homology_window_ok = false;   // H_i = 0 outside [0, k]
  bool unit_contract_ok = false;     // H_0 = Z/n / I, eta surjective onto it
  bool counit_contract_ok = false;   // H_k = ann(I), delta embeds it
  bool membership_ok = false;        // eta . z null-homotopic <=> z in I
  bool multiplication_ok = false;    // z in I acts null-homotopically on S/I
  bool double_annihilator_ok = false;
  RelativeGh relative{};

  bool all_ok() const {
    return homology_window_ok && unit_contract_ok && counit_contract_ok && membership_ok &&
           multiplication_ok && double_annihilator_ok;
  }
};

namespace detail {

// Cap on exhaustive element loops inside the Koszul suite; past it the suite
// degrades to a deterministic arithmetic progression of residues.
inline constexpr std::uint64_t kKoszulElementCap = 4096;

inline std::vector<std::uint64_t> residue_samples(std::uint64_t n, std::uint64_t step) {
  std::vector<std::uint64_t> out;
  const std::uint64_t count = n / step;
  if (count <= kKoszulElementCap) {
    for (std::uint64_t k = 0; k < count; ++k) out.push_back(k * step % n);
  } else {
    for (std::uint64_t k = 0; k < kKoszulElementCap; ++k) out.push_back(k * step % n);
  }
  return out;
}

}  // namespace detail

inline KoszulSuiteReport koszul_gh_suite(const Modulus& mod,
                                         const std::vector<std::uint64_t>& gens) {
  const KoszulBundle bundle = koszul(mod, gens);
  const IdealZn ideal = IdealZn::from_generators(mod, gens);
  const int k = static_cast<int>(gens.size());
  const std::uint64_t n = mod.n();
  const std::uint64_t d = ideal.divisor();

  KoszulSuiteReport report;
  report.n = n;
  report.generators = bundle.generators;
  report.ideal_divisor = d;
  report.variables = gens.size();

  const HomologyData h(bundle.complex);
  report.homology_window_ok = true;
  for (int i = bundle.complex.lo(); i <= bundle.complex.hi(); ++i)
    if ((i < 0 || i > k) && !h.factors(i).trivial()) report.homology_window_ok = false;

  // Unit: H_0 must be the cyclic quotient Z/d and eta must hit all of it.
  const std::vector<std::uint64_t> quotient =
      d > 1 ? std::vector<std::uint64_t>{d} : std::vector<std::uint64_t>{};
  report.unit_contract_ok = h.factors(0).factors == quotient;
  if (report.unit_contract_ok && d > 1) {
    const InducedHomologyMap eta_star(bundle.unit);
    const MatZn m = eta_star.matrix(0);
    report.unit_contract_ok =
        m.rows() == 1 && m.cols() == 1 && std::gcd(m(0, 0) % d, d) == 1;
  }

  // Counit: H_k must be ann(I) = (n/d) and delta must carry a generator of
  // H_k to a generator of that subgroup of Z/n.
  report.counit_contract_ok = h.factors(k).factors == quotient;
  if (report.counit_contract_ok && d > 1) {
    const InducedHomologyMap delta_star(to_degree_zero(bundle.counit));
    const MatZn m = delta_star.matrix(k);
    report.counit_contract_ok = m.rows() == 1 && m.cols() == 1 && std::gcd(m(0, 0), n) == n / d;
  }

  report.membership_ok = true;
  for (std::uint64_t z : detail::residue_samples(n, 1)) {
    const ChainMap eta_z = compose(bundle.unit, scalar_map(ChainComplex::sphere(mod), z));
    if (null_homotopy(eta_z).has_value() != ideal.contains(z)) {
      report.membership_ok = false;
      break;
    }
  }

  report.multiplication_ok = true;
  for (std::uint64_t z : detail::residue_samples(n, d)) {
    if (!null_homotopy(scalar_map(bundle.complex, z)).has_value()) {
      report.multiplication_ok = false;
      break;
    }
  }

  report.double_annihilator_ok = double_annihilator_check(mod, ideal);
  report.relative = relative_gh_predicate(mod, ideal);
  return report;
}

/// Randomized quasi-isomorphism torture: disguised inclusions X -> X + C
/// with C contractible, routed through triangular automorphisms and homotopy
/// perturbations.  Every map must register as a quasi-iso and every cone
/// must come back contractible.
struct QuasiIsoSuiteReport {
  std::uint64_t n = 0;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 0;
  std::uint64_t quasi_iso_count = 0;
  std::uint64_t contractible_cone_count = 0;
  bool all_ok() const { return quasi_iso_count == samples && contractible_cone_count == samples; }
};

namespace detail {

inline ChainComplex contractible_padding(Rng& rng, const Modulus& mod, std::size_t max_rank) {
  const int deg = static_cast<int>(rng.below(3)) - 1;
  const std::size_t rank = 1 + rng.below(std::max<std::size_t>(max_rank, 1));
  const ChainComplex f = ChainComplex::free_at(mod, deg, rank);
  return cone(ChainMap::identity(f)).complex;
}

}  // namespace detail

inline QuasiIsoSuiteReport quasi_iso_cone_suite(const Modulus& mod, std::uint64_t samples,
                                                std::uint64_t seed = kDefaultSeed,
                                                std::size_t max_degrees = 3,
                                                std::size_t max_rank = 2) {
  QuasiIsoSuiteReport report;
  report.n = mod.n();
  report.seed = seed;
  report.samples = samples;
  for (std::uint64_t idx = 0; idx < samples; ++idx) {
    Rng rng(instance_seed(seed, idx));
    ChainComplex x = detail::random_complex(rng, mod, max_degrees, max_rank);
    if (x.total_rank() == 0) x = ChainComplex::sphere(mod);
    ChainComplex c = detail::contractible_padding(rng, mod, max_rank);
    if (rng.coin()) c = direct_sum(c, detail::contractible_padding(rng, mod, max_rank));
    const ChainComplex sum = direct_sum(x, c);

    // Inclusion into the X block of the sum.
    std::map<int, MatZn> incl;
    for (int i = x.lo(); i <= x.hi(); ++i) {
      if (x.rank(i) == 0) continue;
      MatZn m(mod, sum.rank(i), x.rank(i));
      m.paste(0, 0, MatZn::identity(mod, x.rank(i)));
      incl.emplace(i, std::move(m));
    }
    ChainMap f(x, sum, 0, std::move(incl));

    // Shear by b: X -> C (and optionally a: C -> X on top), then perturb.
    // The result is the inclusion conjugated by triangular automorphisms:
    // x |-> (x + a(b(x)), b(x)).
    const detail::ChainMapSpace down(x, c);
    const detail::ChainMapSpace up(c, x);
    const ChainMap b = down.sample(rng, x, c);
    const ChainMap a =
        rng.coin() ? up.sample(rng, c, x) : ChainMap::zero(c, x);
    std::map<int, MatZn> sheared;
    for (int i = sum.lo(); i <= sum.hi(); ++i) {
      if (sum.rank(i) == 0 || x.rank(i) == 0) continue;
      MatZn m(mod, sum.rank(i), x.rank(i));
      MatZn top = MatZn::identity(mod, x.rank(i));
      if (c.rank(i) > 0) {
        top = top + a.component(i) * b.component(i);
        m.paste(x.rank(i), 0, b.component(i));
      }
      m.paste(0, 0, top);
      if (!m.is_zero()) sheared.emplace(i, std::move(m));
    }
    ChainMap g(x, sum, 0, std::move(sheared));
    if (g.validate()) throw std::logic_error("quasi_iso_cone_suite: shear broke the chain map");
    g = homotopy_perturbation(g, detail::random_homotopy_data(rng, x, sum));

    if (is_quasi_iso(g)) ++report.quasi_iso_count;
    if (is_contractible(cone(g).complex)) ++report.contractible_cone_count;
  }
  return report;
}

/// One-modulus verdict tying the ring side to the homotopy side: the search
/// must stay silent exactly over squarefree n, and the explicit obstruction
/// must materialize exactly otherwise.
struct TheoremVerdict {
  std::uint64_t n = 0;
  bool squarefree = false;
  bool gh_expected = false;  // = squarefree
  bool ring_side_ok = false;
  bool search_side_ok = false;
  std::optional<CanonicalCounterexample> counterexample;
  SearchReport search;
  bool verdict_ok() const { return ring_side_ok && search_side_ok; }
};

inline TheoremVerdict theorem_suite(const SearchConfig& config) {
  const Modulus mod(config.modulus_n);
  TheoremVerdict v;
  v.n = mod.n();
  v.squarefree = mod.squarefree();
  v.gh_expected = v.squarefree;

  const RingReport ring = ring_report(mod);
  v.ring_side_ok = ring.regular == v.squarefree && ring.nilpotence == v.squarefree &&
                   ring.annihilator_ok;

  v.search = gh_search(config);
  if (v.squarefree) {
    v.search_side_ok = !v.search.counterexample_found &&
                       v.search.instances_certified == v.search.instances_tested;
  } else {
    v.counterexample = canonical_counterexample(mod);
    SearchWitness w{v.counterexample->map, 0, v.counterexample->infeasibility};
    v.search_side_ok = reverify_witness(w);
    if (v.search.counterexample_found)
      v.search_side_ok = v.search_side_ok && reverify_witness(*v.search.witness);
  }
  return v;
}

}  // namespace dzn
