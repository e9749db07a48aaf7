#include <map>
#include <vector>

#include "doctest.h"
#include "dzn/complex.hpp"
#include "dzn/harness.hpp"
#include "dzn/homology.hpp"
#include "dzn/homotopy.hpp"
#include "dzn/rng.hpp"
#include "dzn/search.hpp"
#include "oracles.hpp"

using dzn::ChainComplex;
using dzn::ChainMap;
using dzn::MatZn;
using dzn::Modulus;
using oracle::Row;

namespace {

// Valid small complexes over the given modulus, <= 3 degrees, total rank <= 3.
std::vector<ChainComplex> catalog(const Modulus& mod) {
  const std::uint64_t n = mod.n();
  std::vector<ChainComplex> out;
  out.push_back(ChainComplex::sphere(mod));
  out.push_back(ChainComplex::free_at(mod, 1, 1));
  out.push_back(ChainComplex::free_at(mod, 0, 2));
  for (std::uint64_t g = 1; g < n; ++g)
    out.push_back(dzn::cone(dzn::scalar_map(ChainComplex::sphere(mod), g)).complex);
  for (std::uint64_t a = 1; a < n; ++a)
    for (std::uint64_t b = 1; b < n; ++b)
      if (a * b % n == 0)
        out.push_back(ChainComplex(
            mod, 0, {1, 1, 1},
            {MatZn::from_rows(mod, {{static_cast<std::int64_t>(a)}}),
             MatZn::from_rows(mod, {{static_cast<std::int64_t>(b)}})}));
  return out;
}

ChainMap lift_flat(const ChainComplex& x, const ChainComplex& y, const oracle::BrutePair& pair,
                   const Row& flat) {
  std::map<int, MatZn> comps;
  for (int i = pair.lo; i <= pair.hi; ++i) {
    const auto rows = pair.f_component(flat, i);
    if (rows.empty() || rows[0].empty()) continue;
    MatZn m(x.modulus(), rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c]);
    if (!m.is_zero()) comps.emplace(i, std::move(m));
  }
  return {x, y, 0, std::move(comps)};
}

}  // namespace

TEST_SUITE("homotopy") {

TEST_CASE("null_homotopy decides exactly as brute enumeration") {
  const Modulus mod(4);
  const auto cat = catalog(mod);
  std::size_t maps_checked = 0;
  for (const ChainComplex& x : cat)
    for (const ChainComplex& y : cat) {
      const oracle::BrutePair pair(oracle::from_library(x), oracle::from_library(y));
      if (pair.f_entries() > 5 || pair.s_entries() > 5) continue;
      for (const Row& flat : pair.all_chain_maps()) {
        const ChainMap f = lift_flat(x, y, pair, flat);
        REQUIRE_FALSE(f.validate().has_value());
        const auto lib = dzn::null_homotopy(f);
        const auto brute = pair.brute_homotopy(flat);
        CHECK(lib.has_value() == brute.has_value());
        if (lib) {
          // The certificate really solves f = ds + sd, checked on the
          // oracle's own arithmetic.
          Row s_flat(pair.s_entries(), 0);
          std::size_t off = 0;
          for (int i = pair.lo; i <= pair.hi; ++i) {
            const std::size_t rows = pair.y.rank(i + 1), cols = pair.x.rank(i);
            auto sc = lib->comps.find(i);
            for (std::size_t r = 0; r < rows; ++r)
              for (std::size_t c = 0; c < cols; ++c)
                s_flat[off++] = sc == lib->comps.end() ? 0 : sc->second(r, c);
          }
          CHECK(pair.ds_plus_sd(s_flat) == flat);
        }
        ++maps_checked;
      }
    }
  CHECK(maps_checked >= 500);
}

TEST_CASE("verify_homotopy accepts exactly valid certificates") {
  const Modulus mod(4);
  const ChainComplex c = dzn::cone(dzn::scalar_map(ChainComplex::sphere(mod), 2)).complex;
  const ChainMap id = ChainMap::identity(c);
  const ChainMap twice = dzn::scale_map(id, 2);

  // Multiplication by 2 on cone(2) is null-homotopic via s_0 = [1].
  dzn::Homotopy s;
  s.comps.emplace(0, MatZn::from_rows(mod, {{1}}));
  CHECK(dzn::verify_homotopy(twice, s));
  CHECK_FALSE(dzn::verify_homotopy(id, s));
  // s_0 = [3] also certifies (3 * 2 = 2 mod 4); s_0 = [2] does not.
  s.comps.at(0).set(0, 0, 3);
  CHECK(dzn::verify_homotopy(twice, s));
  s.comps.at(0).set(0, 0, 2);
  CHECK_FALSE(dzn::verify_homotopy(twice, s));
}

TEST_CASE("homotopy perturbations preserve induced homology maps") {
  for (std::uint64_t n : {4ull, 6ull, 9ull}) {
    const Modulus mod(n);
    dzn::Rng rng(n * 13);
    for (int trial = 0; trial < 15; ++trial) {
      const ChainComplex x = dzn::detail::random_complex(rng, mod, 3, 2);
      const ChainComplex y = dzn::detail::random_complex(rng, mod, 3, 2);
      const dzn::detail::ChainMapSpace space(x, y);
      const ChainMap f = space.sample(rng, x, y);
      const ChainMap g =
          dzn::homotopy_perturbation(f, dzn::detail::random_homotopy_data(rng, x, y));
      REQUIRE_FALSE(g.validate().has_value());

      const dzn::HomologyData hx(x), hy(y);
      const dzn::InducedHomologyMap mf(f, hx, hy), mg(g, hx, hy);
      for (int i = std::min(x.lo(), y.lo()); i <= std::max(x.hi(), y.hi()); ++i)
        CHECK(mf.matrix(i) == mg.matrix(i));
      CHECK(dzn::null_homotopy(f).has_value() == dzn::null_homotopy(g).has_value());
    }
  }
}

TEST_CASE("contractibility of standard shapes") {
  const Modulus mod(12);
  const ChainComplex s = ChainComplex::sphere(mod);
  CHECK_FALSE(dzn::is_contractible(s).has_value());

  const ChainComplex cid = dzn::cone(ChainMap::identity(s)).complex;
  CHECK(dzn::is_contractible(cid).has_value());
  CHECK(dzn::is_contractible(dzn::direct_sum(cid, dzn::suspend(cid, 2))).has_value());

  const ChainComplex c2 = dzn::cone(dzn::scalar_map(s, 2)).complex;
  CHECK_FALSE(dzn::is_contractible(c2).has_value());
  CHECK(dzn::HomologyData(cid).trivial());
  CHECK_FALSE(dzn::HomologyData(c2).trivial());
}

TEST_CASE("quasi-isomorphism detection") {
  const Modulus mod(6);
  const ChainComplex s = ChainComplex::sphere(mod);
  CHECK(dzn::is_quasi_iso(ChainMap::identity(s)));
  CHECK_FALSE(dzn::is_quasi_iso(ChainMap::zero(s, s)));

  // Multiplication by a unit is a quasi-iso; by a zero divisor it is not.
  CHECK(dzn::is_quasi_iso(dzn::scalar_map(s, 5)));
  CHECK_FALSE(dzn::is_quasi_iso(dzn::scalar_map(s, 2)));

  // The canonical obstruction map kills homology but homology is nonzero.
  const auto ce = dzn::canonical_counterexample(Modulus(4));
  CHECK_FALSE(dzn::is_quasi_iso(ce.map));
}

TEST_CASE("degree conversion keeps the null-homotopy verdict") {
  const Modulus mod(4);
  const ChainComplex s = ChainComplex::sphere(mod);
  const ChainComplex c = dzn::cone(dzn::scalar_map(s, 2)).complex;

  // Degree-1 map S -> cone(2) with component [2] into the top cell: a valid
  // chain map (d maps it to 4 = 0) that is not null-homotopic, because the
  // only homotopy would land in the empty degree 2.
  std::map<int, MatZn> comps;
  comps.emplace(0, MatZn::from_rows(mod, {{2}}));
  const ChainMap f(s, c, 1, std::move(comps));
  CHECK_FALSE(f.validate().has_value());
  const ChainMap f0 = dzn::to_degree_zero(f);
  CHECK(f0.degree() == 0);
  CHECK_FALSE(f0.validate().has_value());
  CHECK(f0.source() == dzn::suspend(s, 1));
  CHECK_FALSE(dzn::null_homotopy(f0).has_value());
  CHECK_THROWS_AS(dzn::null_homotopy(f), std::invalid_argument);
}

}  // TEST_SUITE
