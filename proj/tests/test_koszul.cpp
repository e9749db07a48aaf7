#include <numeric>
#include <vector>

#include "doctest.h"
#include "dzn/harness.hpp"
#include "dzn/homology.hpp"
#include "dzn/koszul.hpp"
#include "dzn/rng.hpp"
#include "oracles.hpp"

using dzn::ChainComplex;
using dzn::Modulus;

namespace {

std::uint64_t binomial(std::uint64_t k, std::uint64_t i) {
  std::uint64_t r = 1;
  for (std::uint64_t j = 0; j < i; ++j) r = r * (k - j) / (j + 1);
  return r;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace

TEST_SUITE("koszul") {

TEST_CASE("ranks are binomial and the window is [0, k]") {
  const Modulus mod(12);
  for (std::vector<std::uint64_t> gens :
       {std::vector<std::uint64_t>{4}, {4, 3}, {2, 6, 9}}) {
    const auto bundle = dzn::koszul(mod, gens);
    const std::uint64_t k = gens.size();
    CHECK(bundle.complex.lo() == 0);
    CHECK(bundle.complex.hi() == static_cast<int>(k));
    for (std::uint64_t i = 0; i <= k; ++i)
      CHECK(bundle.complex.rank(static_cast<int>(i)) == binomial(k, i));
    CHECK_FALSE(bundle.complex.validate().has_value());
    CHECK_FALSE(bundle.unit.validate().has_value());
    CHECK_FALSE(bundle.counit.validate().has_value());
  }
  CHECK_THROWS_AS(dzn::koszul(mod, {}), std::invalid_argument);
}

TEST_CASE("one generator: homology of the cone by hand and by oracle") {
  for (std::uint64_t n = 2; n <= 30; ++n) {
    const Modulus mod(n);
    for (std::uint64_t d : divisors(n)) {
      const auto bundle = dzn::koszul(mod, {d % n});
      const dzn::HomologyData h(bundle.complex);
      // H_0 = Z/n / (d), H_1 = ann(d); both cyclic of order d... H_0 has
      // order d, H_1 has order gcd(d, n) = d as well (ann(d) = (n/d)).
      CHECK(h.factors(0).order() == d);
      CHECK(h.factors(1).order() == d);
      if (n <= 12) {
        const auto brute = oracle::from_library(bundle.complex);
        CHECK(h.factors(0).factors == oracle::homology_invariants(brute, 0));
        CHECK(h.factors(1).factors == oracle::homology_invariants(brute, 1));
      }
    }
  }
}

TEST_CASE("suite passes on all short generator lists over small n") {
  for (std::uint64_t n = 2; n <= 30; ++n) {
    const Modulus mod(n);
    const auto divs = divisors(n);
    for (std::uint64_t d : divs) {
      const auto rep = dzn::koszul_gh_suite(mod, {d % n});
      CHECK(rep.all_ok());
    }
    for (std::uint64_t d1 : divs)
      for (std::uint64_t d2 : divs) {
        const auto rep = dzn::koszul_gh_suite(mod, {d1 % n, d2 % n});
        CHECK(rep.all_ok());
        CHECK(rep.ideal_divisor == std::gcd(std::gcd(d1, d2), n));
      }
  }
}

TEST_CASE("suite passes on random length-3 lists") {
  dzn::Rng rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const std::uint64_t n = 2 + rng.below(29);
    const Modulus mod(n);
    const std::vector<std::uint64_t> gens{rng.below(n), rng.below(n), rng.below(n)};
    const auto rep = dzn::koszul_gh_suite(mod, gens);
    CHECK(rep.all_ok());
    CHECK(rep.variables == 3);
  }
}

TEST_CASE("membership contract seen directly") {
  const Modulus mod(8);
  const auto bundle = dzn::koszul(mod, {2});
  for (std::uint64_t z = 0; z < 8; ++z) {
    const auto composed =
        dzn::compose(bundle.unit, dzn::scalar_map(ChainComplex::sphere(mod), z));
    CHECK(dzn::null_homotopy(composed).has_value() == (z % 2 == 0));
  }
}

TEST_CASE("unit ideal collapses the Koszul complex") {
  const Modulus mod(12);
  // gcd(4, 3) = 1: S/I is contractible and every scalar acts null-homotopically.
  const auto bundle = dzn::koszul(mod, {4, 3});
  CHECK(dzn::is_contractible(bundle.complex).has_value());
  CHECK(dzn::HomologyData(bundle.complex).trivial());
  const auto rep = dzn::koszul_gh_suite(mod, {4, 3});
  CHECK(rep.all_ok());
  CHECK(rep.ideal_divisor == 1);
}

TEST_CASE("generators are stored reduced but not canonicalized") {
  const Modulus mod(12);
  const auto bundle = dzn::koszul(mod, {16, 3});
  CHECK(bundle.generators == std::vector<std::uint64_t>{4, 3});
}

}  // TEST_SUITE
