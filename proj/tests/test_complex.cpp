#include <map>
#include <vector>

#include "doctest.h"
#include "dzn/complex.hpp"
#include "dzn/homology.hpp"
#include "dzn/rng.hpp"
#include "dzn/search.hpp"
#include "oracles.hpp"

using dzn::ChainComplex;
using dzn::ChainMap;
using dzn::MatZn;
using dzn::Modulus;

namespace {

ChainComplex cone_of_scalar(const Modulus& mod, std::uint64_t g) {
  return dzn::cone(dzn::scalar_map(ChainComplex::sphere(mod), g)).complex;
}

std::vector<std::uint64_t> lib_homology(const ChainComplex& x, int i) {
  return dzn::HomologyData(x).factors(i).factors;
}

ChainComplex random_complex(dzn::Rng& rng, const Modulus& mod) {
  return dzn::detail::random_complex(rng, mod, 3, 2);
}

const dzn::TensorBlock& block_at(const std::vector<dzn::TensorBlock>& blocks, int p) {
  for (const auto& b : blocks)
    if (b.p == p) return b;
  throw std::logic_error("missing tensor block");
}

}  // namespace

TEST_SUITE("complex") {

TEST_CASE("validation catches broken differentials and shapes") {
  const Modulus mod(4);
  CHECK_FALSE(ChainComplex::sphere(mod).validate().has_value());
  CHECK_FALSE(cone_of_scalar(mod, 2).validate().has_value());

  // d1 * d2 = [2] over Z/4: not a complex.
  ChainComplex bad(mod, 0, {1, 1, 1},
                   {MatZn::from_rows(mod, {{1}}), MatZn::from_rows(mod, {{2}})});
  const auto v = bad.validate();
  REQUIRE(v.has_value());
  CHECK(v->degree == 2);

  CHECK_THROWS_AS(ChainComplex(mod, 0, {1, 2}, {MatZn(mod, 1, 1)}), std::invalid_argument);
  CHECK_THROWS_AS(ChainComplex(mod, 0, {1, 2}, {}), std::invalid_argument);
}

TEST_CASE("cone of multiplication by 2 over Z/4") {
  const Modulus mod(4);
  const ChainComplex c = cone_of_scalar(mod, 2);
  CHECK(c.lo() == 0);
  CHECK(c.hi() == 1);
  CHECK(c.boundary(1) == MatZn::from_rows(mod, {{2}}));
  CHECK(lib_homology(c, 0) == std::vector<std::uint64_t>{2});
  CHECK(lib_homology(c, 1) == std::vector<std::uint64_t>{2});

  const auto brute = oracle::from_library(c);
  CHECK(oracle::homology_invariants(brute, 0) == std::vector<std::uint64_t>{2});
  CHECK(oracle::homology_invariants(brute, 1) == std::vector<std::uint64_t>{2});
}

TEST_CASE("cone triangle maps are chain maps composing to zero") {
  const Modulus mod(9);
  dzn::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ChainComplex x = random_complex(rng, mod);
    const ChainComplex y = random_complex(rng, mod);
    const dzn::detail::ChainMapSpace space(x, y);
    const ChainMap f = space.sample(rng, x, y);
    const dzn::Cone cone = dzn::cone(f);
    CHECK_FALSE(cone.complex.validate().has_value());
    CHECK_FALSE(cone.inclusion.validate().has_value());
    CHECK_FALSE(cone.projection.validate().has_value());
    CHECK(dzn::compose(cone.projection, cone.inclusion).is_zero_map());
  }
}

TEST_CASE("suspension is invertible and reindexes boundaries with a sign") {
  const Modulus mod(4);
  dzn::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ChainComplex x = random_complex(rng, mod);
    CHECK(dzn::suspend(dzn::suspend(x, 1), -1) == x);
    CHECK(dzn::suspend(dzn::suspend(x, 2), -2) == x);
    const ChainComplex s1 = dzn::suspend(x, 1);
    for (int i = x.lo() + 1; i <= x.hi(); ++i)
      CHECK(s1.boundary(i + 1) == x.boundary(i).neg());
    const ChainComplex s2 = dzn::suspend(x, 2);
    for (int i = x.lo() + 1; i <= x.hi(); ++i) CHECK(s2.boundary(i + 2) == x.boundary(i));
  }
}

TEST_CASE("sphere is a strict tensor unit") {
  for (std::uint64_t n : {2ull, 4ull, 9ull}) {
    const Modulus mod(n);
    const ChainComplex s = ChainComplex::sphere(mod);
    dzn::Rng rng(n);
    for (int trial = 0; trial < 15; ++trial) {
      const ChainComplex x = random_complex(rng, mod);
      CHECK(dzn::tensor(s, x) == x);
      CHECK(dzn::tensor(x, s) == x);
    }
  }
}

TEST_CASE("tensor square of cone(2) over Z/4") {
  const Modulus mod(4);
  const ChainComplex c = cone_of_scalar(mod, 2);
  const ChainComplex t = dzn::tensor(c, c);
  CHECK(t.lo() == 0);
  CHECK(t.hi() == 2);
  CHECK(t.rank(0) == 1);
  CHECK(t.rank(1) == 2);
  CHECK(t.rank(2) == 1);
  // Blocks at degree 1 are (p=1, q=0) then (p=0, q=1); the Koszul sign
  // flips id (x) d on the p = 1 block: -2 = 2 over Z/4.
  CHECK(t.boundary(1) == MatZn::from_rows(mod, {{2, 2}}));
  CHECK(t.boundary(2) == MatZn::from_rows(mod, {{2}, {2}}));
  CHECK_FALSE(t.validate().has_value());

  const auto brute = oracle::from_library(t);
  for (int i = 0; i <= 2; ++i)
    CHECK(lib_homology(t, i) == oracle::homology_invariants(brute, i));
}

TEST_CASE("tensor homology matches the counting oracle on random pairs") {
  for (std::uint64_t n : {2ull, 3ull, 4ull}) {
    const Modulus mod(n);
    dzn::Rng rng(n * 7 + 1);
    for (int trial = 0; trial < 8; ++trial) {
      ChainComplex x = random_complex(rng, mod);
      ChainComplex y = random_complex(rng, mod);
      if (x.total_rank() > 3 || y.total_rank() > 3) continue;  // keep enumeration small
      const ChainComplex t = dzn::tensor(x, y);
      CHECK_FALSE(t.validate().has_value());
      if (t.total_rank() > 7) continue;
      const auto brute = oracle::from_library(t);
      for (int i = t.lo(); i <= t.hi(); ++i)
        CHECK(lib_homology(t, i) == oracle::homology_invariants(brute, i));
    }
  }
}

TEST_CASE("tensor is associative up to the documented block permutation") {
  const Modulus mod(6);
  dzn::Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const ChainComplex x = random_complex(rng, mod);
    const ChainComplex y = random_complex(rng, mod);
    const ChainComplex z = random_complex(rng, mod);
    const ChainComplex xy = dzn::tensor(x, y);
    const ChainComplex yz = dzn::tensor(y, z);
    const ChainComplex left = dzn::tensor(xy, z);
    const ChainComplex right = dzn::tensor(x, yz);
    REQUIRE(left.lo() == right.lo());
    REQUIRE(left.hi() == right.hi());
    for (int m = left.lo(); m <= left.hi(); ++m) REQUIRE(left.rank(m) == right.rank(m));

    auto lay_xy = dzn::tensor_layout(x, y);
    auto lay_yz = dzn::tensor_layout(y, z);
    auto lay_left = dzn::tensor_layout(xy, z);
    auto lay_right = dzn::tensor_layout(x, yz);

    // P_m : left_m -> right_m moving X_p (x) Y_q (x) Z_r as one slab.
    std::map<int, MatZn> perm;
    for (int m = left.lo(); m <= left.hi(); ++m) {
      MatZn p_m(mod, right.rank(m), left.rank(m));
      for (const auto& outer : lay_left[m]) {       // outer: ((x(x)y)_a, z_r)
        const int a = outer.p, r = outer.q;
        for (const auto& inner : lay_xy[a]) {       // inner: (x_p, y_q)
          const int p = inner.p, q = inner.q;
          const std::size_t xp = x.rank(p), yq = y.rank(q), zr = z.rank(r);
          const std::size_t off_left = outer.offset + inner.offset * zr;
          const auto& rblock = block_at(lay_right[m], p);  // (x_p, (y(x)z)_{q+r})
          const auto& rinner = [&]() -> const dzn::TensorBlock& {
            for (const auto& b : lay_yz[q + r])
              if (b.p == q) return b;
            throw std::logic_error("missing inner block");
          }();
          for (std::size_t i = 0; i < xp; ++i)
            for (std::size_t j = 0; j < yq; ++j)
              for (std::size_t k = 0; k < zr; ++k) {
                const std::size_t row_left = off_left + (i * yq + j) * zr + k;
                const std::size_t row_right =
                    rblock.offset + i * yz.rank(q + r) + rinner.offset + j * zr + k;
                p_m.set(row_right, row_left, 1);
              }
        }
      }
      // Permutation matrix: every row and column carries exactly one 1.
      for (std::size_t rr = 0; rr < p_m.rows(); ++rr) {
        std::size_t count = 0;
        for (std::size_t cc = 0; cc < p_m.cols(); ++cc) count += p_m(rr, cc) != 0;
        CHECK(count == 1);
      }
      for (std::size_t cc = 0; cc < p_m.cols(); ++cc) {
        std::size_t count = 0;
        for (std::size_t rr = 0; rr < p_m.rows(); ++rr) count += p_m(rr, cc) != 0;
        CHECK(count == 1);
      }
      perm.emplace(m, std::move(p_m));
    }
    for (int m = left.lo() + 1; m <= left.hi(); ++m)
      CHECK(perm.at(m - 1) * left.boundary(m) == right.boundary(m) * perm.at(m));
  }
}

TEST_CASE("dualize is an involution compatible with suspension") {
  for (std::uint64_t n : {3ull, 4ull}) {
    const Modulus mod(n);
    dzn::Rng rng(n + 40);
    for (int trial = 0; trial < 20; ++trial) {
      const ChainComplex x = random_complex(rng, mod);
      const ChainComplex d = dzn::dualize(x);
      CHECK_FALSE(d.validate().has_value());
      CHECK(dzn::dualize(d) == x);
      CHECK(dzn::dualize(dzn::suspend(x, 1)) == dzn::suspend(d, -1));
    }
  }
}

TEST_CASE("dual degree-zero homology counts maps to the sphere") {
  for (std::uint64_t n : {2ull, 3ull, 4ull}) {
    const Modulus mod(n);
    std::vector<ChainComplex> cases{ChainComplex::sphere(mod), ChainComplex::free_at(mod, 0, 2)};
    for (std::uint64_t g = 1; g < n; ++g) cases.push_back(cone_of_scalar(mod, g));
    if (n == 4)
      cases.push_back(ChainComplex(mod, 0, {1, 1, 1},
                                   {MatZn::from_rows(mod, {{2}}), MatZn::from_rows(mod, {{2}})}));
    cases.push_back(dzn::suspend(cone_of_scalar(mod, n - 1), -1));

    for (const ChainComplex& x : cases) {
      const std::uint64_t h0_order = dzn::HomologyData(dzn::dualize(x)).factors(0).order();
      const oracle::BrutePair pair(oracle::from_library(x),
                                   oracle::from_library(ChainComplex::sphere(mod)));
      CHECK(h0_order == pair.homotopy_class_count());
    }
  }
}

TEST_CASE("direct sum stacks ranks and boundaries blockwise") {
  const Modulus mod(8);
  dzn::Rng rng(3);
  const ChainComplex x = random_complex(rng, mod);
  const ChainComplex y = random_complex(rng, mod);
  const ChainComplex s = dzn::direct_sum(x, y);
  CHECK_FALSE(s.validate().has_value());
  for (int i = s.lo(); i <= s.hi(); ++i) CHECK(s.rank(i) == x.rank(i) + y.rank(i));
  CHECK(dzn::direct_sum(x, ChainComplex::zero(mod)) == x);
  CHECK(dzn::direct_sum(ChainComplex::zero(mod), y) == y);
}

}  // TEST_SUITE
