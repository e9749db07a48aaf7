#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "dzn/complex.hpp"
#include "dzn/matrix.hpp"
#include "dzn/modulus.hpp"

namespace dzn {

/// Koszul object S/(x1, ..., xk): the iterated tensor product of the cones
/// of the scalar maps xi: S -> S, concentrated in degrees [0, k] with rank
/// binomial(k, i) in degree i.  Comes with the unit eta: S -> S/I hitting
/// the degree-0 generator and the counit delta: S/I -> Sigma^k S projecting
/// the top generator.  The generator list is stored as given (reduced mod n,
/// never canonicalized to the gcd).
struct KoszulBundle {
  ChainComplex complex;
  ChainMap unit;    // S -> S/I
  ChainMap counit;  // S/I -> Sigma^k S
  std::vector<std::uint64_t> generators;
};

inline KoszulBundle koszul(const Modulus& mod, const std::vector<std::uint64_t>& gens) {
  if (gens.empty()) throw std::invalid_argument("koszul: need at least one generator");
  const ChainComplex s = ChainComplex::sphere(mod);

  std::vector<std::uint64_t> reduced;
  reduced.reserve(gens.size());
  for (auto g : gens) reduced.push_back(g % mod.n());

  ChainComplex acc = ChainComplex::zero(mod);
  bool first = true;
  for (auto g : reduced) {
    ChainMap mult = scalar_map(s, g);
    ChainComplex cone_g = cone(mult).complex;
    acc = first ? cone_g : tensor(acc, cone_g);
    first = false;
  }

  const int k = static_cast<int>(reduced.size());
  // Degree 0 and degree k both have rank 1: the bottom and top corners.
  std::map<int, MatZn> eta;
  eta.emplace(0, MatZn::identity(mod, 1));
  std::map<int, MatZn> delta;
  delta.emplace(k, MatZn::identity(mod, 1));

  ChainMap unit(s, acc, 0, std::move(eta));
  ChainMap counit(acc, suspend(s, k), 0, std::move(delta));
  if (unit.validate() || counit.validate())
    throw std::logic_error("koszul: unit/counit failed validation");
  return {std::move(acc), std::move(unit), std::move(counit), std::move(reduced)};
}

}  // namespace dzn
