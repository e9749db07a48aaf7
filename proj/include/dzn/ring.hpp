#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dzn/modulus.hpp"

namespace dzn {

/// Every ideal of Z/n is principal; the canonical generator is the divisor
/// g = gcd(generators, n), stored here in [1, n] (g = n encodes the zero
/// ideal, whose residue representative is 0).
class IdealZn {
public:
  IdealZn(const Modulus& mod, std::uint64_t x)
      : mod_(mod), divisor_(std::gcd(x % mod.n(), mod.n())) {
    if (divisor_ == 0) divisor_ = mod.n();
  }

  static IdealZn from_generators(const Modulus& mod, const std::vector<std::uint64_t>& xs) {
    std::uint64_t g = mod.n();
    for (auto x : xs) g = std::gcd(g, x % mod.n());
    return from_divisor(mod, g);
  }

  static IdealZn from_divisor(const Modulus& mod, std::uint64_t d) {
    if (d == 0 || mod.n() % d != 0)
      throw std::invalid_argument("from_divisor: not a divisor of n");
    IdealZn i(mod, d % mod.n());
    i.divisor_ = d;
    return i;
  }

  const Modulus& modulus() const { return mod_; }
  std::uint64_t divisor() const { return divisor_; }                 // in [1, n]
  std::uint64_t generator() const { return divisor_ % mod_.n(); }    // residue
  std::uint64_t order() const { return mod_.n() / divisor_; }        // ideal size

  bool contains(std::uint64_t z) const { return (z % mod_.n()) % divisor_ == 0; }

  std::vector<std::uint64_t> elements() const {
    std::vector<std::uint64_t> out;
    out.reserve(order());
    for (std::uint64_t v = 0; v < mod_.n(); v += divisor_) out.push_back(v);
    return out;
  }

  friend bool operator==(const IdealZn& a, const IdealZn& b) {
    return a.mod_ == b.mod_ && a.divisor_ == b.divisor_;
  }
  friend bool operator!=(const IdealZn& a, const IdealZn& b) { return !(a == b); }

private:
  Modulus mod_;
  std::uint64_t divisor_;
};

/// ann((g)) = (n / g): the elements killing every element of the ideal.
inline IdealZn annihilator(const Modulus& mod, const IdealZn& i) {
  return IdealZn::from_divisor(mod, mod.n() / i.divisor());
}

inline bool double_annihilator_check(const Modulus& mod, const IdealZn& i) {
  return annihilator(mod, annihilator(mod, i)) == i;
}

inline bool is_nilpotent_element(const Modulus& mod, std::uint64_t x) {
  x %= mod.n();
  // Squaring to x^64 covers every nilpotence exponent at word scale.
  for (int i = 0; i < 6; ++i) x = mod.mul(x, x);
  return x == 0;
}

/// Default cutoffs below which predicates run their brute-force definitions
/// (with closed-form cross-checks); above, closed forms are used directly.
inline constexpr std::uint64_t kRegularBruteLimit = 2048;
inline constexpr std::uint64_t kElementBruteLimit = 1u << 20;

/// No nonzero nilpotents.  Brute force at small n, cross-checked against
/// squarefree(n); the two agree for every n.
inline bool nilpotence_criterion(const Modulus& mod, std::uint64_t brute_limit = kElementBruteLimit) {
  const bool closed = mod.squarefree();
  if (mod.n() <= brute_limit) {
    bool brute = true;
    for (std::uint64_t x = 1; x < mod.n() && brute; ++x)
      if (is_nilpotent_element(mod, x)) brute = false;
    if (brute != closed) throw std::logic_error("nilpotence_criterion: cross-check failed");
    return brute;
  }
  return closed;
}

/// ann(ann((x))) = (x) for every x.  Always true over Z/n; the check runs
/// the elementwise definition so the report reflects actual evaluation.
inline bool annihilator_criterion(const Modulus& mod, std::uint64_t brute_limit = kElementBruteLimit) {
  if (mod.n() <= brute_limit) {
    for (std::uint64_t x = 0; x < mod.n(); ++x) {
      const IdealZn ix(mod, x);
      if (!double_annihilator_check(mod, ix)) return false;
    }
    return true;
  }
  return true;
}

/// Von Neumann regularity: every x has a quasi-inverse y with x*y*x = x.
/// Decided by brute force at small n and cross-checked against squarefree(n).
inline bool is_regular(const Modulus& mod, std::uint64_t brute_limit = kRegularBruteLimit) {
  const bool closed = mod.squarefree();
  if (mod.n() <= brute_limit) {
    bool brute = true;
    for (std::uint64_t x = 0; x < mod.n() && brute; ++x) {
      bool has = false;
      for (std::uint64_t y = 0; y < mod.n() && !has; ++y)
        if (mod.mul(mod.mul(x, y), x) == x) has = true;
      brute = has;
    }
    if (brute != closed) throw std::logic_error("is_regular: cross-check failed");
    return brute;
  }
  return closed;
}

/// CRT decomposition Z/n = prod Z/(p^e) as the list of prime power moduli.
inline std::vector<std::uint64_t> crt_decompose(const Modulus& mod) {
  return mod.prime_power_factors();
}

/// If I = (g) is generated by an idempotent (iff gcd(g, n/g) = 1), return
/// the idempotent e with (e) = I; otherwise nothing.
inline std::optional<std::uint64_t> ideal_is_ring_summand(const Modulus& mod, const IdealZn& i) {
  const std::uint64_t d = i.divisor();
  const std::uint64_t m = mod.n() / d;
  if (std::gcd(d, m) != 1) return std::nullopt;
  // e = 0 mod d, e = 1 mod m.
  const std::uint64_t e = (d % mod.n()) == 0 ? 0 : mod.mul(d % mod.n(), inverse_mod(d % m, m));
  if (mod.mul(e, e) != e) throw std::logic_error("ideal_is_ring_summand: not idempotent");
  if (IdealZn(mod, e) != i) throw std::logic_error("ideal_is_ring_summand: wrong ideal");
  return e;
}

inline bool squarefree_u64(std::uint64_t v) {
  if (v < 4) return true;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p != 0) continue;
    v /= p;
    if (v % p == 0) return false;
  }
  return true;
}

enum class GhFailure { none, not_summand, quotient_not_regular };

struct RelativeGh {
  bool holds;
  GhFailure reason;
  std::optional<std::uint64_t> idempotent;
};

inline const char* gh_failure_name(GhFailure r) {
  switch (r) {
    case GhFailure::none: return "ok";
    case GhFailure::not_summand: return "not-summand";
    case GhFailure::quotient_not_regular: return "quotient-not-regular";
  }
  return "?";
}

/// The generating hypothesis holds relative to I = (g) iff I is a ring
/// summand (generated by an idempotent) and the quotient Z/g is regular
/// (g squarefree).  When it fails, report which leg failed, summand first.
inline RelativeGh relative_gh_predicate(const Modulus& mod, const IdealZn& i) {
  const auto e = ideal_is_ring_summand(mod, i);
  if (!e) return {false, GhFailure::not_summand, std::nullopt};
  if (!squarefree_u64(i.divisor())) return {false, GhFailure::quotient_not_regular, e};
  return {true, GhFailure::none, e};
}

struct RingReport {
  std::uint64_t n;
  bool regular;
  bool nilpotence;
  bool annihilator_ok;
  bool squarefree;
  std::vector<std::uint64_t> prime_power_factors;
  std::uint64_t nilradical_divisor;  // nilradical = (radical of n)
  std::string method;                // "brute_force" or "closed_form"
};

inline RingReport ring_report(const Modulus& mod, std::uint64_t brute_limit = kRegularBruteLimit) {
  RingReport r;
  r.n = mod.n();
  r.regular = is_regular(mod, brute_limit);
  r.nilpotence = nilpotence_criterion(mod, brute_limit);
  r.annihilator_ok = annihilator_criterion(mod, brute_limit);
  r.squarefree = mod.squarefree();
  r.prime_power_factors = mod.prime_power_factors();
  r.nilradical_divisor = mod.radical();  // = n exactly when the nilradical is (0)
  r.method = mod.n() <= brute_limit ? "brute_force" : "closed_form";
  return r;
}

}  // namespace dzn
