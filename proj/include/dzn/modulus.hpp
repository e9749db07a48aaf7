#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dzn {

/// Residue arithmetic mod n with a cached prime factorization.
/// Moduli are machine-word sized; everything here is desk scale.
class Modulus {
public:
  explicit Modulus(std::uint64_t n) : n_(n) {
    if (n < 2) throw std::invalid_argument("modulus must be at least 2");
    if (n > 0xFFFFFFFFull) throw std::invalid_argument("modulus must fit in 32 bits");
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
      if (m % p != 0) continue;
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      factors_.emplace_back(p, e);
    }
    if (m > 1) factors_.emplace_back(m, 1);
  }

  std::uint64_t n() const { return n_; }

  const std::vector<std::pair<std::uint64_t, int>>& prime_factorization() const {
    return factors_;
  }

  bool squarefree() const {
    for (const auto& [p, e] : factors_)
      if (e > 1) return false;
    return true;
  }

  /// Pairwise coprime prime powers p^e with product n.
  std::vector<std::uint64_t> prime_power_factors() const {
    std::vector<std::uint64_t> out;
    for (const auto& [p, e] : factors_) {
      std::uint64_t q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      out.push_back(q);
    }
    return out;
  }

  /// Product of the distinct primes dividing n; generates the nilradical.
  std::uint64_t radical() const {
    std::uint64_t r = 1;
    for (const auto& [p, e] : factors_) r *= p;
    return r;
  }

  /// Smallest prime p with p^2 | n, or 0 when n is squarefree.
  std::uint64_t smallest_squared_prime() const {
    for (const auto& [p, e] : factors_)
      if (e > 1) return p;
    return 0;
  }

  std::uint64_t reduce(std::int64_t v) const {
    const auto m = static_cast<std::int64_t>(n_);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + (n_ - b);
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % n_; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : n_ - a; }

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.n_ == b.n_; }
  friend bool operator!=(const Modulus& a, const Modulus& b) { return a.n_ != b.n_; }

private:
  std::uint64_t n_;
  std::vector<std::pair<std::uint64_t, int>> factors_;
};

/// Extended gcd: g = gcd(a, b) with s*a + t*b = g (inputs nonnegative, not both zero).
struct Xgcd {
  std::int64_t g;
  std::int64_t s;
  std::int64_t t;
};

inline Xgcd xgcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = r;
    r = old_r - q * r;
    old_r = tmp;
    tmp = s;
    s = old_s - q * s;
    old_s = tmp;
    tmp = t;
    t = old_t - q * t;
    old_t = tmp;
  }
  return {old_r, old_s, old_t};
}

/// Inverse of a mod m, for gcd(a, m) = 1 and m >= 1.
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  auto [g, s, t] = xgcd(static_cast<std::int64_t>(a % m), static_cast<std::int64_t>(m));
  if (g != 1) throw std::invalid_argument("inverse_mod: not a unit");
  std::int64_t r = s % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r);
}

/// A unit u mod n with u*a = gcd(a, n) mod n.  Every residue of Z/n is
/// associate to the divisor gcd(a, n); this computes the witnessing unit.
inline std::uint64_t associate_unit(std::uint64_t a, std::uint64_t n) {
  a %= n;
  if (a == 0) return 1;
  const std::uint64_t g = std::gcd(a, n);
  const std::uint64_t a1 = a / g;
  const std::uint64_t n1 = n / g;
  // gcd(a1, n1) = 1; lift the inverse of a1 mod n1 to a unit mod n.
  std::uint64_t u = inverse_mod(a1, n1);
  if (u == 0) u = 1;  // n1 == 1 cannot happen for a != 0, but keep u a residue
  for (std::uint64_t k = 0; k <= g; ++k) {
    std::uint64_t cand = (u + k * n1) % n;
    if (cand != 0 && std::gcd(cand, n) == 1) return cand;
  }
  throw std::logic_error("associate_unit: no unit lift found");
}

}  // namespace dzn
