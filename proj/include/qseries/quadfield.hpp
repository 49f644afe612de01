#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "series.hpp"

namespace qseries {

/// The two real quadratic integer rings whose ideal counts this module
/// computes: Z[sqrt(2)] and Z[sqrt(3)]. Both have class number one, so ideals
/// of norm n biject with generator orbits under units.
enum class Ring { Sqrt2, Sqrt3 };

inline const char* to_string(Ring r) { return r == Ring::Sqrt2 ? "SQRT2" : "SQRT3"; }

inline Ring ring_from_string(const std::string& s) {
  if (s == "SQRT2" || s == "sqrt2") return Ring::Sqrt2;
  if (s == "SQRT3" || s == "sqrt3") return Ring::Sqrt3;
  throw std::invalid_argument("unknown ring: " + s);
}

enum class CountMethod { Enumerate, Multiplicative };

namespace detail {

inline long isqrt(long v) {
  if (v < 0) return -1;
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace detail

/// Number of ideals of norm n in Z[sqrt(2)], counted by enumerating one
/// generator u + v sqrt(2) per unit orbit: u >= 1, -u/2 < v <= u/2, with
/// u^2 - 2 v^2 = n.
inline long ideal_count_enumerated_sqrt2(long n) {
  if (n < 1) throw std::invalid_argument("ideal count: norm must be positive");
  long count = 0;
  for (long u = detail::isqrt(n - 1) + 1; u * u <= 2 * n; ++u) {
    long t = u * u - n;
    if (t % 2 != 0) continue;
    long v = detail::isqrt(t / 2);
    if (v < 0 || 2 * v * v != t) continue;
    if (v == 0)
      count += 1;
    else if (2 * v < u)
      count += 2;  // both +v and -v lie in the fundamental window
    else if (2 * v == u)
      count += 1;  // v = u/2 is inside, v = -u/2 is excluded
  }
  return count;
}

/// Same for Z[sqrt(3)]. Elements of positive norm live in u >= 1,
/// -u/3 < v <= u/3 with u^2 - 3 v^2 = n; elements of negative norm are
/// captured through n = 3 v^2 - u^2 with v >= 1, -v < u <= v.
inline long ideal_count_enumerated_sqrt3(long n) {
  if (n < 1) throw std::invalid_argument("ideal count: norm must be positive");
  long count = 0;
  for (long u = detail::isqrt(n - 1) + 1; 2 * u * u <= 3 * n; ++u) {
    long t = u * u - n;
    if (t % 3 != 0) continue;
    long v = detail::isqrt(t / 3);
    if (v < 0 || 3 * v * v != t) continue;
    if (v == 0)
      count += 1;
    else if (3 * v < u)
      count += 2;
    else if (3 * v == u)
      count += 1;
  }
  for (long v = 1; 2 * v * v <= n; ++v) {
    long t = 3 * v * v - n;
    if (t < 0) continue;
    long u = detail::isqrt(t);
    if (u * u != t) continue;
    if (u == 0 || u == v)
      count += 1;
    else if (u < v)
      count += 2;
  }
  return count;
}

inline long ideal_count_enumerated(Ring r, long n) {
  return r == Ring::Sqrt2 ? ideal_count_enumerated_sqrt2(n) : ideal_count_enumerated_sqrt3(n);
}

/// Ideal count through the splitting of rational primes: multiply the local
/// factors a(p^l) read off from how p behaves in the ring.
inline long ideal_count_multiplicative(Ring r, long n) {
  if (n < 1) throw std::invalid_argument("ideal count: norm must be positive");
  long total = 1;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    long l = 0;
    while (m % p == 0) {
      m /= p;
      ++l;
    }
    long local;
    if (r == Ring::Sqrt2) {
      long res = p % 8;
      if (p == 2)
        local = 1;  // ramified
      else if (res == 1 || res == 7)
        local = l + 1;  // split
      else
        local = (l % 2 == 0) ? 1 : 0;  // inert
    } else {
      long res = p % 12;
      if (p == 2 || p == 3)
        local = 1;
      else if (res == 1 || res == 11)
        local = l + 1;
      else
        local = (l % 2 == 0) ? 1 : 0;
    }
    total *= local;
    if (total == 0) return 0;
  }
  if (m > 1) {
    // Remaining prime factor > sqrt(n), exponent 1.
    long p = m;
    long local;
    if (r == Ring::Sqrt2) {
      long res = p % 8;
      local = (p == 2) ? 1 : (res == 1 || res == 7) ? 2 : 0;
    } else {
      long res = p % 12;
      local = (p == 2 || p == 3) ? 1 : (res == 1 || res == 11) ? 2 : 0;
    }
    total *= local;
  }
  return total;
}

inline long ideal_count(Ring r, long n, CountMethod m) {
  return m == CountMethod::Enumerate ? ideal_count_enumerated(r, n)
                                     : ideal_count_multiplicative(r, n);
}

/// Kronecker symbol (-4 | n): 0 for even n, +1 for n = 1 mod 4, -1 for n = 3 mod 4.
inline int kronecker_minus4(long n) {
  if (n % 2 == 0) return 0;
  return n % 4 == 1 ? 1 : -1;
}

/// Weight attached to an ideal of norm n in a theta series. `base` picks the
/// multiplier; an optional congruence filter keeps only n = res mod mod.
/// NegPowHalfNorm means (-1)^{n/2} and is only well defined when the filter
/// forces n even, which requires mod and res both even.
enum class WeightBase { One, KroneckerM4, NegPowNorm, NegPowHalfNorm };

struct IdealWeight {
  WeightBase base = WeightBase::One;
  bool has_filter = false;
  long mod = 0;
  long res = 0;

  static IdealWeight plain() { return {}; }

  static IdealWeight filtered(long mod, long res) {
    return {WeightBase::One, true, mod, res};
  }

  static IdealWeight with_base(WeightBase b) { return {b, false, 0, 0}; }

  static IdealWeight filtered_base(WeightBase b, long mod, long res) {
    return {b, true, mod, res};
  }

  void validate() const {
    if (has_filter && (mod < 1 || res < 0 || res >= mod))
      throw std::invalid_argument("IdealWeight: filter requires 0 <= res < mod");
    if (base == WeightBase::NegPowHalfNorm) {
      if (!has_filter || mod % 2 != 0 || res % 2 != 0)
        throw std::invalid_argument(
            "IdealWeight: half-norm parity weight needs an even congruence filter");
    }
  }

  /// Multiplier applied to the count at norm n; 0 when filtered out.
  int factor(long n) const {
    if (has_filter && n % mod != res) return 0;
    switch (base) {
      case WeightBase::One: return 1;
      case WeightBase::KroneckerM4: return kronecker_minus4(n);
      case WeightBase::NegPowNorm: return n % 2 == 0 ? 1 : -1;
      case WeightBase::NegPowHalfNorm: return (n / 2) % 2 == 0 ? 1 : -1;
    }
    throw std::logic_error("IdealWeight: unknown base");
  }
};

/// Weighted ideal-count theta series sum_{n>=1} w(n) a(n) q^n. The unit ideal
/// (norm 1) is included; the constant term is zero.
inline Series ideal_theta(Ring r, const IdealWeight& w, long order, CountMethod method) {
  w.validate();
  Series s(order);
  for (long n = 1; n <= order; ++n) {
    int f = w.factor(n);
    if (f == 0) continue;
    long c = ideal_count(r, n, method);
    if (c != 0) s.set_coeff(n, Int(f) * c);
  }
  return s;
}

}  // namespace qseries
