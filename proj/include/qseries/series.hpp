#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qseries {

/// Exact integer coefficient type. Arbitrary precision: inverse products at
/// order 10^4 carry partition-sized values far beyond 64 bits.
using Int = boost::multiprecision::cpp_int;

/// Sentinel for an unbounded product length.
inline constexpr long kInfinity = std::numeric_limits<long>::max();

/// Truncated formal power series in q with exact integer coefficients.
///
/// A Series of order N stores c_0..c_N and represents sum c_k q^k + O(q^{N+1}).
/// All binary operations require both operands to carry the same order; mixing
/// orders is a caller bug and throws.
class Series {
 public:
  explicit Series(long order) : order_(check_order(order)), c_(order + 1) {}

  static Series constant(long order, Int c0) {
    Series s(order);
    s.c_[0] = std::move(c0);
    return s;
  }

  static Series one(long order) { return constant(order, 1); }

  /// c * q^e, truncated away entirely when e exceeds the order.
  static Series monomial(long order, long e, Int c = 1) {
    Series s(order);
    if (e < 0) throw std::invalid_argument("monomial: negative exponent");
    if (e <= order) s.c_[e] = std::move(c);
    return s;
  }

  long order() const { return order_; }

  const Int& coeff(long k) const {
    if (k < 0 || k > order_) throw std::out_of_range("coeff: index outside truncation order");
    return c_[static_cast<size_t>(k)];
  }

  void set_coeff(long k, Int v) {
    if (k < 0 || k > order_) throw std::out_of_range("set_coeff: index outside truncation order");
    c_[static_cast<size_t>(k)] = std::move(v);
  }

  void add_at(long k, const Int& v) {
    if (k < 0 || k > order_) throw std::out_of_range("add_at: index outside truncation order");
    c_[static_cast<size_t>(k)] += v;
  }

  bool is_zero() const {
    for (const Int& v : c_)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.order_ == b.order_ && a.c_ == b.c_;
  }

  /// Smallest index where the two series differ, if any. Orders must match.
  static std::optional<long> first_mismatch(const Series& a, const Series& b) {
    require_same_order(a, b);
    for (long k = 0; k <= a.order_; ++k)
      if (a.c_[static_cast<size_t>(k)] != b.c_[static_cast<size_t>(k)]) return k;
    return std::nullopt;
  }

  friend Series operator+(const Series& a, const Series& b) {
    require_same_order(a, b);
    Series r(a.order_);
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }

  friend Series operator-(const Series& a, const Series& b) {
    require_same_order(a, b);
    Series r(a.order_);
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }

  friend Series operator-(const Series& a) {
    Series r(a.order_);
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = -a.c_[k];
    return r;
  }

  Series& operator+=(const Series& b) {
    require_same_order(*this, b);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
    return *this;
  }

  Series& operator-=(const Series& b) {
    require_same_order(*this, b);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= b.c_[k];
    return *this;
  }

  void scale(const Int& f) {
    for (Int& v : c_) v *= f;
  }

  /// Exact division of every coefficient by d; throws if any remainder is nonzero.
  void divide_exact(const Int& d) {
    if (d == 0) throw std::invalid_argument("divide_exact: zero divisor");
    for (Int& v : c_) {
      Int quo = v / d;
      if (quo * d != v) throw std::domain_error("divide_exact: inexact coefficient division");
      v = std::move(quo);
    }
  }

  /// Cauchy product truncated at the common order. Skips zero rows, which makes
  /// products with sparse theta-style factors close to linear in practice.
  friend Series operator*(const Series& a, const Series& b) {
    require_same_order(a, b);
    Series r(a.order_);
    for (long i = 0; i <= a.order_; ++i) {
      const Int& ai = a.c_[static_cast<size_t>(i)];
      if (ai == 0) continue;
      for (long j = 0; j + i <= a.order_; ++j) {
        const Int& bj = b.c_[static_cast<size_t>(j)];
        if (bj == 0) continue;
        r.c_[static_cast<size_t>(i + j)] += ai * bj;
      }
    }
    return r;
  }

  /// Multiply by q^k (k >= 0), dropping coefficients pushed past the order.
  Series shifted(long k) const {
    if (k < 0) throw std::invalid_argument("shifted: negative shift");
    Series r(order_);
    for (long m = order_; m >= k; --m) r.c_[static_cast<size_t>(m)] = c_[static_cast<size_t>(m - k)];
    return r;
  }

  /// q -> q^m with m >= 1, re-truncated at new_order.
  Series substitute_power(long m, long new_order) const {
    if (m < 1) throw std::invalid_argument("substitute_power: exponent multiplier must be positive");
    Series r(new_order);
    for (long k = 0; k <= order_ && k * m <= new_order; ++k)
      r.c_[static_cast<size_t>(k * m)] = c_[static_cast<size_t>(k)];
    return r;
  }

  /// Truncate down to a smaller order.
  Series truncated(long new_order) const {
    if (new_order > order_) throw std::invalid_argument("truncated: cannot extend order");
    Series r(new_order);
    for (long k = 0; k <= new_order; ++k) r.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
    return r;
  }

  /// Multiplicative inverse; requires constant term +1 or -1.
  Series inverse() const {
    if (c_[0] != 1 && c_[0] != -1)
      throw std::domain_error("inverse: constant term must be a unit (+1 or -1)");
    Series r(order_);
    const Int& u = c_[0];
    r.c_[0] = u;  // 1/u == u for u = +-1
    for (long m = 1; m <= order_; ++m) {
      Int acc = 0;
      for (long k = 1; k <= m; ++k) {
        const Int& ck = c_[static_cast<size_t>(k)];
        if (ck == 0) continue;
        acc += ck * r.c_[static_cast<size_t>(m - k)];
      }
      r.c_[static_cast<size_t>(m)] = -u * acc;
    }
    return r;
  }

  /// In-place multiply by the binomial 1 + t q^e with e >= 1.
  /// Descending update keeps it O(order) and allocation free. `upto` bounds the
  /// highest index that later reads will touch; -1 means the full order.
  void mul_binomial(const Int& t, long e, long upto = -1) {
    if (e < 1) throw std::invalid_argument("mul_binomial: exponent must be >= 1");
    long hi = (upto < 0 || upto > order_) ? order_ : upto;
    if (e > hi || t == 0) return;
    for (long m = hi; m >= e; --m) c_[static_cast<size_t>(m)] += t * c_[static_cast<size_t>(m - e)];
  }

  /// In-place exact division by the binomial 1 + t q^e with e >= 1 (ascending
  /// recurrence r[m] = c[m] - t r[m-e]).
  void div_binomial(const Int& t, long e, long upto = -1) {
    if (e < 1) throw std::invalid_argument("div_binomial: exponent must be >= 1");
    long hi = (upto < 0 || upto > order_) ? order_ : upto;
    if (e > hi || t == 0) return;
    for (long m = e; m <= hi; ++m) c_[static_cast<size_t>(m)] -= t * c_[static_cast<size_t>(m - e)];
  }

  /// this += sgn * src shifted by k. Orders must match.
  void add_shifted(const Series& src, long k, int sgn = 1) {
    require_same_order(*this, src);
    if (k < 0) throw std::invalid_argument("add_shifted: negative shift");
    for (long m = k; m <= order_; ++m) {
      const Int& v = src.c_[static_cast<size_t>(m - k)];
      if (v == 0) continue;
      if (sgn >= 0)
        c_[static_cast<size_t>(m)] += v;
      else
        c_[static_cast<size_t>(m)] -= v;
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["order"] = order_;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Int& v : c_) arr.push_back(v.str());
    j["coeffs"] = std::move(arr);
    return j;
  }

  static Series from_json(const nlohmann::json& j) {
    long order = j.at("order").get<long>();
    const auto& arr = j.at("coeffs");
    if (!arr.is_array() || static_cast<long>(arr.size()) != order + 1)
      throw std::invalid_argument("Series::from_json: coeff count does not match order");
    Series s(order);
    for (long k = 0; k <= order; ++k)
      s.c_[static_cast<size_t>(k)] = Int(arr[static_cast<size_t>(k)].get<std::string>());
    return s;
  }

 private:
  static long check_order(long order) {
    if (order < 0) throw std::invalid_argument("Series: negative order");
    return order;
  }

  static void require_same_order(const Series& a, const Series& b) {
    if (a.order_ != b.order_) throw std::invalid_argument("series order mismatch");
  }

  long order_;
  std::vector<Int> c_;
};

/// A monomial +-q^e, the shape every specialization parameter takes. `inf`
/// marks the formal limit where the parameter is sent to infinity.
struct SignedQPower {
  int sign = 1;
  long exp = 0;
  bool inf = false;

  static SignedQPower infinity() { return {1, 0, true}; }

  bool is_one() const { return !inf && sign == 1 && exp == 0; }

  friend SignedQPower operator*(const SignedQPower& a, const SignedQPower& b) {
    if (a.inf || b.inf) throw std::domain_error("SignedQPower: product with an infinite parameter");
    return {a.sign * b.sign, a.exp + b.exp, false};
  }

  /// Quotient a/b as a formal monomial; exponent may come out negative, which
  /// callers must validate against their own preconditions.
  friend SignedQPower operator/(const SignedQPower& a, const SignedQPower& b) {
    if (a.inf || b.inf) throw std::domain_error("SignedQPower: quotient with an infinite parameter");
    return {a.sign * b.sign, a.exp - b.exp, false};
  }
};

/// q-Pochhammer (s q^a; q^d)_n truncated at `order`. Finite n needs a >= 0;
/// the infinite product additionally needs a >= 1 so it converges formally.
/// (+1) q^0 with n >= 1 has a vanishing leading factor and is rejected.
inline Series pochhammer(int sign, long a, long d, long n, long order) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("pochhammer: sign must be +-1");
  if (a < 0) throw std::invalid_argument("pochhammer: negative base exponent");
  if (d < 1) throw std::invalid_argument("pochhammer: step must be >= 1");
  if (n < 0) throw std::invalid_argument("pochhammer: negative length");
  Series r = Series::one(order);
  if (n == 0) return r;
  if (n == kInfinity) {
    if (a < 1) throw std::domain_error("pochhammer: infinite product requires exponent >= 1");
    for (long e = a; e <= order; e += d) r.mul_binomial(-sign, e);
    return r;
  }
  if (sign == 1 && a == 0) throw std::domain_error("pochhammer: vanishing factor (1 - q^0)");
  // (1 - s q^{a+id}) == (1 + t q^e) with t = -s; factors past the order are
  // invisible at this truncation. a == 0 only reaches here with sign == -1,
  // where the i = 0 factor is the constant 2.
  long i0 = 0;
  if (a == 0) {
    r.scale(2);
    i0 = 1;
  }
  for (long i = i0; i < n; ++i) {
    long e = a + i * d;
    if (e > order) break;
    r.mul_binomial(-sign, e);
  }
  return r;
}

/// 1 / (s q^a; q^d)_n, same preconditions as pochhammer plus invertibility of
/// the constant term (which rules out a == 0 with sign == -1: constant 2).
inline Series pochhammer_inverse(int sign, long a, long d, long n, long order) {
  if (sign == -1 && a == 0)
    throw std::domain_error("pochhammer_inverse: constant term 2 is not invertible");
  if (sign != 1 && sign != -1) throw std::invalid_argument("pochhammer_inverse: sign must be +-1");
  if (a < 0) throw std::invalid_argument("pochhammer_inverse: negative base exponent");
  if (d < 1) throw std::invalid_argument("pochhammer_inverse: step must be >= 1");
  if (n < 0) throw std::invalid_argument("pochhammer_inverse: negative length");
  Series r = Series::one(order);
  if (n == 0) return r;
  if (n == kInfinity) {
    if (a < 1) throw std::domain_error("pochhammer_inverse: infinite product requires exponent >= 1");
    for (long e = a; e <= order; e += d) r.div_binomial(-sign, e);
    return r;
  }
  if (sign == 1 && a == 0) throw std::domain_error("pochhammer_inverse: vanishing factor (1 - q^0)");
  for (long i = 0; i < n; ++i) {
    long e = a + i * d;
    if (e > order) break;
    r.div_binomial(-sign, e);
  }
  return r;
}

/// Convenience wrappers over SignedQPower parameters.
inline Series pochhammer(const SignedQPower& x, long d, long n, long order) {
  if (x.inf) throw std::invalid_argument("pochhammer: infinite parameter has no direct product");
  return pochhammer(x.sign, x.exp, d, n, order);
}

inline Series pochhammer_inverse(const SignedQPower& x, long d, long n, long order) {
  if (x.inf) throw std::invalid_argument("pochhammer_inverse: infinite parameter");
  return pochhammer_inverse(x.sign, x.exp, d, n, order);
}

/// Gaussian binomial [n choose j]_q, a polynomial of degree j(n-j). Computed by
/// exact stepwise division of (q;q)_n by the factors of (q;q)_j (q;q)_{n-j};
/// every intermediate stays polynomial, and the final zero tail past degree
/// j(n-j) is asserted rather than assumed.
inline Series gaussian_binomial(long n, long j, long order) {
  if (n < 0 || j < 0) throw std::invalid_argument("gaussian_binomial: negative argument");
  if (j > n) throw std::invalid_argument("gaussian_binomial: lower index exceeds upper");
  long deg = j * (n - j);
  long work = std::max(order, deg);
  Series r = pochhammer(+1, 1, 1, n, work);
  for (long i = 1; i <= j; ++i) r.div_binomial(-1, i);
  for (long i = 1; i <= n - j; ++i) r.div_binomial(-1, i);
  for (long m = deg + 1; m <= work; ++m)
    if (r.coeff(m) != 0) throw std::logic_error("gaussian_binomial: nonzero remainder past expected degree");
  return work == order ? r : r.truncated(order);
}

}  // namespace qseries
