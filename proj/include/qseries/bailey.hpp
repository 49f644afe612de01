#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "series.hpp"

namespace qseries {

namespace detail {

inline int parity_pow(int s, long k) { return (s == 1 || k % 2 == 0) ? 1 : -1; }

/// Multiply in place by (1 - s q^e). e == 0 makes the factor a constant:
/// 2 for s == -1, 0 for s == +1.
inline void apply_factor(Series& x, int s, long e, long w = -1) {
  if (e < 0) throw std::domain_error("product factor with negative exponent");
  if (e > 0) {
    x.mul_binomial(-s, e, w);
    return;
  }
  if (s == -1)
    x.scale(2);
  else
    x = Series(x.order());
}

/// Divide in place by (1 - s q^e); the factor must be a unit, so e >= 1.
inline void apply_divisor(Series& x, int s, long e, long w = -1) {
  if (e < 1) throw std::domain_error("Pochhammer quotient divides by a non-unit factor");
  x.div_binomial(-s, e, w);
}

}  // namespace detail

/// A Bailey pair relative to parameter `a` in base q^step: sequences
/// alpha_n, beta_n of formal series tied together by
///
///   beta_n = sum_{r=0}^n alpha_r / ((q^d; q^d)_{n-r} (a q^d; q^d)_{n+r}).
///
/// alpha_min_order gives a monotone lower bound on the q-order of alpha_n so
/// summation drivers can skip terms past the truncation; beta_ratio, when set,
/// multiplies a running product by beta_n / beta_{n-1} (valid from
/// beta_ratio_from on) so drivers can avoid one full product per index.
struct BaileyPair {
  std::string name;
  SignedQPower a;
  long step = 1;
  std::function<Series(long, long)> alpha;
  std::function<Series(long, long)> beta;
  std::function<long(long)> alpha_min_order;
  std::function<void(Series&, long, long)> beta_ratio;
  long beta_ratio_from = 0;

  long min_order(long n) const { return alpha_min_order ? alpha_min_order(n) : 0; }
};

/// Unit-parameter pair whose beta is (-1)^n (q; q^2)_{n-1} / (q; q)_{2n-1}
/// and whose alpha packages two finite theta-like sums per parity.
inline BaileyPair pair_new_a1() {
  BaileyPair p;
  p.name = "NEW_A1";
  p.a = SignedQPower{1, 0, false};
  p.step = 1;
  p.beta = [](long n, long N) {
    if (n == 0) return Series(N);
    Series t = pochhammer(+1, 1, 2, n - 1, N) * pochhammer_inverse(+1, 1, 1, 2 * n - 1, N);
    if (n % 2 != 0) t.scale(-1);
    return t;
  };
  p.beta_ratio = [](Series& t, long n, long w) {
    detail::apply_factor(t, +1, 2 * n - 3, w);
    t.scale(-1);
    detail::apply_divisor(t, +1, 2 * n - 2, w);
    detail::apply_divisor(t, +1, 2 * n - 1, w);
  };
  p.beta_ratio_from = 2;
  p.alpha = [](long n, long N) {
    Series t(N);
    if (n == 0) return t;
    if (n % 2 == 0) {
      long m = n / 2;
      for (long j = -m; j <= m - 1; ++j) {
        long e = 2 * (m * (m - 1) - j * (j + 1));
        if (e <= N) t.add_at(e, 1);
      }
      t.mul_binomial(-1, 4 * m);
    } else {
      long m = n / 2;
      for (long j = -m; j <= m; ++j) {
        long e = 2 * (m * m - j * j);
        if (e <= N) t.add_at(e, -1);
      }
      t.mul_binomial(-1, 4 * m + 2);
    }
    return t;
  };
  return p;
}

/// Pair at a = q: beta_n = (-1)^n (q; q^2)_n / (q; q)_{2n+1}, alpha_n a
/// two-block theta polynomial divided by (1 - q).
inline BaileyPair pair_new_aq() {
  BaileyPair p;
  p.name = "NEW_AQ";
  p.a = SignedQPower{1, 1, false};
  p.step = 1;
  p.beta = [](long n, long N) {
    Series t = pochhammer(+1, 1, 2, n, N) * pochhammer_inverse(+1, 1, 1, 2 * n + 1, N);
    if (n % 2 != 0) t.scale(-1);
    return t;
  };
  p.beta_ratio = [](Series& t, long n, long w) {
    detail::apply_factor(t, +1, 2 * n - 1, w);
    t.scale(-1);
    detail::apply_divisor(t, +1, 2 * n, w);
    detail::apply_divisor(t, +1, 2 * n + 1, w);
  };
  p.beta_ratio_from = 1;
  p.alpha = [](long n, long N) {
    Series t(N);
    long m = n / 2;
    if (n % 2 == 0) {
      for (long j = -m; j <= m - 1; ++j) {
        long e = 2 * (m * (m + 1) - j * (j + 1));
        if (e <= N) t.add_at(e, 1);
      }
      for (long j = -m; j <= m; ++j) {
        long e = 2 * (m * m - j * j);
        if (e <= N) t.add_at(e, 1);
      }
    } else {
      for (long j = -m; j <= m; ++j) {
        long e = 2 * (m * (m + 2) - j * j) + 2;
        if (e <= N) t.add_at(e, -1);
      }
      for (long j = -m - 1; j <= m; ++j) {
        long e = 2 * (m * (m + 1) - j * (j + 1));
        if (e <= N) t.add_at(e, -1);
      }
    }
    t.div_binomial(-1, 1);  // every alpha_n carries 1 / (1 - q)
    return t;
  };
  return p;
}

/// Unit-parameter pair in base q^step whose beta is
/// (Q; Q)_{n-1} / (Q; Q)_{2n-1} with Q = q^step.
inline BaileyPair pair_lemma12(long step) {
  if (step < 1) throw std::invalid_argument("pair_lemma12: step must be >= 1");
  BaileyPair p;
  p.name = step == 1 ? "LEMMA12_D1" : (step == 2 ? "LEMMA12_D2" : "LEMMA12_D" + std::to_string(step));
  p.a = SignedQPower{1, 0, false};
  p.step = step;
  p.beta = [step](long n, long N) {
    if (n == 0) return Series(N);
    return pochhammer(+1, step, step, n - 1, N) *
           pochhammer_inverse(+1, step, step, 2 * n - 1, N);
  };
  p.beta_ratio = [step](Series& t, long n, long w) {
    detail::apply_factor(t, +1, step * (n - 1), w);
    detail::apply_divisor(t, +1, step * (2 * n - 2), w);
    detail::apply_divisor(t, +1, step * (2 * n - 1), w);
  };
  p.beta_ratio_from = 2;
  p.alpha = [step](long n, long N) {
    Series t(N);
    if (n == 0) return t;
    long m = n / 2;
    if (n % 2 == 0) {
      for (long j = -m; j <= m - 1; ++j) {
        long e = step * (3 * m * m - 2 * m - j * j - j);
        if (e <= N) t.add_at(e, -1);
      }
      t.mul_binomial(-1, step * 4 * m);
    } else {
      for (long j = -m; j <= m; ++j) {
        long e = step * (3 * m * m + m - j * j);
        if (e <= N) t.add_at(e, 1);
      }
      t.mul_binomial(-1, step * (4 * m + 2));
    }
    return t;
  };
  p.alpha_min_order = [step](long n) { return step * n * (n - 1) / 2; };
  return p;
}

/// Specialized pair with beta_n = 1 / ((b q^d; q^d)_n (c q^d; q^d)_n) and the
/// matching alpha from inverting the pair relation. The inner sum is written
/// against a common normalization so every exponent is nonnegative; its j = 0
/// term is 1 by the (a; q^d)_{-1} convention. alpha_n has q-order at least
/// d n (n+1) / 2.
inline BaileyPair pair_ah(long d, SignedQPower b, SignedQPower c, SignedQPower a) {
  if (d < 1) throw std::invalid_argument("pair_ah: step must be >= 1");
  if (a.inf || b.inf || c.inf) throw std::invalid_argument("pair_ah: parameters must be finite");
  if (a.exp < 1)
    throw std::invalid_argument("pair_ah: parameter a must have positive q-order");
  SignedQPower ab = a / b;
  SignedQPower ac = a / c;
  if (ab.exp < 1 || ac.exp < 1)
    throw std::invalid_argument("pair_ah: a/b and a/c must have positive q-order");

  BaileyPair p;
  p.name = "AH";
  p.a = a;
  p.step = d;
  p.beta = [d, b, c](long n, long N) {
    Series t = Series::one(N);
    for (long i = 0; i < n; ++i) {
      detail::apply_divisor(t, b.sign, b.exp + d + d * i);
      detail::apply_divisor(t, c.sign, c.exp + d + d * i);
    }
    return t;
  };
  p.beta_ratio = [d, b, c](Series& t, long n, long w) {
    detail::apply_divisor(t, b.sign, b.exp + d * n, w);
    detail::apply_divisor(t, c.sign, c.exp + d * n, w);
  };
  p.beta_ratio_from = 1;
  p.alpha = [d, b, c, a, ab, ac](long n, long N) {
    Series outer = Series::one(N);
    outer.mul_binomial(-a.sign, a.exp + 2 * d * n);
    detail::apply_divisor(outer, a.sign, a.exp);
    for (long i = 0; i < n; ++i) {
      detail::apply_factor(outer, ab.sign, ab.exp + d * i);
      detail::apply_factor(outer, ac.sign, ac.exp + d * i);
      detail::apply_divisor(outer, b.sign, b.exp + d + d * i);
      detail::apply_divisor(outer, c.sign, c.exp + d + d * i);
    }
    Series run = Series::one(N);
    Series total(N);
    long ebc = b.exp + c.exp;
    int sbc = b.sign * c.sign;
    for (long j = 0; j <= n; ++j) {
      if (j >= 1) {
        detail::apply_factor(run, b.sign, b.exp + d * (j - 1));
        detail::apply_factor(run, c.sign, c.exp + d * (j - 1));
        if (j >= 2) detail::apply_factor(run, a.sign, a.exp + d * (j - 2));
        detail::apply_divisor(run, +1, d * j);
        detail::apply_divisor(run, ab.sign, ab.exp + d * (j - 1));
        detail::apply_divisor(run, ac.sign, ac.exp + d * (j - 1));
      }
      long shift = d * n * n - d * j * (j - 1) / 2 + (n - j) * ebc;
      if (shift > N) continue;
      int sgn = (j % 2 == 0 ? 1 : -1) * detail::parity_pow(sbc, n - j);
      if (j == 0) {
        total.add_shifted(run, shift, sgn);
      } else {
        Series term = run;
        term.mul_binomial(-a.sign, a.exp + d * (2 * j - 1));
        total.add_shifted(term, shift, sgn);
      }
    }
    return outer * total;
  };
  p.alpha_min_order = [d](long n) { return d * n * (n + 1) / 2; };
  return p;
}

/// The eight pairs driving the verification chains, under stable names so
/// they can be looked up from the command line and test drivers.
inline std::vector<BaileyPair> standard_pairs() {
  std::vector<BaileyPair> out;
  out.push_back(pair_new_a1());
  out.push_back(pair_new_aq());
  out.push_back(pair_lemma12(1));
  out.push_back(pair_lemma12(2));
  auto add_ah = [&out](const char* name, long d, SignedQPower b, SignedQPower c,
                       SignedQPower a) {
    BaileyPair p = pair_ah(d, b, c, a);
    p.name = name;
    out.push_back(std::move(p));
  };
  add_ah("AH_F3", 2, {-1, 1, false}, {-1, 0, false}, {1, 2, false});
  add_ah("AH_F4", 2, {-1, 1, false}, {-1, 2, false}, {1, 4, false});
  add_ah("AH_F5X", 2, {1, 1, false}, {-1, 1, false}, {1, 2, false});
  add_ah("AH_F7", 2, {-1, 0, false}, {-1, 1, false}, {1, 2, false});
  return out;
}

/// Right side of the defining pair relation at index n, assembled from alpha.
inline Series pair_relation_rhs(const BaileyPair& p, long n, long order) {
  Series sum(order);
  for (long r = 0; r <= n; ++r) {
    Series t = p.alpha(r, order);
    if (t.is_zero()) continue;
    t = t * pochhammer_inverse(+1, p.step, p.step, n - r, order);
    t = t * pochhammer_inverse(p.a.sign, p.a.exp + p.step, p.step, n + r, order);
    sum += t;
  }
  return sum;
}

struct PairRelationReport {
  bool ok = true;
  long first_bad_n = -1;
  long mismatch_order = -1;
};

/// Check beta_n against the alpha side for all n <= n_max at the given order.
/// Each alpha_r is evaluated once and reused across every n >= r.
inline PairRelationReport verify_pair_relation(const BaileyPair& p, long n_max, long order) {
  std::vector<Series> alphas;
  alphas.reserve(static_cast<size_t>(n_max) + 1);
  for (long r = 0; r <= n_max; ++r) alphas.push_back(p.alpha(r, order));
  for (long n = 0; n <= n_max; ++n) {
    Series rhs(order);
    for (long r = 0; r <= n; ++r) {
      if (alphas[r].is_zero()) continue;
      Series t = alphas[r] * pochhammer_inverse(+1, p.step, p.step, n - r, order);
      t = t * pochhammer_inverse(p.a.sign, p.a.exp + p.step, p.step, n + r, order);
      rhs += t;
    }
    Series lhs = p.beta(n, order);
    if (auto m = Series::first_mismatch(lhs, rhs)) return {false, n, *m};
  }
  return {};
}

/// Recover alpha_0..alpha_{n_max} from beta by the inversion formula
///   alpha_n = (1 - a q^{2dn}) sum_{j<=n} (a q^d; q^d)_{n+j-1} (-1)^{n-j}
///             q^{d binom(n-j, 2)} beta_j / (q^d; q^d)_{n-j},
/// with alpha_0 = beta_0.
inline std::vector<Series> bailey_invert(const BaileyPair& p, long n_max, long order) {
  std::vector<Series> out;
  out.reserve(static_cast<size_t>(n_max) + 1);
  out.push_back(p.beta(0, order));
  for (long n = 1; n <= n_max; ++n) {
    Series acc(order);
    for (long j = 0; j <= n; ++j) {
      long k = n - j;
      long e = p.step * k * (k - 1) / 2;
      if (e > order) continue;
      Series t = p.beta(j, order);
      if (t.is_zero()) continue;
      t = t * pochhammer(p.a.sign, p.a.exp + p.step, p.step, n + j - 1, order);
      t = t * pochhammer_inverse(+1, p.step, p.step, n - j, order);
      acc.add_shifted(t, e, k % 2 == 0 ? 1 : -1);
    }
    acc.mul_binomial(-p.a.sign, p.a.exp + 2 * p.step * n);
    out.push_back(std::move(acc));
  }
  return out;
}

/// Both sides of the weighted lemma attached to a pair, specialized at rho1,
/// rho2 (finite monomials or the infinite limit):
///
///   alpha side: sum_n w_n alpha_n with
///     w_n = (rho1, rho2; q^d)_n / ((a q^d / rho1, a q^d / rho2; q^d)_n) P^n,
///   beta side:  prefactor * sum_n (rho1, rho2; q^d)_n P^n beta_n,
///
/// where P = a q^d / (rho1 rho2). An infinite rho contributes the limit
/// (-1)^n q^{d n (n-1)/2} in place of (rho)_n / rho^n and drops out of the
/// other factors. Identity of the two sides is the lemma being verified.
struct LemmaSides {
  Series alpha_side;
  Series beta_side;
};

namespace detail {

struct RhoInfo {
  std::vector<SignedQPower> finite;
  int n_inf = 0;
};

inline RhoInfo classify_rhos(const SignedQPower& r1, const SignedQPower& r2) {
  RhoInfo info;
  for (const SignedQPower& r : {r1, r2}) {
    if (r.inf)
      ++info.n_inf;
    else {
      if (r.exp < 0) throw std::invalid_argument("lemma specialization: negative rho exponent");
      if (r.is_one()) throw std::domain_error("lemma specialization: rho = 1 vanishes");
      info.finite.push_back(r);
    }
  }
  return info;
}

}  // namespace detail

inline LemmaSides bailey_lemma_sides(const BaileyPair& p, const SignedQPower& rho1,
                                     const SignedQPower& rho2, long order) {
  const long d = p.step;
  detail::RhoInfo rho = detail::classify_rhos(rho1, rho2);

  // P restricted to finite rhos; infinite ones were absorbed into the growth
  // factor (-1)^n q^{d n (n-1)/2}.
  int s_pow = p.a.sign;
  long e_pow = p.a.exp + d;
  for (const auto& r : rho.finite) {
    s_pow *= r.sign;
    e_pow -= r.exp;
  }
  if (rho.n_inf == 0 && e_pow < 1)
    throw std::domain_error("lemma specialization does not terminate: P has no positive q-order");

  // a q^d / rho must keep positive q-order: it appears under an infinite
  // Pochhammer in the prefactor and inverted in the alpha-side weight.
  std::vector<SignedQPower> aq_over_rho;
  for (const auto& r : rho.finite) {
    SignedQPower x{p.a.sign * r.sign, p.a.exp + d - r.exp, false};
    if (x.exp < 1)
      throw std::domain_error("lemma specialization: a q / rho has no positive q-order");
    aq_over_rho.push_back(x);
  }

  Series alpha_side(order);
  Series beta_side_sum(order);
  Series w_alpha = Series::one(order);  // (rho; q^d)_n / (a q / rho; q^d)_n
  Series w_beta = Series::one(order);   // (rho; q^d)_n
  Series t_beta(order);                 // w_beta * beta_n, ratio-advanced when seeded
  bool seeded = false;                  // t_beta holds a nonzero previous term

  for (long n = 0;; ++n) {
    long shift = n * e_pow + rho.n_inf * d * n * (n - 1) / 2;
    if (shift > order) break;
    long w = order - shift;
    int sgn = detail::parity_pow(s_pow, n) * detail::parity_pow(-1, rho.n_inf * n);

    if (n > 0) {
      for (const auto& r : rho.finite) {
        detail::apply_factor(w_alpha, r.sign, r.exp + d * (n - 1), w);
        detail::apply_factor(w_beta, r.sign, r.exp + d * (n - 1), w);
        if (seeded) detail::apply_factor(t_beta, r.sign, r.exp + d * (n - 1), w);
      }
      for (const auto& x : aq_over_rho)
        detail::apply_divisor(w_alpha, x.sign, x.exp + d * (n - 1), w);
    }

    if (p.beta_ratio && seeded && n > 0 && n >= p.beta_ratio_from) {
      p.beta_ratio(t_beta, n, w);
    } else {
      Series bn = p.beta(n, order);
      seeded = !bn.is_zero();
      t_beta = seeded ? w_beta * bn : Series(order);
    }
    if (seeded) beta_side_sum.add_shifted(t_beta, shift, sgn);

    if (shift + p.min_order(n) <= order) {
      Series an = p.alpha(n, order);
      if (!an.is_zero()) alpha_side.add_shifted(w_alpha * an, shift, sgn);
    }
  }

  Series prefactor = pochhammer(p.a.sign, p.a.exp + d, d, kInfinity, order);
  if (rho.n_inf == 0) prefactor = prefactor * pochhammer(s_pow, e_pow, d, kInfinity, order);
  for (const auto& x : aq_over_rho)
    prefactor = prefactor * pochhammer_inverse(x.sign, x.exp, d, kInfinity, order);

  return {std::move(alpha_side), prefactor * beta_side_sum};
}

/// The rho2 -> 1 limit of the lemma: both sides are divided by (1 - rho2)
/// first, which forces alpha_0 = beta_0 = 0 and replaces (rho2; q^d)_n by
/// (q^d; q^d)_{n-1}. The beta-side prefactor degenerates to 1. `halve`
/// divides both sides by 2 exactly (used when rho1 = -1 doubles every term).
inline LemmaSides bailey_rho2_one_sides(const BaileyPair& p, const SignedQPower& rho1, bool halve,
                                        long order) {
  const long d = p.step;
  if (!p.alpha(0, order).is_zero() || !p.beta(0, order).is_zero())
    throw std::domain_error("rho2 -> 1 limit requires vanishing alpha_0 and beta_0");

  std::vector<SignedQPower> finite;
  int n_inf = rho1.inf ? 1 : 0;
  if (!rho1.inf) {
    if (rho1.exp < 0) throw std::invalid_argument("lemma specialization: negative rho exponent");
    if (rho1.is_one()) throw std::domain_error("lemma specialization: rho = 1 vanishes");
    finite.push_back(rho1);
  }

  int s_pow = p.a.sign;
  long e_pow = p.a.exp + d;
  std::vector<SignedQPower> aq_over_rho;
  for (const auto& r : finite) {
    s_pow *= r.sign;
    e_pow -= r.exp;
    SignedQPower x{p.a.sign * r.sign, p.a.exp + d - r.exp, false};
    if (x.exp < 1)
      throw std::domain_error("lemma specialization: a q / rho has no positive q-order");
    aq_over_rho.push_back(x);
  }
  if (n_inf == 0 && e_pow < 1)
    throw std::domain_error("lemma specialization does not terminate: P has no positive q-order");

  Series alpha_side(order);
  Series beta_side(order);
  Series w_alpha = Series::one(order);
  Series w_beta = Series::one(order);
  Series t_beta(order);
  bool seeded = false;

  for (long n = 1;; ++n) {
    long shift = n * e_pow + n_inf * d * n * (n - 1) / 2;
    if (shift > order) break;
    long w = order - shift;
    int sgn = detail::parity_pow(s_pow, n) * detail::parity_pow(-1, n_inf * n);

    for (const auto& r : finite) {
      detail::apply_factor(w_alpha, r.sign, r.exp + d * (n - 1), w);
      detail::apply_factor(w_beta, r.sign, r.exp + d * (n - 1), w);
      if (seeded) detail::apply_factor(t_beta, r.sign, r.exp + d * (n - 1), w);
    }
    if (n >= 2) {
      // (q^d; q^d)_{n-1} replaces (rho2; q^d)_n / (1 - rho2) in the limit.
      detail::apply_factor(w_alpha, +1, d * (n - 1), w);
      detail::apply_factor(w_beta, +1, d * (n - 1), w);
      if (seeded) detail::apply_factor(t_beta, +1, d * (n - 1), w);
    }
    for (const auto& x : aq_over_rho)
      detail::apply_divisor(w_alpha, x.sign, x.exp + d * (n - 1), w);
    detail::apply_divisor(w_alpha, p.a.sign, p.a.exp + d * n, w);

    if (p.beta_ratio && seeded && n > 1 && n >= p.beta_ratio_from) {
      p.beta_ratio(t_beta, n, w);
    } else {
      Series bn = p.beta(n, order);
      seeded = !bn.is_zero();
      t_beta = seeded ? w_beta * bn : Series(order);
    }
    if (seeded) beta_side.add_shifted(t_beta, shift, sgn);

    if (shift + p.min_order(n) <= order) {
      Series an = p.alpha(n, order);
      if (!an.is_zero()) alpha_side.add_shifted(w_alpha * an, shift, sgn);
    }
  }

  if (halve) {
    alpha_side.divide_exact(2);
    beta_side.divide_exact(2);
  }
  return {std::move(alpha_side), std::move(beta_side)};
}

/// Transformation identity used as an external cross-check of the machinery:
///
///   sum_n (a, b; q)_n / ((q, c; q)_n) r^n
///     == (c/a, c/b; q)_inf / ((c, r; q)_inf),  r = c / (a b).
///
/// Formal convergence needs positive q-order on r, c, c/a and c/b; anything
/// else is rejected as a divergent specialization.
inline LemmaSides heine_sides(const SignedQPower& a, const SignedQPower& b, const SignedQPower& c,
                              long order) {
  if (a.inf || b.inf || c.inf)
    throw std::invalid_argument("heine_sides: parameters must be finite");
  SignedQPower r{c.sign * a.sign * b.sign, c.exp - a.exp - b.exp, false};
  SignedQPower ca = c / a;
  SignedQPower cb = c / b;
  if (r.exp < 1 || c.exp < 1 || ca.exp < 1 || cb.exp < 1)
    throw std::domain_error("heine_sides: divergent specialization");

  Series lhs(order);
  Series w = Series::one(order);
  for (long n = 0; n * r.exp <= order; ++n) {
    if (n > 0) {
      long win = order - n * r.exp;
      detail::apply_factor(w, a.sign, a.exp + (n - 1), win);
      detail::apply_factor(w, b.sign, b.exp + (n - 1), win);
      detail::apply_divisor(w, +1, n, win);
      detail::apply_divisor(w, c.sign, c.exp + (n - 1), win);
    }
    lhs.add_shifted(w, n * r.exp, detail::parity_pow(r.sign, n));
  }

  Series rhs = pochhammer(ca.sign, ca.exp, 1, kInfinity, order) *
               pochhammer(cb.sign, cb.exp, 1, kInfinity, order) *
               pochhammer_inverse(c.sign, c.exp, 1, kInfinity, order) *
               pochhammer_inverse(r.sign, r.exp, 1, kInfinity, order);
  return {std::move(lhs), std::move(rhs)};
}

/// U_n defined through Gaussian binomials:
///   U_n = (-1)^n sum_{j=1}^n [n+j-1, 2j-1]_q q^{binom(n-j,2)} (q; q^2)_{j-1}.
inline Series u_sequence_definition(long n, long order) {
  Series acc(order);
  for (long j = 1; j <= n; ++j) {
    long k = n - j;
    long e = k * (k - 1) / 2;
    if (e > order) continue;
    Series t = gaussian_binomial(n + j - 1, 2 * j - 1, order) * pochhammer(+1, 1, 2, j - 1, order);
    acc.add_shifted(t, e, 1);
  }
  if (n % 2 != 0) acc.scale(-1);
  return acc;
}

/// Closed theta-like form of the same sequence:
///   U_{2m} = sum_{j=-m}^{m-1} q^{2m^2 - 2m - 2j^2 - 2j},
///   U_{2m+1} = - sum_{|j|<=m} q^{2m^2 - 2j^2}.
inline Series u_sequence_closed(long n, long order) {
  Series t(order);
  long m = n / 2;
  if (n % 2 == 0) {
    for (long j = -m; j <= m - 1; ++j) {
      long e = 2 * (m * (m - 1) - j * (j + 1));
      if (e <= order) t.add_at(e, 1);
    }
  } else {
    for (long j = -m; j <= m; ++j) {
      long e = 2 * (m * m - j * j);
      if (e <= order) t.add_at(e, -1);
    }
  }
  return t;
}

}  // namespace qseries
