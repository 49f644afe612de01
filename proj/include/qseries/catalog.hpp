#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "series.hpp"

namespace qseries {

/// The named q-series this library expands. SIGMA and F1..F8 are sums of
/// Pochhammer-quotient terms; the two REMARK series belong to the unsigned
/// variant of F5 and its product form.
enum class SeriesId {
  Sigma,
  F1,
  F2,
  F3,
  F4,
  F5,
  F6,
  F7,
  F8,
  RemarkUnsigned,
  RemarkEtaProduct,
};

inline const char* to_string(SeriesId id) {
  switch (id) {
    case SeriesId::Sigma: return "SIGMA";
    case SeriesId::F1: return "F1";
    case SeriesId::F2: return "F2";
    case SeriesId::F3: return "F3";
    case SeriesId::F4: return "F4";
    case SeriesId::F5: return "F5";
    case SeriesId::F6: return "F6";
    case SeriesId::F7: return "F7";
    case SeriesId::F8: return "F8";
    case SeriesId::RemarkUnsigned: return "REMARK_UNSIGNED";
    case SeriesId::RemarkEtaProduct: return "REMARK_ETA_PRODUCT";
  }
  throw std::logic_error("to_string: unknown SeriesId");
}

inline SeriesId series_id_from_string(const std::string& s) {
  for (SeriesId id : {SeriesId::Sigma, SeriesId::F1, SeriesId::F2, SeriesId::F3, SeriesId::F4,
                      SeriesId::F5, SeriesId::F6, SeriesId::F7, SeriesId::F8,
                      SeriesId::RemarkUnsigned, SeriesId::RemarkEtaProduct})
    if (s == to_string(id)) return id;
  throw std::invalid_argument("unknown series name: " + s);
}

inline std::vector<SeriesId> all_series_ids() {
  return {SeriesId::Sigma, SeriesId::F1, SeriesId::F2, SeriesId::F3, SeriesId::F4,
          SeriesId::F5,    SeriesId::F6, SeriesId::F7, SeriesId::F8,
          SeriesId::RemarkUnsigned, SeriesId::RemarkEtaProduct};
}

inline std::vector<SeriesId> f_series_ids() {
  return {SeriesId::F1, SeriesId::F2, SeriesId::F3, SeriesId::F4,
          SeriesId::F5, SeriesId::F6, SeriesId::F7, SeriesId::F8};
}

/// Index of the first summand (F2, F6 and F8 start at n = 1, the rest at 0).
inline long first_term_index(SeriesId id) {
  switch (id) {
    case SeriesId::F2:
    case SeriesId::F6:
    case SeriesId::F8:
      return 1;
    case SeriesId::RemarkEtaProduct:
      throw std::invalid_argument("first_term_index: product form has no summands");
    default:
      return 0;
  }
}

/// q-power multiplying the n-th summand.
inline long term_offset(SeriesId id, long n) {
  switch (id) {
    case SeriesId::Sigma:
    case SeriesId::F1:
    case SeriesId::F2:
    case SeriesId::F5:
    case SeriesId::RemarkUnsigned:
      return n * (n + 1) / 2;
    case SeriesId::F3:
    case SeriesId::F6:
    case SeriesId::F8:
      return n;
    case SeriesId::F4:
      return n + 1;
    case SeriesId::F7:
      return n * n + n;
    case SeriesId::RemarkEtaProduct:
      throw std::invalid_argument("term_offset: product form has no summands");
  }
  throw std::logic_error("term_offset: unknown SeriesId");
}

inline int term_sign(SeriesId id, long n) {
  switch (id) {
    case SeriesId::F5:
    case SeriesId::F6:
    case SeriesId::F7:
      return n % 2 == 0 ? 1 : -1;
    case SeriesId::RemarkEtaProduct:
      throw std::invalid_argument("term_sign: product form has no summands");
    default:
      return 1;
  }
}

/// n-th summand built directly from its closed Pochhammer-quotient form,
/// without the sign and leading q-power. Slow but independent of the
/// incremental expansion; used to cross-check it.
inline Series term_literal(SeriesId id, long n, long order) {
  if (n < first_term_index(id)) throw std::invalid_argument("term_literal: index before first summand");
  switch (id) {
    case SeriesId::Sigma:
      return pochhammer_inverse(-1, 1, 1, n, order);
    case SeriesId::F1:
      return pochhammer(+1, 1, 1, 2 * n, order) * pochhammer_inverse(-1, 1, 1, n, order) *
             pochhammer_inverse(+1, 1, 1, 2 * n + 1, order);
    case SeriesId::F2:
      return pochhammer(+1, 1, 1, 2 * n - 2, order) * pochhammer_inverse(-1, 1, 1, n - 1, order) *
             pochhammer_inverse(+1, 1, 1, 2 * n - 1, order);
    case SeriesId::F3:
      return pochhammer(+1, 1, 1, 2 * n, order) * pochhammer_inverse(-1, 1, 1, 2 * n + 1, order);
    case SeriesId::F4:
      return pochhammer(+1, 1, 1, 2 * n + 1, order) * pochhammer_inverse(-1, 1, 1, 2 * n + 2, order);
    case SeriesId::F5:
    case SeriesId::RemarkUnsigned:
      return pochhammer(+1, 1, 1, n, order) * pochhammer_inverse(+1, 1, 2, n + 1, order);
    case SeriesId::F6:
      return pochhammer(+1, 1, 1, n - 1, order) * pochhammer(+1, 2, 2, n - 1, order) *
             pochhammer_inverse(+1, 1, 1, 2 * n - 1, order);
    case SeriesId::F7:
      return pochhammer(+1, 2, 2, n, order) * pochhammer_inverse(-1, 1, 1, 2 * n + 1, order);
    case SeriesId::F8:
      return pochhammer(+1, 1, 1, 2 * n - 1, order) * pochhammer_inverse(+1, 2 * n, 2, n, order);
    case SeriesId::RemarkEtaProduct:
      throw std::invalid_argument("term_literal: product form has no summands");
  }
  throw std::logic_error("term_literal: unknown SeriesId");
}

namespace detail {

/// Shared summation driver. `init` yields the first summand at full order;
/// `advance(t, n, w)` turns summand n-1 into summand n, valid through index w.
/// Windows shrink as the leading q-power grows, so stale high coefficients in
/// t are never read.
template <class Init, class Advance>
Series sum_series(SeriesId id, long order, Init init, Advance advance) {
  Series acc(order);
  long n0 = first_term_index(id);
  if (term_offset(id, n0) > order) return acc;
  Series t = init(order);
  for (long n = n0; term_offset(id, n) <= order; ++n) {
    if (n > n0) advance(t, n, order - term_offset(id, n));
    acc.add_shifted(t, term_offset(id, n), term_sign(id, n));
  }
  return acc;
}

inline Series expand_eta_product(long order) {
  // prod (1-q^{2n})^4 / prod (1-q^n)^2
  Series r = Series::one(order);
  for (long n = 1; 2 * n <= order; ++n)
    for (int rep = 0; rep < 4; ++rep) r.mul_binomial(-1, 2 * n);
  for (long n = 1; n <= order; ++n)
    for (int rep = 0; rep < 2; ++rep) r.div_binomial(-1, n);
  return r;
}

}  // namespace detail

/// Expand a catalog series to the given truncation order. Runs in O(order)
/// per summand by updating the previous summand with its term ratio; the
/// closed forms in term_literal pin down what is being accumulated.
inline Series expand(SeriesId id, long order) {
  using detail::sum_series;
  switch (id) {
    case SeriesId::Sigma:
      return sum_series(id, order,
          [](long N) { return Series::one(N); },
          [](Series& t, long n, long w) { t.div_binomial(1, n, w); });
    case SeriesId::F1:
      return sum_series(id, order,
          [](long N) { Series t = Series::one(N); t.div_binomial(-1, 1); return t; },
          [](Series& t, long n, long w) {
            t.mul_binomial(-1, 2 * n - 1, w);
            t.div_binomial(1, n, w);
            t.div_binomial(-1, 2 * n + 1, w);
          });
    case SeriesId::F2:
      return sum_series(id, order,
          [](long N) { Series t = Series::one(N); t.div_binomial(-1, 1); return t; },
          [](Series& t, long n, long w) {
            t.mul_binomial(-1, 2 * n - 3, w);
            t.div_binomial(1, n - 1, w);
            t.div_binomial(-1, 2 * n - 1, w);
          });
    case SeriesId::F3:
      return sum_series(id, order,
          [](long N) { Series t = Series::one(N); t.div_binomial(1, 1); return t; },
          [](Series& t, long n, long w) {
            t.mul_binomial(-1, 2 * n - 1, w);
            t.mul_binomial(-1, 2 * n, w);
            t.div_binomial(1, 2 * n, w);
            t.div_binomial(1, 2 * n + 1, w);
          });
    case SeriesId::F4:
      return sum_series(id, order,
          [](long N) {
            Series t = Series::one(N);
            t.mul_binomial(-1, 1);
            t.div_binomial(1, 1);
            t.div_binomial(1, 2);
            return t;
          },
          [](Series& t, long n, long w) {
            t.mul_binomial(-1, 2 * n, w);
            t.mul_binomial(-1, 2 * n + 1, w);
            t.div_binomial(1, 2 * n + 1, w);
            t.div_binomial(1, 2 * n + 2, w);
          });
    case SeriesId::F5:
    case SeriesId::RemarkUnsigned:
      return sum_series(id, order,
          [](long N) { Series t = Series::one(N); t.div_binomial(-1, 1); return t; },
          [](Series& t, long n, long w) {
            t.mul_binomial(-1, n, w);
            t.div_binomial(-1, 2 * n + 1, w);
          });
    case SeriesId::F6:
      return sum_series(id, order,
          [](long N) { Series t = Series::one(N); t.div_binomial(-1, 1); return t; },
          [](Series& t, long n, long w) {
            t.mul_binomial(-1, n - 1, w);
            t.div_binomial(-1, 2 * n - 1, w);
          });
    case SeriesId::F7:
      return sum_series(id, order,
          [](long N) { Series t = Series::one(N); t.div_binomial(1, 1); return t; },
          [](Series& t, long n, long w) {
            t.mul_binomial(-1, 2 * n, w);
            t.div_binomial(1, 2 * n, w);
            t.div_binomial(1, 2 * n + 1, w);
          });
    case SeriesId::F8:
      return sum_series(id, order,
          [](long N) { Series t = Series::one(N); t.div_binomial(1, 1); return t; },
          [](Series& t, long n, long w) {
            t.mul_binomial(-1, 2 * n - 2, w);
            t.mul_binomial(-1, 2 * n - 2, w);
            t.mul_binomial(-1, 2 * n - 1, w);
            t.div_binomial(-1, 4 * n - 4, w);
            t.div_binomial(-1, 4 * n - 2, w);
          });
    case SeriesId::RemarkEtaProduct:
      return detail::expand_eta_product(order);
  }
  throw std::logic_error("expand: unknown SeriesId");
}

}  // namespace qseries
