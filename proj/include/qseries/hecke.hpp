#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "series.hpp"

namespace qseries {

/// One double-sum component of an indefinite theta series:
///
///   outer_sign * sum_{n >= n_start} sum_{j = j_lo(n)}^{j_hi(n)}
///     (-1)^{eps_n n + eps_j j + eps0} q^{Q(n, j)} [1 + factor_t q^{G n + H}]
///
/// with j-range endpoints affine in n and Q(n, j) quadratic with half-integer
/// coefficients, stored doubled so everything stays in integers:
/// 2 Q = q2_a n^2 + q2_b n + q2_c + q2_d j^2 + q2_e j.
struct IndefiniteThetaComponent {
  long n_start = 0;
  long j_lo_const = 0, j_lo_slope = 0;
  long j_hi_const = 0, j_hi_slope = 0;
  int eps_n = 0, eps_j = 0, eps0 = 0;
  long q2_a = 0, q2_b = 0, q2_c = 0, q2_d = 0, q2_e = 0;
  bool has_factor = false;
  int factor_t = 0;
  long factor_g = 0, factor_h = 0;
  int outer_sign = 1;

  long j_lo(long n) const { return j_lo_const + j_lo_slope * n; }
  long j_hi(long n) const { return j_hi_const + j_hi_slope * n; }

  /// 2 Q(n, j); the caller checks evenness before halving.
  long q2(long n, long j) const {
    return q2_a * n * n + q2_b * n + q2_c + q2_d * j * j + q2_e * j;
  }
};

struct IndefiniteThetaSpec {
  std::string name;
  std::vector<IndefiniteThetaComponent> components;
};

namespace detail {

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Minimum of 2Q over the integer j-range at fixed n: the quadratic in j is
/// concave for q2_d < 0 (max interior), so extrema sit at the endpoints; for
/// q2_d > 0 the clamped critical point joins them. q2_d == 0 is affine.
inline long min_q2_on_range(const IndefiniteThetaComponent& c, long n, long jlo, long jhi) {
  long best = c.q2(n, jlo);
  best = std::min(best, c.q2(n, jhi));
  if (c.q2_d != 0) {
    long jstar = floor_div(-c.q2_e, 2 * c.q2_d);
    for (long j : {jstar, jstar + 1})
      if (j >= jlo && j <= jhi) best = std::min(best, c.q2(n, j));
  }
  return best;
}

}  // namespace detail

/// Expand an indefinite theta spec to the given order. Every visited lattice
/// point must have an integral, nonnegative exponent. The n-loop stops once
/// five consecutive shells lie entirely above the order, which covers the
/// non-monotone shell minima these quadratics produce.
inline Series evaluate(const IndefiniteThetaSpec& spec, long order) {
  Series acc(order);
  for (const auto& c : spec.components) {
    int misses = 0;
    for (long n = c.n_start;; ++n) {
      long jlo = c.j_lo(n), jhi = c.j_hi(n);
      if (jlo > jhi)
        throw std::domain_error("evaluate: empty j-range at visited shell in '" + spec.name + "'");
      if (detail::min_q2_on_range(c, n, jlo, jhi) > 2 * order) {
        if (++misses >= 5) break;
        continue;
      }
      misses = 0;
      for (long j = jlo; j <= jhi; ++j) {
        long q2v = c.q2(n, j);
        if (q2v % 2 != 0)
          throw std::domain_error("evaluate: non-integral exponent in '" + spec.name + "'");
        long e = q2v / 2;
        if (e < 0)
          throw std::domain_error("evaluate: negative exponent in '" + spec.name + "'");
        long par = c.eps_n * n + c.eps_j * j + c.eps0;
        int s = (par % 2 == 0 ? 1 : -1) * c.outer_sign;
        if (e <= order) acc.add_at(e, s);
        if (c.has_factor) {
          long e2 = e + c.factor_g * n + c.factor_h;
          if (e2 <= order) acc.add_at(e2, s * c.factor_t);
        }
      }
    }
  }
  return acc;
}

/// The built-in Hecke-type double sums: one per catalog series F1..F8 plus the
/// one for SIGMA and a companion with the opposite correction sign, and the
/// eight dissected forms reached from them by root-of-unity dissection.
enum class HeckeId {
  SigmaHecke,
  SixthOrderCompanion,
  Hecke1,
  Hecke2,
  Hecke3,
  Hecke4,
  Hecke5,
  Hecke6,
  Hecke7,
  Hecke8,
  Dissect1,
  Dissect2,
  Dissect3,
  Dissect4,
  Dissect5,
  Dissect6,
  Dissect7,
  Dissect8,
};

inline const char* to_string(HeckeId id) {
  switch (id) {
    case HeckeId::SigmaHecke: return "SIGMA_HECKE";
    case HeckeId::SixthOrderCompanion: return "SIXTH_ORDER_COMPANION";
    case HeckeId::Hecke1: return "HECKE1";
    case HeckeId::Hecke2: return "HECKE2";
    case HeckeId::Hecke3: return "HECKE3";
    case HeckeId::Hecke4: return "HECKE4";
    case HeckeId::Hecke5: return "HECKE5";
    case HeckeId::Hecke6: return "HECKE6";
    case HeckeId::Hecke7: return "HECKE7";
    case HeckeId::Hecke8: return "HECKE8";
    case HeckeId::Dissect1: return "DISSECT1";
    case HeckeId::Dissect2: return "DISSECT2";
    case HeckeId::Dissect3: return "DISSECT3";
    case HeckeId::Dissect4: return "DISSECT4";
    case HeckeId::Dissect5: return "DISSECT5";
    case HeckeId::Dissect6: return "DISSECT6";
    case HeckeId::Dissect7: return "DISSECT7";
    case HeckeId::Dissect8: return "DISSECT8";
  }
  throw std::logic_error("to_string: unknown HeckeId");
}

inline std::vector<HeckeId> all_hecke_ids() {
  return {HeckeId::SigmaHecke, HeckeId::SixthOrderCompanion,
          HeckeId::Hecke1,   HeckeId::Hecke2,   HeckeId::Hecke3,   HeckeId::Hecke4,
          HeckeId::Hecke5,   HeckeId::Hecke6,   HeckeId::Hecke7,   HeckeId::Hecke8,
          HeckeId::Dissect1, HeckeId::Dissect2, HeckeId::Dissect3, HeckeId::Dissect4,
          HeckeId::Dissect5, HeckeId::Dissect6, HeckeId::Dissect7, HeckeId::Dissect8};
}

inline HeckeId hecke_id_from_string(const std::string& s) {
  for (HeckeId id : all_hecke_ids())
    if (s == to_string(id)) return id;
  throw std::invalid_argument("unknown indefinite theta name: " + s);
}

namespace detail {

struct ComponentBuilder {
  IndefiniteThetaComponent c;
  ComponentBuilder& start(long n0) { c.n_start = n0; return *this; }
  ComponentBuilder& jlo(long k, long s) { c.j_lo_const = k; c.j_lo_slope = s; return *this; }
  ComponentBuilder& jhi(long k, long s) { c.j_hi_const = k; c.j_hi_slope = s; return *this; }
  ComponentBuilder& sign(int en, int ej, int e0) { c.eps_n = en; c.eps_j = ej; c.eps0 = e0; return *this; }
  ComponentBuilder& q2(long a, long b, long k, long d, long e) {
    c.q2_a = a; c.q2_b = b; c.q2_c = k; c.q2_d = d; c.q2_e = e; return *this;
  }
  ComponentBuilder& factor(int t, long g, long h) {
    c.has_factor = true; c.factor_t = t; c.factor_g = g; c.factor_h = h; return *this;
  }
  ComponentBuilder& outer(int s) { c.outer_sign = s; return *this; }
};

}  // namespace detail

/// Definitions of the built-in double sums, entered from their closed forms.
/// Coefficient rows are 2Q to keep half-integer quadratics integral.
inline IndefiniteThetaSpec hecke_spec(HeckeId id) {
  using B = detail::ComponentBuilder;
  IndefiniteThetaSpec s;
  s.name = to_string(id);
  switch (id) {
    case HeckeId::SigmaHecke:
      // sum_{n>=0} sum_{|j|<=n} (-1)^{n+j} q^{(3n^2+n)/2 - j^2} (1 - q^{2n+1})
      s.components = {B{}.start(0).jlo(0, -1).jhi(0, 1).sign(1, 1, 0)
                          .q2(3, 1, 0, -2, 0).factor(-1, 2, 1).c};
      break;
    case HeckeId::SixthOrderCompanion:
      s.components = {B{}.start(0).jlo(0, -1).jhi(0, 1).sign(1, 1, 0)
                          .q2(3, 1, 0, -2, 0).factor(+1, 2, 1).c};
      break;
    case HeckeId::Hecke1:
      // (1 + q^{6n+6}) over 4n^2+5n+1-2j^2-2j, plus (1 + q^{6n+3}) over 4n^2+n-2j^2
      s.components = {
          B{}.start(0).jlo(-1, -1).jhi(0, 1).q2(8, 10, 2, -4, -4).factor(+1, 6, 6).c,
          B{}.start(0).jlo(0, -1).jhi(0, 1).q2(8, 2, 0, -4, 0).factor(+1, 6, 3).c};
      break;
    case HeckeId::Hecke2:
      s.components = {
          B{}.start(1).jlo(0, -1).jhi(-1, 1).q2(8, -2, 0, -4, -4).factor(+1, 2, 0).c,
          B{}.start(0).jlo(0, -1).jhi(0, 1).q2(8, 6, 2, -4, 0).factor(+1, 2, 1).c};
      break;
    case HeckeId::Hecke3:
      s.components = {B{}.start(0).jlo(0, -1).jhi(0, 1).sign(0, 1, 0).q2(4, 4, 0, -2, 0).c};
      break;
    case HeckeId::Hecke4:
      s.components = {B{}.start(0).jlo(-1, -1).jhi(0, 1).sign(0, 1, 0)
                          .q2(4, 8, 4, -2, 0).outer(-1).c};
      break;
    case HeckeId::Hecke5:
      s.components = {B{}.start(0).jlo(0, -1).jhi(0, 1).q2(3, 3, 0, -1, -1).c};
      break;
    case HeckeId::Hecke6:
      s.components = {
          B{}.start(0).jlo(0, -1).jhi(0, 1).q2(6, 6, 2, -2, 0).outer(-1).c,
          B{}.start(1).jlo(0, -1).jhi(-1, 1).q2(6, 0, 0, -2, -2).outer(-1).c};
      break;
    case HeckeId::Hecke7:
      s.components = {B{}.start(0).jlo(0, -1).jhi(0, 1).sign(1, 1, 0)
                          .q2(6, 4, 0, -2, 0).factor(-1, 2, 1).c};
      break;
    case HeckeId::Hecke8:
      s.components = {
          B{}.start(1).jlo(0, -1).jhi(-1, 1).q2(12, -4, 0, -4, -4).factor(+1, 4, 0).outer(-1).c,
          B{}.start(0).jlo(0, -1).jhi(0, 1).q2(12, 8, 2, -4, 0).factor(+1, 4, 2).c};
      break;
    case HeckeId::Dissect1:
      // (8n+5)^2 - 2(4j+2)^2 and (8n+1)^2 - 2(4j)^2
      s.components = {
          B{}.start(0).jlo(-1, -1).jhi(0, 1).q2(128, 160, 34, -64, -64).factor(+1, 96, 96).c,
          B{}.start(0).jlo(0, -1).jhi(0, 1).q2(128, 32, 2, -64, 0).factor(+1, 96, 48).c};
      break;
    case HeckeId::Dissect2:
      // (8n-1)^2 - 2(4j+2)^2 and (8n+3)^2 - 2(4j)^2
      s.components = {
          B{}.start(1).jlo(0, -1).jhi(-1, 1).q2(128, -32, -14, -64, -64).factor(+1, 32, 0).c,
          B{}.start(0).jlo(0, -1).jhi(0, 1).q2(128, 96, 18, -64, 0).factor(+1, 32, 16).c};
      break;
    case HeckeId::Dissect3:
      // (2n+1)^2 - 2j^2
      s.components = {B{}.start(0).jlo(0, -1).jhi(0, 1).sign(0, 1, 0).q2(8, 8, 2, -4, 0).c};
      break;
    case HeckeId::Dissect4:
      // (2n+2)^2 - 2j^2
      s.components = {B{}.start(0).jlo(-1, -1).jhi(0, 1).sign(0, 1, 0).q2(8, 16, 8, -4, 0).c};
      break;
    case HeckeId::Dissect5:
      // 3(2n+1)^2 - (2j+1)^2
      s.components = {B{}.start(0).jlo(0, -1).jhi(0, 1).q2(24, 24, 4, -8, -8).c};
      break;
    case HeckeId::Dissect6:
      // 3(2n+1)^2 - (2j)^2 and 3(2n)^2 - (2j+1)^2, both negated
      s.components = {
          B{}.start(0).jlo(0, -1).jhi(0, 1).q2(24, 24, 6, -8, 0).outer(-1).c,
          B{}.start(1).jlo(0, -1).jhi(-1, 1).q2(24, 0, -2, -8, -8).outer(-1).c};
      break;
    case HeckeId::Dissect7:
      // (3n+1)^2 - 3j^2 with the (1 - q^{6n+3}) correction
      s.components = {B{}.start(0).jlo(0, -1).jhi(0, 1).sign(1, 1, 0)
                          .q2(18, 12, 2, -6, 0).factor(-1, 6, 3).c};
      break;
    case HeckeId::Dissect8:
      // (6n+5)^2 - 3(2j+1)^2, negated, and (6n+2)^2 - 3(2j)^2
      s.components = {
          B{}.start(0).jlo(-1, -1).jhi(0, 1).q2(72, 120, 44, -24, -24).factor(+1, 24, 24).outer(-1).c,
          B{}.start(0).jlo(0, -1).jhi(0, 1).q2(72, 48, 8, -24, 0).factor(+1, 24, 12).c};
      break;
  }
  return s;
}

inline Series evaluate(HeckeId id, long order) { return evaluate(hecke_spec(id), order); }

inline nlohmann::ordered_json spec_to_json(const IndefiniteThetaSpec& spec) {
  nlohmann::ordered_json j;
  j["name"] = spec.name;
  auto comps = nlohmann::ordered_json::array();
  for (const auto& c : spec.components) {
    nlohmann::ordered_json jc;
    jc["n_start"] = c.n_start;
    jc["j_lo"] = {c.j_lo_const, c.j_lo_slope};
    jc["j_hi"] = {c.j_hi_const, c.j_hi_slope};
    jc["sign"] = {c.eps_n, c.eps_j, c.eps0};
    jc["q2"] = {c.q2_a, c.q2_b, c.q2_c, c.q2_d, c.q2_e};
    if (c.has_factor)
      jc["factor"] = {c.factor_t, c.factor_g, c.factor_h};
    else
      jc["factor"] = nullptr;
    jc["outer"] = c.outer_sign;
    comps.push_back(std::move(jc));
  }
  j["components"] = std::move(comps);
  return j;
}

inline IndefiniteThetaSpec spec_from_json(const nlohmann::json& j) {
  IndefiniteThetaSpec spec;
  spec.name = j.at("name").get<std::string>();
  for (const auto& jc : j.at("components")) {
    IndefiniteThetaComponent c;
    c.n_start = jc.at("n_start").get<long>();
    c.j_lo_const = jc.at("j_lo").at(0).get<long>();
    c.j_lo_slope = jc.at("j_lo").at(1).get<long>();
    c.j_hi_const = jc.at("j_hi").at(0).get<long>();
    c.j_hi_slope = jc.at("j_hi").at(1).get<long>();
    c.eps_n = jc.at("sign").at(0).get<int>();
    c.eps_j = jc.at("sign").at(1).get<int>();
    c.eps0 = jc.at("sign").at(2).get<int>();
    c.q2_a = jc.at("q2").at(0).get<long>();
    c.q2_b = jc.at("q2").at(1).get<long>();
    c.q2_c = jc.at("q2").at(2).get<long>();
    c.q2_d = jc.at("q2").at(3).get<long>();
    c.q2_e = jc.at("q2").at(4).get<long>();
    if (!jc.at("factor").is_null()) {
      c.has_factor = true;
      c.factor_t = jc.at("factor").at(0).get<int>();
      c.factor_g = jc.at("factor").at(1).get<long>();
      c.factor_h = jc.at("factor").at(2).get<long>();
    }
    c.outer_sign = jc.at("outer").get<int>();
    spec.components.push_back(c);
  }
  return spec;
}

}  // namespace qseries
