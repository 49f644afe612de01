#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "qseries/bailey.hpp"

using qseries::BaileyPair;
using qseries::Series;
using qseries::SignedQPower;
using qseries::kInfinity;

namespace {

SignedQPower qp(int sign, long exp) { return SignedQPower{sign, exp, false}; }

// The unit pair relative to a = 1: beta_n = [n == 0], and the inversion
// formula gives alpha_n = (-1)^n q^{n(n-1)/2} (1 + q^n) for n >= 1.
BaileyPair unit_pair() {
  BaileyPair p;
  p.name = "UNIT";
  p.a = qp(1, 0);
  p.step = 1;
  p.beta = [](long n, long N) { return n == 0 ? Series::one(N) : Series(N); };
  p.alpha = [](long n, long N) {
    if (n == 0) return Series::one(N);
    Series t(N);
    long e = n * (n - 1) / 2;
    int s = n % 2 == 0 ? 1 : -1;
    if (e <= N) t.add_at(e, s);
    if (e + n <= N) t.add_at(e + n, s);
    return t;
  };
  p.alpha_min_order = [](long n) { return n * (n - 1) / 2; };
  return p;
}

BaileyPair by_name(const std::string& name) {
  for (BaileyPair& p : qseries::standard_pairs())
    if (p.name == name) return std::move(p);
  throw std::runtime_error("unknown pair " + name);
}

void require_equal(const Series& lhs, const Series& rhs, long label) {
  auto m = Series::first_mismatch(lhs, rhs);
  INFO("index " << label << ", first mismatch at q^" << (m ? *m : -1));
  REQUIRE(!m.has_value());
}

}  // namespace

TEST_CASE("u sequence definition matches its closed form", "[bailey]") {
  const long N = 400;
  for (long n = 0; n <= 20; ++n)
    require_equal(qseries::u_sequence_definition(n, N), qseries::u_sequence_closed(n, N), n);

  // Opening values: 0, -1, 2, -2 - q^2.
  REQUIRE(qseries::u_sequence_closed(0, 10).is_zero());
  REQUIRE(qseries::u_sequence_closed(1, 10) == -Series::one(10));
  REQUIRE(qseries::u_sequence_closed(2, 10) == Series::constant(10, 2));
  Series u3 = qseries::u_sequence_closed(3, 10);
  REQUIRE(u3.coeff(0) == -2);
  REQUIRE(u3.coeff(1) == 0);
  REQUIRE(u3.coeff(2) == -1);
}

TEST_CASE("u sequence satisfies the two-step recurrence", "[bailey]") {
  // U_{n+2} = q^{2n} U_n + 2 (-1)^n
  const long N = 400;
  for (long n = 0; n <= 18; ++n) {
    Series rhs(N);
    rhs.add_shifted(qseries::u_sequence_closed(n, N), 2 * n, 1);
    rhs.add_at(0, n % 2 == 0 ? 2 : -2);
    require_equal(qseries::u_sequence_closed(n + 2, N), rhs, n);
  }
}

TEST_CASE("alpha sequences reduce to the u sequence", "[bailey]") {
  const long N = 400;

  SECTION("unit-parameter pair: alpha_n = (1 - q^{2n}) U_n") {
    BaileyPair a1 = by_name("NEW_A1");
    REQUIRE(a1.alpha(0, N).is_zero());
    for (long n = 1; n <= 15; ++n) {
      Series expected = qseries::u_sequence_closed(n, N);
      expected.mul_binomial(-1, 2 * n);
      require_equal(a1.alpha(n, N), expected, n);
    }
  }

  SECTION("a = q pair: (1 - q) alpha_n = q^{2n} U_n - U_{n+1}") {
    BaileyPair aq = by_name("NEW_AQ");
    for (long n = 0; n <= 15; ++n) {
      Series lhs = aq.alpha(n, N);
      lhs.mul_binomial(-1, 1);
      Series rhs(N);
      rhs.add_shifted(qseries::u_sequence_closed(n, N), 2 * n, 1);
      rhs.add_shifted(qseries::u_sequence_closed(n + 1, N), 0, -1);
      require_equal(lhs, rhs, n);
    }
  }
}

TEST_CASE("named pairs satisfy the defining relation", "[bailey]") {
  const long N = 250;
  for (const BaileyPair& p : qseries::standard_pairs()) {
    DYNAMIC_SECTION("pair " << p.name) {
      auto report = qseries::verify_pair_relation(p, 8, N);
      INFO("first bad n " << report.first_bad_n << " at q^" << report.mismatch_order);
      REQUIRE(report.ok);
    }
  }
}

TEST_CASE("relation check reports the first corrupted index", "[bailey]") {
  BaileyPair p = by_name("NEW_AQ");
  auto clean_beta = p.beta;
  p.beta = [clean_beta](long n, long N) {
    Series t = clean_beta(n, N);
    if (n == 2 && N >= 5) t.add_at(5, 1);
    return t;
  };
  auto report = qseries::verify_pair_relation(p, 4, 100);
  REQUIRE(!report.ok);
  REQUIRE(report.first_bad_n == 2);
  REQUIRE(report.mismatch_order == 5);
}

TEST_CASE("inversion recovers alpha from beta", "[bailey]") {
  SECTION("unit pair from a delta beta") {
    BaileyPair p = unit_pair();
    auto alphas = qseries::bailey_invert(p, 12, 300);
    REQUIRE(alphas.size() == 13);
    for (long n = 0; n <= 12; ++n) require_equal(alphas[n], p.alpha(n, 300), n);
  }

  SECTION("named pairs") {
    const long N = 300;
    for (const BaileyPair& p : qseries::standard_pairs()) {
      DYNAMIC_SECTION("pair " << p.name) {
        auto alphas = qseries::bailey_invert(p, 10, N);
        for (long n = 0; n <= 10; ++n) require_equal(alphas[n], p.alpha(n, N), n);
      }
    }
  }
}

TEST_CASE("beta ratio hooks advance the closed forms", "[bailey]") {
  const long N = 150;
  for (const BaileyPair& p : qseries::standard_pairs()) {
    if (!p.beta_ratio) continue;
    DYNAMIC_SECTION("pair " << p.name) {
      long from = p.beta_ratio_from > 0 ? p.beta_ratio_from : 1;
      for (long n = from; n <= 12; ++n) {
        Series t = p.beta(n - 1, N);
        p.beta_ratio(t, n, N);
        require_equal(t, p.beta(n, N), n);
      }
    }
  }
}

TEST_CASE("alpha order lower bounds hold", "[bailey]") {
  const long N = 200;
  for (const BaileyPair& p : qseries::standard_pairs()) {
    if (!p.alpha_min_order) continue;
    DYNAMIC_SECTION("pair " << p.name) {
      for (long n = 0; n <= 8; ++n) {
        Series a = p.alpha(n, N);
        long bound = p.alpha_min_order(n);
        for (long k = 0; k < bound && k <= N; ++k) {
          INFO("n=" << n << " coefficient q^" << k << " below bound " << bound);
          REQUIRE(a.coeff(k) == 0);
        }
      }
    }
  }
}

TEST_CASE("weighted lemma sides agree for the unit pair", "[bailey]") {
  // Both limits infinite turns the lemma into the classical theta-weighted
  // form; with the unit pair the beta side collapses to the full product
  //   prod_{k>=1} (1 - q^k)
  // so the alpha side recovers the pentagonal-number expansion.
  const long N = 300;
  auto sides = qseries::bailey_lemma_sides(unit_pair(), SignedQPower::infinity(),
                                           SignedQPower::infinity(), N);
  require_equal(sides.alpha_side, sides.beta_side, 0);
  require_equal(sides.beta_side, qseries::pochhammer(+1, 1, 1, kInfinity, N), 1);
}

TEST_CASE("weighted lemma sides agree across specializations", "[bailey]") {
  const long N = 140;
  struct Case {
    const char* label;
    BaileyPair pair;
    SignedQPower rho1;
    SignedQPower rho2;
  };
  const SignedQPower inf = SignedQPower::infinity();
  std::vector<Case> cases;
  cases.push_back({"NEW_AQ, rho1 infinite, rho2 = q", by_name("NEW_AQ"), inf, qp(1, 1)});
  cases.push_back({"NEW_AQ, both infinite", by_name("NEW_AQ"), inf, inf});
  cases.push_back({"NEW_AQ, rho1 = -1", by_name("NEW_AQ"), qp(-1, 0), inf});
  cases.push_back({"unit pair, rho1 = -1", unit_pair(), qp(-1, 0), inf});
  cases.push_back({"NEW_A1, rho1 = -1", by_name("NEW_A1"), qp(-1, 0), inf});
  cases.push_back({"LEMMA12_D1, both infinite", by_name("LEMMA12_D1"), inf, inf});
  cases.push_back({"AH_F3 at (q, q^2)", by_name("AH_F3"), qp(1, 1), qp(1, 2)});
  cases.push_back({"AH_F4 at (q^2, q^3)", by_name("AH_F4"), qp(1, 2), qp(1, 3)});
  cases.push_back({"AH_F5X at (q^2, infinity)", by_name("AH_F5X"), qp(1, 2), inf});
  cases.push_back({"AH_F7 at (q^2, infinity)", by_name("AH_F7"), qp(1, 2), inf});

  for (const auto& c : cases) {
    DYNAMIC_SECTION(c.label) {
      auto sides = qseries::bailey_lemma_sides(c.pair, c.rho1, c.rho2, N);
      require_equal(sides.alpha_side, sides.beta_side, 0);

      // The ratio hook is an optimization; a hookless copy must agree.
      BaileyPair plain = c.pair;
      plain.beta_ratio = nullptr;
      auto slow = qseries::bailey_lemma_sides(plain, c.rho1, c.rho2, N);
      require_equal(sides.beta_side, slow.beta_side, 1);
      require_equal(sides.alpha_side, slow.alpha_side, 2);
    }
  }
}

TEST_CASE("degenerate-limit lemma sides agree", "[bailey]") {
  const long N = 140;
  struct Case {
    const char* label;
    BaileyPair pair;
    SignedQPower rho1;
    bool halve;
  };
  std::vector<Case> cases;
  cases.push_back({"NEW_A1, rho1 infinite", by_name("NEW_A1"), SignedQPower::infinity(), false});
  cases.push_back({"LEMMA12_D1, rho1 = -1, halved", by_name("LEMMA12_D1"), qp(-1, 0), true});
  cases.push_back({"LEMMA12_D2, rho1 = q", by_name("LEMMA12_D2"), qp(1, 1), false});

  for (const auto& c : cases) {
    DYNAMIC_SECTION(c.label) {
      auto sides = qseries::bailey_rho2_one_sides(c.pair, c.rho1, c.halve, N);
      require_equal(sides.alpha_side, sides.beta_side, 0);
      REQUIRE(!sides.beta_side.is_zero());

      BaileyPair plain = c.pair;
      plain.beta_ratio = nullptr;
      auto slow = qseries::bailey_rho2_one_sides(plain, c.rho1, c.halve, N);
      require_equal(sides.beta_side, slow.beta_side, 1);
      require_equal(sides.alpha_side, slow.alpha_side, 2);
    }
  }
}

TEST_CASE("q-Gauss summation instances", "[bailey]") {
  const long N = 200;
  struct Case {
    SignedQPower a, b, c;
  };
  for (const auto& c : {Case{qp(1, 2), qp(1, 1), qp(1, 4)}, Case{qp(-1, 1), qp(1, 1), qp(-1, 3)},
                        Case{qp(1, 3), qp(1, 2), qp(1, 7)}}) {
    auto sides = qseries::heine_sides(c.a, c.b, c.c, N);
    require_equal(sides.alpha_side, sides.beta_side, c.a.exp);
  }

  // Hand-checked opening of the first instance: 1 + q + q^2 + ...
  auto first = qseries::heine_sides(qp(1, 2), qp(1, 1), qp(1, 4), 10);
  REQUIRE(first.alpha_side.coeff(0) == 1);
  REQUIRE(first.alpha_side.coeff(1) == 1);
  REQUIRE(first.alpha_side.coeff(2) == 1);
}

TEST_CASE("ill-formed specializations are rejected", "[bailey]") {
  const SignedQPower inf = SignedQPower::infinity();

  SECTION("product pair parameter validation") {
    REQUIRE_THROWS_AS(qseries::pair_ah(0, qp(1, 1), qp(1, 1), qp(1, 3)), std::invalid_argument);
    // a has no positive q-order
    REQUIRE_THROWS_AS(qseries::pair_ah(1, qp(1, 1), qp(-1, 0), qp(1, 0)), std::invalid_argument);
    // a/b has no positive q-order
    REQUIRE_THROWS_AS(qseries::pair_ah(1, qp(1, 2), qp(-1, 0), qp(1, 2)), std::invalid_argument);
    // infinite parameter
    REQUIRE_THROWS_AS(qseries::pair_ah(1, inf, qp(-1, 0), qp(1, 2)), std::invalid_argument);
  }

  SECTION("rho restrictions") {
    REQUIRE_THROWS_AS(qseries::bailey_lemma_sides(qseries::pair_new_aq(), qp(1, 0), inf, 50),
                      std::domain_error);
    REQUIRE_THROWS_AS(qseries::bailey_lemma_sides(qseries::pair_new_aq(), qp(1, -1), inf, 50),
                      std::invalid_argument);
  }

  SECTION("non-terminating weight") {
    REQUIRE_THROWS_AS(qseries::bailey_lemma_sides(qseries::pair_new_aq(), qp(1, 1), qp(1, 1), 50),
                      std::domain_error);
  }

  SECTION("a q / rho loses positive q-order") {
    REQUIRE_THROWS_AS(qseries::bailey_lemma_sides(qseries::pair_new_aq(), qp(1, 2), inf, 50),
                      std::domain_error);
  }

  SECTION("degenerate limit needs vanishing opening terms") {
    REQUIRE_THROWS_AS(qseries::bailey_rho2_one_sides(qseries::pair_new_aq(), inf, false, 50),
                      std::domain_error);
  }

  SECTION("halving a side with odd coefficients") {
    REQUIRE_THROWS_AS(qseries::bailey_rho2_one_sides(qseries::pair_lemma12(2), qp(1, 1), true, 50),
                      std::domain_error);
  }

  SECTION("divergent q-Gauss specialization") {
    REQUIRE_THROWS_AS(qseries::heine_sides(qp(1, 1), qp(1, 1), qp(1, 2), 50), std::domain_error);
  }
}
