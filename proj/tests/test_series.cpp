#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "qseries/series.hpp"

using qseries::gaussian_binomial;
using qseries::Int;
using qseries::kInfinity;
using qseries::pochhammer;
using qseries::pochhammer_inverse;
using qseries::Series;
using qseries::SignedQPower;

namespace {

Series from_ints(const std::vector<long>& v) {
  Series s(static_cast<long>(v.size()) - 1);
  for (size_t k = 0; k < v.size(); ++k) s.set_coeff(static_cast<long>(k), v[k]);
  return s;
}

Series random_series(std::mt19937& rng, long order, bool unit) {
  std::uniform_int_distribution<int> d(-3, 3);
  Series s(order);
  for (long k = 0; k <= order; ++k) s.set_coeff(k, d(rng));
  if (unit) s.set_coeff(0, rng() % 2 ? 1 : -1);
  return s;
}

}  // namespace

TEST_CASE("construction and coefficient access") {
  Series z(4);
  for (long k = 0; k <= 4; ++k) CHECK(z.coeff(k) == 0);
  CHECK(z.is_zero());
  CHECK_THROWS_AS(z.coeff(5), std::out_of_range);
  CHECK_THROWS_AS(z.coeff(-1), std::out_of_range);
  CHECK_THROWS_AS(Series(-1), std::invalid_argument);

  Series m = Series::monomial(6, 3, -2);
  CHECK(m.coeff(3) == -2);
  CHECK(m.coeff(2) == 0);
  CHECK(Series::monomial(3, 7).is_zero());
}

TEST_CASE("addition and subtraction require matching orders") {
  Series a = from_ints({1, 2, 3});
  Series b = from_ints({0, -2, 4});
  CHECK(a + b == from_ints({1, 0, 7}));
  CHECK(a - b == from_ints({1, 4, -1}));
  CHECK(-a == from_ints({-1, -2, -3}));
  Series c(3);
  CHECK_THROWS_AS(a + c, std::invalid_argument);
  CHECK_THROWS_AS(a - c, std::invalid_argument);
  CHECK_THROWS_AS(a * c, std::invalid_argument);
}

TEST_CASE("product truncates correctly") {
  Series one_minus_q = from_ints({1, -1, 0, 0, 0});
  Series one_plus_q = from_ints({1, 1, 0, 0, 0});
  CHECK(one_minus_q * one_plus_q == from_ints({1, 0, -1, 0, 0}));

  // Truncation drops the q^2 term of (1+q)^2 at order 1.
  Series p = from_ints({1, 1});
  CHECK(p * p == from_ints({1, 2}));
}

TEST_CASE("geometric series inverse") {
  Series g = from_ints({1, -1, 0, 0}).inverse();
  CHECK(g == from_ints({1, 1, 1, 1}));
  CHECK(g * g == from_ints({1, 2, 3, 4}));

  Series neg = from_ints({-1, 1, 0}).inverse();
  CHECK(neg == from_ints({-1, -1, -1}));

  CHECK_THROWS_AS(from_ints({2, 0, 0}).inverse(), std::domain_error);
  CHECK_THROWS_AS(from_ints({0, 1, 0}).inverse(), std::domain_error);
}

TEST_CASE("inverse round trip on random units") {
  std::mt19937 rng(12345);
  for (int rep = 0; rep < 20; ++rep) {
    Series x = random_series(rng, 40, true);
    CHECK(x * x.inverse() == Series::one(40));
  }
}

TEST_CASE("ring axioms on random series") {
  std::mt19937 rng(777);
  for (int rep = 0; rep < 10; ++rep) {
    Series x = random_series(rng, 30, false);
    Series y = random_series(rng, 30, false);
    Series z = random_series(rng, 30, false);
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * y == y * x);
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x * y) * z == x * (y * z));
  }
}

TEST_CASE("shift and substitute") {
  Series p = from_ints({1, 1, 0, 0, 0});
  CHECK(p.shifted(2) == from_ints({0, 0, 1, 1, 0}));
  CHECK_THROWS_AS(p.shifted(-1), std::invalid_argument);

  CHECK(p.substitute_power(2, 4) == from_ints({1, 0, 1, 0, 0}));
  CHECK(p.substitute_power(3, 2) == from_ints({1, 0, 0}));
  CHECK_THROWS_AS(p.substitute_power(0, 4), std::invalid_argument);

  // Substitution commutes with shifting, f(q^m) q^{km} == (f q^k)(q^m), up to
  // the horizon the inner truncation supports: shifting an order-10 series by
  // 2 keeps it exact through q^10, so after q -> q^3 both sides agree to q^32.
  std::mt19937 rng(99);
  Series x = random_series(rng, 10, false);
  Series lhs = x.shifted(2).substitute_power(3, 32);
  Series rhs = x.substitute_power(3, 36).shifted(6).truncated(32);
  CHECK(lhs == rhs);
}

TEST_CASE("binomial multiply and divide are inverse sparse updates") {
  std::mt19937 rng(4242);
  for (int rep = 0; rep < 10; ++rep) {
    Series x = random_series(rng, 50, false);
    Series y = x;
    y.mul_binomial(-1, 3);
    // Same result as a full product with 1 - q^3.
    Series factor(50);
    factor.set_coeff(0, 1);
    factor.set_coeff(3, -1);
    CHECK(y == x * factor);
    y.div_binomial(-1, 3);
    CHECK(y == x);
  }
  Series s = Series::one(5);
  CHECK_THROWS_AS(s.mul_binomial(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(s.div_binomial(1, 0), std::invalid_argument);
}

TEST_CASE("windowed binomial updates agree below the window") {
  std::mt19937 rng(555);
  Series x = random_series(rng, 60, false);
  Series full = x;
  Series windowed = x;
  full.mul_binomial(1, 4);
  windowed.mul_binomial(1, 4, 30);
  for (long k = 0; k <= 30; ++k) CHECK(full.coeff(k) == windowed.coeff(k));
}

TEST_CASE("add_shifted accumulates a signed shifted copy") {
  Series acc = from_ints({1, 0, 0, 0});
  Series src = from_ints({1, 2, 0, 0});
  acc.add_shifted(src, 1, -1);
  CHECK(acc == from_ints({1, -1, -2, 0}));
  acc.add_shifted(src, 3);
  CHECK(acc == from_ints({1, -1, -2, 1}));
}

TEST_CASE("finite Pochhammer products") {
  CHECK(pochhammer(+1, 1, 1, 2, 3) == from_ints({1, -1, -1, 1}));
  CHECK(pochhammer(+1, 1, 2, 2, 4) == from_ints({1, -1, 0, -1, 1}));
  CHECK(pochhammer(-1, 1, 1, 1, 2) == from_ints({1, 1, 0}));
  CHECK(pochhammer(+1, 1, 1, 0, 2) == Series::one(2));

  // (-1; q)_n == 2 (-q; q)_{n-1}
  for (long n = 1; n <= 5; ++n) {
    Series lhs = pochhammer(-1, 0, 1, n, 12);
    Series rhs = pochhammer(-1, 1, 1, n - 1, 12);
    rhs.scale(2);
    CHECK(lhs == rhs);
  }

  CHECK_THROWS_AS(pochhammer(+1, 0, 1, 1, 4), std::domain_error);
  CHECK_THROWS_AS(pochhammer(+1, -1, 1, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(pochhammer(+1, 1, 0, 1, 4), std::invalid_argument);
}

TEST_CASE("Pochhammer splitting identity") {
  // (x; q^d)_n == (x; q^d)_k * (x q^{kd}; q^d)_{n-k}
  for (long n : {3L, 5L, 7L}) {
    for (long k = 0; k <= n; ++k) {
      Series whole = pochhammer(-1, 2, 3, n, 40);
      Series split = pochhammer(-1, 2, 3, k, 40) * pochhammer(-1, 2 + 3 * k, 3, n - k, 40);
      CHECK(whole == split);
    }
  }
}

TEST_CASE("infinite Pochhammer matches long finite product at truncation") {
  Series inf = pochhammer(+1, 1, 1, kInfinity, 20);
  Series fin = pochhammer(+1, 1, 1, 20, 20);
  CHECK(inf == fin);

  // Euler: (q; q)_inf has coefficients +-1 at generalized pentagonal numbers.
  Series expected(20);
  expected.set_coeff(0, 1);
  expected.set_coeff(1, -1);
  expected.set_coeff(2, -1);
  expected.set_coeff(5, 1);
  expected.set_coeff(7, 1);
  expected.set_coeff(12, -1);
  expected.set_coeff(15, -1);
  CHECK(inf == expected);

  CHECK_THROWS_AS(pochhammer(+1, 0, 1, kInfinity, 4), std::domain_error);
  CHECK_THROWS_AS(pochhammer(-1, 0, 1, kInfinity, 4), std::domain_error);
}

TEST_CASE("Pochhammer inverse round trips") {
  for (long n : {0L, 1L, 4L}) {
    Series p = pochhammer(-1, 1, 2, n, 30) * pochhammer_inverse(-1, 1, 2, n, 30);
    CHECK(p == Series::one(30));
  }
  Series p = pochhammer(+1, 1, 1, kInfinity, 25) * pochhammer_inverse(+1, 1, 1, kInfinity, 25);
  CHECK(p == Series::one(25));

  // 1/(q;q)_inf is the partition generating function.
  Series parts = pochhammer_inverse(+1, 1, 1, kInfinity, 10);
  std::vector<long> pn = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  CHECK(parts == from_ints(pn));

  CHECK_THROWS_AS(pochhammer_inverse(-1, 0, 1, 2, 4), std::domain_error);
}

TEST_CASE("Gaussian binomials") {
  CHECK(gaussian_binomial(2, 1, 2) == from_ints({1, 1, 0}));
  CHECK(gaussian_binomial(4, 2, 4) == from_ints({1, 1, 2, 1, 1}));
  CHECK(gaussian_binomial(5, 0, 3) == Series::one(3));
  CHECK(gaussian_binomial(5, 5, 3) == Series::one(3));
  CHECK_THROWS_AS(gaussian_binomial(3, 4, 5), std::invalid_argument);

  for (long n = 0; n <= 8; ++n) {
    for (long j = 0; j <= n; ++j) {
      long deg = j * (n - j);
      Series g = gaussian_binomial(n, j, deg);
      // Symmetry in the lower index.
      CHECK(g == gaussian_binomial(n, n - j, deg));
      // All coefficients nonnegative, top coefficient 1.
      for (long m = 0; m <= deg; ++m) CHECK(g.coeff(m) >= 0);
      CHECK(g.coeff(deg) == 1);
    }
  }

  // Pascal recurrence [n j] = [n-1 j-1] + q^j [n-1 j].
  for (long n = 1; n <= 7; ++n) {
    for (long j = 1; j < n; ++j) {
      Series lhs = gaussian_binomial(n, j, 50);
      Series rhs = gaussian_binomial(n - 1, j - 1, 50);
      rhs.add_shifted(gaussian_binomial(n - 1, j, 50), j);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("signed power arithmetic") {
  SignedQPower a{1, 3, false};
  SignedQPower b{-1, 1, false};
  SignedQPower p = a * b;
  CHECK(p.sign == -1);
  CHECK(p.exp == 4);
  SignedQPower d = a / b;
  CHECK(d.sign == -1);
  CHECK(d.exp == 2);
  CHECK_THROWS_AS(a * SignedQPower::infinity(), std::domain_error);
  CHECK_THROWS_AS(a / SignedQPower::infinity(), std::domain_error);
}

TEST_CASE("exact scalar division") {
  Series s = from_ints({2, -4, 6});
  s.divide_exact(2);
  CHECK(s == from_ints({1, -2, 3}));
  Series t = from_ints({1, 2, 3});
  CHECK_THROWS_AS(t.divide_exact(2), std::domain_error);
}

TEST_CASE("JSON round trip and exact format") {
  Series s = from_ints({1, -1, 0});
  CHECK(s.to_json().dump() == R"({"order":2,"coeffs":["1","-1","0"]})");
  CHECK(Series::from_json(s.to_json()) == s);

  // Huge coefficients survive the string round trip.
  Series big(1);
  big.set_coeff(0, Int("123456789012345678901234567890"));
  big.set_coeff(1, Int("-987654321098765432109876543210"));
  CHECK(Series::from_json(big.to_json()) == big);

  nlohmann::json bad = {{"order", 3}, {"coeffs", {"1", "0"}}};
  CHECK_THROWS_AS(Series::from_json(bad), std::invalid_argument);
}

TEST_CASE("first_mismatch reports the lowest differing index") {
  Series a = from_ints({1, 2, 3, 4});
  Series b = from_ints({1, 2, 0, 4});
  auto m = Series::first_mismatch(a, b);
  REQUIRE(m.has_value());
  CHECK(*m == 2);
  CHECK(!Series::first_mismatch(a, a).has_value());
}
