#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>
#include <vector>

#include "qseries/quadfield.hpp"

using qseries::CountMethod;
using qseries::ideal_count;
using qseries::ideal_count_enumerated;
using qseries::ideal_count_multiplicative;
using qseries::ideal_theta;
using qseries::IdealWeight;
using qseries::kronecker_minus4;
using qseries::Ring;
using qseries::Series;
using qseries::WeightBase;

TEST_CASE("hand-computed count tables") {
  std::vector<long> sqrt2 = {1, 1, 0, 1, 0, 0, 2, 1, 1, 0};
  for (long n = 1; n <= 10; ++n) {
    CHECK(ideal_count_enumerated(Ring::Sqrt2, n) == sqrt2[static_cast<size_t>(n - 1)]);
    CHECK(ideal_count_multiplicative(Ring::Sqrt2, n) == sqrt2[static_cast<size_t>(n - 1)]);
  }
  std::vector<long> sqrt3 = {1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 2, 1, 2};
  for (long n = 1; n <= 13; ++n) {
    CHECK(ideal_count_enumerated(Ring::Sqrt3, n) == sqrt3[static_cast<size_t>(n - 1)]);
    CHECK(ideal_count_multiplicative(Ring::Sqrt3, n) == sqrt3[static_cast<size_t>(n - 1)]);
  }
}

TEST_CASE("unit ideal is counted once") {
  for (Ring r : {Ring::Sqrt2, Ring::Sqrt3})
    for (CountMethod m : {CountMethod::Enumerate, CountMethod::Multiplicative})
      CHECK(ideal_count(r, 1, m) == 1);
}

TEST_CASE("norm must be positive") {
  CHECK_THROWS_AS(ideal_count_enumerated(Ring::Sqrt2, 0), std::invalid_argument);
  CHECK_THROWS_AS(ideal_count_multiplicative(Ring::Sqrt3, -3), std::invalid_argument);
}

TEST_CASE("enumeration agrees with prime splitting up to 3000") {
  for (Ring r : {Ring::Sqrt2, Ring::Sqrt3})
    for (long n = 1; n <= 3000; ++n) {
      INFO(qseries::to_string(r) << " norm " << n);
      CHECK(ideal_count_enumerated(r, n) == ideal_count_multiplicative(r, n));
    }
}

TEST_CASE("counts are multiplicative on coprime arguments") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> d(1, 400);
  for (Ring r : {Ring::Sqrt2, Ring::Sqrt3}) {
    int done = 0;
    while (done < 40) {
      long a = d(rng), b = d(rng);
      if (std::gcd(a, b) != 1) continue;
      ++done;
      CHECK(ideal_count_enumerated(r, a * b) ==
            ideal_count_enumerated(r, a) * ideal_count_enumerated(r, b));
    }
  }
}

TEST_CASE("Kronecker symbol at -4") {
  CHECK(kronecker_minus4(1) == 1);
  CHECK(kronecker_minus4(2) == 0);
  CHECK(kronecker_minus4(3) == -1);
  CHECK(kronecker_minus4(4) == 0);
  CHECK(kronecker_minus4(5) == 1);
  CHECK(kronecker_minus4(7) == -1);
  // Completely multiplicative on odd arguments.
  for (long a = 1; a <= 25; a += 2)
    for (long b = 1; b <= 25; b += 2)
      CHECK(kronecker_minus4(a * b) == kronecker_minus4(a) * kronecker_minus4(b));
}

TEST_CASE("weight validation") {
  CHECK_THROWS_AS(IdealWeight::filtered(0, 0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(IdealWeight::filtered(4, 4).validate(), std::invalid_argument);
  // Half-norm parity needs a filter pinning n to even residues.
  CHECK_THROWS_AS(IdealWeight::with_base(WeightBase::NegPowHalfNorm).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      IdealWeight::filtered_base(WeightBase::NegPowHalfNorm, 6, 3).validate(),
      std::invalid_argument);
  CHECK_THROWS_AS(
      IdealWeight::filtered_base(WeightBase::NegPowHalfNorm, 3, 2).validate(),
      std::invalid_argument);
  CHECK_NOTHROW(IdealWeight::filtered_base(WeightBase::NegPowHalfNorm, 6, 4).validate());
}

TEST_CASE("weight factors") {
  IdealWeight w = IdealWeight::filtered_base(WeightBase::NegPowNorm, 3, 1);
  CHECK(w.factor(1) == -1);
  CHECK(w.factor(2) == 0);
  CHECK(w.factor(4) == 1);
  IdealWeight h = IdealWeight::filtered_base(WeightBase::NegPowHalfNorm, 2, 0);
  CHECK(h.factor(2) == -1);
  CHECK(h.factor(4) == 1);
  CHECK(h.factor(5) == 0);
  IdealWeight k = IdealWeight::with_base(WeightBase::KroneckerM4);
  CHECK(k.factor(7) == -1);
  CHECK(k.factor(8) == 0);
}

TEST_CASE("theta series across methods") {
  for (Ring r : {Ring::Sqrt2, Ring::Sqrt3}) {
    Series a = ideal_theta(r, IdealWeight::plain(), 500, CountMethod::Enumerate);
    Series b = ideal_theta(r, IdealWeight::plain(), 500, CountMethod::Multiplicative);
    CHECK(a == b);
    CHECK(a.coeff(0) == 0);
    CHECK(a.coeff(1) == 1);
  }
}

TEST_CASE("filtered theta keeps only matching norms") {
  Series t = ideal_theta(Ring::Sqrt2, IdealWeight::filtered(16, 1), 300, CountMethod::Enumerate);
  for (long n = 0; n <= 300; ++n)
    if (n % 16 != 1) CHECK(t.coeff(n) == 0);
  CHECK(t.coeff(1) == 1);
  // 17 = 8 + 9 is 1 mod 16 and splits, so two ideals.
  CHECK(t.coeff(17) == 2);
}
