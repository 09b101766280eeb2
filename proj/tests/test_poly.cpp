#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <limits>

#include "klh/hvalue.hpp"
#include "klh/poly.hpp"

using klh::HValue;
using klh::IntPolynomial;

TEST_CASE("polynomial construction trims and reports degree", "[poly]") {
  IntPolynomial p({1, 3, 5, 4, 1});
  CHECK(p.degree() == 4);
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(2) == 5);
  CHECK(p.coeff(7) == 0);

  IntPolynomial trimmed({2, 0, 0});
  CHECK(trimmed.degree() == 0);

  CHECK(IntPolynomial::zero().is_zero());
  CHECK(IntPolynomial::zero().degree() == -1);
  CHECK(IntPolynomial({0, 0}).is_zero());
}

TEST_CASE("polynomial ring operations", "[poly]") {
  IntPolynomial q = IntPolynomial::q();
  IntPolynomial one = IntPolynomial::one();

  // (q - 1)(q + 1) = q^2 - 1
  IntPolynomial qm1 = q - one;
  IntPolynomial qp1 = q + one;
  CHECK(qm1 * qp1 == IntPolynomial({-1, 0, 1}));

  // (1 + q)^2 = 1 + 2q + q^2
  CHECK(qp1 * qp1 == IntPolynomial({1, 2, 1}));

  CHECK((q * IntPolynomial::zero()).is_zero());
  CHECK(qp1.scaled(3) == IntPolynomial({3, 3}));
  CHECK(qp1.shifted(2) == IntPolynomial({0, 0, 1, 1}));
  CHECK(qp1.eval(5) == 6);
  CHECK(IntPolynomial({1, 3, 5, 4, 1}).eval(1) == 14);
}

TEST_CASE("mirror reverses coefficients inside the window", "[poly]") {
  // q^4 * p(1/q) for p = 1 + 3q + q^2 is q^2 + 3q^3 + q^4.
  IntPolynomial p({1, 3, 1});
  CHECK(p.mirrored(4) == IntPolynomial({0, 0, 1, 3, 1}));
  CHECK(p.mirrored(2) == IntPolynomial({1, 3, 1}));
  CHECK_THROWS_AS(p.mirrored(1), std::invalid_argument);
  // A palindrome is fixed by its own window.
  IntPolynomial pal({1, 2, 1});
  CHECK(pal.mirrored(2) == pal);
}

TEST_CASE("truncation keeps the low-degree part", "[poly]") {
  IntPolynomial p({4, 0, -2, 7});
  CHECK(p.truncated(1) == IntPolynomial({4}));
  CHECK(p.truncated(2) == IntPolynomial({4, 0, -2}));
  CHECK(p.truncated(5) == p);
  CHECK(p.truncated(-1).is_zero());
}

TEST_CASE("coefficient overflow aborts instead of wrapping", "[poly]") {
  std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2 + 1;
  IntPolynomial p = IntPolynomial::monomial(0, big);
  CHECK_THROWS_AS(p + p, klh::OverflowError);
  CHECK_THROWS_AS(p * p, klh::OverflowError);
  CHECK_THROWS_AS(p.scaled(4), klh::OverflowError);
}

TEST_CASE("h values order with infinity on top", "[hvalue]") {
  HValue two(2);
  HValue three(3);
  HValue inf = HValue::infinity();

  CHECK(two < three);
  CHECK(three < inf);
  CHECK(inf == HValue::infinity());
  CHECK(HValue::min(three, inf) == three);
  CHECK(HValue::min(inf, inf).is_infinite());
  CHECK(two.str() == "2");
  CHECK(inf.str() == "inf");
  CHECK_THROWS_AS(inf.value(), std::logic_error);
  CHECK_THROWS_AS(HValue(-1), std::invalid_argument);
}
