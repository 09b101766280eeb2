#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "klh/bruhat.hpp"
#include "klh/groups.hpp"
#include "klh/heights.hpp"
#include "klh/kl.hpp"

using namespace klh;

namespace {

Element perm(std::vector<int> w) { return Element::permutation(std::move(w)); }
Element dperm(std::vector<int> w) { return Element::signed_window(std::move(w)); }

IntPolynomial poly(std::vector<std::int64_t> c) { return IntPolynomial(std::move(c)); }

// Mirror-profile pairs (low, high) with low <= high make the result top-heavy
// by construction.
IntPolynomial random_top_heavy(std::mt19937& rng, int maxdeg, int maxcoeff) {
  std::uniform_int_distribution<int> degd(0, maxdeg);
  std::uniform_int_distribution<int> coeffd(0, maxcoeff);
  int d = degd(rng);
  std::vector<std::int64_t> c(static_cast<std::size_t>(d) + 1, 0);
  for (int i = 0; 2 * i <= d; ++i) {
    int x = coeffd(rng), y = coeffd(rng);
    c[static_cast<std::size_t>(i)] = std::min(x, y);
    c[static_cast<std::size_t>(d - i)] = std::max(std::max(x, y), i == 0 ? 1 : 0);
  }
  return IntPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("mirror profile of a polynomial", "[heights]") {
  CHECK(top_heavy_h(poly({1, 2, 1})).is_infinite());
  CHECK(top_heavy_h(poly({1, 3, 5, 4, 1})) == HValue(1));
  CHECK(top_heavy_h(poly({1, 2})) == HValue(0));
  CHECK(top_heavy_h(poly({7})).is_infinite());

  CHECK_THROWS_AS(top_heavy_h(poly({})), std::invalid_argument);
  CHECK_THROWS_AS(top_heavy_h(poly({1, -1, 2})), std::invalid_argument);
  try {
    top_heavy_h(poly({2, 1}));
    FAIL("expected a rejection");
  } catch (const NotTopHeavyError& e) {
    CHECK(e.failing_index == 0);
  }
  try {
    top_heavy_h(poly({1, 5, 9, 3, 1}));
    FAIL("expected a rejection");
  } catch (const NotTopHeavyError& e) {
    CHECK(e.failing_index == 1);
  }

  CHECK(is_top_heavy(poly({1, 3, 5, 4, 1})));
  CHECK_FALSE(is_top_heavy(poly({2, 1})));
}

TEST_CASE("mirror criterion on whole lower intervals", "[heights]") {
  CoxeterContext a3(GroupType::A, 3);
  GroupTable t(a3);
  CHECK(h_bjorner_ekedahl(t, t.identity_index()).is_infinite());

  Element w3412 = perm({3, 4, 1, 2});
  CHECK(poincare(t, w3412) == poly({1, 3, 5, 4, 1}));
  CHECK(h_bjorner_ekedahl(t, t.index_of(w3412)) == HValue(1));
  CHECK(h_bjorner_ekedahl(w3412) == HValue(1));

  CHECK(h_bjorner_ekedahl(perm({5, 6, 4, 3, 1, 2})) == HValue(3));
}

TEST_CASE("closed form for permutations", "[heights]") {
  CHECK(h_formula_type_a(perm({4, 2, 3, 1})) == HValue(1));
  CHECK(h_formula_type_a(perm({4, 5, 3, 1, 2})) == HValue(2));
  CHECK(h_formula_type_a(perm({5, 6, 4, 3, 1, 2})) == HValue(3));
  CHECK(h_formula_type_a(perm({1, 2, 3})).is_infinite());
  CHECK_THROWS_AS(h_formula_type_a(dperm({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("type D upper bound cases", "[heights]") {
  CHECK(h_upper_bound_type_d(dperm({-1, 2, -3, 4})) == HValue(1));
  CHECK(h_upper_bound_type_d(dperm({1, -3, -2, 4})) == HValue(1));  // magnitude 2
  CHECK(h_upper_bound_type_d(dperm({4, 2, 3, 1, 5})) == HValue(2));
  CHECK(h_upper_bound_type_d(dperm({1, 2, 3, 4})).is_infinite());
  CHECK_THROWS_AS(h_upper_bound_type_d(dperm({1, 2, 3})), std::invalid_argument);
  CHECK_THROWS_AS(h_upper_bound_type_d(perm({1, 2, 3, 4})), std::invalid_argument);
}

TEST_CASE("bound report on individual elements", "[heights]") {
  CoxeterContext a3(GroupType::A, 3);
  GroupTable ta(a3);
  for (GroupTable::Idx i = 0; i < ta.size(); ++i) {
    BoundCheck r = verify_bound(ta, i);
    CHECK(r.holds);
    if (r.singular) CHECK(r.h == HValue(1));
  }

  CoxeterContext d5(GroupType::D, 5);
  GroupTable td(d5);
  BoundCheck r = verify_bound(td, td.index_of(dperm({5, 2, -3, -4, 1})));
  CHECK(r.singular);
  CHECK(r.h == HValue(2));
  CHECK(r.cap == 3);
  CHECK(r.holds);
}

TEST_CASE("agreement between the exact methods", "[heights]") {
  for (CoxeterContext ctx : {CoxeterContext(GroupType::A, 3), CoxeterContext(GroupType::A, 4),
                             CoxeterContext(GroupType::D, 3)}) {
    GroupTable t(ctx);
    KLEngine eng(t);
    for (GroupTable::Idx i = 0; i < t.size(); ++i) {
      HValue via_kl = eng.h_via_kl(i);
      CHECK(h_bjorner_ekedahl(t, i) == via_kl);
      if (ctx.type == GroupType::A) CHECK(h_formula_type_a(t.element(i)) == via_kl);
    }
  }
}

TEST_CASE("upper bound dominates the exact value", "[heights]") {
  CoxeterContext d4(GroupType::D, 4);
  GroupTable t(d4);
  KLEngine eng(t);
  for (GroupTable::Idx i = 0; i < t.size(); ++i) {
    HValue h = eng.h_via_kl(i);
    HValue bound = h_upper_bound_type_d(t.element(i));
    CHECK(h <= bound);
    CHECK(h.is_infinite() == bound.is_infinite());
  }
}

TEST_CASE("h of a product of top-heavy polynomials", "[heights]") {
  CHECK(min_of_h_check(poly({1, 1, 1}), poly({1, 2})));
  CHECK(top_heavy_h(poly({1, 1, 1}) * poly({1, 2})) == HValue(0));
  CHECK(min_of_h_check(poly({1, 1}), poly({1, 1})));

  // a product that loses top-heaviness beyond its first mirror difference
  IntPolynomial g1 = poly({14, 14, 2, 11, 9, 19, 29});
  IntPolynomial g2 = poly({1, 20, 29, 20});
  CHECK(is_top_heavy(g1));
  CHECK(is_top_heavy(g2));
  CHECK_FALSE(is_top_heavy(g1 * g2));
  CHECK(min_of_h_check(g1, g2));
  CHECK(first_mirror_increase(g1 * g2) == HValue(0));

  std::mt19937 rng(5150);
  for (int trial = 0; trial < 60; ++trial) {
    IntPolynomial f1 = random_top_heavy(rng, 12, 30);
    IntPolynomial f2 = random_top_heavy(rng, 12, 30);
    CHECK(min_of_h_check(f1, f2));
  }
}
