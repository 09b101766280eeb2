#pragma once

#include <stdexcept>
#include <string>

#include "klh/bruhat.hpp"
#include "klh/groups.hpp"
#include "klh/hvalue.hpp"
#include "klh/patterns.hpp"
#include "klh/poly.hpp"

namespace klh {

struct NotTopHeavyError : std::runtime_error {
  explicit NotTopHeavyError(int index)
      : std::runtime_error("coefficient at index " + std::to_string(index) +
                           " exceeds its mirror"),
        failing_index(index) {}
  int failing_index;
};

// h(f) = min{0 <= i <= d/2 : [q^i]f < [q^{d-i}]f}, infinity for palindromic f.
// Defined only for top-heavy f with nonnegative coefficients; anything else
// is rejected.
inline HValue top_heavy_h(const IntPolynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("zero polynomial has no mirror profile");
  if (!f.all_nonnegative()) throw std::invalid_argument("negative coefficient");
  int d = f.degree();
  for (int i = 0; 2 * i <= d; ++i)
    if (f.coeff(i) > f.coeff(d - i)) throw NotTopHeavyError(i);
  for (int i = 0; 2 * i <= d; ++i)
    if (f.coeff(i) < f.coeff(d - i)) return HValue(i);
  return HValue::infinity();
}

inline bool is_top_heavy(const IntPolynomial& f) {
  if (f.is_zero() || !f.all_nonnegative()) return false;
  int d = f.degree();
  for (int i = 0; 2 * i <= d; ++i)
    if (f.coeff(i) > f.coeff(d - i)) return false;
  return true;
}

inline HValue h_bjorner_ekedahl(const GroupTable& table, GroupTable::Idx w) {
  return top_heavy_h(table.poincare(w));
}

inline HValue h_bjorner_ekedahl(const Element& w) {
  return top_heavy_h(poincare(lower_interval(w)));
}

// Exact h for permutations: 1 on a 4231 occurrence, otherwise the minimum
// height of a 3412 occurrence, infinite when smooth.
inline HValue h_formula_type_a(const Element& w) {
  if (w.context().type != GroupType::A)
    throw std::invalid_argument("the closed form applies to permutations");
  if (contains_classic(w, pattern_4231())) return HValue(1);
  std::optional<int> mh = min_height(w);
  return mh ? HValue(*mh) : HValue::infinity();
}

// Best upper bound for h on type D elements of rank >= 4, by the first
// matching case: a degree-one pattern, a 4231 occurrence, a signed drop with
// its magnitude, singular without any of those, smooth.
inline HValue h_upper_bound_type_d(const Element& w) {
  if (w.context().type != GroupType::D || w.context().rank < 4)
    throw std::invalid_argument("the bound applies to type D from rank four");
  if (h_equals_one_detect(w)) return HValue(1);
  if (contains_classic(w, pattern_4231())) return HValue(2);
  if (std::optional<int> mg = magnitude(w)) return HValue(*mg - 1);
  if (!is_smooth_by_patterns(w)) return HValue(w.context().rank - 2);
  return HValue::infinity();
}

struct BoundCheck {
  bool singular;
  HValue h;
  std::int64_t cap;  // rank - 2
  bool holds;        // singular implies h <= cap
};

// Checks the rank bound for one element, using the cheapest exact h: the
// closed form in type A, the mirror-profile criterion in type D.
inline BoundCheck verify_bound(const GroupTable& table, GroupTable::Idx w) {
  const CoxeterContext& ctx = table.context();
  BoundCheck out;
  out.singular = !is_smooth_by_patterns(table.element(w));
  out.h = ctx.type == GroupType::A ? h_formula_type_a(table.element(w))
                                   : h_bjorner_ekedahl(table, w);
  out.cap = ctx.rank - 2;
  out.holds = !out.singular || out.h <= HValue(out.cap);
  return out;
}

// First index where f differs from its mirror image, which must be an
// increase there; later indices are left unconstrained.
inline HValue first_mirror_increase(const IntPolynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("zero polynomial has no mirror profile");
  if (!f.all_nonnegative()) throw std::invalid_argument("negative coefficient");
  int d = f.degree();
  for (int i = 0; 2 * i <= d; ++i) {
    if (f.coeff(i) < f.coeff(d - i)) return HValue(i);
    if (f.coeff(i) > f.coeff(d - i)) throw NotTopHeavyError(i);
  }
  return HValue::infinity();
}

// A product of top-heavy polynomials can lose top-heaviness beyond its first
// mirror difference (e.g. 14+14q+2q^2+11q^3+9q^4+19q^5+29q^6 times
// 1+20q+29q^2+20q^3), but the factors pin the product's profile up to that
// index: mirror-equal before min(h(f1), h(f2)), strictly increasing there.
// So the product is scanned by first_mirror_increase, not top_heavy_h.
inline bool min_of_h_check(const IntPolynomial& f1, const IntPolynomial& f2) {
  HValue h1 = top_heavy_h(f1);
  HValue h2 = top_heavy_h(f2);
  return first_mirror_increase(f1 * f2) == HValue::min(h1, h2);
}

}  // namespace klh
