#pragma once

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "klh/groups.hpp"

namespace klh {

struct Occurrence {
  std::vector<int> positions;  // ascending; type D classic occurrences may use negative indices
  std::vector<int> values;
};

// A pattern whose entries carry signs; sign_free_first marks the "+-" families
// where the smallest-magnitude entry may take either sign.
struct SignedPattern {
  std::vector<int> base;
  bool sign_free_first;
};

inline const std::vector<int>& pattern_3412() {
  static const std::vector<int> p{3, 4, 1, 2};
  return p;
}

inline const std::vector<int>& pattern_4231() {
  static const std::vector<int> p{4, 2, 3, 1};
  return p;
}

inline const SignedPattern& signed_12_3bar() {
  static const SignedPattern p{{1, 2, -3}, true};
  return p;
}

inline const SignedPattern& signed_1_3bar_2bar() {
  static const SignedPattern p{{1, -3, -2}, true};
  return p;
}

inline const SignedPattern& signed_14_3bar_2() {
  static const SignedPattern p{{1, 4, -3, 2}, true};
  return p;
}

namespace detail {

// Chosen values so far stay order-isomorphic to the pattern prefix.
inline bool order_compatible(const std::vector<int>& pat, const std::vector<int>& vals, int v) {
  std::size_t j = vals.size();
  for (std::size_t t = 0; t < j; ++t) {
    if ((pat[t] < pat[j]) != (vals[t] < v)) return false;
    if (vals[t] == v) return false;
  }
  return true;
}

// Enumerates classic occurrences of p in position-lex order; fn returning
// false stops the walk early.
template <typename Fn>
bool for_each_classic(const Element& w, const std::vector<int>& p, Fn&& fn) {
  int n = w.n();
  bool type_d = w.context().type == GroupType::D;
  std::vector<int> index_pool;
  if (type_d)
    for (int i = -n; i <= n; ++i) {
      if (i != 0) index_pool.push_back(i);
    }
  else
    for (int i = 1; i <= n; ++i) index_pool.push_back(i);

  std::size_t k = p.size();
  std::vector<int> pos, vals;
  pos.reserve(k);
  vals.reserve(k);
  auto rec = [&](auto&& self, std::size_t start) -> bool {
    if (pos.size() == k) return fn(pos, vals);
    for (std::size_t t = start; t < index_pool.size(); ++t) {
      int i = index_pool[t];
      if (type_d) {
        bool dup = false;
        for (int q : pos)
          if (std::abs(q) == std::abs(i)) dup = true;
        if (dup) continue;
      }
      int v = w(i);
      if (!order_compatible(p, vals, v)) continue;
      pos.push_back(i);
      vals.push_back(v);
      if (!self(self, t + 1)) return false;
      pos.pop_back();
      vals.pop_back();
    }
    return true;
  };
  return rec(rec, 0);
}

inline bool sign_of(int x) { return x > 0; }

// Enumerates signed occurrences (positive positions, sign and magnitude-order
// match) of one concrete variant.
template <typename Fn>
bool for_each_signed_variant(const Element& w, const std::vector<int>& p, Fn&& fn) {
  int n = w.n();
  std::size_t k = p.size();
  std::vector<int> abs_p(k);
  for (std::size_t j = 0; j < k; ++j) abs_p[j] = std::abs(p[j]);
  std::vector<int> pos, vals, abs_vals;
  auto rec = [&](auto&& self, int start) -> bool {
    if (pos.size() == k) return fn(pos, vals);
    std::size_t j = pos.size();
    for (int i = start; i <= n; ++i) {
      int v = w(i);
      if (sign_of(v) != sign_of(p[j])) continue;
      if (!order_compatible(abs_p, abs_vals, std::abs(v))) continue;
      pos.push_back(i);
      vals.push_back(v);
      abs_vals.push_back(std::abs(v));
      if (!self(self, i + 1)) return false;
      pos.pop_back();
      vals.pop_back();
      abs_vals.pop_back();
    }
    return true;
  };
  return rec(rec, 1);
}

}  // namespace detail

inline std::vector<Occurrence> find_classic(const Element& w, const std::vector<int>& p,
                                            std::size_t max_count = SIZE_MAX) {
  std::vector<Occurrence> out;
  detail::for_each_classic(w, p, [&](const std::vector<int>& pos, const std::vector<int>& vals) {
    out.push_back(Occurrence{pos, vals});
    return out.size() < max_count;
  });
  return out;
}

inline std::vector<Occurrence> find_signed(const Element& w, const SignedPattern& p,
                                           std::size_t max_count = SIZE_MAX) {
  if (w.context().type != GroupType::D)
    throw std::invalid_argument("signed patterns apply to type D elements");
  std::vector<Occurrence> out;
  auto collect = [&](const std::vector<int>& pos, const std::vector<int>& vals) {
    out.push_back(Occurrence{pos, vals});
    return out.size() < max_count;
  };
  if (!detail::for_each_signed_variant(w, p.base, collect)) return out;
  if (p.sign_free_first) {
    std::vector<int> flipped = p.base;
    flipped[0] = -flipped[0];
    detail::for_each_signed_variant(w, flipped, collect);
  }
  return out;
}

inline bool contains_classic(const Element& w, const std::vector<int>& p) {
  return !find_classic(w, p, 1).empty();
}

inline bool contains_signed(const Element& w, const SignedPattern& p) {
  return !find_signed(w, p, 1).empty();
}

inline bool is_smooth_by_patterns(const Element& w) {
  if (contains_classic(w, pattern_3412()) || contains_classic(w, pattern_4231())) return false;
  if (w.context().type == GroupType::D)
    if (contains_signed(w, signed_12_3bar()) || contains_signed(w, signed_1_3bar_2bar()) ||
        contains_signed(w, signed_14_3bar_2()))
      return false;
  return true;
}

// Minimum of w(a) - w(d) over occurrences of 3412 at positions a<b<c<d.
inline std::optional<int> min_height(const Element& w) {
  std::optional<int> best;
  detail::for_each_classic(w, pattern_3412(),
                           [&](const std::vector<int>&, const std::vector<int>& vals) {
                             int ht = vals[0] - vals[3];
                             if (!best || ht < *best) best = ht;
                             return !(best && *best == 1);  // nothing beats height one
                           });
  return best;
}

// Minimum of 1 + #{i : b < i < c, w(d) < w(i) < w(a)} over 3412 occurrences.
inline std::optional<int> min_content(const Element& w) {
  if (w.context().type != GroupType::A)
    throw std::invalid_argument("content is defined for permutations");
  std::optional<int> best;
  detail::for_each_classic(w, pattern_3412(),
                           [&](const std::vector<int>& pos, const std::vector<int>& vals) {
                             int content = 1;
                             for (int i = pos[1] + 1; i < pos[2]; ++i)
                               if (vals[3] < w(i) && w(i) < vals[0]) ++content;
                             if (!best || content < *best) best = content;
                             return !(best && *best == 1);
                           });
  return best;
}

// Smallest b > 0 over occurrences of +-1 3bar 2bar with values a cbar bbar.
inline std::optional<int> magnitude(const Element& w) {
  if (w.context().type != GroupType::D)
    throw std::invalid_argument("signed patterns apply to type D elements");
  std::optional<int> best;
  auto scan = [&](const std::vector<int>&, const std::vector<int>& vals) {
    int b = std::abs(vals[2]);
    if (!best || b < *best) best = b;
    return true;
  };
  detail::for_each_signed_variant(w, signed_1_3bar_2bar().base, scan);
  std::vector<int> flipped = signed_1_3bar_2bar().base;
  flipped[0] = -flipped[0];
  detail::for_each_signed_variant(w, flipped, scan);
  return best;
}

inline bool has_height_one_3412(const Element& w) {
  bool found = false;
  detail::for_each_classic(w, pattern_3412(),
                           [&](const std::vector<int>&, const std::vector<int>& vals) {
                             if (vals[0] - vals[3] == 1) {
                               found = true;
                               return false;
                             }
                             return true;
                           });
  return found;
}

// Sufficient pattern conditions for the first nonzero coefficient to sit in
// degree one.
inline bool h_equals_one_detect(const Element& w) {
  if (w.context().type == GroupType::A) {
    if (contains_classic(w, pattern_4231())) return true;
    return has_height_one_3412(w);
  }
  if (contains_signed(w, signed_12_3bar()) || contains_signed(w, signed_14_3bar_2())) return true;
  return has_height_one_3412(w);
}

}  // namespace klh
