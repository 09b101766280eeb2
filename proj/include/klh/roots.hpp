#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klh/groups.hpp"
#include "klh/poly.hpp"

namespace klh {

// A root as a coordinate vector in Z^n.  Positive roots of A_{n-1} are
// e_j - e_i for i < j; type D_n adds e_j + e_i.  Either way the coordinate
// with the larger index carries +1 exactly when the root is positive.
struct Root {
  std::vector<int> c;

  bool operator==(const Root& o) const { return c == o.c; }
  bool operator!=(const Root& o) const { return c != o.c; }
  bool operator<(const Root& o) const { return c < o.c; }

  std::string str() const {
    std::string hi, lo;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      std::string term = "e" + std::to_string(k + 1);
      if (c[k] > 0 && hi.empty())
        hi = term;
      else
        lo = (c[k] > 0 ? "+" : "-") + term;
    }
    return hi + lo;
  }
};

inline Root make_root(int n, int i, int sign_i, int j) {
  Root r;
  r.c.assign(static_cast<std::size_t>(n), 0);
  r.c[static_cast<std::size_t>(j - 1)] = 1;
  r.c[static_cast<std::size_t>(i - 1)] = sign_i;
  return r;
}

inline bool is_positive_root(const Root& r) {
  for (std::size_t k = r.c.size(); k-- > 0;)
    if (r.c[k] != 0) return r.c[k] > 0;
  return false;
}

// All positive roots, sorted by coordinate vector.  This is the canonical
// root ordering used everywhere results need to be deterministic.
inline std::vector<Root> positive_roots(const CoxeterContext& ctx) {
  int n = ctx.degree();
  std::vector<Root> out;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      out.push_back(make_root(n, i, -1, j));
      if (ctx.type == GroupType::D) out.push_back(make_root(n, i, +1, j));
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline Root apply_root(const Element& w, const Root& r) {
  Root out;
  out.c.assign(r.c.size(), 0);
  for (std::size_t k = 0; k < r.c.size(); ++k) {
    if (r.c[k] == 0) continue;
    int img = w(static_cast<int>(k) + 1);
    int idx = img < 0 ? -img : img;
    out.c[static_cast<std::size_t>(idx - 1)] += (img < 0 ? -1 : 1) * r.c[k];
  }
  return out;
}

// Decomposes a positive root into (i, sign_i, j): r = e_j + sign_i * e_i,
// i < j.  Throws if r is not a positive root of the context.
inline std::tuple<int, int, int> positive_root_parts(const CoxeterContext& ctx, const Root& r) {
  if (static_cast<int>(r.c.size()) != ctx.degree())
    throw std::invalid_argument("root has wrong coordinate count for context");
  int i = 0, j = 0, si = 0;
  for (std::size_t k = 0; k < r.c.size(); ++k) {
    if (r.c[k] == 0) continue;
    if (r.c[k] != 1 && r.c[k] != -1) throw std::invalid_argument("not a root");
    if (j == 0 && i == 0) {
      i = static_cast<int>(k) + 1;
      si = r.c[k];
    } else if (j == 0) {
      j = static_cast<int>(k) + 1;
      if (r.c[k] != 1) throw std::invalid_argument("not a positive root");
    } else {
      throw std::invalid_argument("not a root");
    }
  }
  if (i == 0 || j == 0) throw std::invalid_argument("not a root");
  if (si == -1 && ctx.type == GroupType::A) return {i, si, j};
  if (ctx.type == GroupType::D && (si == -1 || si == 1)) return {i, si, j};
  throw std::invalid_argument("not a positive root of the context");
}

// The reflection through a positive root: (i j) for e_j - e_i, and the
// double sign change (i -j)(-i j) for e_j + e_i.
inline Element reflection_of_root(const CoxeterContext& ctx, const Root& r) {
  auto [i, si, j] = positive_root_parts(ctx, r);
  Element e = Element::identity(ctx);
  std::vector<int> w = e.window();
  if (si == -1) {
    std::swap(w[static_cast<std::size_t>(i - 1)], w[static_cast<std::size_t>(j - 1)]);
  } else {
    w[static_cast<std::size_t>(i - 1)] = -j;
    w[static_cast<std::size_t>(j - 1)] = -i;
  }
  return Element::from_window(ctx, std::move(w));
}

// Positive roots sent to negative ones; |inversion_set(w)| == length(w).
inline std::vector<Root> inversion_set(const Element& w) {
  std::vector<Root> out;
  for (const Root& r : positive_roots(w.context()))
    if (!is_positive_root(apply_root(w, r))) out.push_back(r);
  return out;
}

// Labels of the covers below w in Bruhat order: positive roots whose
// reflection drops the length by exactly one.
inline std::vector<Root> cover_labels(const Element& w) {
  std::vector<Root> out;
  int lw = length(w);
  for (const Root& r : positive_roots(w.context())) {
    Element wr = compose(w, reflection_of_root(w.context(), r));
    if (length(wr) == lw - 1) out.push_back(r);
  }
  return out;
}

// Rank test by fraction-free integer elimination; no divisions, no rounding.
inline bool linearly_dependent(const std::vector<Root>& roots) {
  if (roots.empty()) return false;
  std::size_t rows = roots.size(), cols = roots[0].c.size();
  for (const Root& r : roots)
    if (r.c.size() != cols) throw std::invalid_argument("roots of mixed dimension");
  std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols));
  for (std::size_t a = 0; a < rows; ++a)
    for (std::size_t b = 0; b < cols; ++b) m[a][b] = roots[a].c[b];

  std::size_t rank = 0;
  std::int64_t prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t a = rank + 1; a < rows; ++a) {
      for (std::size_t b = col + 1; b < cols; ++b) {
        std::int64_t num =
            checked_add(checked_mul(m[rank][col], m[a][b]), -checked_mul(m[a][col], m[rank][b]));
        m[a][b] = num / prev;  // Bareiss: division is exact
      }
      m[a][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank < rows;
}

// If w covers w*r_beta, there is nothing to split and the result is empty.
// Otherwise returns the lexicographically first pair (b1, b2) of inversions
// of w with b1 + b2 = beta, ordered by the coordinates of b1.
inline std::optional<std::pair<Root, Root>> split_inversion(const Element& w, const Root& beta) {
  std::vector<Root> inv = inversion_set(w);
  if (std::find(inv.begin(), inv.end(), beta) == inv.end())
    throw std::invalid_argument("root is not an inversion of the element");
  Element wr = compose(w, reflection_of_root(w.context(), beta));
  if (length(wr) == length(w) - 1) return std::nullopt;

  std::set<std::vector<int>> members;
  for (const Root& r : inv) members.insert(r.c);
  for (const Root& b1 : inv) {
    if (b1 == beta) continue;
    Root b2;
    b2.c.resize(beta.c.size());
    for (std::size_t k = 0; k < beta.c.size(); ++k) b2.c[k] = beta.c[k] - b1.c[k];
    if (members.count(b2.c)) return std::make_pair(b1, b2);
  }
  throw std::logic_error("no split found for a non-cover inversion");
}

}  // namespace klh
