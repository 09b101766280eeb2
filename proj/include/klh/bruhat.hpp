#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "klh/groups.hpp"
#include "klh/poly.hpp"
#include "klh/roots.hpp"

namespace klh {
namespace detail {

// Fixed-size bit row over element indices.
class BitRow {
 public:
  explicit BitRow(std::size_t n = 0) : n_(n), w_((n + 63) / 64, 0) {}

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }

  void or_with(const BitRow& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }

  template <class Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t x = w_[k];
      while (x) {
        fn((k << 6) + static_cast<std::size_t>(__builtin_ctzll(x)));
        x &= x - 1;
      }
    }
  }

  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> w_;
};

}  // namespace detail

// Gale order on sorted prefixes: the type A fast path for Bruhat comparison.
inline std::vector<int> sorted_prefix(const Element& w, int k) {
  if (k < 0 || k > w.n()) throw std::invalid_argument("prefix length out of range");
  std::vector<int> p(w.window().begin(), w.window().begin() + k);
  std::sort(p.begin(), p.end());
  return p;
}

inline bool leq_gale(const Element& u, const Element& w) {
  require_same_context(u, w);
  if (u.context().type != GroupType::A)
    throw std::invalid_argument("Gale comparison is the type A fast path");
  int n = u.n();
  // entrywise domination of sorted prefixes, maintained incrementally
  std::vector<int> pu, pw;
  for (int k = 1; k < n; ++k) {
    pu.insert(std::upper_bound(pu.begin(), pu.end(), u(k)), u(k));
    pw.insert(std::upper_bound(pw.begin(), pw.end(), w(k)), w(k));
    for (int t = 0; t < k; ++t)
      if (pu[static_cast<std::size_t>(t)] > pw[static_cast<std::size_t>(t)]) return false;
  }
  return true;
}

// Descent-lifting recursion; works in both types and memoizes within a call.
inline bool leq_lifting(const Element& u, const Element& w) {
  require_same_context(u, w);
  struct Memo {
    std::map<std::pair<std::vector<int>, std::vector<int>>, bool> m;
  } memo;
  auto rec = [&memo](auto&& self, const Element& y, const Element& x) -> bool {
    if (y == x) return true;
    int ly = length(y), lx = length(x);
    if (ly >= lx) return false;
    auto key = std::make_pair(y.window(), x.window());
    auto it = memo.m.find(key);
    if (it != memo.m.end()) return it->second;
    int s = -1;
    for (int c : x.context().simple_labels())
      if (has_right_descent(x, c)) {
        s = c;
        break;
      }
    Element xs = right_mult(x, s);
    bool r = has_right_descent(y, s) ? self(self, right_mult(y, s), xs) : self(self, y, xs);
    memo.m[key] = r;
    return r;
  };
  return rec(rec, u, w);
}

inline bool leq(const Element& u, const Element& w) {
  require_same_context(u, w);
  if (u.context().type == GroupType::A) return leq_gale(u, w);
  return leq_lifting(u, w);
}

// Everything about one enumerated group: the deterministic element numbering,
// multiplication tables for the generators, lengths, descent masks, and one
// bit row per element recording its lower Bruhat cone.
class GroupTable {
 public:
  static constexpr std::uint64_t kDefaultLimit = 50000;

  explicit GroupTable(const CoxeterContext& ctx, std::uint64_t limit = kDefaultLimit)
      : ctx_(ctx) {
    if (ctx.order_exceeds(limit))
      throw LimitExceeded("group " + ctx.str() + " is too large for an order table (limit " +
                              std::to_string(limit) + ")",
                          ctx.order_exceeds(1ull << 62) ? 0 : ctx.order());
    elems_ = enumerate_group(ctx, limit);
    std::size_t n = elems_.size();
    index_.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) index_.emplace(elems_[i].window(), static_cast<Idx>(i));
    len_.resize(n);
    for (std::size_t i = 0; i < n; ++i) len_[i] = static_cast<std::uint16_t>(length(elems_[i]));

    const std::vector<int> labels = ctx.simple_labels();
    rmult_.assign(labels.size(), std::vector<Idx>(n));
    lmult_.assign(labels.size(), std::vector<Idx>(n));
    for (std::size_t si = 0; si < labels.size(); ++si)
      for (std::size_t i = 0; i < n; ++i) {
        rmult_[si][i] = index_.at(right_mult(elems_[i], labels[si]).window());
        lmult_[si][i] = index_.at(left_mult(elems_[i], labels[si]).window());
      }
    inv_.resize(n);
    for (std::size_t i = 0; i < n; ++i) inv_[i] = index_.at(inverse(elems_[i]).window());
    rdesc_.assign(n, 0);
    ldesc_.assign(n, 0);
    for (std::size_t si = 0; si < labels.size(); ++si)
      for (std::size_t i = 0; i < n; ++i) {
        if (len_[rmult_[si][i]] < len_[i]) rdesc_[i] |= std::uint32_t(1) << si;
        if (len_[lmult_[si][i]] < len_[i]) ldesc_[i] |= std::uint32_t(1) << si;
      }

    // Lower cones in length order: the cone of w is the cone of ws unioned
    // with its image under right multiplication by s, for any descent s.
    below_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) below_.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (len_[i] == 0) {
        below_[i].set(i);
        continue;
      }
      std::size_t si = static_cast<std::size_t>(__builtin_ctz(rdesc_[i]));
      Idx v = rmult_[si][i];
      below_[i] = below_[v];
      below_[v].for_each_set([&](std::size_t u) { below_[i].set(rmult_[si][u]); });
    }
  }

  using Idx = std::uint32_t;

  const CoxeterContext& context() const { return ctx_; }
  std::size_t size() const { return elems_.size(); }
  const Element& element(Idx i) const { return elems_[i]; }
  const std::vector<Element>& elements() const { return elems_; }
  int length_of(Idx i) const { return len_[i]; }

  Idx index_of(const Element& w) const {
    if (w.context() != ctx_) throw std::invalid_argument("mismatched group contexts");
    return index_.at(w.window());
  }

  Idx identity_index() const { return 0; }
  Idx inverse_of(Idx i) const { return inv_[i]; }

  int simple_position(int label) const {
    const std::vector<int> labels = ctx_.simple_labels();
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw std::invalid_argument("label outside diagram");
    return static_cast<int>(it - labels.begin());
  }

  Idx right_mult_index(Idx i, int label) const {
    return rmult_[static_cast<std::size_t>(simple_position(label))][i];
  }
  Idx left_mult_index(Idx i, int label) const {
    return lmult_[static_cast<std::size_t>(simple_position(label))][i];
  }

  std::uint32_t right_descent_mask(Idx i) const { return rdesc_[i]; }
  std::uint32_t left_descent_mask(Idx i) const { return ldesc_[i]; }

  bool leq_index(Idx u, Idx w) const { return below_[w].test(u); }
  bool leq(const Element& u, const Element& w) const { return leq_index(index_of(u), index_of(w)); }
  const detail::BitRow& below(Idx w) const { return below_[w]; }

  // Members of [e, w], ascending in the enumeration order (length-major).
  std::vector<Idx> interval_below(Idx w) const {
    std::vector<Idx> out;
    out.reserve(below_[w].count());
    below_[w].for_each_set([&](std::size_t u) { out.push_back(static_cast<Idx>(u)); });
    return out;
  }

  IntPolynomial poincare(Idx w) const {
    std::vector<std::int64_t> c(static_cast<std::size_t>(len_[w]) + 1, 0);
    below_[w].for_each_set([&](std::size_t u) { ++c[len_[u]]; });
    return IntPolynomial(std::move(c));
  }

 private:
  CoxeterContext ctx_;
  std::vector<Element> elems_;
  std::unordered_map<std::vector<int>, Idx, WindowHash> index_;
  std::vector<std::uint16_t> len_;
  std::vector<std::vector<Idx>> rmult_, lmult_;
  std::vector<Idx> inv_;
  std::vector<std::uint32_t> rdesc_, ldesc_;
  std::vector<detail::BitRow> below_;
};

// Shared per-context tables; workers treat them as read-only.
inline std::shared_ptr<const GroupTable> shared_table(const CoxeterContext& ctx,
                                                      std::uint64_t limit = GroupTable::kDefaultLimit) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const GroupTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(ctx.type), ctx.rank);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const GroupTable>(ctx, limit);
  cache.emplace(key, table);
  return table;
}

inline std::vector<Element> covers_down(const Element& w) {
  std::vector<Element> out;
  for (const Root& r : cover_labels(w))
    out.push_back(compose(w, reflection_of_root(w.context(), r)));
  return out;
}

// Lower Bruhat interval [e, w], members grouped by length.
struct BruhatInterval {
  Element top;
  std::vector<std::vector<Element>> by_rank;

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& rank : by_rank) n += rank.size();
    return n;
  }

  std::vector<std::size_t> rank_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& rank : by_rank) out.push_back(rank.size());
    return out;
  }
};

inline BruhatInterval lower_interval(const GroupTable& table, const Element& w) {
  GroupTable::Idx wi = table.index_of(w);
  BruhatInterval out{w, {}};
  out.by_rank.assign(static_cast<std::size_t>(table.length_of(wi)) + 1, {});
  table.below(wi).for_each_set([&](std::size_t u) {
    GroupTable::Idx ui = static_cast<GroupTable::Idx>(u);
    out.by_rank[static_cast<std::size_t>(table.length_of(ui))].push_back(table.element(ui));
  });
  for (auto& rank : out.by_rank) std::sort(rank.begin(), rank.end());
  return out;
}

// Same interval by downward closure of covers; independent of the order table.
inline BruhatInterval lower_interval_bfs(const Element& w) {
  std::map<std::vector<int>, Element> seen;
  std::vector<Element> frontier = {w};
  seen.emplace(w.window(), w);
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const Element& u : frontier)
      for (const Element& c : covers_down(u)) {
        if (seen.emplace(c.window(), c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  BruhatInterval out{w, {}};
  out.by_rank.assign(static_cast<std::size_t>(length(w)) + 1, {});
  for (const auto& [win, e] : seen) out.by_rank[static_cast<std::size_t>(length(e))].push_back(e);
  for (auto& rank : out.by_rank) std::sort(rank.begin(), rank.end());
  return out;
}

// Strategy switch: filter the full enumeration while the group stays small,
// otherwise walk covers downward.
inline BruhatInterval lower_interval(const Element& w) {
  if (!w.context().order_exceeds(GroupTable::kDefaultLimit))
    return lower_interval(*shared_table(w.context()), w);
  return lower_interval_bfs(w);
}

inline IntPolynomial poincare(const BruhatInterval& iv) {
  std::vector<std::int64_t> c(iv.by_rank.size());
  for (std::size_t i = 0; i < iv.by_rank.size(); ++i)
    c[i] = static_cast<std::int64_t>(iv.by_rank[i].size());
  return IntPolynomial(std::move(c));
}

inline IntPolynomial poincare(const GroupTable& table, const Element& w) {
  return table.poincare(table.index_of(w));
}

// Rank generating function of [e, w]^J = { y in W^J : y <= w }, for w with no
// right descent in J.
inline IntPolynomial quotient_poincare(const GroupTable& table, const Element& w,
                                       const ParabolicSubset& J) {
  for (int s : J.nodes)
    if (has_right_descent(w, s))
      throw std::invalid_argument("element is not a minimal coset representative");
  std::uint32_t jmask = 0;
  for (int s : J.nodes) jmask |= std::uint32_t(1) << table.simple_position(s);
  GroupTable::Idx wi = table.index_of(w);
  std::vector<std::int64_t> c(static_cast<std::size_t>(table.length_of(wi)) + 1, 0);
  table.below(wi).for_each_set([&](std::size_t u) {
    if ((table.right_descent_mask(static_cast<GroupTable::Idx>(u)) & jmask) == 0)
      ++c[table.length_of(static_cast<GroupTable::Idx>(u))];
  });
  return IntPolynomial(std::move(c));
}

// Whether w = w^J * w_J multiplies Poincare polynomials: true exactly when
// the support of w^J meets J only inside the left descents of w_J.
inline bool is_bp_decomposition(const Element& w, const ParabolicSubset& J) {
  auto [wq, wj] = parabolic_decompose(w, J, Side::Right);
  for (int s : support(wq))
    if (J.contains(s) && !has_left_descent(wj, s)) return false;
  return true;
}

}  // namespace klh
