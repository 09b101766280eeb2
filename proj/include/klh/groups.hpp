#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace klh {

enum class GroupType : std::uint8_t { A, D };
enum class Side : std::uint8_t { Left, Right };

inline char type_letter(GroupType t) { return t == GroupType::A ? 'A' : 'D'; }

// Thrown when an operation would walk a group larger than its caller allowed.
class LimitExceeded : public std::runtime_error {
 public:
  LimitExceeded(const std::string& msg, std::uint64_t required)
      : std::runtime_error(msg), required_(required) {}
  std::uint64_t required_limit() const { return required_; }

 private:
  std::uint64_t required_;
};

// A Weyl group of type A_rank (permutations of rank+1 points) or D_rank
// (even-signed permutations of rank points).
struct CoxeterContext {
  GroupType type;
  int rank;

  CoxeterContext(GroupType t, int r) : type(t), rank(r) {
    if (type == GroupType::A && rank < 1) throw std::invalid_argument("type A needs rank >= 1");
    if (type == GroupType::D && rank < 2) throw std::invalid_argument("type D needs rank >= 2");
  }

  // Number of window entries: A_r acts on r+1 points, D_n on n signed points.
  int degree() const { return type == GroupType::A ? rank + 1 : rank; }

  // Node labels of the diagram: A uses 1..rank, D uses 0..rank-1 with the
  // fork at nodes 0 and 1.
  std::vector<int> simple_labels() const {
    std::vector<int> s;
    if (type == GroupType::A)
      for (int i = 1; i <= rank; ++i) s.push_back(i);
    else
      for (int i = 0; i < rank; ++i) s.push_back(i);
    return s;
  }

  bool has_label(int s) const {
    return type == GroupType::A ? (s >= 1 && s <= rank) : (s >= 0 && s < rank);
  }

  bool operator==(const CoxeterContext& o) const { return type == o.type && rank == o.rank; }
  bool operator!=(const CoxeterContext& o) const { return !(*this == o); }

  // True iff |W| > limit; never overflows.
  bool order_exceeds(std::uint64_t limit) const {
    std::uint64_t ord = 1;
    auto mul = [&](std::uint64_t k) {
      if (ord > limit / k + 1) {
        ord = limit + 1;
        return;
      }
      ord *= k;
    };
    if (type == GroupType::A) {
      for (int k = 2; k <= rank + 1 && ord <= limit; ++k) mul(static_cast<std::uint64_t>(k));
    } else {
      for (int k = 2; k <= rank && ord <= limit; ++k) mul(static_cast<std::uint64_t>(k));
      for (int k = 0; k < rank - 1 && ord <= limit; ++k) mul(2);
    }
    return ord > limit;
  }

  std::uint64_t order() const {
    std::uint64_t ord = 1;
    if (type == GroupType::A) {
      for (int k = 2; k <= rank + 1; ++k) ord *= static_cast<std::uint64_t>(k);
    } else {
      for (int k = 2; k <= rank; ++k) ord *= static_cast<std::uint64_t>(k);
      ord <<= rank - 1;
    }
    return ord;
  }

  std::string str() const { return std::string(1, type_letter(type)) + std::to_string(rank); }
};

// Group element stored in window (one-line) notation.  Type A windows are
// plain permutations of 1..n; type D windows carry signs with an even number
// of negatives, and w(-i) = -w(i) is derived rather than stored.
class Element {
 public:
  static Element permutation(std::vector<int> one_line) {
    int n = static_cast<int>(one_line.size());
    if (n < 2) throw std::invalid_argument("permutation needs at least 2 entries");
    check_window(one_line, /*allow_signs=*/false);
    return Element(CoxeterContext(GroupType::A, n - 1), std::move(one_line));
  }

  static Element signed_window(std::vector<int> window) {
    int n = static_cast<int>(window.size());
    if (n < 2) throw std::invalid_argument("signed window needs at least 2 entries");
    check_window(window, /*allow_signs=*/true);
    int negatives = 0;
    for (int v : window)
      if (v < 0) ++negatives;
    if (negatives % 2 != 0)
      throw std::invalid_argument("window has an odd number of sign changes; not in D_n");
    return Element(CoxeterContext(GroupType::D, n), std::move(window));
  }

  static Element identity(const CoxeterContext& ctx) {
    std::vector<int> w(static_cast<std::size_t>(ctx.degree()));
    for (int i = 0; i < ctx.degree(); ++i) w[static_cast<std::size_t>(i)] = i + 1;
    return Element(ctx, std::move(w));
  }

  static Element from_window(const CoxeterContext& ctx, std::vector<int> window) {
    if (static_cast<int>(window.size()) != ctx.degree())
      throw std::invalid_argument("window length does not match context");
    Element e = ctx.type == GroupType::A ? permutation(std::move(window))
                                         : signed_window(std::move(window));
    if (e.context() != ctx) throw std::invalid_argument("window does not fit context");
    return e;
  }

  const CoxeterContext& context() const { return ctx_; }
  int n() const { return static_cast<int>(win_.size()); }
  const std::vector<int>& window() const { return win_; }

  // w(i) for i in -n..-1, 1..n with w(-i) = -w(i).
  int operator()(int i) const {
    if (i > 0) return win_[static_cast<std::size_t>(i - 1)];
    return -win_[static_cast<std::size_t>(-i - 1)];
  }

  bool is_identity() const {
    for (int i = 0; i < n(); ++i)
      if (win_[static_cast<std::size_t>(i)] != i + 1) return false;
    return true;
  }

  bool operator==(const Element& o) const { return ctx_ == o.ctx_ && win_ == o.win_; }
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool operator<(const Element& o) const {
    if (ctx_.type != o.ctx_.type) return ctx_.type < o.ctx_.type;
    if (ctx_.rank != o.ctx_.rank) return ctx_.rank < o.ctx_.rank;
    return win_ < o.win_;
  }

 private:
  Element(CoxeterContext ctx, std::vector<int> win) : ctx_(ctx), win_(std::move(win)) {}

  static void check_window(const std::vector<int>& w, bool allow_signs) {
    int n = static_cast<int>(w.size());
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int v : w) {
      int a = v < 0 ? -v : v;
      if (v == 0 || a > n) throw std::invalid_argument("window entries must cover 1..n");
      if (!allow_signs && v < 0) throw std::invalid_argument("one-line notation cannot be negative");
      if (seen[static_cast<std::size_t>(a)]) throw std::invalid_argument("repeated window entry");
      seen[static_cast<std::size_t>(a)] = true;
    }
  }

  CoxeterContext ctx_;
  std::vector<int> win_;
};

inline void require_same_context(const Element& u, const Element& v) {
  if (u.context() != v.context()) throw std::invalid_argument("mismatched group contexts");
}

// (u o v)(i) = u(v(i)).
inline Element compose(const Element& u, const Element& v) {
  require_same_context(u, v);
  std::vector<int> w(static_cast<std::size_t>(u.n()));
  for (int i = 1; i <= u.n(); ++i) w[static_cast<std::size_t>(i - 1)] = u(v(i));
  return Element::from_window(u.context(), std::move(w));
}

inline Element inverse(const Element& w) {
  std::vector<int> r(static_cast<std::size_t>(w.n()));
  for (int i = 1; i <= w.n(); ++i) {
    int v = w(i);
    if (v > 0)
      r[static_cast<std::size_t>(v - 1)] = i;
    else
      r[static_cast<std::size_t>(-v - 1)] = -i;
  }
  return Element::from_window(w.context(), std::move(r));
}

// Positivity of the root e_a - e_b for signed indices a, b with |a| != |b|:
// the coordinate with the larger index must carry +1.
inline bool root_diff_positive(int a, int b) {
  int aa = a < 0 ? -a : a, ab = b < 0 ? -b : b;
  return aa > ab ? a > 0 : b < 0;
}

// Coxeter length: the number of positive roots sent to negative ones.  In
// type A this is the inversion count of the one-line notation.
inline int length(const Element& w) {
  int n = w.n();
  int len = 0;
  if (w.context().type == GroupType::A) {
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (w(i) > w(j)) ++len;
  } else {
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        if (!root_diff_positive(w(j), w(i))) ++len;   // image of e_j - e_i
        if (!root_diff_positive(w(j), -w(i))) ++len;  // image of e_j + e_i
      }
  }
  return len;
}

inline bool has_right_descent(const Element& w, int s) {
  if (!w.context().has_label(s)) throw std::invalid_argument("label outside diagram");
  if (w.context().type == GroupType::D && s == 0) return w(1) + w(2) < 0;
  return w(s) > w(s + 1);
}

// w * s: simple reflections act on positions from the right.
inline Element right_mult(const Element& w, int s) {
  if (!w.context().has_label(s)) throw std::invalid_argument("label outside diagram");
  std::vector<int> r(w.window());
  if (w.context().type == GroupType::D && s == 0) {
    int a = r[0], b = r[1];
    r[0] = -b;
    r[1] = -a;
  } else {
    std::swap(r[static_cast<std::size_t>(s - 1)], r[static_cast<std::size_t>(s)]);
  }
  return Element::from_window(w.context(), std::move(r));
}

// s * w: simple reflections act on values from the left.
inline Element left_mult(const Element& w, int s) {
  if (!w.context().has_label(s)) throw std::invalid_argument("label outside diagram");
  std::vector<int> r(w.window());
  if (w.context().type == GroupType::D && s == 0) {
    for (auto& v : r) {
      if (v == 1) v = -2;
      else if (v == 2) v = -1;
      else if (v == -1) v = 2;
      else if (v == -2) v = 1;
    }
  } else {
    for (auto& v : r) {
      if (v == s) v = s + 1;
      else if (v == s + 1) v = s;
      else if (v == -s) v = -(s + 1);
      else if (v == -(s + 1)) v = -s;
    }
  }
  return Element::from_window(w.context(), std::move(r));
}

inline Element simple(const CoxeterContext& ctx, int s) {
  return right_mult(Element::identity(ctx), s);
}

inline bool has_left_descent(const Element& w, int s) {
  if (!w.context().has_label(s)) throw std::invalid_argument("label outside diagram");
  // s in D_L(w) iff s in D_R(w^-1); read the inverse off without building it.
  if (w.context().type == GroupType::D && s == 0) {
    // w^-1(1) + w^-1(2) < 0 iff the values 1 and 2 sit at signed positions
    // whose sum is negative.
    int p1 = 0, p2 = 0;
    for (int i = 1; i <= w.n(); ++i) {
      if (w(i) == 1) p1 = i;
      if (w(i) == -1) p1 = -i;
      if (w(i) == 2) p2 = i;
      if (w(i) == -2) p2 = -i;
    }
    return p1 + p2 < 0;
  }
  int ps = 0, ps1 = 0;
  for (int i = 1; i <= w.n(); ++i) {
    int v = w(i);
    if (v == s) ps = i;
    else if (v == -s) ps = -i;
    else if (v == s + 1) ps1 = i;
    else if (v == -(s + 1)) ps1 = -i;
  }
  return ps > ps1;
}

inline bool has_descent(const Element& w, int s, Side side) {
  return side == Side::Right ? has_right_descent(w, s) : has_left_descent(w, s);
}

inline std::vector<int> descents(const Element& w, Side side) {
  std::vector<int> d;
  for (int s : w.context().simple_labels())
    if (has_descent(w, s, side)) d.push_back(s);
  return d;
}

// Diagram automorphism: in type A the reversal conjugation, in type D
// conjugation by the sign change in the first coordinate (swaps nodes 0, 1).
inline Element diagram_automorphism(const Element& w) {
  int n = w.n();
  std::vector<int> r(static_cast<std::size_t>(n));
  if (w.context().type == GroupType::A) {
    for (int i = 1; i <= n; ++i) r[static_cast<std::size_t>(i - 1)] = n + 1 - w(n + 1 - i);
  } else {
    auto sigma = [](int v) { return (v == 1 || v == -1) ? -v : v; };
    for (int i = 1; i <= n; ++i) r[static_cast<std::size_t>(i - 1)] = sigma(w(sigma(i)));
  }
  return Element::from_window(w.context(), std::move(r));
}

struct ParabolicSubset {
  std::vector<int> nodes;  // sorted, unique

  ParabolicSubset(const CoxeterContext& ctx, std::vector<int> labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    for (int s : labels)
      if (!ctx.has_label(s)) throw std::invalid_argument("parabolic node outside diagram");
    nodes = std::move(labels);
  }

  bool contains(int s) const { return std::binary_search(nodes.begin(), nodes.end(), s); }
};

// Right: w = w^J * w_J with w^J minimal in its coset (no right descent in J)
// and w_J in W_J.  Left: w = (J)w * (J^w) with the W_J part first.
inline std::pair<Element, Element> parabolic_decompose(const Element& w, const ParabolicSubset& J,
                                                       Side side) {
  Element u = w;
  Element v = Element::identity(w.context());
  bool moved = true;
  while (moved) {
    moved = false;
    for (int s : J.nodes) {
      if (side == Side::Right && has_right_descent(u, s)) {
        u = right_mult(u, s);
        v = left_mult(v, s);
        moved = true;
      } else if (side == Side::Left && has_left_descent(u, s)) {
        u = left_mult(u, s);
        v = right_mult(v, s);
        moved = true;
      }
    }
  }
  if (side == Side::Right) return {u, v};  // (w^J, w_J)
  return {v, u};                           // ((J)w, (^J)w)
}

// Longest element of the standard parabolic W_J, by ascent climbing.
inline Element longest_element(const CoxeterContext& ctx, const ParabolicSubset& J) {
  Element u = Element::identity(ctx);
  bool moved = true;
  while (moved) {
    moved = false;
    for (int s : J.nodes) {
      if (!has_right_descent(u, s)) {
        u = right_mult(u, s);
        moved = true;
      }
    }
  }
  return u;
}

inline Element longest_element(const CoxeterContext& ctx) {
  return longest_element(ctx, ParabolicSubset(ctx, ctx.simple_labels()));
}

// Canonical reduced word: repeatedly strip the smallest-label right descent.
inline std::vector<int> reduced_word(const Element& w) {
  std::vector<int> collected;
  Element u = w;
  while (!u.is_identity()) {
    int chosen = -1;
    for (int s : u.context().simple_labels()) {
      if (has_right_descent(u, s)) {
        chosen = s;
        break;
      }
    }
    collected.push_back(chosen);
    u = right_mult(u, chosen);
  }
  std::reverse(collected.begin(), collected.end());
  return collected;
}

inline Element word_product(const CoxeterContext& ctx, const std::vector<int>& word) {
  Element acc = Element::identity(ctx);
  for (int s : word) acc = right_mult(acc, s);
  return acc;
}

// Labels appearing in any reduced word for w (independent of the choice).
inline std::vector<int> support(const Element& w) {
  std::vector<int> word = reduced_word(w);
  std::sort(word.begin(), word.end());
  word.erase(std::unique(word.begin(), word.end()), word.end());
  return word;
}

struct WindowHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Every element of the group, sorted by length and then lexicographically by
// window.  This ordering is the deterministic element numbering used by the
// order tables, the caches, and the scan output.
inline std::vector<Element> enumerate_group(const CoxeterContext& ctx,
                                            std::uint64_t limit = 1000000) {
  if (ctx.order_exceeds(limit)) {
    std::uint64_t ord = ctx.order_exceeds(1ull << 62) ? 0 : ctx.order();
    std::string need = ord == 0 ? "beyond 2^62" : std::to_string(ord);
    throw LimitExceeded("group " + ctx.str() + " has order " + need +
                            ", above the enumeration limit " + std::to_string(limit),
                        ord);
  }
  std::vector<Element> out;
  std::unordered_set<std::vector<int>, WindowHash> seen;
  std::deque<Element> queue;
  queue.push_back(Element::identity(ctx));
  seen.insert(queue.front().window());
  while (!queue.empty()) {
    Element w = std::move(queue.front());
    queue.pop_front();
    for (int s : ctx.simple_labels()) {
      Element ws = right_mult(w, s);
      if (seen.insert(ws.window()).second) queue.push_back(ws);
    }
    out.push_back(std::move(w));
  }
  std::stable_sort(out.begin(), out.end(), [](const Element& a, const Element& b) {
    int la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    return a.window() < b.window();
  });
  return out;
}

inline std::string format_window(const Element& w) {
  std::string s;
  for (int i = 0; i < w.n(); ++i) {
    if (i) s += ',';
    s += std::to_string(w.window()[static_cast<std::size_t>(i)]);
  }
  return s;
}

inline std::vector<int> parse_window(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    std::string tok = text.substr(pos, next - pos);
    if (tok.empty()) throw std::invalid_argument("empty entry in window list");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer in window list: " + tok);
    }
    if (used != tok.size()) throw std::invalid_argument("bad integer in window list: " + tok);
    out.push_back(v);
    pos = next + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty window list");
  return out;
}

}  // namespace klh
