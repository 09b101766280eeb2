#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klh/bruhat.hpp"
#include "klh/groups.hpp"
#include "klh/heights.hpp"
#include "klh/hvalue.hpp"
#include "klh/kl.hpp"
#include "klh/parallel.hpp"
#include "klh/patterns.hpp"
#include "klh/poly.hpp"

namespace klh {

enum class Suite { FormulaA, BoundsD, Smoothness, Bruhat, KLProps, All };

inline const char* suite_name(Suite s) {
  switch (s) {
    case Suite::FormulaA: return "formula-a";
    case Suite::BoundsD: return "bounds-d";
    case Suite::Smoothness: return "smoothness";
    case Suite::Bruhat: return "bruhat";
    case Suite::KLProps: return "klprops";
    case Suite::All: return "all";
  }
  return "?";
}

inline Suite parse_suite(const std::string& name) {
  for (Suite s : {Suite::FormulaA, Suite::BoundsD, Suite::Smoothness, Suite::Bruhat,
                  Suite::KLProps, Suite::All})
    if (name == suite_name(s)) return s;
  throw std::invalid_argument("unknown suite: " + name);
}

struct CheckFailure {
  GroupTable::Idx element;
  std::string window;    // one-line form of the element the check ran on
  std::string check;     // stable identifier of the violated invariant
  std::string expected;
  std::string actual;
};

// failures keeps at most kMaxStoredFailures entries; failure_count is the
// full tally, and the run passed exactly when it is zero.
struct VerificationReport {
  CoxeterContext ctx{GroupType::A, 1};
  std::string suite;
  std::uint64_t elements = 0;
  std::uint64_t checks = 0;
  std::uint64_t failure_count = 0;
  std::vector<CheckFailure> failures;
  std::optional<std::int64_t> max_h_singular;
  double elapsed_seconds = 0.0;

  bool ok() const { return failure_count == 0; }
};

namespace detail {

constexpr std::size_t kMaxStoredFailures = 200;

struct SuiteBlock {
  std::uint64_t checks = 0;
  std::uint64_t failure_count = 0;
  std::vector<CheckFailure> failures;
  std::optional<std::int64_t> max_h_singular;

  template <typename E, typename A>
  void expect(const GroupTable& t, GroupTable::Idx w, bool ok, const char* id, E&& expected,
              A&& actual) {
    ++checks;
    if (ok) return;
    ++failure_count;
    if (failures.size() < kMaxStoredFailures)
      failures.push_back({w, format_window(t.element(w)), id, expected(), actual()});
  }

  void note_singular_h(const HValue& h) {
    if (h.is_infinite()) return;
    if (!max_h_singular || *max_h_singular < h.value()) max_h_singular = h.value();
  }
};

inline VerificationReport merge_blocks(const GroupTable& table, Suite suite,
                                       std::vector<SuiteBlock>&& blocks, double elapsed) {
  VerificationReport rep;
  rep.ctx = table.context();
  rep.suite = suite_name(suite);
  rep.elements = table.size();
  rep.elapsed_seconds = elapsed;
  for (SuiteBlock& b : blocks) {
    rep.checks += b.checks;
    rep.failure_count += b.failure_count;
    for (CheckFailure& f : b.failures) {
      if (rep.failures.size() >= kMaxStoredFailures) break;
      rep.failures.push_back(std::move(f));
    }
    if (b.max_h_singular &&
        (!rep.max_h_singular || *rep.max_h_singular < *b.max_h_singular))
      rep.max_h_singular = b.max_h_singular;
  }
  return rep;
}

// Runs body(block, engine, w) over every element index on a worker pool; each
// worker owns one KLEngine so the memo tables stay thread-local.
template <typename Body>
VerificationReport element_sweep(const GroupTable& table, Suite suite, int threads,
                                 bool cache_columns, Body&& body) {
  auto t0 = std::chrono::steady_clock::now();
  if (threads <= 0) threads = default_worker_count();
  auto ranges = split_blocks(table.size(), threads);
  std::vector<SuiteBlock> blocks(ranges.size());
  run_blocks(ranges, [&](std::size_t b, std::size_t begin, std::size_t end) {
    KLEngine engine(table, cache_columns);
    for (std::size_t i = begin; i < end; ++i)
      body(blocks[b], engine, static_cast<GroupTable::Idx>(i));
  });
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return merge_blocks(table, suite, std::move(blocks), dt);
}

inline std::string hstr(const HValue& h) { return h.str(); }

}  // namespace detail

// h from the Kazhdan-Lusztig polynomial equals the pattern closed form on
// every permutation; records the largest finite h seen on singular elements.
inline VerificationReport verify_formula_a(const GroupTable& table, int threads = 0) {
  if (table.context().type != GroupType::A)
    throw std::invalid_argument("suite formula-a runs on type A");
  return detail::element_sweep(
      table, Suite::FormulaA, threads, false,
      [&table](detail::SuiteBlock& blk, KLEngine& engine, GroupTable::Idx w) {
        const Element& el = table.element(w);
        HValue hk = engine.h_via_kl(w);
        HValue hf = h_formula_type_a(el);
        blk.expect(table, w, hk == hf, "formula-a/h-equality",
                   [&] { return detail::hstr(hf); }, [&] { return detail::hstr(hk); });
        if (!is_smooth_by_patterns(el)) blk.note_singular_h(hk);
      });
}

// Every stated type D upper bound holds against the exact h, and the h = 1
// detector is exact where it fires.
inline VerificationReport verify_bounds_d(const GroupTable& table, int threads = 0) {
  const CoxeterContext& ctx = table.context();
  if (ctx.type != GroupType::D || ctx.rank < 4)
    throw std::invalid_argument("suite bounds-d runs on type D from rank four");
  const int cap = ctx.rank - 2;
  return detail::element_sweep(
      table, Suite::BoundsD, threads, false,
      [&table, cap](detail::SuiteBlock& blk, KLEngine& engine, GroupTable::Idx w) {
        const Element& el = table.element(w);
        HValue h = engine.h_via_kl(w);
        HValue bound = h_upper_bound_type_d(el);
        blk.expect(table, w, h <= bound, "bounds-d/upper-bound",
                   [&] { return "<= " + detail::hstr(bound); },
                   [&] { return detail::hstr(h); });
        blk.expect(table, w, h.is_infinite() == bound.is_infinite(), "bounds-d/finite-agreement",
                   [&] { return detail::hstr(bound); }, [&] { return detail::hstr(h); });
        bool has4231 = contains_classic(el, pattern_4231());
        if (has4231)
          blk.expect(table, w, h <= HValue(2), "bounds-d/4231-cap",
                     [] { return std::string("<= 2"); }, [&] { return detail::hstr(h); });
        if (!has4231)
          if (std::optional<int> mg = magnitude(el))
            blk.expect(table, w, h <= HValue(*mg - 1), "bounds-d/magnitude-cap",
                       [&] { return "<= " + std::to_string(*mg - 1); },
                       [&] { return detail::hstr(h); });
        if (h_equals_one_detect(el))
          blk.expect(table, w, h == HValue(1), "bounds-d/h1-exact",
                     [] { return std::string("1"); }, [&] { return detail::hstr(h); });
        if (!is_smooth_by_patterns(el)) {
          blk.expect(table, w, h <= HValue(cap), "bounds-d/rank-cap",
                     [&] { return "<= " + std::to_string(cap); },
                     [&] { return detail::hstr(h); });
          blk.note_singular_h(h);
        }
      });
}

// Pattern smoothness, the trivial Kazhdan-Lusztig column, and infinite h all
// pick out the same elements.
inline VerificationReport verify_smoothness(const GroupTable& table, int threads = 0) {
  return detail::element_sweep(
      table, Suite::Smoothness, threads, false,
      [&table](detail::SuiteBlock& blk, KLEngine& engine, GroupTable::Idx w) {
        const Element& el = table.element(w);
        KLEngine::Column col = engine.compute_column(w);
        bool kl_smooth = true;
        for (const IntPolynomial& p : col.polys)
          if (p.degree() != 0) { kl_smooth = false; break; }
        bool pat_smooth = is_smooth_by_patterns(el);
        blk.expect(table, w, pat_smooth == kl_smooth, "smoothness/patterns-vs-kl",
                   [&] { return std::string(kl_smooth ? "smooth" : "singular"); },
                   [&] { return std::string(pat_smooth ? "smooth" : "singular"); });
        HValue h = KLEngine::first_positive_power(col.polys.front());
        blk.expect(table, w, kl_smooth == h.is_infinite(), "smoothness/h-infinite-iff-smooth",
                   [&] { return std::string(kl_smooth ? "inf" : "finite"); },
                   [&] { return detail::hstr(h); });
      });
}

// Order-table checks: the comparison routes agree, covers are exactly the
// codimension-one members, rank rows are top-heavy, and every multiplicative
// parabolic factorization multiplies the rank rows.
inline VerificationReport verify_bruhat(const GroupTable& table, int threads = 0) {
  const std::vector<int> labels = table.context().simple_labels();
  const bool type_a = table.context().type == GroupType::A;
  const std::size_t n = table.size();
  // Exhaustive second operand up to 1024 elements, strided beyond that.
  const std::size_t stride = n <= 1024 ? 1 : n / 512;
  return detail::element_sweep(
      table, Suite::Bruhat, threads, false,
      [&table, &labels, type_a, n, stride](detail::SuiteBlock& blk, KLEngine&,
                                           GroupTable::Idx w) {
        const Element& el = table.element(w);
        for (std::size_t u = w % stride; u < n; u += stride) {
          GroupTable::Idx ui = static_cast<GroupTable::Idx>(u);
          const Element& eu = table.element(ui);
          bool route = type_a ? leq_gale(eu, el) : leq_lifting(eu, el);
          blk.expect(table, w, route == table.leq_index(ui, w), "bruhat/order-route",
                     [&] { return format_window(eu) + (table.leq_index(ui, w) ? " <= " : " !<= ") +
                                  format_window(el); },
                     [&] { return std::string(route ? "<=" : "!<="); });
        }

        std::vector<GroupTable::Idx> short_below;
        const int lw = table.length_of(w);
        table.below(w).for_each_set([&](std::size_t u) {
          if (table.length_of(static_cast<GroupTable::Idx>(u)) == lw - 1)
            short_below.push_back(static_cast<GroupTable::Idx>(u));
        });
        std::vector<GroupTable::Idx> covers;
        for (const Element& v : covers_down(el)) covers.push_back(table.index_of(v));
        std::sort(covers.begin(), covers.end());
        blk.expect(table, w, covers == short_below, "bruhat/cover-set",
                   [&] { return std::to_string(short_below.size()) + " covers"; },
                   [&] { return std::to_string(covers.size()) + " covers"; });

        IntPolynomial L = table.poincare(w);
        blk.expect(table, w, is_top_heavy(L), "bruhat/poincare-top-heavy",
                   [] { return std::string("top-heavy"); }, [&] { return L.str(); });
        blk.expect(table, w,
                   L.eval(1) == static_cast<std::int64_t>(table.below(w).count()),
                   "bruhat/poincare-count",
                   [&] { return std::to_string(table.below(w).count()); },
                   [&] { return std::to_string(L.eval(1)); });

        for (std::size_t drop = 0; drop < labels.size(); ++drop) {
          std::vector<int> keep;
          for (std::size_t k = 0; k < labels.size(); ++k)
            if (k != drop) keep.push_back(labels[k]);
          ParabolicSubset J(table.context(), keep);
          if (!is_bp_decomposition(el, J)) continue;
          auto [wq, wj] = parabolic_decompose(el, J, Side::Right);
          IntPolynomial quotient = quotient_poincare(table, wq, J);
          IntPolynomial product = quotient * table.poincare(table.index_of(wj));
          blk.expect(table, w, product == L, "bruhat/bp-factorization",
                     [&] { return L.str(); }, [&] { return product.str(); });
          blk.expect(table, w, is_top_heavy(quotient), "bruhat/bp-quotient-top-heavy",
                     [] { return std::string("top-heavy"); }, [&] { return quotient.str(); });
        }
      });
}

// Column-level Kazhdan-Lusztig invariants: coefficient positivity, constant
// term one, degree bound, symmetry under inverse and the diagram flip,
// agreement of the h routes, and h(w) <= h(w_J) for every proper parabolic.
inline VerificationReport verify_klprops(const GroupTable& table, int threads = 0) {
  auto t0 = std::chrono::steady_clock::now();
  int workers = threads <= 0 ? default_worker_count() : threads;
  auto ranges = split_blocks(table.size(), workers);
  std::vector<detail::SuiteBlock> blocks(ranges.size());
  std::vector<std::int64_t> hs(table.size(), -1);  // -1 encodes infinite h

  run_blocks(ranges, [&](std::size_t b, std::size_t begin, std::size_t end) {
    detail::SuiteBlock& blk = blocks[b];
    KLEngine engine(table, true);
    for (std::size_t i = begin; i < end; ++i) {
      GroupTable::Idx w = static_cast<GroupTable::Idx>(i);
      const KLEngine::Column& col = engine.cached_column(w);
      const int lw = table.length_of(w);
      for (std::size_t k = 0; k < col.members.size(); ++k) {
        const IntPolynomial& p = col.polys[k];
        blk.expect(table, w, p.all_nonnegative(), "klprops/positivity",
                   [] { return std::string("coefficients >= 0"); }, [&] { return p.str(); });
        blk.expect(table, w, p.coeff(0) == 1, "klprops/constant-term",
                   [] { return std::string("1"); }, [&] { return p.str(); });
        int d = lw - table.length_of(col.members[k]);
        blk.expect(table, w, d == 0 ? p.degree() == 0 : 2 * p.degree() <= d - 1,
                   "klprops/degree-bound",
                   [&] { return "degree <= " + std::to_string(d == 0 ? 0 : (d - 1) / 2); },
                   [&] { return "degree " + std::to_string(p.degree()); });
      }

      GroupTable::Idx wi = table.inverse_of(w);
      for (std::size_t k = 0; k < col.members.size(); ++k) {
        IntPolynomial q = engine.kl_polynomial(table.inverse_of(col.members[k]), wi);
        blk.expect(table, w, q == col.polys[k], "klprops/inverse-symmetry",
                   [&] { return col.polys[k].str(); }, [&] { return q.str(); });
      }

      HValue h = KLEngine::first_positive_power(col.polys.front());
      HValue hall = engine.h_via_kl_all_y(w);
      blk.expect(table, w, h == hall, "klprops/min-over-y",
                 [&] { return detail::hstr(h); }, [&] { return detail::hstr(hall); });
      HValue hbe = h_bjorner_ekedahl(table, w);
      blk.expect(table, w, h == hbe, "klprops/be-agreement",
                 [&] { return detail::hstr(h); }, [&] { return detail::hstr(hbe); });
      hs[i] = h.is_infinite() ? -1 : h.value();
    }
  });

  // Cross-element checks from the collected h values, single-threaded.
  detail::SuiteBlock post;
  auto as_h = [&hs](GroupTable::Idx i) {
    return hs[i] < 0 ? HValue::infinity() : HValue(hs[i]);
  };
  const std::vector<int> labels = table.context().simple_labels();
  std::vector<std::vector<int>> proper_subsets;
  for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t(1) << labels.size()); ++mask) {
    std::vector<int> sub;
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (mask & (std::uint32_t(1) << k)) sub.push_back(labels[k]);
    proper_subsets.push_back(std::move(sub));
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    GroupTable::Idx w = static_cast<GroupTable::Idx>(i);
    const Element& el = table.element(w);
    GroupTable::Idx flip = table.index_of(diagram_automorphism(el));
    post.expect(table, w, hs[i] == hs[flip], "klprops/diagram-flip",
                [&] { return detail::hstr(as_h(flip)); },
                [&] { return detail::hstr(as_h(w)); });
    for (const std::vector<int>& sub : proper_subsets) {
      ParabolicSubset J(table.context(), sub);
      Element wj = parabolic_decompose(el, J, Side::Right).second;
      GroupTable::Idx ji = table.index_of(wj);
      post.expect(table, w, !(as_h(w) > as_h(ji)), "klprops/parabolic-monotone",
                  [&] { return "<= " + detail::hstr(as_h(ji)); },
                  [&] { return detail::hstr(as_h(w)); });
    }
  }
  blocks.push_back(std::move(post));

  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return detail::merge_blocks(table, Suite::KLProps, std::move(blocks), dt);
}

inline std::vector<Suite> applicable_suites(const CoxeterContext& ctx) {
  std::vector<Suite> out;
  if (ctx.type == GroupType::A) out.push_back(Suite::FormulaA);
  if (ctx.type == GroupType::D && ctx.rank >= 4) out.push_back(Suite::BoundsD);
  out.push_back(Suite::Smoothness);
  out.push_back(Suite::Bruhat);
  out.push_back(Suite::KLProps);
  return out;
}

inline VerificationReport run_suite(const GroupTable& table, Suite suite, int threads = 0) {
  switch (suite) {
    case Suite::FormulaA: return verify_formula_a(table, threads);
    case Suite::BoundsD: return verify_bounds_d(table, threads);
    case Suite::Smoothness: return verify_smoothness(table, threads);
    case Suite::Bruhat: return verify_bruhat(table, threads);
    case Suite::KLProps: return verify_klprops(table, threads);
    case Suite::All: break;
  }
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.ctx = table.context();
  rep.suite = suite_name(Suite::All);
  rep.elements = table.size();
  for (Suite s : applicable_suites(table.context())) {
    VerificationReport part = run_suite(table, s, threads);
    rep.checks += part.checks;
    rep.failure_count += part.failure_count;
    for (CheckFailure& f : part.failures) {
      if (rep.failures.size() >= detail::kMaxStoredFailures) break;
      rep.failures.push_back(std::move(f));
    }
    if (part.max_h_singular &&
        (!rep.max_h_singular || *rep.max_h_singular < *part.max_h_singular))
      rep.max_h_singular = part.max_h_singular;
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace klh
