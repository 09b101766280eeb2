// Command line front end: element queries, verification suites, whole-group
// scans, and the polynomial cache.  Every record goes to stdout as JSON (or
// CSV for scan --format csv); timings and cache chatter go to stderr so the
// payload is byte-identical from run to run.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "../vendor/CLI11.hpp"
#include "../vendor/json.hpp"
#include "klh/bruhat.hpp"
#include "klh/cache.hpp"
#include "klh/groups.hpp"
#include "klh/heights.hpp"
#include "klh/hvalue.hpp"
#include "klh/kl.hpp"
#include "klh/patterns.hpp"
#include "klh/poly.hpp"
#include "klh/verify.hpp"

using json = nlohmann::ordered_json;
using namespace klh;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOpts {
  std::string type = "A";
  int rank = 0;
  bool slow = false;
};

// Size caps keep the default commands interactive; --slow admits the largest
// groups the sweeps are specified for.
CoxeterContext make_context(const CommonOpts& o) {
  GroupType t;
  if (o.type == "A")
    t = GroupType::A;
  else if (o.type == "D")
    t = GroupType::D;
  else
    throw UsageError("--type must be A or D");
  int cap = t == GroupType::A ? (o.slow ? 6 : 5) : (o.slow ? 5 : 4);
  int floor = t == GroupType::A ? 1 : 2;
  if (o.rank < floor) throw UsageError("type " + o.type + " needs rank >= " + std::to_string(floor));
  if (o.rank > cap)
    throw UsageError("type " + o.type + " rank " + std::to_string(o.rank) + " exceeds the cap of " +
                     std::to_string(cap) + (o.slow ? "" : " (use --slow for the largest sizes)"));
  return CoxeterContext(t, o.rank);
}

Element element_from(const CoxeterContext& ctx, const std::string& text) {
  std::vector<int> win = parse_window(text);
  if (static_cast<int>(win.size()) != ctx.degree())
    throw UsageError("window for " + ctx.str() + " needs " + std::to_string(ctx.degree()) +
                     " entries, got " + std::to_string(win.size()));
  return Element::from_window(ctx, std::move(win));
}

json hvalue_json(const HValue& h) {
  if (h.is_infinite()) return json("inf");
  return json(h.value());
}

json window_json(const Element& w) { return json(w.window()); }

json poly_json(const IntPolynomial& p) {
  if (p.is_zero()) return json::array();
  return json(p.coeffs());
}

json occurrence_json(const std::vector<Occurrence>& occ) {
  if (occ.empty()) return json(nullptr);
  json o;
  o["positions"] = occ.front().positions;
  o["values"] = occ.front().values;
  return o;
}

json patterns_json(const Element& w, bool witnesses) {
  const bool type_d = w.context().type == GroupType::D;
  json p;
  p["contains_3412"] = contains_classic(w, pattern_3412());
  p["contains_4231"] = contains_classic(w, pattern_4231());
  if (type_d) {
    p["contains_12_3bar"] = contains_signed(w, signed_12_3bar());
    p["contains_1_3bar_2bar"] = contains_signed(w, signed_1_3bar_2bar());
    p["contains_14_3bar_2"] = contains_signed(w, signed_14_3bar_2());
  }
  std::optional<int> mh = min_height(w);
  p["min_height"] = mh ? json(*mh) : json(nullptr);
  if (!type_d) {
    std::optional<int> mc = min_content(w);
    p["min_content"] = mc ? json(*mc) : json(nullptr);
  } else {
    std::optional<int> mg = magnitude(w);
    p["magnitude"] = mg ? json(*mg) : json(nullptr);
  }
  p["h1_detect"] = h_equals_one_detect(w);
  p["smooth"] = is_smooth_by_patterns(w);
  if (witnesses) {
    p["witness_3412"] = occurrence_json(find_classic(w, pattern_3412(), 1));
    p["witness_4231"] = occurrence_json(find_classic(w, pattern_4231(), 1));
    if (type_d) {
      p["witness_12_3bar"] = occurrence_json(find_signed(w, signed_12_3bar(), 1));
      p["witness_1_3bar_2bar"] = occurrence_json(find_signed(w, signed_1_3bar_2bar(), 1));
      p["witness_14_3bar_2"] = occurrence_json(find_signed(w, signed_14_3bar_2(), 1));
    }
  }
  return p;
}

// Cached P-table for the context, when KLH_CACHE_DIR holds a fresh one.
std::optional<KLTable> autoload_cache(const CoxeterContext& ctx) {
  const char* dir = std::getenv("KLH_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  std::filesystem::path path = std::filesystem::path(dir) / cache_file_name(KLKind::P, ctx);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  try {
    KLTable t = load_table(path, KLKind::P, ctx);
    std::cerr << "using cache " << path.string() << "\n";
    return t;
  } catch (const CacheError& e) {
    std::cerr << "ignoring cache " << path.string() << ": " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "ignoring cache " << path.string() << ": " << e.what() << "\n";
  }
  return std::nullopt;
}

void emit(const json& record, const std::string& out_path) {
  std::string text = record.dump(2);
  text += '\n';
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw UsageError("cannot open " + out_path + " for writing");
  out << text;
}

int cmd_h(const CommonOpts& common, const std::string& wtext, const std::string& method) {
  CoxeterContext ctx = make_context(common);
  Element w = element_from(ctx, wtext);
  const bool type_d = ctx.type == GroupType::D;
  bool want_kl = method == "kl" || method == "all";
  bool want_be = method == "be" || method == "all";
  bool want_formula = method == "formula" || (method == "all" && !type_d);
  bool want_bound = method == "bound" || (method == "all" && type_d && ctx.rank >= 4);
  if (method == "formula" && type_d) throw UsageError("--method formula applies to type A");
  if (method == "bound" && !type_d) throw UsageError("--method bound applies to type D");
  if (method == "bound" && ctx.rank < 4)
    throw UsageError("--method bound applies to type D from rank four");

  json rec;
  rec["type"] = common.type;
  rec["rank"] = ctx.rank;
  rec["w"] = window_json(w);
  rec["ell"] = length(w);
  json h = json::object();
  bool kl_smooth = false;
  if (want_kl) {
    GroupTable table(ctx);
    KLEngine engine(table, true);
    if (std::optional<KLTable> cached = autoload_cache(ctx)) engine.import_p_table(*cached);
    GroupTable::Idx wi = table.index_of(w);
    IntPolynomial pe = engine.kl_polynomial(table.identity_index(), wi);
    rec["P"] = poly_json(pe);
    h["kl"] = hvalue_json(KLEngine::first_positive_power(pe));
    kl_smooth = engine.is_smooth_kl(wi);
  }
  if (want_be) {
    IntPolynomial L = poincare(lower_interval(w));
    rec["L"] = poly_json(L);
    h["be"] = hvalue_json(top_heavy_h(L));
  }
  if (want_formula) h["formula"] = hvalue_json(h_formula_type_a(w));
  if (want_bound) h["bound"] = hvalue_json(h_upper_bound_type_d(w));
  rec["h"] = h;
  rec["smooth"] = want_kl ? kl_smooth : is_smooth_by_patterns(w);
  rec["patterns"] = patterns_json(w, false);
  emit(rec, "");
  return 0;
}

int cmd_kl(const CommonOpts& common, const std::string& wtext, const std::string& ytext) {
  CoxeterContext ctx = make_context(common);
  Element w = element_from(ctx, wtext);
  Element y = ytext.empty() ? Element::identity(ctx) : element_from(ctx, ytext);
  GroupTable table(ctx);
  KLEngine engine(table, true);
  if (std::optional<KLTable> cached = autoload_cache(ctx)) engine.import_p_table(*cached);
  GroupTable::Idx yi = table.index_of(y), wi = table.index_of(w);
  json rec;
  rec["type"] = common.type;
  rec["rank"] = ctx.rank;
  rec["y"] = window_json(y);
  rec["w"] = window_json(w);
  rec["ell_y"] = length(y);
  rec["ell_w"] = length(w);
  rec["comparable"] = table.leq_index(yi, wi);
  rec["R"] = poly_json(engine.r_polynomial(yi, wi));
  rec["P"] = poly_json(engine.kl_polynomial(yi, wi));
  emit(rec, "");
  return 0;
}

int cmd_poincare(const CommonOpts& common, const std::string& wtext, const std::string& jtext) {
  CoxeterContext ctx = make_context(common);
  Element w = element_from(ctx, wtext);
  GroupTable table(ctx);
  json rec;
  rec["type"] = common.type;
  rec["rank"] = ctx.rank;
  rec["w"] = window_json(w);
  rec["ell"] = length(w);
  rec["L"] = poly_json(table.poincare(table.index_of(w)));
  if (!jtext.empty()) {
    std::vector<int> nodes = parse_window(jtext);
    ParabolicSubset J(ctx, nodes);
    Element wq = parabolic_decompose(w, J, Side::Right).first;
    rec["J"] = J.nodes;
    rec["w_quotient"] = window_json(wq);
    rec["LJ"] = poly_json(quotient_poincare(table, wq, J));
  }
  emit(rec, "");
  return 0;
}

int cmd_patterns(const CommonOpts& common, const std::string& wtext) {
  CoxeterContext ctx = make_context(common);
  Element w = element_from(ctx, wtext);
  json rec;
  rec["type"] = common.type;
  rec["rank"] = ctx.rank;
  rec["w"] = window_json(w);
  rec["ell"] = length(w);
  rec["patterns"] = patterns_json(w, true);
  emit(rec, "");
  return 0;
}

int cmd_verify(const CommonOpts& common, const std::string& suite_name_text) {
  CoxeterContext ctx = make_context(common);
  Suite suite = parse_suite(suite_name_text);
  GroupTable table(ctx);
  VerificationReport rep = run_suite(table, suite);
  json rec;
  rec["type"] = common.type;
  rec["rank"] = ctx.rank;
  rec["suite"] = rep.suite;
  rec["elements"] = rep.elements;
  rec["checks"] = rep.checks;
  rec["failure_count"] = rep.failure_count;
  json fails = json::array();
  for (const CheckFailure& f : rep.failures) {
    json fj;
    fj["element"] = f.element;
    fj["window"] = f.window;
    fj["check"] = f.check;
    fj["expected"] = f.expected;
    fj["actual"] = f.actual;
    fails.push_back(fj);
  }
  rec["failures"] = fails;
  rec["max_h_singular"] =
      rep.max_h_singular ? json(*rep.max_h_singular) : json(nullptr);
  rec["ok"] = rep.ok();
  emit(rec, "");
  std::cerr << "verify " << rep.suite << " on " << ctx.str() << ": " << rep.checks << " checks in "
            << rep.elapsed_seconds << "s\n";
  return rep.ok() ? 0 : 1;
}

json scan_row(const GroupTable& table, KLEngine& engine, GroupTable::Idx wi) {
  const Element& w = table.element(wi);
  const CoxeterContext& ctx = table.context();
  const bool type_d = ctx.type == GroupType::D;
  json row;
  row["w"] = window_json(w);
  row["ell"] = table.length_of(wi);
  IntPolynomial L = table.poincare(wi);
  IntPolynomial pe = engine.kl_polynomial(table.identity_index(), wi);
  row["L"] = poly_json(L);
  row["P"] = poly_json(pe);
  json h;
  h["kl"] = hvalue_json(KLEngine::first_positive_power(pe));
  h["be"] = hvalue_json(top_heavy_h(L));
  if (!type_d)
    h["formula"] = hvalue_json(h_formula_type_a(w));
  else if (ctx.rank >= 4)
    h["bound"] = hvalue_json(h_upper_bound_type_d(w));
  row["h"] = h;
  row["smooth"] = pe.degree() == 0;
  row["patterns"] = patterns_json(w, false);
  return row;
}

void scan_csv_line(std::ostream& out, const json& row, bool type_d, int rank) {
  auto cell_poly = [](const json& arr) {
    std::string s;
    for (const auto& c : arr) {
      if (!s.empty()) s += ' ';
      s += c.dump();
    }
    return s;
  };
  auto cell_window = [](const json& arr) {
    std::string s;
    for (const auto& c : arr) {
      if (!s.empty()) s += ',';
      s += c.dump();
    }
    return '"' + s + '"';
  };
  auto cell_opt = [](const json& v) { return v.is_null() ? std::string() : v.dump(); };
  auto cell_h = [](const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  const json& h = row["h"];
  const json& p = row["patterns"];
  out << cell_window(row["w"]) << ',' << row["ell"] << ',' << '"' << cell_poly(row["L"]) << '"'
      << ',' << '"' << cell_poly(row["P"]) << '"' << ',' << cell_h(h["kl"]) << ','
      << cell_h(h["be"]) << ',';
  if (!type_d)
    out << cell_h(h["formula"]);
  else if (rank >= 4)
    out << cell_h(h["bound"]);
  out << ',' << row["smooth"] << ',' << p["contains_3412"] << ',' << p["contains_4231"];
  if (type_d)
    out << ',' << p["contains_12_3bar"] << ',' << p["contains_1_3bar_2bar"] << ','
        << p["contains_14_3bar_2"];
  out << ',' << cell_opt(p["min_height"]) << ','
      << cell_opt(type_d ? p["magnitude"] : p["min_content"]) << ',' << p["h1_detect"] << ','
      << p["smooth"] << '\n';
}

int cmd_scan(const CommonOpts& common, const std::string& format, const std::string& out_path) {
  CoxeterContext ctx = make_context(common);
  if (format != "json" && format != "csv") throw UsageError("--format must be json or csv");
  GroupTable table(ctx);
  std::optional<KLTable> cached = autoload_cache(ctx);
  KLEngine engine(table, cached.has_value());
  if (cached) engine.import_p_table(*cached);
  const bool type_d = ctx.type == GroupType::D;

  if (format == "json") {
    json doc;
    doc["type"] = common.type;
    doc["rank"] = ctx.rank;
    doc["elements"] = table.size();
    json rows = json::array();
    for (std::size_t i = 0; i < table.size(); ++i)
      rows.push_back(scan_row(table, engine, static_cast<GroupTable::Idx>(i)));
    doc["rows"] = rows;
    emit(doc, out_path);
    return 0;
  }

  std::ostringstream out;
  out << "window,ell,L,P,h_kl,h_be," << (type_d ? "h_bound" : "h_formula")
      << ",smooth,contains_3412,contains_4231";
  if (type_d) out << ",contains_12_3bar,contains_1_3bar_2bar,contains_14_3bar_2";
  out << ",min_height," << (type_d ? "magnitude" : "min_content") << ",h1_detect,smooth_patterns\n";
  for (std::size_t i = 0; i < table.size(); ++i)
    scan_csv_line(out, scan_row(table, engine, static_cast<GroupTable::Idx>(i)), type_d, ctx.rank);
  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(out_path, std::ios::trunc);
    if (!f) throw UsageError("cannot open " + out_path + " for writing");
    f << out.str();
  }
  return 0;
}

int cmd_cache(const CommonOpts& common, const std::string& out_dir) {
  CoxeterContext ctx = make_context(common);
  std::string dir = out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("KLH_CACHE_DIR");
    if (!env || !*env) throw UsageError("cache needs --out DIR or KLH_CACHE_DIR");
    dir = env;
  }
  std::filesystem::create_directories(dir);
  GroupTable table(ctx);
  KLEngine engine(table, true);
  if (std::optional<KLTable> prior = autoload_cache(ctx)) engine.import_p_table(*prior);
  for (std::size_t i = 0; i < table.size(); ++i)
    engine.cached_column(static_cast<GroupTable::Idx>(i));
  KLTable full = engine.export_p_table();
  std::filesystem::path path = std::filesystem::path(dir) / cache_file_name(KLKind::P, ctx);
  save_table(full, path);
  KLTable reread = load_table(path, KLKind::P, ctx);
  if (!(reread == full)) {
    std::cerr << "cache round trip mismatch at " << path.string() << "\n";
    return 2;
  }
  json rec;
  rec["type"] = common.type;
  rec["rank"] = ctx.rank;
  rec["path"] = path.string();
  rec["entries"] = full.entries.size();
  rec["bytes"] = std::filesystem::file_size(path);
  emit(rec, "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kazhdan-Lusztig polynomials, Bruhat invariants, and the minimal "
               "positive power h on Weyl groups of types A and D"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string wtext, ytext, jtext, method = "all", suite = "all", format = "json", out_path;

  auto add_common = [&](CLI::App* sub, bool needs_w) {
    sub->add_option("--type", common.type, "group type, A or D")
        ->check(CLI::IsMember({"A", "D"}));
    sub->add_option("--rank", common.rank, "Coxeter rank")->required();
    sub->add_flag("--slow", common.slow, "admit the largest specified group sizes");
    if (needs_w)
      sub->add_option("--w", wtext,
                      "window in one-line notation, comma separated; negative entries are "
                      "barred values")
          ->required();
  };

  CLI::App* h_cmd = app.add_subcommand("h", "minimal positive power of q in the column of w");
  add_common(h_cmd, true);
  h_cmd->add_option("--method", method, "kl, be, formula, bound, or all")
      ->check(CLI::IsMember({"kl", "be", "formula", "bound", "all"}));

  CLI::App* kl_cmd = app.add_subcommand("kl", "R- and Kazhdan-Lusztig polynomials of a pair");
  add_common(kl_cmd, true);
  kl_cmd->add_option("--y", ytext, "lower element, default identity");

  CLI::App* poin_cmd = app.add_subcommand("poincare", "rank generating function below w");
  add_common(poin_cmd, true);
  poin_cmd->add_option("--j", jtext, "parabolic node labels; adds the quotient row below w^J");

  CLI::App* pat_cmd = app.add_subcommand("patterns", "pattern containment and statistics of w");
  add_common(pat_cmd, true);

  CLI::App* ver_cmd = app.add_subcommand("verify", "run a verification suite over the whole group");
  add_common(ver_cmd, false);
  ver_cmd->add_option("--suite", suite, "formula-a, bounds-d, smoothness, bruhat, klprops, or all")
      ->check(CLI::IsMember({"formula-a", "bounds-d", "smoothness", "bruhat", "klprops", "all"}));

  CLI::App* scan_cmd = app.add_subcommand("scan", "one row per element, in enumeration order");
  add_common(scan_cmd, false);
  scan_cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  scan_cmd->add_option("--out", out_path, "write to a file instead of stdout");

  CLI::App* cache_cmd = app.add_subcommand("cache", "compute and store the full P-table");
  add_common(cache_cmd, false);
  cache_cmd->add_option("--out", out_path, "cache directory, default KLH_CACHE_DIR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (h_cmd->parsed()) return cmd_h(common, wtext, method);
    if (kl_cmd->parsed()) return cmd_kl(common, wtext, ytext);
    if (poin_cmd->parsed()) return cmd_poincare(common, wtext, jtext);
    if (pat_cmd->parsed()) return cmd_patterns(common, wtext);
    if (ver_cmd->parsed()) return cmd_verify(common, suite);
    if (scan_cmd->parsed()) return cmd_scan(common, format, out_path);
    if (cache_cmd->parsed()) return cmd_cache(common, out_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CacheError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
