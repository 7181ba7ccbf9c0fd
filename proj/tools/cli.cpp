#include "cli.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tnormlab/analysis.hpp"
#include "tnormlab/classify.hpp"
#include "tnormlab/errors.hpp"
#include "tnormlab/report.hpp"
#include "tnormlab/syntax.hpp"

namespace tnormlab::cli {

namespace {

constexpr const char* kSyntaxHelp = R"(t-norm syntax:
  min | prod | luk | drastic     (also minimum, product, lukasiewicz)
  ss:<beta>                      Schweizer-Sklar, |beta| >= 1e-3
  cshelf:<c>                     c-shelf, 0 < c < 1
  osum:[a,e,inner;...]           ordinal sum, inner is a spec
  expr:<dsl>                     expression in x, y
  gexpr:<dsl>                    expression, 0 whenever x or y is 0
DSL: numbers, x, y, + - * / ^, unary -, min(a,b), max(a,b). ^ is right-associative.)";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string tnorm;
  std::string expr;
  bool zero_guard = false;

  std::string f_mode;
  bool f_catalog = false;
  std::string f_expr;

  int points = 0;
  double tol = 0.0;
  double strict_tol = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double step_h = 0.0;
  bool assoc_full = false;

  bool json = false;
  std::string format = "text";
  std::string out_path;
  bool to_stdout = false;

  // eval
  double x = 0.0;
  double y = 0.0;
  std::string of = "t";
  int power = 0;

  // verify
  std::string check = "gph";
  std::vector<double> probes{0.1, 0.5, 0.9};
  int n_max = 1000;
  double floor = 1e-3;
};

struct Flags {
  CLI::Option* tnorm = nullptr;
  CLI::Option* expr = nullptr;
  CLI::Option* points = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* strict_tol = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* step_h = nullptr;
  CLI::Option* y = nullptr;
  CLI::Option* power = nullptr;
  CLI::Option* f_mode = nullptr;
  CLI::Option* f_catalog = nullptr;
  CLI::Option* f_expr = nullptr;
};

void add_source(CLI::App* sub, Options& o, Flags& f) {
  f.tnorm = sub->add_option("--tnorm", o.tnorm, "t-norm in the one-token syntax");
  f.expr = sub->add_option("--expr", o.expr, "t-norm as a DSL expression in x, y");
  f.tnorm->excludes(f.expr);
  sub->add_flag("--zero-guard", o.zero_guard, "evaluate --expr as 0 when x or y is 0")
      ->needs(f.expr);
}

void add_companion(CLI::App* sub, Options& o, Flags& f) {
  f.f_mode = sub->add_option("--f", o.f_mode, "companion: catalog or canonical")
                 ->check(CLI::IsMember({"catalog", "canonical"}));
  f.f_catalog = sub->add_flag("--f-catalog", o.f_catalog, "same as --f catalog");
  f.f_expr = sub->add_option("--f-expr", o.f_expr, "companion as a DSL expression in x, y");
  f.f_expr->excludes(f.f_mode)->excludes(f.f_catalog);
  f.f_mode->excludes(f.f_catalog);
}

void add_grid(CLI::App* sub, Options& o, Flags& f) {
  f.points = sub->add_option("--points", o.points, "grid points per axis (default 101)");
  f.tol = sub->add_option("--tol", o.tol, "equation tolerance (default 1e-9)");
  f.strict_tol = sub->add_option("--strict-tol", o.strict_tol, "axiom tolerance (default 1e-12)");
  f.samples = sub->add_option("--samples", o.samples, "random triples (default 10000)");
  f.seed = sub->add_option("--seed", o.seed, "PRNG seed (default $TNORMLAB_SEED or 12648430)");
  f.step_h = sub->add_option("--step-h", o.step_h, "limit probe step (default 1e-6)");
  sub->add_flag("--assoc-full", o.assoc_full, "associativity on the full grid");
}

void add_output(CLI::App* sub, Options& o, bool csv) {
  std::vector<std::string> formats{"text", "json"};
  if (csv) formats.push_back("csv");
  sub->add_flag("--json", o.json, "shorthand for --format json --stdout");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
  sub->add_option("--out", o.out_path, "write output to FILE");
  sub->add_flag("--stdout", o.to_stdout, "write output to standard output");
}

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* env = std::getenv("TNORMLAB_SEED");
  if (!env || !*env) return fallback;
  std::uint64_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [p, ec] = std::from_chars(env, end, v);
  if (ec != std::errc() || p != end) {
    throw UsageError(std::string("TNORMLAB_SEED is not an unsigned integer: ") + env);
  }
  return v;
}

GridSpec make_grid(const Options& o, const Flags& f) {
  GridSpec g;
  if (f.points && f.points->count()) g.points = o.points;
  if (f.tol && f.tol->count()) g.eq_tol = o.tol;
  if (f.strict_tol && f.strict_tol->count()) g.strict_tol = o.strict_tol;
  if (f.samples && f.samples->count()) g.samples = o.samples;
  g.seed = (f.seed && f.seed->count()) ? o.seed : env_seed(g.seed);
  if (f.step_h && f.step_h->count()) g.step_h = o.step_h;
  g.assoc_full = o.assoc_full;
  g.validate();
  return g;
}

TNormSpec make_tnorm(const Options& o, const Flags& f) {
  if (f.expr->count()) {
    return TNormSpec::expr(dsl::parse(o.expr), o.zero_guard ? ZeroGuard::On : ZeroGuard::Off);
  }
  if (f.tnorm->count()) return parse_tnorm_spec(o.tnorm);
  throw UsageError("exactly one of --tnorm or --expr is required");
}

CompanionF make_companion(const TNormSpec& spec, const Options& o, const Flags& f) {
  if (f.f_expr && f.f_expr->count()) return CompanionF::expr(dsl::parse(o.f_expr));
  if ((f.f_catalog && f.f_catalog->count()) || o.f_mode == "catalog") {
    return CompanionF::catalog(spec);
  }
  if (o.f_mode == "canonical") return CompanionF::canonical(spec);
  return has_catalog_companion(spec) ? CompanionF::catalog(spec) : CompanionF::canonical(spec);
}

class Sink {
 public:
  Sink(const Options& o, std::ostream& out) : o_(o), out_(out) {
    format_ = o.json ? "json" : o.format;
    if (format_ != "text" && o.out_path.empty() && !o.to_stdout && !o.json) {
      throw UsageError(format_ + " output needs --out FILE or --stdout");
    }
  }

  const std::string& format() const { return format_; }

  void write(const std::string& text) {
    if (!o_.out_path.empty()) {
      std::ofstream file(o_.out_path, std::ios::binary);
      if (!file) throw UsageError("cannot open " + o_.out_path + " for writing");
      file << text;
      if (!file) throw UsageError("failed writing " + o_.out_path);
    }
    if (o_.out_path.empty() || o_.to_stdout) out_ << text;
  }

 private:
  const Options& o_;
  std::ostream& out_;
  std::string format_;
};

std::string report_text(const Report& r) {
  std::string s = summary(r) + "\n";
  for (const auto& [k, v] : r.metadata) {
    if (k != "witness_desc") s += "  " + k + ": " + v + "\n";
  }
  return s;
}

std::string render(const Report& r, const Sink& sink) {
  return sink.format() == "json" ? to_json(r) + "\n" : report_text(r);
}

std::string fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------

int cmd_eval(const Options& o, const Flags& f, std::ostream& out) {
  Sink sink(o, out);
  const TNormSpec spec = make_tnorm(o, f);
  const UnitValue x(o.x);
  double value = 0.0;
  std::optional<double> y;
  if (f.power->count()) {
    value = t_power(spec, x, o.power).value();
  } else if (o.of == "diagonal") {
    value = diagonal(spec, x).value();
  } else {
    if (!f.y->count()) throw UsageError("--y is required unless --of diagonal or --power is given");
    y = o.y;
    if (o.of == "f") {
      value = eval_companion(make_companion(spec, o, f), x, UnitValue(*y)).value();
    } else {
      value = eval_tnorm(spec, x, UnitValue(*y)).value();
    }
  }
  if (sink.format() == "json") {
    nlohmann::ordered_json j;
    j["tnorm"] = spec.to_string();
    j["of"] = f.power->count() ? "power" : o.of;
    j["x"] = o.x;
    if (y) j["y"] = *y;
    if (f.power->count()) j["n"] = o.power;
    j["value"] = value;
    sink.write(j.dump(2) + "\n");
  } else {
    sink.write(fixed12(value) + "\n");
  }
  return 0;
}

int cmd_verify(const Options& o, const Flags& f, std::ostream& out) {
  Sink sink(o, out);
  const TNormSpec spec = make_tnorm(o, f);
  const GridSpec grid = make_grid(o, f);
  if (sink.format() == "csv" && o.check != "gph") throw UsageError("csv output is only for --check gph");

  Report r;
  if (o.check == "gph") {
    const CompanionF comp = make_companion(spec, o, f);
    const Report pre = check_lambda_one(comp, grid);
    if (!pre.passed) {
      if (sink.format() != "csv") sink.write(render(pre, sink));
      return 1;
    }
    r = check_gph(spec, comp, grid);
    if (sink.format() == "csv") {
      std::ostringstream os;
      write_gph_csv(os, spec, comp, grid);
      sink.write(os.str());
      return r.passed ? 0 : 1;
    }
  } else if (o.check == "axioms") {
    r = check_axioms(spec, grid);
  } else if (o.check == "pseudo-homogeneous") {
    r = check_pseudo_homogeneous(make_companion(spec, o, f), grid);
  } else if (o.check == "archimedean") {
    std::vector<UnitValue> probes;
    for (double p : o.probes) probes.emplace_back(p);
    r = check_archimedean(spec, probes, o.n_max, o.floor);
  } else if (o.check == "diagonal") {
    r = scan_diagonal(spec, grid);
  } else if (o.check == "tm") {
    r = check_tm_equivalences(spec, grid);
  } else {
    r = check_continuity_equivalence(spec, grid);
  }
  sink.write(render(r, sink));
  return r.passed ? 0 : 1;
}

int cmd_classify(const Options& o, const Flags& f, std::ostream& out) {
  Sink sink(o, out);
  const TNormSpec spec = make_tnorm(o, f);
  const ClassificationResult c = classify(spec, make_grid(o, f));
  if (sink.format() == "json") {
    sink.write(to_json(c) + "\n");
  } else {
    std::string s = "family: " + std::string(family_name(c.family)) + "\n";
    if (c.parameter) s += "parameter: " + format_number(*c.parameter) + "\n";
    s += "residual: " + format_number(c.residual) + "\n";
    for (const Evidence& e : c.evidence) {
      s += std::string(e.passed ? "  [pass] " : "  [fail] ") + e.test + ": " + e.detail + "\n";
    }
    sink.write(s);
  }
  return c.family == Family::NotGPH ? 1 : 0;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  Sink sink(o, out);
  const std::vector<FamilyEntry> entries = family_catalog();
  if (sink.format() == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const FamilyEntry& e : entries) {
      nlohmann::ordered_json ex = nlohmann::ordered_json::array();
      for (const TNormSpec& s : e.examples) ex.push_back(s.to_string());
      arr.push_back({{"name", e.name},
                     {"syntax", e.syntax},
                     {"t", e.t_formula},
                     {"f", e.f_formula},
                     {"examples", ex}});
    }
    sink.write(arr.dump(2) + "\n");
    return 0;
  }
  std::string s;
  for (const FamilyEntry& e : entries) {
    s += e.name + "  (" + e.syntax + ")\n";
    s += "  T(x,y) = " + e.t_formula + "\n";
    s += "  F(x,y) = " + e.f_formula + "\n";
    s += "  examples:";
    for (const TNormSpec& ex : e.examples) s += " " + ex.to_string();
    s += "\n";
  }
  sink.write(s);
  return 0;
}

int cmd_counterexample(const Options& o, const Flags& f, std::ostream& out) {
  Sink sink(o, out);
  const TNormSpec spec = make_tnorm(o, f);
  const Report r = find_gph_counterexample(spec, make_grid(o, f));
  sink.write(render(r, sink));
  return r.passed ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"tnormlab: t-norms and the general pseudo-homogeneity equation", "tnormlab"};
  app.footer(kSyntaxHelp);
  app.require_subcommand(1, 1);

  Options o;
  Flags eval_f, verify_f, classify_f, cx_f;

  CLI::App* eval = app.add_subcommand("eval", "evaluate T, F, the diagonal or a T-power");
  add_source(eval, o, eval_f);
  add_companion(eval, o, eval_f);
  eval->add_option("--x", o.x, "first argument")->required();
  eval_f.y = eval->add_option("--y", o.y, "second argument");
  eval->add_option("--of", o.of, "what to evaluate")->check(CLI::IsMember({"t", "f", "diagonal"}));
  eval_f.power = eval->add_option("--power", o.power, "T-power x^(n)");
  add_output(eval, o, false);

  CLI::App* verify = app.add_subcommand("verify", "run one check and print its report");
  add_source(verify, o, verify_f);
  add_companion(verify, o, verify_f);
  add_grid(verify, o, verify_f);
  verify->add_option("--check", o.check, "check to run (default gph)")
      ->check(CLI::IsMember({"gph", "axioms", "pseudo-homogeneous", "archimedean", "diagonal",
                             "tm", "continuity"}));
  verify->add_option("--probe", o.probes, "archimedean probes (default 0.1 0.5 0.9)");
  verify->add_option("--n-max", o.n_max, "archimedean step limit (default 1000)");
  verify->add_option("--floor", o.floor, "archimedean floor (default 1e-3)");
  add_output(verify, o, true);

  CLI::App* cls = app.add_subcommand("classify", "identify the family of a t-norm");
  add_source(cls, o, classify_f);
  add_grid(cls, o, classify_f);
  add_output(cls, o, false);

  CLI::App* catalog = app.add_subcommand("catalog", "list the six families");
  add_output(catalog, o, false);

  CLI::App* cx = app.add_subcommand("counterexample", "search for a functional-equation violation");
  add_source(cx, o, cx_f);
  add_grid(cx, o, cx_f);
  add_output(cx, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, eval_f, out);
    if (verify->parsed()) return cmd_verify(o, verify_f, out);
    if (cls->parsed()) return cmd_classify(o, classify_f, out);
    if (catalog->parsed()) return cmd_catalog(o, out);
    if (cx->parsed()) return cmd_counterexample(o, cx_f, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace tnormlab::cli
