#include "tnormlab/analysis.hpp"

#include <algorithm>
#include <map>
#include <variant>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "sweep.hpp"
#include "tnormlab/rng.hpp"

namespace tnormlab {

namespace {

using detail::Best;

double T(const TNormSpec& spec, double x, double y) {
  return eval_tnorm(spec, UnitValue(x), UnitValue(y)).value();
}

double F(const CompanionF& f, double x, double y) {
  return eval_companion(f, UnitValue(x), UnitValue(y)).value();
}

Witness make_witness(double lambda, double x, double y, double lhs, double rhs) {
  return Witness{lambda, x, y, lhs, rhs, std::abs(lhs - rhs)};
}

std::string num(double v) { return format_number(v); }

void grid_metadata(Report& r, const GridSpec& grid) {
  r.metadata["points"] = std::to_string(grid.points);
  r.metadata["samples"] = std::to_string(grid.samples);
  r.metadata["seed"] = std::to_string(grid.seed);
  r.metadata["eq_tol"] = num(grid.eq_tol);
  r.metadata["strict_tol"] = num(grid.strict_tol);
}

struct Triple {
  double lambda, x, y;
};

std::vector<Triple> random_triples(const GridSpec& grid) {
  SplitMix64 rng(grid.seed);
  std::vector<Triple> out(static_cast<std::size_t>(grid.samples));
  for (Triple& t : out) {
    t.lambda = rng.uniform();
    t.x = rng.uniform();
    t.y = rng.uniform();
  }
  return out;
}

struct GphSweep {
  Best best;
  std::size_t triples = 0;
};

GphSweep gph_sweep(const TNormSpec& spec, const CompanionF& f, const GridSpec& grid) {
  grid.validate();
  const std::vector<double> nodes = grid.nodes();
  const std::size_t n = nodes.size();
  const std::vector<Triple> extra = random_triples(grid);
  const std::size_t grid_count = n * n * n;
  const std::size_t total = grid_count + extra.size();

  GphSweep out;
  out.triples = total;
  out.best = detail::max_gap(total, [&](std::size_t i) {
    Triple t;
    if (i < grid_count) {
      t = {nodes[i / (n * n)], nodes[(i / n) % n], nodes[i % n]};
    } else {
      t = extra[i - grid_count];
    }
    return gph_residual_at(spec, f, t.lambda, t.x, t.y);
  });
  return out;
}

std::string describe_gph(const Witness& w) {
  std::ostringstream os;
  os << "T(" << num(w.lambda * w.x) << ", " << num(w.lambda * w.y) << ") = " << num(w.lhs)
     << " but F(" << num(w.lambda) << ", T(" << num(w.x) << ", " << num(w.y)
     << ")) = " << num(w.rhs);
  return os.str();
}

// Bisection refinement of one grid edge.
struct EdgeRefinement {
  double pa, pb, qa, qb;  // endpoints (first, second coordinate)
  double fp, fq;
};

EdgeRefinement refine_edge(const std::function<double(double, double)>& fn, double pa, double pb,
                           double qa, double qb) {
  constexpr int kSteps = 48;
  double fp = fn(pa, pb);
  double fq = fn(qa, qb);
  for (int k = 0; k < kSteps; ++k) {
    const double ma = 0.5 * (pa + qa);
    const double mb = 0.5 * (pb + qb);
    if ((ma == pa && mb == pb) || (ma == qa && mb == qb)) break;
    const double fm = fn(ma, mb);
    if (std::abs(fm - fp) >= std::abs(fq - fm)) {
      qa = ma;
      qb = mb;
      fq = fm;
    } else {
      pa = ma;
      pb = mb;
      fp = fm;
    }
  }
  return {pa, pb, qa, qb, fp, fq};
}

}  // namespace

// ---------------------------------------------------------------------------

CompanionF canonical_f(const TNormSpec& spec) { return CompanionF::canonical(spec); }

UnitValue reconstruct_t_from_f(const CompanionF& f, UnitValue x, UnitValue y) {
  if (x.value() == 0.0 && y.value() == 0.0) return UnitValue::zero();
  const double hi = std::max(x.value(), y.value());
  const double lo = std::min(x.value(), y.value());
  return eval_companion(f, UnitValue(hi), UnitValue(lo / hi));
}

Witness gph_residual_at(const TNormSpec& spec, const CompanionF& f, double lambda, double x,
                        double y) {
  const double lhs = T(spec, lambda * x, lambda * y);
  const double rhs = F(f, lambda, T(spec, x, y));
  return make_witness(lambda, x, y, lhs, rhs);
}

// ---------------------------------------------------------------------------
// Axioms

Report check_axioms(const TNormSpec& spec, const GridSpec& grid) {
  grid.validate();
  const std::vector<double> nodes = grid.nodes();
  const std::size_t n = nodes.size();
  const double tol = grid.strict_tol;

  // T4: T(x,1) = x.
  const Best t4 = detail::max_gap(n, [&](std::size_t i) {
    const double x = nodes[i];
    return make_witness(1.0, x, 1.0, T(spec, x, 1.0), x);
  });

  // T1: T(x,y) = T(y,x).
  const Best t1 = detail::max_gap(n * n, [&](std::size_t i) {
    const double x = nodes[i / n];
    const double y = nodes[i % n];
    return make_witness(1.0, x, y, T(spec, x, y), T(spec, y, x));
  });

  // T3: T(x, y_j) <= T(x, y_{j+1}).
  const Best t3 = detail::max_gap(n * (n - 1), [&](std::size_t i) {
    const double x = nodes[i / (n - 1)];
    const double y = nodes[i % (n - 1)];
    const double z = nodes[i % (n - 1) + 1];
    const double lo = T(spec, x, y);
    const double hi = T(spec, x, z);
    Witness w{x, y, z, lo, hi, std::max(0.0, lo - hi)};
    return w;
  });

  // T2: T(x, T(y,z)) = T(T(x,y), z).
  const int assoc_points = grid.assoc_full ? grid.points : std::min(grid.points, grid.assoc_points);
  const std::vector<double> anodes = uniform_nodes(assoc_points);
  const std::size_t m = anodes.size();
  const std::vector<Triple> extra =
      assoc_points < grid.points ? random_triples(grid) : std::vector<Triple>{};
  const std::size_t assoc_grid = m * m * m;
  const Best t2 = detail::max_gap(assoc_grid + extra.size(), [&](std::size_t i) {
    Triple t;
    if (i < assoc_grid) {
      t = {anodes[i / (m * m)], anodes[(i / m) % m], anodes[i % m]};
    } else {
      t = extra[i - assoc_grid];
    }
    const double lhs = T(spec, t.lambda, T(spec, t.x, t.y));
    const double rhs = T(spec, T(spec, t.lambda, t.x), t.y);
    return make_witness(t.lambda, t.x, t.y, lhs, rhs);
  });

  struct Axiom {
    const char* name;
    const Best* best;
  };
  const Axiom order[] = {{"T4", &t4}, {"T1", &t1}, {"T3", &t3}, {"T2", &t2}};

  double max_residual = 0.0;
  const Axiom* failed = nullptr;
  for (const Axiom& a : order) {
    max_residual = std::max(max_residual, a.best->gap);
    if (!failed && a.best->gap > tol) failed = &a;
  }

  Report r = make_report("axioms", max_residual, tol,
                         failed ? std::optional<Witness>(failed->best->witness) : std::nullopt);
  grid_metadata(r, grid);
  for (const Axiom& a : order) r.metadata[std::string("residual_") + a.name] = num(a.best->gap);
  r.metadata["assoc_points"] = std::to_string(assoc_points);
  r.metadata["assoc_random_triples"] = std::to_string(extra.size());
  if (failed) {
    const Witness& w = failed->best->witness;
    std::ostringstream os;
    const std::string name = failed->name;
    r.metadata["failed_axiom"] = name;
    if (name == "T4") {
      os << "T4: T(" << num(w.x) << ", 1) = " << num(w.lhs) << " but expected " << num(w.rhs);
    } else if (name == "T1") {
      os << "T1: T(" << num(w.x) << ", " << num(w.y) << ") = " << num(w.lhs) << " but T("
         << num(w.y) << ", " << num(w.x) << ") = " << num(w.rhs);
    } else if (name == "T3") {
      os << "T3: T(" << num(w.lambda) << ", " << num(w.x) << ") = " << num(w.lhs) << " > T("
         << num(w.lambda) << ", " << num(w.y) << ") = " << num(w.rhs);
    } else {
      os << "T2: T(x, T(y,z)) = " << num(w.lhs) << " but T(T(x,y), z) = " << num(w.rhs)
         << " at (x,y,z) = (" << num(w.lambda) << ", " << num(w.x) << ", " << num(w.y) << ")";
    }
    r.metadata["witness_desc"] = os.str();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Functional equation

Report check_gph(const TNormSpec& spec, const CompanionF& f, const GridSpec& grid) {
  const GphSweep s = gph_sweep(spec, f, grid);
  Report r = make_report("gph", s.best.gap, grid.eq_tol, s.best.witness);
  grid_metadata(r, grid);
  r.metadata["tnorm"] = spec.to_string();
  r.metadata["companion"] = f.to_string();
  r.metadata["triples"] = std::to_string(s.triples);
  if (r.witness) r.metadata["witness_desc"] = describe_gph(*r.witness);
  return r;
}

Report check_gph(const TNormSpec& spec, const GridSpec& grid) {
  Report r = check_gph(spec, canonical_f(spec), grid);
  r.metadata["mode"] = "intrinsic";
  return r;
}

Report check_lambda_one(const CompanionF& f, const GridSpec& grid) {
  grid.validate();
  const std::vector<double> nodes = grid.nodes();
  const Best b = detail::max_gap(nodes.size(), [&](std::size_t i) {
    const double t = nodes[i];
    return make_witness(1.0, t, 1.0, F(f, 1.0, t), t);
  });
  Report r = make_report("gph_lambda1", b.gap, grid.eq_tol, b.witness);
  grid_metadata(r, grid);
  r.metadata["companion"] = f.to_string();
  if (r.witness) {
    r.metadata["witness_desc"] = "F(1, " + num(r.witness->x) + ") = " + num(r.witness->lhs) +
                                 " but the neutral element forces " + num(r.witness->rhs);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Continuity

ContinuityScan scan_continuity(const std::function<double(double, double)>& fn,
                               const GridSpec& grid) {
  grid.validate();
  constexpr std::size_t kCandidates = 64;
  const std::vector<double> nodes = grid.nodes();
  const std::size_t n = nodes.size();

  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) values[i * n + j] = fn(nodes[i], nodes[j]);
  }

  struct Edge {
    double jump;
    std::size_t id;  // 2 * cell + axis
  };
  std::vector<Edge> edges;
  edges.reserve(2 * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t cell = i * n + j;
      if (i + 1 < n) edges.push_back({std::abs(values[cell + n] - values[cell]), 2 * cell});
      if (j + 1 < n) edges.push_back({std::abs(values[cell + 1] - values[cell]), 2 * cell + 1});
    }
  }
  const std::size_t k = std::min(kCandidates, edges.size());
  std::partial_sort(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(k), edges.end(),
                    [](const Edge& a, const Edge& b) {
                      return a.jump > b.jump || (a.jump == b.jump && a.id < b.id);
                    });

  ContinuityScan out;
  out.max_grid_jump = edges.empty() ? 0.0 : edges.front().jump;
  for (std::size_t e = 0; e < k; ++e) {
    const Edge& edge = edges[e];
    if (!(edge.jump > grid.eq_tol)) break;
    const std::size_t cell = edge.id / 2;
    const std::size_t i = cell / n;
    const std::size_t j = cell % n;
    const bool along_first = edge.id % 2 == 0;
    const double qa = along_first ? nodes[i + 1] : nodes[i];
    const double qb = along_first ? nodes[j] : nodes[j + 1];
    const EdgeRefinement ref = refine_edge(fn, nodes[i], nodes[j], qa, qb);
    const double jump = std::abs(ref.fq - ref.fp);
    if (jump >= 0.5 * edge.jump && jump > grid.eq_tol && jump > out.persistent_jump) {
      out.continuous = false;
      out.persistent_jump = jump;
      out.p_first = ref.pa;
      out.p_second = ref.pb;
      out.q_first = ref.qa;
      out.q_second = ref.qb;
      out.p_value = ref.fp;
      out.q_value = ref.fq;
    }
  }
  return out;
}

Report check_continuity_equivalence(const TNormSpec& spec, const GridSpec& grid) {
  const CompanionF f = canonical_f(spec);
  const ContinuityScan ts = scan_continuity([&](double a, double b) { return T(spec, a, b); }, grid);
  const ContinuityScan fs = scan_continuity([&](double a, double b) { return F(f, a, b); }, grid);
  const bool agree = ts.continuous == fs.continuous;
  std::optional<Witness> w;
  if (!agree) {
    const ContinuityScan& bad = ts.continuous ? fs : ts;
    w = make_witness(bad.p_first, bad.p_second, bad.q_first, bad.p_value, bad.q_value);
  }
  Report r = make_report("continuity_equivalence", agree ? 0.0 : 1.0, 0.0, w);
  grid_metadata(r, grid);
  r.metadata["method"] = "heuristic: largest grid jumps refined by bisection";
  r.metadata["t_continuous"] = ts.continuous ? "true" : "false";
  r.metadata["f_continuous"] = fs.continuous ? "true" : "false";
  r.metadata["t_max_grid_jump"] = num(ts.max_grid_jump);
  r.metadata["f_max_grid_jump"] = num(fs.max_grid_jump);
  r.metadata["t_persistent_jump"] = num(ts.persistent_jump);
  r.metadata["f_persistent_jump"] = num(fs.persistent_jump);
  return r;
}

// ---------------------------------------------------------------------------
// Pseudo-homogeneity of a companion

Report check_pseudo_homogeneous(const CompanionF& f, const GridSpec& grid) {
  grid.validate();
  const std::vector<double> nodes = grid.nodes();
  const std::size_t n = nodes.size();
  const double tol = grid.eq_tol;
  auto Fv = [&](double a, double b) { return F(f, a, b); };

  const ContinuityScan cs = scan_continuity(Fv, grid);

  // Increasing in each argument: drop between adjacent nodes.
  const Best inc = detail::max_gap(2 * n * (n - 1), [&](std::size_t i) {
    const bool first_arg = i < n * (n - 1);
    const std::size_t k = first_arg ? i : i - n * (n - 1);
    const double fixed = nodes[k / (n - 1)];
    const double lo = nodes[k % (n - 1)];
    const double hi = nodes[k % (n - 1) + 1];
    const double a = first_arg ? Fv(lo, fixed) : Fv(fixed, lo);
    const double b = first_arg ? Fv(hi, fixed) : Fv(fixed, hi);
    return Witness{first_arg ? lo : fixed, first_arg ? fixed : lo, hi, a, b, std::max(0.0, a - b)};
  });

  // F(x,1) = 0 <=> x = 0. A zero at x > 0 is a violation of size x.
  Best boundary;
  {
    const double at0 = Fv(0.0, 1.0);
    boundary.offer(0, Witness{0.0, 1.0, 1.0, at0, 0.0, at0});
    for (std::size_t i = 1; i < n; ++i) {
      const double x = nodes[i];
      const double v = Fv(x, 1.0);
      if (v <= tol) boundary.offer(i, Witness{x, 1.0, 1.0, x, 0.0, x});
    }
  }

  const double cont_residual = cs.continuous ? 0.0 : cs.persistent_jump;
  const bool cont_ok = cont_residual <= tol;
  const bool inc_ok = inc.gap <= tol;
  const bool bnd_ok = boundary.gap <= tol;

  std::optional<Witness> w;
  std::string failed;
  std::string desc;
  if (!cont_ok) {
    failed = "continuity";
    w = make_witness(cs.p_first, cs.p_second, cs.q_first, cs.p_value, cs.q_value);
    desc = "jump of " + num(cs.persistent_jump) + " between F(" + num(cs.p_first) + ", " +
           num(cs.p_second) + ") = " + num(cs.p_value) + " and F(" + num(cs.q_first) + ", " +
           num(cs.q_second) + ") = " + num(cs.q_value);
  } else if (!inc_ok) {
    failed = "increasing";
    w = inc.witness;
    desc = "F decreases by " + num(inc.gap);
  } else if (!bnd_ok) {
    failed = "boundary";
    w = boundary.witness;
    desc = "F(" + num(w->lambda) + ", 1) = " + num(Fv(w->lambda, 1.0)) + " with x != 0";
  }

  Report r = make_report("pseudo_homogeneous", std::max({cont_residual, inc.gap, boundary.gap}),
                         tol, w);
  grid_metadata(r, grid);
  r.metadata["companion"] = f.to_string();
  r.metadata["continuous"] = cs.continuous ? "true" : "false";
  r.metadata["increasing"] = inc_ok ? "true" : "false";
  r.metadata["boundary"] = bnd_ok ? "true" : "false";
  r.metadata["continuity_method"] = "heuristic: largest grid jumps refined by bisection";
  if (!failed.empty()) {
    r.metadata["failed_condition"] = failed;
    r.metadata["witness_desc"] = desc;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Archimedean limit property

Report check_archimedean(const TNormSpec& spec, std::span<const UnitValue> probes, int n_max,
                         double floor) {
  if (n_max < 1) throw InvalidSpec("n_max must be >= 1");
  if (!(floor > 0.0 && floor < 1.0)) throw InvalidSpec("floor must lie in (0,1)");
  if (probes.empty()) throw InvalidSpec("need at least one probe");

  double worst = 0.0;
  std::optional<Witness> w;
  std::map<std::string, std::string> meta;
  for (const UnitValue x : probes) {
    if (!(x.value() > 0.0 && x.value() < 1.0)) throw InvalidSpec("probes must lie in (0,1)");
    UnitValue v = x;
    int n = 1;
    while (v.value() >= floor && n < n_max) {
      v = eval_tnorm(spec, x, v);
      ++n;
    }
    const std::string key = "n_min@" + num(x.value());
    if (v.value() < floor) {
      meta[key] = std::to_string(n);
    } else {
      meta[key] = "none";
      if (v.value() > worst) {
        worst = v.value();
        w = Witness{x.value(), x.value(), x.value(), v.value(), 0.0, v.value()};
      }
    }
  }
  // Passing requires every final power strictly below the floor.
  Report r = make_report("archimedean", worst, std::nextafter(floor, 0.0), w);
  r.metadata.insert(meta.begin(), meta.end());
  r.metadata["floor"] = num(floor);
  r.metadata["n_max"] = std::to_string(n_max);
  if (r.witness) {
    r.metadata["witness_desc"] = "x = " + num(r.witness->x) + " still has T-power " +
                                 num(r.witness->lhs) + " after " + std::to_string(n_max) +
                                 " steps";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Diagonal

DiagonalScan analyze_diagonal(const TNormSpec& spec, const GridSpec& grid) {
  grid.validate();
  DiagonalScan s;
  s.nodes = grid.nodes();
  const std::size_t n = s.nodes.size();
  s.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.values[i] = diagonal(spec, UnitValue(s.nodes[i])).value();

  s.strictly_increasing = true;
  s.identity_on_interior = true;
  s.zero_on_interior = true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double drop = s.values[i] - s.values[i + 1];
    if (drop > grid.eq_tol) {
      ++s.monotone_violations;
      s.max_drop = std::max(s.max_drop, drop);
    }
    if (i >= 1 && !(s.values[i + 1] > s.values[i])) s.strictly_increasing = false;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::abs(s.values[i] - s.nodes[i]) > grid.eq_tol) s.identity_on_interior = false;
    if (s.values[i] > grid.eq_tol) s.zero_on_interior = false;
  }

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (s.values[i] >= s.nodes[i] - grid.eq_tol) {
      bool plateau = i > 1;
      for (std::size_t j = 1; j < i && plateau; ++j) plateau = s.values[j] <= grid.eq_tol;
      if (plateau) {
        s.shelf_edge = s.nodes[i];
        s.plateau_end = s.nodes[i - 1];
        s.identity_after_edge = true;
        for (std::size_t j = i; j + 1 < n; ++j) {
          if (std::abs(s.values[j] - s.nodes[j]) > grid.eq_tol) s.identity_after_edge = false;
        }
      }
      break;
    }
  }

  s.limit_probe = 1.0 - grid.step_h;
  s.limit_at_one = diagonal(spec, UnitValue(s.limit_probe)).value();
  const double limit_tol = 10.0 * grid.step_h;
  s.limit_is_zero = s.limit_at_one <= grid.eq_tol;
  s.limit_is_one = 1.0 - s.limit_at_one <= limit_tol;
  return s;
}

Report scan_diagonal(const TNormSpec& spec, const GridSpec& grid) {
  const DiagonalScan s = analyze_diagonal(spec, grid);
  const double limit_tol = 10.0 * grid.step_h;
  const double dichotomy_gap = std::min(s.limit_at_one, 1.0 - s.limit_at_one);
  const double residual = std::max(s.limit_is_zero ? 0.0 : dichotomy_gap, s.max_drop);

  std::optional<Witness> w;
  if (residual > limit_tol) {
    const double target = s.limit_at_one < 0.5 ? 0.0 : 1.0;
    w = make_witness(s.limit_probe, s.limit_probe, s.limit_probe, s.limit_at_one, target);
    if (s.max_drop > dichotomy_gap) w->gap = s.max_drop;
  }
  Report r = make_report("diagonal", residual, limit_tol, w);
  grid_metadata(r, grid);
  r.metadata["step_h"] = num(grid.step_h);
  r.metadata["limit_at_1"] = num(s.limit_at_one);
  r.metadata["limit_class"] = s.limit_is_one ? "1" : (s.limit_is_zero ? "0" : "neither");
  r.metadata["monotone_violations"] = std::to_string(s.monotone_violations);
  r.metadata["strictly_increasing"] = s.strictly_increasing ? "true" : "false";
  r.metadata["identity_on_interior"] = s.identity_on_interior ? "true" : "false";
  r.metadata["zero_on_interior"] = s.zero_on_interior ? "true" : "false";
  r.metadata["shelf_edge"] = s.shelf_edge ? num(*s.shelf_edge) : "none";
  if (s.shelf_edge) r.metadata["identity_after_edge"] = s.identity_after_edge ? "true" : "false";
  if (r.witness) {
    r.metadata["witness_desc"] = "diagonal at " + num(s.limit_probe) + " is " +
                                 num(s.limit_at_one) + ", neither 0 nor 1";
  }
  return r;
}

// ---------------------------------------------------------------------------
// T_M equivalences

Report check_tm_equivalences(const TNormSpec& spec, const GridSpec& grid) {
  grid.validate();
  const CompanionF f = canonical_f(spec);
  const std::vector<double> nodes = grid.nodes();
  const double tol = grid.strict_tol;

  bool is_min = true, is_xy = true, commutes = true, neutral = true;
  for (double x : nodes) {
    for (double y : nodes) {
      const double fxy = F(f, x, y);
      if (is_min && std::abs(T(spec, x, y) - std::min(x, y)) > tol) is_min = false;
      if (is_xy && std::abs(fxy - x * y) > tol) is_xy = false;
      if (commutes && std::abs(fxy - F(f, y, x)) > tol) commutes = false;
    }
    if (neutral && std::abs(F(f, x, 1.0) - x) > tol) neutral = false;
  }

  const bool truth[] = {is_min, is_xy, commutes, neutral};
  std::string vec;
  int count = 0;
  for (bool b : truth) {
    vec += b ? 'T' : 'F';
    count += b;
  }
  const bool agree = count == 0 || count == 4;
  std::optional<Witness> w;
  if (!agree) w = Witness{0.0, 0.0, 0.0, static_cast<double>(count), 4.0, 4.0 - count};
  Report r = make_report("tm_equivalences", agree ? 0.0 : 1.0, 0.0, w);
  grid_metadata(r, grid);
  r.metadata["truth"] = vec;
  r.metadata["predicates"] = "T=min, F=xy, F commutative, F(x,1)=x";
  if (r.witness) r.metadata["witness_desc"] = "truth vector " + vec + " is mixed";
  return r;
}

// ---------------------------------------------------------------------------
// Counterexample search

Report find_gph_counterexample(const TNormSpec& spec, const GridSpec& grid) {
  const CompanionF f = canonical_f(spec);
  const GphSweep sweep = gph_sweep(spec, f, grid);
  Best best = sweep.best;
  std::string source = "grid";

  Best case1, case2;
  std::size_t probes = 0;
  if (const auto* os = std::get_if<family::OrdinalSum>(&spec.variant())) {
    constexpr int kSteps = 10;
    for (const Summand& s : os->summands) {
      const double a = s.lower;
      const double e = s.upper;
      if (a > 0.0) {
        for (int iu = 1; iu < kSteps; ++iu) {
          for (int iv = iu + 1; iv < kSteps; ++iv) {
            const double y = a + (e - a) * iu / kSteps;
            const double x = a + (e - a) * iv / kSteps;
            if (!(T(spec, x, y) < y)) continue;
            case1.offer(probes++, gph_residual_at(spec, f, a / y, x, y));
          }
        }
      }
      if (e < 1.0) {
        const double lo = std::max(a, e * e);
        for (int k = 1; k < kSteps; ++k) {
          const double x = lo + (e - lo) * k / kSteps;
          case2.offer(probes++, gph_residual_at(spec, f, x / e, e, e));
        }
      }
    }
  }
  if (case1.found() && case1.gap > best.gap) {
    best = case1;
    source = "case1";
  }
  if (case2.found() && case2.gap > best.gap) {
    best = case2;
    source = "case2";
  }

  Report r = make_report("gph_counterexample", best.gap, grid.eq_tol, best.witness);
  grid_metadata(r, grid);
  r.metadata["tnorm"] = spec.to_string();
  r.metadata["grid_best_gap"] = num(sweep.best.gap);
  r.metadata["targeted_probes"] = std::to_string(probes);
  if (case1.found()) {
    r.metadata["case1_best_gap"] = num(case1.gap);
    r.metadata["case1_witness"] = describe_gph(case1.witness);
  }
  if (case2.found()) {
    r.metadata["case2_best_gap"] = num(case2.gap);
    r.metadata["case2_witness"] = describe_gph(case2.witness);
  }
  if (r.witness) {
    r.metadata["source"] = source;
    r.metadata["witness_desc"] = describe_gph(*r.witness);
  }
  return r;
}

void write_gph_csv(std::ostream& os, const TNormSpec& spec, const CompanionF& f,
                   const GridSpec& grid) {
  grid.validate();
  const std::vector<double> nodes = grid.nodes();
  os << "lambda,x,y,lhs,rhs,residual\n";
  for (double l : nodes) {
    for (double x : nodes) {
      for (double y : nodes) {
        const Witness w = gph_residual_at(spec, f, l, x, y);
        os << num(l) << ',' << num(x) << ',' << num(y) << ',' << num(w.lhs) << ','
           << num(w.rhs) << ',' << num(w.gap) << '\n';
      }
    }
  }
}

}  // namespace tnormlab
