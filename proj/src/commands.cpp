#include "freegraph/commands.hpp"

#include "freegraph/calculus.hpp"
#include "freegraph/error.hpp"
#include "freegraph/fock.hpp"
#include "freegraph/graph.hpp"
#include "freegraph/law.hpp"
#include "freegraph/ncpoly.hpp"
#include "freegraph/series.hpp"
#include "freegraph/trace.hpp"
#include "freegraph/wishart.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <random>

namespace freegraph {

namespace {

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw Error(ErrorCode::invalid_argument, fmt::format("--{} expects an integer, got '{}'", key, v));
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double out = std::stod(v, &pos);
    if (pos == v.size() && std::isfinite(out)) return out;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::invalid_argument, fmt::format("--{} expects a number, got '{}'", key, v));
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on") return true;
  if (v == "0" || v == "false" || v == "off") return false;
  throw Error(ErrorCode::invalid_argument, fmt::format("--{} expects true or false, got '{}'", key, v));
}

std::string num(double x) { return fmt::format("{:.15g}", x); }
std::string sci(double x) { return fmt::format("{:.3e}", x); }

std::string num(std::complex<double> z) {
  if (z.imag() == 0) return num(z.real());
  return fmt::format("\"({},{})\"", num(z.real()), num(z.imag()));
}

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string vertex_set(const WeightedGraph& g, const std::vector<VertexId>& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ";" : "") + g.vertex(vs[i]).name;
  return out + "}";
}

class Output {
 public:
  explicit Output(const RunConfig& cfg) { line("# freegraph " + cfg.command); }
  void echo(const std::string& key, const std::string& value) { line(fmt::format("# {}={}", key, value)); }
  void line(const std::string& s) {
    text_ += s;
    text_ += '\n';
  }
  void blank() { text_ += '\n'; }
  std::string& text() { return text_; }

 private:
  std::string text_;
};

DirectedDouble load_graph(const RunConfig& cfg) {
  if (cfg.graph_path.empty()) throw Error(ErrorCode::invalid_argument, "a graph file is required");
  return DirectedDouble(WeightedGraph::load(cfg.graph_path));
}

VertexId resolve_corner(const DirectedDouble& g, const ExactPoly& q, const std::string& vertex) {
  if (!vertex.empty()) return g.graph().vertex_by_name(vertex);
  if (q.terms().empty()) throw Error(ErrorCode::invalid_argument, "expression is zero; pass --vertex");
  const VertexId v = q.terms().begin()->first.start;
  for (const auto& [w, c] : q.terms())
    if (w.start != v || w.end != v)
      throw Error(ErrorCode::not_cornered, "expression is not supported in a single corner; pass --vertex");
  return v;
}

std::string require_expr(const RunConfig& cfg) {
  if (cfg.expr.empty()) throw Error(ErrorCode::invalid_argument, "--expr is required");
  return cfg.expr;
}

int run_classify(const RunConfig& cfg, Output& out) {
  if (cfg.graph_path.empty()) throw Error(ErrorCode::invalid_argument, "a graph file is required");
  const WeightedGraph g = WeightedGraph::load(cfg.graph_path);
  out.echo("graph", cfg.graph_path);
  out.echo("arithmetic", "exact rational");
  const VertexClassification cls = classify_vertices(g);
  out.line("vertex,weight,neighbour_sum,class");
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const auto v = static_cast<VertexId>(i);
    const char* c = cls.in_greater(v) ? ">" : cls.in_equal(v) ? "=" : "<";
    out.line(fmt::format("{},{},{},{}", g.vertex(v).name, to_string(g.exact_weight(v)),
                         to_string(cls.neighbour_sum[i]), c));
  }
  out.blank();
  out.line("property,value");
  out.line("V_>," + vertex_set(g, cls.greater));
  out.line("V_=," + vertex_set(g, cls.equal));
  out.line("V_>=," + vertex_set(g, cls.geq));
  try {
    const StructureReport rep = structure_report(g);
    out.line(fmt::format("simple,{}", rep.simple));
    out.line(fmt::format("unique_trace,{}", rep.unique_trace));
    out.line(fmt::format("ideal_unital,{}", rep.ideal_unital));
    out.line(fmt::format("quotient_dimension,{}", rep.quotient_dimension));
    out.line("k0_basis," + vertex_set(g, rep.k0_basis));
    out.line(fmt::format("k1_trivial,{}", rep.k1_trivial));
    for (const auto& [v, t] : rep.summand_traces)
      out.line(fmt::format("summand_trace[{}],{}", g.vertex(v).name, to_string(t)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::edge_count) throw;
    out.line("structure_report,unavailable: " + std::string(e.what()));
  }
  return 0;
}

int run_trace(const RunConfig& cfg, Output& out) {
  const DirectedDouble g = load_graph(cfg);
  if (cfg.word.empty() == cfg.expr.empty()) throw Error(ErrorCode::invalid_argument, "pass exactly one of --word, --expr");
  out.echo("graph", cfg.graph_path);
  out.echo("mode", cfg.exact ? "exact" : "float");
  out.line("input,trace");
  if (!cfg.word.empty()) {
    const Word w = parse_word(g, cfg.word);
    if (cfg.exact) {
      ExactTraceEngine eng(g);
      out.line(quoted(cfg.word) + "," + to_string(eng.trace(w)));
    } else {
      TraceEngine eng(g);
      out.line(quoted(cfg.word) + "," + num(eng.trace(w)));
    }
    return 0;
  }
  const ExactPoly p = parse_expression(cfg.expr, g);
  if (cfg.exact) {
    ExactTraceEngine eng(g);
    out.line(quoted(cfg.expr) + "," + quoted(to_string(eng.trace(p))));
  } else {
    TraceEngine eng(g);
    out.line(quoted(cfg.expr) + "," + num(eng.trace(to_numeric(p))));
  }
  return 0;
}

int run_moments(const RunConfig& cfg, Output& out) {
  const DirectedDouble g = load_graph(cfg);
  const ExactPoly q = parse_expression(require_expr(cfg), g);
  const VertexId alpha = resolve_corner(g, q, cfg.vertex);
  out.echo("graph", cfg.graph_path);
  out.echo("expr", cfg.expr);
  out.echo("vertex", g.graph().vertex(alpha).name);
  out.echo("max_order", std::to_string(cfg.max_order));
  out.echo("mode", cfg.exact ? "exact" : "float");
  if (cfg.exact) {
    ExactTraceEngine eng(g);
    const auto m = exact_moments(g, q, alpha, cfg.max_order, eng);
    out.line("k,m_k");
    for (std::size_t k = 0; k < m.size(); ++k) out.line(fmt::format("{},{}", k, to_string(m[k])));
    return 0;
  }
  TraceEngine eng(g);
  const MomentSeq ms = moments(g, to_numeric(q), alpha, cfg.max_order, eng);
  const double h = hankel_min_relative_eigenvalue(ms);
  out.echo("hankel_min_relative_eigenvalue", sci(h));
  out.line("k,m_k");
  for (std::size_t k = 0; k < ms.m.size(); ++k) out.line(fmt::format("{},{}", k, num(ms.m[k])));
  if (!hankel_psd(ms)) {
    out.line("# Hankel matrix is not positive semidefinite");
    return 2;
  }
  return 0;
}

int run_law(const RunConfig& cfg, RunResult& res, Output& out) {
  const DirectedDouble g = load_graph(cfg);
  const ExactPoly q = parse_expression(require_expr(cfg), g);
  const VertexId alpha = resolve_corner(g, q, cfg.vertex);
  TraceEngine eng(g);
  const MomentSeq ms = moments(g, to_numeric(q), alpha, cfg.max_order, eng);
  LawOptions opt;
  opt.eta = cfg.eta;
  opt.grid_points = cfg.grid_points;
  opt.lo = cfg.grid_lo;
  opt.hi = cfg.grid_hi;
  SpectralEstimate est = estimate_law(ms, opt);
  est.relation = find_algebraic_relation(ms, cfg.max_dz, cfg.max_dg);
  const SupportArithmeticReport arith = check_support_arithmetic(est, g.graph(), alpha);
  const LogMoment lm = log_moment(est);

  out.echo("graph", cfg.graph_path);
  out.echo("expr", cfg.expr);
  out.echo("vertex", g.graph().vertex(alpha).name);
  out.echo("moments", std::to_string(cfg.max_order));
  out.echo("eta", num(cfg.eta));
  out.echo("grid", fmt::format("{} points on [{}, {}]", cfg.grid_points, num(est.grid.front()), num(est.grid.back())));
  out.echo("relation_search", fmt::format("dz<={} dG<={}", cfg.max_dz, cfg.max_dg));
  for (const auto& w : est.warnings) out.line("# warning: " + w);

  double atom_total = 0;
  for (const auto& a : est.atoms) atom_total += a.mass;
  double worst = 0;
  for (double e : est.moment_roundtrip_error) worst = std::max(worst, e);
  out.line("quantity,value");
  out.line("m_0," + num(ms.m[0]));
  out.line("ac_mass," + num(est.ac_mass));
  out.line("atom_mass," + num(atom_total));
  out.line(fmt::format("herglotz_violations,{}", est.herglotz_violations));
  out.line("moment_roundtrip_max_rel_error," + sci(worst));
  out.line("log_moment," + (lm.finite ? num(lm.value) : std::string("-inf")));
  if (est.relation) {
    out.line("relation," + format_relation(*est.relation));
    out.line("relation_residual," + sci(est.relation->residual));
  } else {
    out.line("relation,none found");
  }
  out.blank();
  out.line("atom_location,atom_mass");
  for (const auto& a : est.atoms) out.line(num(a.location) + "," + num(a.mass));
  out.blank();
  out.line("interval_lo,interval_hi,mass,nearest_lattice,within_tolerance");
  for (const auto& row : arith.rows)
    out.line(fmt::format("{},{},{},{},{}", num(row.interval.lo), num(row.interval.hi), num(row.interval.mass),
                         num(row.nearest), row.within));
  if (est.relation) {
    out.blank();
    out.line("g_power,z_power,coefficient");
    for (int j = 0; j <= est.relation->dG; ++j)
      for (int i = 0; i <= est.relation->dz; ++i) {
        const double c = est.relation->c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        if (c != 0) out.line(fmt::format("{},{},{}", j, i, num(c)));
      }
  }
  if (!cfg.density_path.empty()) {
    std::string csv = fmt::format("# eta={}\nx,density\n", num(cfg.eta));
    for (std::size_t i = 0; i < est.grid.size(); ++i) csv += num(est.grid[i]) + "," + num(est.density[i]) + "\n";
    res.files.emplace_back(cfg.density_path, std::move(csv));
  }
  // A relation is only ever returned certified; failing the certificate again is an internal error.
  if (est.relation && relation_residual(ms, *est.relation) > 1e-8) return 2;
  return 0;
}

int run_series(const RunConfig& cfg, Output& out) {
  const DirectedDouble g = load_graph(cfg);
  int iterations = 0;
  const SeriesSystem sys = solve_system(g, cfg.degree, &iterations);
  out.echo("graph", cfg.graph_path);
  out.echo("degree", std::to_string(cfg.degree));
  out.echo("iterations", std::to_string(iterations));
  if (cfg.check) out.echo("tol", sci(cfg.tol));

  std::vector<std::size_t> which;
  if (cfg.vertex.empty())
    for (std::size_t a = 0; a < sys.size(); ++a) which.push_back(a);
  else
    which.push_back(index(g.graph().vertex_by_name(cfg.vertex)));

  TraceEngine eng(g);
  double worst = 0;
  out.line(cfg.check ? "word,coefficient,trace,abs_error" : "word,coefficient");
  for (std::size_t a : which) {
    const auto& z = sys[a];
    if (cfg.check) {
      const CrosscheckResult r = crosscheck(g, z, eng);
      worst = std::max(worst, r.max_abs_error);
      for (const auto& row : r.rows)
        if (row.coefficient != 0 || row.trace != 0)
          out.line(fmt::format("{},{},{},{}", quoted(format_word(g, row.word)), num(row.coefficient), num(row.trace),
                               sci(row.abs_error)));
    } else {
      for (const auto& [w, c] : z.coeffs) out.line(fmt::format("{},{}", quoted(format_word(g, *make_word(g, w))), num(c)));
    }
  }
  out.blank();
  out.line("vertex,length,total_coefficient");
  for (std::size_t a : which) {
    const auto c = specialize_commutative(sys[a]);
    for (std::size_t m = 1; m < c.size(); ++m)
      out.line(fmt::format("{},{},{}", g.graph().vertex(static_cast<VertexId>(a)).name, m, num(c[m])));
  }
  if (cfg.check) {
    out.blank();
    out.line("check,max_abs_error,tolerance,status");
    const bool ok = worst <= cfg.tol;
    out.line(fmt::format("series_vs_trace,{},{},{}", sci(worst), sci(cfg.tol), ok ? "pass" : "FAIL"));
    return ok ? 0 : 2;
  }
  return 0;
}

double sparse_norm(const SparseMatrix& m) { return m.nonZeros() ? m.coeffs().cwiseAbs().maxCoeff() : 0.0; }

int run_fock_check(const RunConfig& cfg, Output& out) {
  const DirectedDouble g = load_graph(cfg);
  const TruncatedFock fk(g, cfg.depth);
  out.echo("graph", cfg.graph_path);
  out.echo("depth", std::to_string(cfg.depth));
  out.echo("dimension", std::to_string(fk.dimension()));
  out.echo("tol", sci(cfg.tol));
  out.echo("commutator_tol", sci(cfg.commutator_tol));
  if (cfg.calculus) {
    out.echo("seed", std::to_string(cfg.seed));
    out.echo("random_polys", std::to_string(cfg.random_polys));
  }
  out.line("check,max_residual,tolerance,status");
  bool all_ok = true;
  auto report = [&](const std::string& name, double r, double tol) {
    const bool ok = r <= tol;
    all_ok = all_ok && ok;
    out.line(fmt::format("{},{},{},{}", name, sci(r), sci(tol), ok ? "pass" : "FAIL"));
  };

  TraceEngine eng(g);
  double oracle = 0;
  for (std::size_t a = 0; a < g.vertex_count(); ++a)
    for (const Word& w : enumerate_loops(g, static_cast<VertexId>(a), cfg.depth))
      oracle = std::max(oracle, std::abs(eng.trace(w) - fk.trace(w)));
  report("trace_vs_fock", oracle, cfg.tol);

  const auto N = g.size();
  double comm = 0, adj = 0;
  for (std::size_t e = 0; e < N; ++e) {
    const auto ee = static_cast<OrientedEdgeId>(e);
    SparseMatrix d = fk.generator(g.op(ee)) - SparseMatrix(fk.generator(ee).transpose());
    adj = std::max(adj, sparse_norm(d));
    for (std::size_t f = 0; f < N; ++f) comm = std::max(comm, fk.commutator_residual(ee, static_cast<OrientedEdgeId>(f)));
  }
  report("commutator_interior", comm, cfg.commutator_tol);
  report("generator_adjoint", adj, cfg.commutator_tol);
  SparseMatrix id(static_cast<Eigen::Index>(fk.dimension()), static_cast<Eigen::Index>(fk.dimension()));
  id.setIdentity();
  report("conjugation_involution", sparse_norm(SparseMatrix(fk.conjugation() * fk.conjugation()) - id),
         cfg.commutator_tol);
  SparseMatrix psum = id * 0.0;
  for (std::size_t a = 0; a < g.vertex_count(); ++a) psum += fk.projection(static_cast<VertexId>(a));
  report("projection_partition", sparse_norm(psum - id), cfg.commutator_tol);

  if (cfg.calculus) {
    std::mt19937_64 rng(cfg.seed);
    RandomPolyOptions opts;
    double leib = 0, conj = 0, sigma = 0, adjf = 0;
    std::uniform_int_distribution<std::size_t> any_vertex(0, g.vertex_count() - 1);
    // Trace identities are only informative when the corners line up, so the
    // random elements are drawn between the vertices each pairing needs.
    auto between = [&](VertexId from, VertexId to) {
      RandomPolyOptions o = opts;
      o.start_at = from;
      o.end_at = to;
      return random_poly(g, rng, o);
    };
    for (int i = 0; i < cfg.random_polys; ++i) {
      const auto e = static_cast<OrientedEdgeId>(static_cast<std::size_t>(i) % N);
      const Poly p = random_poly(g, rng, opts);
      const Poly q = random_poly(g, rng, opts);
      leib = std::max(leib, check_leibniz(g, e, p, q));
      sigma = std::max(sigma, check_sigma_symmetry(g, e, p));
      conj = std::max(conj, check_conjugate_variable(g, eng, e, between(g.source(e), g.target(e))));
      const auto a = static_cast<VertexId>(any_vertex(rng));
      const auto b = static_cast<VertexId>(any_vertex(rng));
      const Poly big = between(a, b);
      adjf = std::max(adjf, check_adjoint_formula(g, eng, e, between(a, g.source(e)), between(g.target(e), b), big));
    }
    report("leibniz", leib, cfg.tol);
    report("conjugate_variable", conj, cfg.tol);
    report("sigma_symmetry", sigma, cfg.tol);
    report("adjoint_formula", adjf, cfg.tol);

    std::uniform_int_distribution<std::size_t> pick_vertex(0, g.vertex_count() - 1);
    std::uniform_int_distribution<std::size_t> pick_length(0, 6);
    double flat = 0;
    for (int i = 0; i < cfg.random_polys; ++i) {
      const auto start = static_cast<VertexId>(pick_vertex(rng));
      const Word w = random_path(g, rng, start, pick_length(rng));
      flat = std::max(flat, check_flatness_identity(g, ExactPoly::monomial(w), w.start, w.end));
    }
    report("flatness_identity_terms", flat, 0.0);
  }
  return all_ok ? 0 : 2;
}

int run_wishart(const RunConfig& cfg, RunResult& res, Output& out) {
  EnsembleSpec spec;
  spec.ratios = cfg.ratios;
  spec.n = cfg.n;
  spec.samples = cfg.samples;
  spec.seed = cfg.seed;
  spec.diagonal = cfg.diagonal;
  const DirectedDouble g(limit_graph(spec));
  const std::string expr = cfg.expr.empty() ? "X[e1_2+]*X[e1_2-]" : cfg.expr;
  const Poly q = to_numeric(parse_expression(expr, g));
  WishartOptions opt;
  opt.max_moment = cfg.max_moment;
  opt.eigenvalues = !cfg.hist_path.empty();
  opt.bins = cfg.bins;
  const WishartReport rep = compare(spec, g, q, opt);

  std::string ratios, sizes;
  for (std::size_t i = 0; i < spec.ratios.size(); ++i) {
    ratios += (i ? "," : "") + num(spec.ratios[i]);
    sizes += (i ? "," : "") + std::to_string(rep.sizes[i]);
  }
  out.echo("ratios", ratios);
  out.echo("block_sizes", sizes);
  out.echo("n", std::to_string(spec.n));
  out.echo("samples", std::to_string(spec.samples));
  out.echo("seed", std::to_string(spec.seed));
  out.echo("expr", expr);
  out.echo("diagonal", spec.diagonal ? "true" : "false");
  out.echo("corner", g.graph().vertex(rep.corner).name);
  out.line("m,empirical,std_error,predicted,z_score,within_3se");
  for (const auto& m : rep.moments)
    out.line(fmt::format("{},{},{},{},{},{}", m.order, num(m.empirical), num(m.std_error), num(m.predicted),
                         fmt::format("{:.3f}", m.z_score), std::abs(m.z_score) <= 3));
  if (rep.gap_fraction) {
    out.blank();
    out.line("support_lo,support_hi");
    for (const auto& iv : rep.predicted_support) out.line(num(iv.lo) + "," + num(iv.hi));
    out.blank();
    out.line("quantity,value");
    out.line("eigenvalue_fraction_outside_predicted_support," + num(*rep.gap_fraction));
  }
  if (!cfg.hist_path.empty()) {
    std::string csv = "bin_lo,bin_hi,count\n";
    for (const auto& b : rep.histogram) csv += fmt::format("{},{},{}\n", num(b.lo), num(b.hi), b.count);
    res.files.emplace_back(cfg.hist_path, std::move(csv));
  }
  return 0;
}

}  // namespace

void set_option(RunConfig& cfg, const std::string& key, const std::string& v) {
  static const std::map<std::string, std::function<void(RunConfig&, const std::string&)>> setters = {
      {"graph", [](RunConfig& c, const std::string& s) { c.graph_path = s; }},
      {"word", [](RunConfig& c, const std::string& s) { c.word = s; }},
      {"expr", [](RunConfig& c, const std::string& s) { c.expr = s; }},
      {"vertex", [](RunConfig& c, const std::string& s) { c.vertex = s; }},
      {"max-order", [](RunConfig& c, const std::string& s) { c.max_order = parse_int("max-order", s); }},
      {"degree", [](RunConfig& c, const std::string& s) { c.degree = parse_int("degree", s); }},
      {"depth", [](RunConfig& c, const std::string& s) { c.depth = parse_int("depth", s); }},
      {"eta", [](RunConfig& c, const std::string& s) { c.eta = parse_real("eta", s); }},
      {"grid-points", [](RunConfig& c, const std::string& s) { c.grid_points = parse_int("grid-points", s); }},
      {"grid-lo", [](RunConfig& c, const std::string& s) { c.grid_lo = parse_real("grid-lo", s); }},
      {"grid-hi", [](RunConfig& c, const std::string& s) { c.grid_hi = parse_real("grid-hi", s); }},
      {"max-dz", [](RunConfig& c, const std::string& s) { c.max_dz = parse_int("max-dz", s); }},
      {"max-dg", [](RunConfig& c, const std::string& s) { c.max_dg = parse_int("max-dg", s); }},
      {"tol", [](RunConfig& c, const std::string& s) { c.tol = parse_real("tol", s); }},
      {"commutator-tol", [](RunConfig& c, const std::string& s) { c.commutator_tol = parse_real("commutator-tol", s); }},
      {"seed",
       [](RunConfig& c, const std::string& s) {
         std::uint64_t out = 0;
         auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
         if (ec != std::errc() || p != s.data() + s.size())
           throw Error(ErrorCode::invalid_argument, "--seed expects a nonnegative integer, got '" + s + "'");
         c.seed = out;
       }},
      {"samples", [](RunConfig& c, const std::string& s) { c.samples = parse_int("samples", s); }},
      {"n", [](RunConfig& c, const std::string& s) { c.n = parse_int("n", s); }},
      {"ratios",
       [](RunConfig& c, const std::string& s) {
         c.ratios.clear();
         std::size_t start = 0;
         while (start <= s.size()) {
           const std::size_t end = std::min(s.find(',', start), s.size());
           c.ratios.push_back(parse_real("ratios", s.substr(start, end - start)));
           start = end + 1;
         }
       }},
      {"max-moment", [](RunConfig& c, const std::string& s) { c.max_moment = parse_int("max-moment", s); }},
      {"bins", [](RunConfig& c, const std::string& s) { c.bins = parse_int("bins", s); }},
      {"random-polys", [](RunConfig& c, const std::string& s) { c.random_polys = parse_int("random-polys", s); }},
      {"diagonal", [](RunConfig& c, const std::string& s) { c.diagonal = parse_bool("diagonal", s); }},
      {"exact", [](RunConfig& c, const std::string& s) { c.exact = parse_bool("exact", s); }},
      {"calculus", [](RunConfig& c, const std::string& s) { c.calculus = parse_bool("calculus", s); }},
      {"check", [](RunConfig& c, const std::string& s) { c.check = parse_bool("check", s); }},
      {"density", [](RunConfig& c, const std::string& s) { c.density_path = s; }},
      {"hist", [](RunConfig& c, const std::string& s) { c.hist_path = s; }},
  };
  auto it = setters.find(key);
  if (it == setters.end()) throw Error(ErrorCode::invalid_argument, "unknown option '" + key + "'");
  it->second(cfg, v);
}

RunResult run(const RunConfig& cfg) {
  RunResult res;
  Output out(cfg);
  try {
    if (cfg.command == "classify")
      res.exit_code = run_classify(cfg, out);
    else if (cfg.command == "trace")
      res.exit_code = run_trace(cfg, out);
    else if (cfg.command == "moments")
      res.exit_code = run_moments(cfg, out);
    else if (cfg.command == "law")
      res.exit_code = run_law(cfg, res, out);
    else if (cfg.command == "series")
      res.exit_code = run_series(cfg, out);
    else if (cfg.command == "fock-check")
      res.exit_code = run_fock_check(cfg, out);
    else if (cfg.command == "wishart")
      res.exit_code = run_wishart(cfg, res, out);
    else
      throw Error(ErrorCode::invalid_argument, "unknown command '" + cfg.command + "'");
    res.text = std::move(out.text());
  } catch (const Error& e) {
    res = RunResult{};
    res.exit_code = 1;
    res.error = e.what();
    res.error_code = static_cast<int>(e.code());
  } catch (const std::exception& e) {
    res = RunResult{};
    res.exit_code = 1;
    res.error = std::string("internal error: ") + e.what();
    res.error_code = 100;
  }
  return res;
}

}  // namespace freegraph
