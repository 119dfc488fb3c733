// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "freegraph/calculus.hpp"
#include "freegraph/commands.hpp"
#include "freegraph/error.hpp"
#include "freegraph/fock.hpp"
#include "freegraph/law.hpp"
#include "freegraph/series.hpp"
#include "freegraph/wishart.hpp"
#include "support.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

using namespace freegraph;
using fgtest::load, fgtest::load_graph, fgtest::oe;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0;
  std::size_t words = 0;
  for (const char* name : fgtest::corpus) {
    auto g = load(name);
    TraceEngine engine(g);
    TruncatedFock fock(g, 8);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      const auto base = static_cast<VertexId>(v);
      auto loops = enumerate_loops(g, base, 8);
      loops.push_back(vertex_word(base));
      for (const auto& w : loops) {
        worst = std::max(worst, std::abs(engine.trace(w) - fock.trace(w)));
        ++words;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs <= 60,
          fmt::format("max |trace - oracle| = {:.2e} over {} loop words, {:.1f} s", worst, words, secs)};
}

Outcome catalan() {
  auto g = load("self_loop");
  ExactTraceEngine exact(g);
  const auto m = exact_moments(g, parse_expression("X[l]", g), VertexId{0}, 8, exact);
  const bool exact_ok = m[2] == 1 && m[4] == 2 && m[6] == 5 && m[8] == 14;

  TraceEngine engine(g);
  const auto ms = moments(g, Poly::generator(g, OrientedEdgeId{0}), VertexId{0}, 20, engine);
  const auto rel = find_algebraic_relation(ms, 4, 4);
  const std::string text = rel ? format_relation(*rel) : "none";
  const double res = rel ? rel->residual : INFINITY;
  return {exact_ok && text == "G^2 - z*G + 1 = 0" && res <= 1e-8,
          fmt::format("m2,m4,m6,m8 = {},{},{},{}; relation {} (residual {:.1e})", to_string(m[2]),
                      to_string(m[4]), to_string(m[6]), to_string(m[8]), text, res)};
}

Outcome free_poisson() {
  double worst = 0;
  for (const char* text : {"vertex a 1\nvertex b 1\nedge e a b\n", "vertex a 1\nvertex b 2\nedge e a b\n",
                           "vertex a 1\nvertex b 4\nedge e a b\n"}) {
    DirectedDouble g(WeightedGraph::parse(text));
    TraceEngine engine(g);
    for (auto e : {oe(g, "e+"), oe(g, "e-")}) {
      const auto law = free_poisson_reference(g, e);
      const auto ms = moments(g, Poly::generator(g, g.op(e)) * Poly::generator(g, e), g.target(e), 8, engine);
      for (int k = 0; k <= 8; ++k) {
        const double tr = ms.m[static_cast<std::size_t>(k)];
        worst = std::max(worst, std::abs(law.moment(k) - tr) / std::max(1.0, std::abs(tr)));
      }
    }
  }
  auto g = load("edge_1_4");
  TraceEngine engine(g);
  const VertexId light = g.graph().vertex_by_name("a");
  const auto ms = moments(g, to_numeric(parse_expression("X[e+]*X[e-]", g)), light, 2, engine);
  const double m2 = ms.m[2];
  return {worst <= 1e-6 && std::abs(m2 - 5) <= 1e-9,
          fmt::format("max relative moment gap {:.2e} (k <= 8); light-corner m2 = {:.12f}", worst, m2)};
}

Outcome series_agreement() {
  double worst = 0;
  for (const char* name : fgtest::corpus) {
    auto g = load(name);
    TraceEngine engine(g);
    for (const auto& s : solve_system(g, 6)) worst = std::max(worst, crosscheck(g, s, engine).max_abs_error);
  }
  return {worst <= 1e-9, fmt::format("max |coefficient - trace| = {:.2e} at degree 6", worst)};
}

Outcome calculus() {
  double leibniz = 0, conjugate = 0, sigma = 0, adjoint_formula = 0, flatness = 0;
  for (const char* name : fgtest::corpus) {
    auto g = load(name);
    TraceEngine engine(g);
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::size_t> vertex(0, g.vertex_count() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      const auto e = static_cast<OrientedEdgeId>(static_cast<std::size_t>(trial) % g.size());
      const VertexId s = g.source(e), t = g.target(e);
      const VertexId A = static_cast<VertexId>(vertex(rng)), B = static_cast<VertexId>(vertex(rng));
      auto corner = [&](VertexId from, VertexId to) {
        RandomPolyOptions o;
        o.start_at = from;
        o.end_at = to;
        return random_poly(g, rng, o);
      };
      const Poly p = corner(s, t);
      const Poly q = random_poly(g, rng, {});
      leibniz = std::max(leibniz, check_leibniz(g, e, p, q));
      conjugate = std::max(conjugate, check_conjugate_variable(g, engine, e, p));
      sigma = std::max(sigma, check_sigma_symmetry(g, e, q));
      adjoint_formula = std::max(adjoint_formula, check_adjoint_formula(g, engine, e, corner(A, s), corner(t, B), corner(A, B)));

      const Word w = random_path(g, rng, static_cast<VertexId>(vertex(rng)), rng() % 7);
      flatness = std::max(flatness, check_flatness_identity(g, ExactPoly::monomial(w, QComplex(1)), w.start, w.end));
    }
  }
  const bool ok = leibniz <= 1e-9 && conjugate <= 1e-9 && sigma <= 1e-9 && adjoint_formula <= 1e-9 && flatness == 0;
  return {ok, fmt::format("leibniz {:.1e}, conjugate variable {:.1e}, sigma {:.1e}, adjoint {:.1e}, flatness terms {}",
                          leibniz, conjugate, sigma, adjoint_formula, flatness)};
}

Outcome commutators() {
  double worst = 0;
  std::size_t pairs = 0;
  for (const char* name : fgtest::corpus) {
    auto g = load(name);
    TruncatedFock fock(g, 6);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) {
        worst = std::max(worst, fock.commutator_residual(static_cast<OrientedEdgeId>(i), static_cast<OrientedEdgeId>(j)));
        ++pairs;
      }
  }
  return {worst <= 1e-12, fmt::format("max interior residual {:.1e} over {} edge pairs at depth 6", worst, pairs)};
}

Outcome classification() {
  std::vector<std::string> failures;
  auto names = [](const WeightedGraph& g, const std::vector<VertexId>& vs) {
    std::string s;
    for (auto v : vs) s += g.vertex(v).name;
    return s;
  };
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  const auto par = load_graph("parallel_1_2");
  const auto cp = classify_vertices(par);
  expect(names(par, cp.equal) == "b" && cp.greater.empty(), "parallel sets");

  const auto star = load_graph("star");
  const auto rs = structure_report(star);
  expect(names(star, rs.classification.greater) == "c" && rs.classification.equal.empty(), "star sets");
  expect(!rs.simple && rs.ideal_unital, "star simplicity/unitality");
  expect(rs.summand_traces.size() == 1 && rs.summand_traces.begin()->second == 7, "star summand trace");

  const auto tri = load_graph("triangle");
  const auto rt = structure_report(tri);
  expect(rt.classification.geq.empty() && rt.simple && rt.unique_trace, "triangle");

  for (const WeightedGraph* g : {&par, &star, &tri}) {
    const auto a = structure_report(*g);
    const auto b = structure_report(g->scaled(3));
    expect(a.classification.greater == b.classification.greater && a.classification.equal == b.classification.equal &&
               a.simple == b.simple && a.ideal_unital == b.ideal_unital && a.k0_basis == b.k0_basis,
           "scaling invariance");
  }
  std::string detail = "star: V_> = {c}, not simple, unital, summand trace 7; triangle simple; 3x scaling stable";
  if (!failures.empty()) {
    detail = "failed:";
    for (const auto& f : failures) detail += " " + f;
  }
  return {failures.empty(), detail};
}

Outcome stieltjes() {
  auto loop = load("self_loop");
  TraceEngine engine(loop);
  const auto est = estimate_law(moments(loop, Poly::generator(loop, OrientedEdgeId{0}), VertexId{0}, 40, engine));
  double err = 0;
  for (int i = 0; i <= 360; ++i) {
    const double x = -1.8 + 0.01 * i;
    err = std::max(err, std::abs(est.density_at(x, 1e-3) - std::sqrt(4 - x * x) / (2 * std::numbers::pi)));
  }

  auto g = load("parallel_1_2");
  TraceEngine e2(g);
  const auto e = oe(g, "e+");
  const auto heavy = estimate_law(moments(g, Poly::generator(g, g.op(e)) * Poly::generator(g, e), g.target(e), 40, e2));
  double mass = 0;
  for (const auto& a : heavy.atoms)
    if (std::abs(a.location) <= 0.05) mass += a.mass;
  return {err <= 0.01 && std::abs(mass - 1) <= 0.05,
          fmt::format("semicircle max density error {:.2e}; heavy-corner atom mass {:.4f}", err, mass)};
}

Outcome wishart() {
  const auto t0 = Clock::now();
  EnsembleSpec spec;
  spec.ratios = {1, 2};
  spec.samples = 100;
  spec.seed = 0;
  spec.n = 200;
  DirectedDouble g(limit_graph(spec));
  const Poly q = to_numeric(parse_expression("X[e1_2+]*X[e1_2-]", g));
  const auto r200 = compare(spec, g, q, {});
  double worst_z = 0;
  for (const auto& m : r200.moments) worst_z = std::max(worst_z, std::abs(m.z_score));

  spec.n = 400;
  WishartOptions one;
  one.max_moment = 1;
  const auto r400 = compare(spec, g, q, one);
  const double rel = std::abs(r400.moments[0].empirical - std::sqrt(2.0)) / std::sqrt(2.0);
  const double secs = seconds_since(t0);
  return {worst_z <= 3 && rel <= 0.01 && secs <= 300,
          fmt::format("n=200: max |z| = {:.2f} over m1..m4; n=400: m1 = {:.6f} ({:.3f}% off sqrt 2); {:.0f} s", worst_z,
                      r400.moments[0].empirical, 100 * rel, secs)};
}

Outcome determinism() {
  auto cfg = [](const std::string& cmd, const std::string& graph) {
    RunConfig c;
    c.command = cmd;
    if (!graph.empty()) c.graph_path = fgtest::data_path(graph);
    return c;
  };
  std::vector<RunConfig> cs;
  cs.push_back(cfg("classify", "star"));
  auto t = cfg("trace", "edge_1_4");
  t.word = "e+,e-,e+,e-";
  cs.push_back(t);
  auto m = cfg("moments", "triangle");
  m.expr = "X[ab;a->b]*X[ab;b->a]";
  m.max_order = 10;
  cs.push_back(m);
  auto l = cfg("law", "parallel_1_2");
  l.expr = "X[e-]*X[e+]";
  l.max_order = 20;
  l.density_path = "density.csv";
  cs.push_back(l);
  cs.push_back(cfg("series", "parallel_1_2"));
  auto f = cfg("fock-check", "star");
  f.calculus = true;
  f.random_polys = 20;
  cs.push_back(f);
  auto w = cfg("wishart", "");
  w.n = 30;
  w.samples = 5;
  w.seed = 17;
  w.hist_path = "hist.csv";
  cs.push_back(w);

  std::string mismatched;
  for (const auto& c : cs) {
    const auto a = run(c);
    const auto b = run(c);
    if (a.text != b.text || a.files != b.files || a.exit_code != b.exit_code || a.exit_code == 1)
      mismatched += " " + c.command;
  }
  return {mismatched.empty(), mismatched.empty() ? fmt::format("{} subcommands byte-identical across two runs", cs.size())
                                                 : "differs or failed:" + mismatched};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"catalan / semicircle", catalan},
      {"free Poisson consistency", free_poisson},
      {"series / trace agreement", series_agreement},
      {"free calculus suite", calculus},
      {"commutator identities", commutators},
      {"classification goldens", classification},
      {"Stieltjes inversion", stieltjes},
      {"Wishart convergence", wishart},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    fmt::print("{} {:2d} {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
