#include "freegraph/error.hpp"
#include "freegraph/fock.hpp"
#include "freegraph/trace.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace freegraph;
using fgtest::load, fgtest::oe;

TEST_CASE("basic traces") {
  auto g = load("edge_1_4");
  TraceEngine t(g);
  CHECK(t.trace(vertex_word(g.graph().vertex_by_name("b"))) == doctest::Approx(4.0));
  CHECK(t.trace(parse_word(g, "e+,e-")) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(t.trace(parse_word(g, "e+,e-,e+,e-")) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(t.trace(parse_word(g, "e+")) == 0.0);
  CHECK(t.trace(to_numeric(parse_expression("X[e+]*X[e-] + X[e-]*X[e+]", g))).real() == doctest::Approx(4.0));

  auto h = load("parallel_1_2");
  TraceEngine th(h);
  CHECK(th.trace(to_numeric(parse_expression("2*P[a] + 3*P[b]", h))).real() == doctest::Approx(8.0));

  auto w = WeightedGraph::parse("vertex a 3\nvertex b 1\nedge e a b\n");
  DirectedDouble gw(w);
  CHECK(TraceEngine(gw).trace(vertex_word(w.vertex_by_name("a"))) == doctest::Approx(3.0));
}

TEST_CASE("exact traces") {
  auto g = load("edge_1_4");
  ExactTraceEngine t(g);
  CHECK(t.trace(parse_word(g, "e+,e-,e+,e-")) == 5);
  CHECK(supports_exact_traces(g));
  auto w = WeightedGraph::parse("vertex a 1\nvertex b 2\nedge e a b\n");
  DirectedDouble gw(w);
  CHECK_FALSE(supports_exact_traces(gw));
  CHECK_THROWS_AS(ExactTraceEngine(gw).trace(parse_word(gw, "e+,e-")), Error);
}

TEST_CASE("traciality: cyclic rotations agree") {
  std::mt19937_64 rng(11);
  for (const char* name : fgtest::corpus) {
    auto g = load(name);
    TraceEngine t(g);
    for (int trial = 0; trial < 60; ++trial) {
      const VertexId start = static_cast<VertexId>(rng() % g.vertex_count());
      std::vector<OrientedEdgeId> letters;
      VertexId v = start;
      const std::size_t len = 2 + rng() % 7;
      for (std::size_t k = 0; k + 1 < len; ++k) {
        auto out = g.out_edges(v);
        letters.push_back(out[rng() % out.size()]);
        v = g.target(letters.back());
      }
      // close the loop when possible
      bool closed = false;
      for (auto e : g.out_edges(v))
        if (g.target(e) == start) {
          letters.push_back(e);
          closed = true;
          break;
        }
      if (!closed) continue;
      const double ref = t.trace(*make_word(g, letters));
      for (std::size_t r = 1; r < letters.size(); ++r) {
        std::rotate(letters.begin(), letters.begin() + 1, letters.end());
        CHECK(t.trace(*make_word(g, letters)) == doctest::Approx(ref).epsilon(1e-12));
      }
      // Tr(w*) = conj Tr(w)
      auto w = *make_word(g, letters);
      CHECK(t.trace(adjoint_word(g, w)) == doctest::Approx(t.trace(w)).epsilon(1e-12));
    }
  }
}

TEST_CASE("shared cache gives identical results") {
  auto g = load("star");
  auto cache = std::make_shared<SharedTraceCache>();
  TraceEngine a(g, cache), b(g, cache), plain(g);
  const Word w = parse_word(g, "cx+,cx-,cy+,cy-,cx+,cx-");
  const double va = a.trace(w);
  CHECK(cache->size() > 0);
  CHECK(b.trace(w) == va);
  CHECK(plain.trace(w) == va);
}

TEST_CASE("moments") {
  SUBCASE("projection") {
    auto g = load("edge_1_4");
    TraceEngine t(g);
    const VertexId b = g.graph().vertex_by_name("b");
    auto ms = moments(g, Poly::projection(b), b, 5, t);
    for (double m : ms.m) CHECK(m == doctest::Approx(4.0));
  }
  SUBCASE("self-loop Catalan") {
    auto g = load("self_loop");
    TraceEngine t(g);
    auto ms = moments(g, to_numeric(parse_expression("X[l]", g)), VertexId{0}, 6, t);
    const std::vector<double> want{1, 0, 1, 0, 2, 0, 5};
    for (std::size_t k = 0; k < want.size(); ++k) CHECK(ms.m[k] == doctest::Approx(want[k]).epsilon(1e-12));
    CHECK(hankel_psd(ms));
    ExactTraceEngine et(g);
    auto ex = exact_moments(g, parse_expression("X[l]", g), VertexId{0}, 8, et);
    CHECK(ex[8] == 14);
  }
  SUBCASE("X e+ X e- on the light corner") {
    auto g = load("edge_1_4");
    TraceEngine t(g);
    auto ms = moments(g, to_numeric(parse_expression("X[e;a->b] * X[e;b->a]", g)), VertexId{0}, 2, t);
    CHECK(ms.m[0] == doctest::Approx(1.0));
    CHECK(ms.m[1] == doctest::Approx(2.0));
    CHECK(ms.m[2] == doctest::Approx(5.0));
  }
  SUBCASE("Hankel matrices of corpus moments are PSD") {
    for (const char* name : fgtest::corpus) {
      auto g = load(name);
      TraceEngine t(g);
      const VertexId a{0};
      Poly q = Poly::projection(a);
      for (auto e : g.out_edges(a)) q += Poly::generator(g, e) * Poly::generator(g, g.op(e));
      CHECK(hankel_psd(moments(g, q, a, 12, t)));
    }
  }
  SUBCASE("rejects bad input") {
    auto g = load("edge_1_4");
    TraceEngine t(g);
    auto code = [&](const char* expr, VertexId v) {
      try {
        moments(g, to_numeric(parse_expression(expr, g)), v, 4, t);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::io;
    };
    CHECK(code("(0,1)*X[e+]*X[e-]", VertexId{0}) == ErrorCode::not_self_adjoint);
    CHECK(code("X[e]", VertexId{0}) == ErrorCode::not_cornered);
  }
  SUBCASE("a non-PSD Hankel matrix is detected") {
    MomentSeq ms;
    ms.corner_weight = 1;
    ms.m = {1, 0, -1, 0, 1};
    CHECK_FALSE(hankel_psd(ms));
  }
}

TEST_CASE("trace engine agrees with the Fock oracle up to length 6") {
  for (const char* name : fgtest::corpus) {
    auto g = load(name);
    TraceEngine t(g);
    TruncatedFock fock(g, 6);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const VertexId start = static_cast<VertexId>(rng() % g.vertex_count());
      Word w{start, start, {}};
      VertexId v = start;
      for (std::size_t k = 0, len = rng() % 7; k < len; ++k) {
        auto out = g.out_edges(v);
        w.letters.push_back(out[rng() % out.size()]);
        v = g.target(w.letters.back());
      }
      w.end = v;
      CHECK(t.trace(w) == doctest::Approx(fock.trace(w)).epsilon(1e-12));
    }
  }
}
