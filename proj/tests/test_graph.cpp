#include "freegraph/error.hpp"
#include "freegraph/graph.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace freegraph;
using fgtest::load, fgtest::load_graph, fgtest::oe;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::io;
}

std::vector<std::string> names(const WeightedGraph& g, const std::vector<VertexId>& vs) {
  std::vector<std::string> out;
  for (auto v : vs) out.push_back(g.vertex(v).name);
  return out;
}

}  // namespace

TEST_CASE("rationals parse exactly") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("1.5e2") == Rational(150));
  CHECK(parse_rational("2") == Rational(2));
  CHECK(exact_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK_FALSE(exact_sqrt(Rational(2)).has_value());
  CHECK_THROWS_AS(parse_rational("1/0x"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("self-loop gives one oriented edge fixed by op") {
  auto g = load("self_loop");
  REQUIRE(g.size() == 1);
  auto e = oe(g, "l+");
  CHECK(g.op(e) == e);
  CHECK(g.edge(e).amplitude == doctest::Approx(1.0));
  CHECK_FALSE(g.find("l-").has_value());
}

TEST_CASE("edge with weights 1 and 4 has amplitudes 1/sqrt2 and sqrt2") {
  auto g = load("edge_1_4");
  REQUIRE(g.size() == 2);
  auto e = oe(g, "e+");
  auto f = oe(g, "e-");
  CHECK(g.op(e) == f);
  CHECK(g.op(f) == e);
  CHECK(g.edge(e).amplitude == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(g.edge(f).amplitude == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(g.graph().vertex(g.source(e)).name == "a");
  CHECK(g.graph().vertex(g.target(e)).name == "b");
}

TEST_CASE("parallel edges give two op pairs") {
  auto g = load("parallel_1_2");
  REQUIRE(g.size() == 4);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto e = static_cast<OrientedEdgeId>(i);
    CHECK(g.op(g.op(e)) == e);
    CHECK(g.op(e) != e);
    CHECK(g.source(g.op(e)) == g.target(e));
  }
}

TEST_CASE("vertex classification") {
  SUBCASE("parallel 1,2") {
    auto g = load_graph("parallel_1_2");
    auto c = classify_vertices(g);
    CHECK(names(g, c.equal) == std::vector<std::string>{"b"});
    CHECK(c.greater.empty());
    CHECK(c.multiplicity[0][1] == 2);
  }
  SUBCASE("star") {
    auto g = load_graph("star");
    auto c = classify_vertices(g);
    CHECK(names(g, c.greater) == std::vector<std::string>{"c"});
    CHECK(c.equal.empty());
    CHECK(c.neighbour_sum[0] == 3);
  }
  SUBCASE("triangle") {
    auto c = classify_vertices(load_graph("triangle"));
    CHECK(c.geq.empty());
  }
  SUBCASE("a self-loop counts its own vertex once") {
    auto c = classify_vertices(load_graph("self_loop"));
    CHECK(names(load_graph("self_loop"), c.equal) == std::vector<std::string>{"a"});
  }
}

TEST_CASE("structure report") {
  SUBCASE("star is not simple, unital ideal, summand trace 7") {
    auto g = load_graph("star");
    auto r = structure_report(g);
    CHECK_FALSE(r.simple);
    CHECK(r.ideal_unital);
    REQUIRE(r.summand_traces.size() == 1);
    CHECK(r.summand_traces.begin()->second == 7);
    CHECK(r.quotient_dimension == 1);
  }
  SUBCASE("triangle is simple with a unique trace") {
    auto r = structure_report(load_graph("triangle"));
    CHECK(r.simple);
    CHECK(r.unique_trace);
  }
  SUBCASE("single edge is rejected") {
    CHECK(code_of([] { structure_report(load_graph("edge_1_1")); }) == ErrorCode::edge_count);
  }
  SUBCASE("scaling weights by 3 leaves the sets unchanged") {
    for (const char* name : {"star", "triangle", "parallel_1_2"}) {
      auto g = load_graph(name);
      auto a = structure_report(g);
      auto b = structure_report(g.scaled(3));
      CHECK(a.simple == b.simple);
      CHECK(a.ideal_unital == b.ideal_unital);
      CHECK(a.classification.greater == b.classification.greater);
      CHECK(a.classification.equal == b.classification.equal);
      CHECK(a.k0_basis == b.k0_basis);
      for (auto& [v, t] : a.summand_traces) CHECK(b.summand_traces.at(v) == 3 * t);
    }
  }
}

TEST_CASE("K0 positive cone") {
  auto g = WeightedGraph::parse("vertex a 1\nvertex b 2\nvertex c 2\nvertex d 2\nedge e a c\nedge f c b\nedge h b d\nedge k d a\n");
  auto r = structure_report(g);
  const VertexId a = g.vertex_by_name("a"), b = g.vertex_by_name("b");
  CHECK(k0_positive_cone_member(r, {}));
  CHECK(k0_positive_cone_member(r, {{a, 0}, {b, 0}}));
  CHECK_FALSE(k0_positive_cone_member(r, {{a, 1}, {b, -1}}));
  CHECK(k0_positive_cone_member(r, {{a, -1}, {b, 1}}));
  auto star = load_graph("star");
  CHECK(code_of([&] { k0_positive_cone_member(structure_report(star), {{star.vertex_by_name("c"), 1}}); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("graph validation") {
  CHECK(code_of([] { WeightedGraph::parse("vertex a 0\n"); }) == ErrorCode::invalid_graph);
  CHECK(code_of([] { WeightedGraph::parse("vertex a -1\n"); }) == ErrorCode::invalid_graph);
  CHECK(code_of([] { WeightedGraph::parse("vertex a 1\nvertex a 2\n"); }) == ErrorCode::invalid_graph);
  CHECK(code_of([] { WeightedGraph::parse("vertex a 1\nvertex b 1\n"); }) == ErrorCode::invalid_graph);
  CHECK(code_of([] { WeightedGraph::parse("vertex a 1\nedge e a z\n"); }) == ErrorCode::invalid_graph);
  CHECK(code_of([] { WeightedGraph::parse(""); }) == ErrorCode::invalid_graph);
  CHECK(code_of([] { WeightedGraph::parse("vertex a\n"); }) == ErrorCode::parse);
  CHECK(code_of([] { WeightedGraph::parse("vertx a 1\n"); }) == ErrorCode::parse);
  CHECK(code_of([] { WeightedGraph::load("/nonexistent/x.graph"); }) == ErrorCode::io);
}

TEST_CASE("text form round-trips") {
  for (const char* name : fgtest::corpus) {
    auto g = load_graph(name);
    auto h = WeightedGraph::parse(g.to_text());
    CHECK(h.to_text() == g.to_text());
    CHECK(h.vertex_count() == g.vertex_count());
    CHECK(h.edge_count() == g.edge_count());
  }
  auto g = WeightedGraph::parse("# c\nvertex a 3/2   # weight\nvertex b 0.5\nedge e a b\n");
  CHECK(g.exact_weight(g.vertex_by_name("a")) == Rational(3, 2));
  CHECK(g.weight(g.vertex_by_name("b")) == 0.5);
}
