#include "freegraph/error.hpp"
#include "freegraph/ncpoly.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace freegraph;
using fgtest::load, fgtest::oe;

namespace {

ExactPoly X(const DirectedDouble& g, const char* label) { return ExactPoly::generator(g, oe(g, label)); }

}  // namespace

TEST_CASE("projections and composable products") {
  auto g = load("edge_1_4");
  const VertexId a = g.graph().vertex_by_name("a");
  const VertexId b = g.graph().vertex_by_name("b");
  const auto pa = ExactPoly::projection(a);
  CHECK(pa * pa == pa);
  CHECK((ExactPoly::projection(b) * X(g, "e+")).is_zero());
  CHECK(pa * X(g, "e+") == X(g, "e+"));

  const auto prod = X(g, "e+") * X(g, "e-");
  REQUIRE(prod.size() == 1);
  const Word& w = prod.terms().begin()->first;
  CHECK(w.length() == 2);
  CHECK(w.start == a);
  CHECK(w.end == a);
  CHECK((X(g, "e+") * X(g, "e+")).is_zero());
}

TEST_CASE("adjoint") {
  auto g = load("triangle");
  CHECK(adjoint(g, X(g, "ab+")) == X(g, "ab-"));
  const VertexId a = g.graph().vertex_by_name("a");
  const ExactPoly ip = QComplex(0, 1) * ExactPoly::projection(a);
  CHECK(adjoint(g, ip) == QComplex(0, -1) * ExactPoly::projection(a));
  CHECK(adjoint(g, X(g, "ab+") * X(g, "bc+")) == X(g, "bc-") * X(g, "ab-"));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    ExactPoly p;
    for (int t = 0; t < 3; ++t) {
      std::vector<OrientedEdgeId> letters;
      VertexId v = static_cast<VertexId>(rng() % 3);
      const VertexId start = v;
      for (std::size_t k = rng() % 5; k > 0; --k) {
        auto out = g.out_edges(v);
        letters.push_back(out[rng() % out.size()]);
        v = g.target(letters.back());
      }
      p.add(Word{start, v, letters}, QComplex(static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 5) - 2));
    }
    CHECK(adjoint(g, adjoint(g, p)) == p);
  }
}

TEST_CASE("words") {
  auto g = load("triangle");
  const Word w = parse_word(g, "ab+,bc+,ca+");
  CHECK(w.is_loop());
  CHECK(format_word(g, w) == "ab+,bc+,ca+");
  CHECK(format_word(g, adjoint_word(g, w)) == "ca-,bc-,ab-");
  CHECK_THROWS_AS(parse_word(g, "ab+,ab+"), Error);
  CHECK_THROWS_AS(parse_word(g, "zz+"), Error);
  const std::vector<OrientedEdgeId> broken{oe(g, "ab+"), oe(g, "ca+")};
  CHECK_FALSE(make_word(g, broken).has_value());
  CHECK_FALSE(concat(vertex_word(g.graph().vertex_by_name("a")), vertex_word(g.graph().vertex_by_name("b"))));
}

TEST_CASE("expression parser") {
  auto g = load("edge_1_4");
  const VertexId a = g.graph().vertex_by_name("a");
  CHECK(parse_expression("P[a]", g) == ExactPoly::projection(a));
  CHECK(parse_expression("X[e]", g) == X(g, "e+") + X(g, "e-"));
  CHECK(parse_expression("X[e;a->b] * X[e;b->a]", g) == X(g, "e+") * X(g, "e-"));
  CHECK(parse_expression("X[e+]*X[e-]", g) == X(g, "e+") * X(g, "e-"));
  CHECK(parse_expression("2*P[a] - 1/2*P[b]", g) ==
        QComplex(2) * ExactPoly::projection(a) - QComplex(Rational(1, 2)) * ExactPoly::projection(g.graph().vertex_by_name("b")));
  CHECK(parse_expression("(X[e+] + X[e-])^2", g) == parse_expression("X[e]*X[e]", g));
  CHECK(parse_expression("(0,1)*P[a]", g) == QComplex(0, 1) * ExactPoly::projection(a));

  try {
    parse_expression("P[a] + ", g);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() >= 6);
  }
  CHECK_THROWS_AS(parse_expression("X[q]", g), Error);
  CHECK_THROWS_AS(parse_expression("P[z]", g), Error);

  auto loop = load("self_loop");
  CHECK_THROWS_AS(parse_expression("X[l-]", loop), Error);
  CHECK(parse_expression("X[l]", loop) == X(loop, "l+"));
}

TEST_CASE("numeric conversion and formatting") {
  auto g = load("edge_1_1");
  const auto p = parse_expression("3*X[e+]*X[e-] + (0,1)*P[a]", g);
  const Poly q = to_numeric(p);
  CHECK(q.size() == 2);
  CHECK(max_abs_difference(q, q) == 0.0);
  CHECK(max_abs_difference(q, Poly{}) == doctest::Approx(3.0));
  CHECK(format_poly(g, q).find("X[e+]") != std::string::npos);
}
