#include "freegraph/error.hpp"
#include "freegraph/fock.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/Dense>

using namespace freegraph;
using fgtest::load, fgtest::oe;

TEST_CASE("dimensions") {
  auto loop = load("self_loop");
  TruncatedFock f(loop, 2);
  CHECK(f.dimension() == 3);
  CHECK(fock_dimension(loop, 2) == 3);
  CHECK(format_word(loop, f.basis_path(2)) == "l+,l+");

  auto edge = load("edge_1_1");
  CHECK(TruncatedFock(edge, 1).dimension() == 4);
  CHECK(TruncatedFock(load("triangle"), 0).dimension() == 3);
  CHECK(fock_dimension(load("star"), 4) == TruncatedFock(load("star"), 4).dimension());
  CHECK_THROWS_AS(TruncatedFock(load("star"), 12, 1000), Error);
  CHECK_THROWS_AS(TruncatedFock(edge, -1), Error);
}

TEST_CASE("oracle traces") {
  auto g = load("edge_1_4");
  TruncatedFock f(g, 2);
  CHECK(f.trace(parse_word(g, "e+,e-")) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.trace(parse_word(g, "e+")) == 0.0);
  CHECK_THROWS_AS(f.trace(parse_word(g, "e+,e-,e+,e-")), Error);

  auto loop = load("self_loop");
  TruncatedFock fl(loop, 4);
  CHECK(fl.trace(parse_word(loop, "l+,l+,l+,l+")) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("structural matrices") {
  for (const char* name : fgtest::corpus) {
    auto g = load(name);
    TruncatedFock f(g, 4);
    const Eigen::MatrixXd J(f.conjugation());
    CHECK((J * J - Eigen::MatrixXd::Identity(J.rows(), J.cols())).norm() == doctest::Approx(0.0));
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(J.rows(), J.cols());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      const Eigen::MatrixXd p(f.projection(static_cast<VertexId>(v)));
      CHECK((p * p - p).norm() == doctest::Approx(0.0));
      sum += p;
    }
    CHECK((sum - Eigen::MatrixXd::Identity(J.rows(), J.cols())).norm() == doctest::Approx(0.0));
    // X_ε* = X_{ε^op} on the interior where truncation does not bite.
    const auto interior = f.levels_up_to(f.depth() - 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto e = static_cast<OrientedEdgeId>(i);
      const Eigen::MatrixXd x(f.generator(e));
      const Eigen::MatrixXd y(f.generator(g.op(e)));
      double r = 0;
      for (auto c : interior)
        for (auto rr : interior)
          r = std::max(r, std::abs(x(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(rr)) -
                                   y(static_cast<Eigen::Index>(rr), static_cast<Eigen::Index>(c))));
      CHECK(r <= 1e-14);
    }
  }
}

TEST_CASE("commutator identities") {
  SUBCASE("distinct edges commute with conjugated generators") {
    auto g = load("parallel_1_2");
    TruncatedFock f(g, 5);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        CHECK(f.commutator_residual(static_cast<OrientedEdgeId>(i), static_cast<OrientedEdgeId>(j)) <= 1e-12);
  }
  SUBCASE("equal edge, weights 1,1 and 1,4") {
    for (const char* name : {"edge_1_1", "edge_1_4", "self_loop"}) {
      auto g = load(name);
      TruncatedFock f(g, 5);
      for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(f.commutator_residual(static_cast<OrientedEdgeId>(i), static_cast<OrientedEdgeId>(i)) <= 1e-12);
    }
  }
  SUBCASE("depth below 2 is rejected") {
    auto g = load("edge_1_1");
    TruncatedFock f(g, 1);
    CHECK_THROWS_AS(f.commutator_residual(OrientedEdgeId{0}, OrientedEdgeId{0}), Error);
  }
}
