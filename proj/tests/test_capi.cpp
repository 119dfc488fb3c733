#include "freegraph/freegraph.h"

#include <doctest.h>

#include <cmath>
#include <string>

namespace {

std::string data(const char* name) { return std::string(FG_TEST_DATA) + "/" + name + ".graph"; }

}  // namespace

TEST_CASE("graph handles and traces") {
  fg_graph* g = nullptr;
  REQUIRE(fg_graph_load(data("edge_1_4").c_str(), &g) == FG_OK);
  CHECK(fg_graph_vertex_count(g) == 2);
  CHECK(fg_graph_oriented_edge_count(g) == 2);

  double t = 0;
  CHECK(fg_trace_word(g, "e+,e-", &t) == FG_OK);
  CHECK(t == doctest::Approx(2.0));
  CHECK(fg_trace_word(g, "e+,e-,e+,e-", &t) == FG_OK);
  CHECK(t == doctest::Approx(5.0));
  CHECK(std::string(fg_last_error()).empty());

  double re = 0, im = 0;
  CHECK(fg_trace_expr(g, "X[e+]*X[e-] + X[e-]*X[e+]", &re, &im) == FG_OK);
  CHECK(re == doctest::Approx(4.0));
  CHECK(im == 0.0);

  double m[3] = {};
  CHECK(fg_moments(g, "X[e;a->b] * X[e;b->a]", "a", 2, m) == FG_OK);
  CHECK(m[1] == doctest::Approx(2.0));
  CHECK(m[2] == doctest::Approx(5.0));
  CHECK(fg_moments(g, "X[e;a->b] * X[e;b->a]", nullptr, 2, m) == FG_OK);

  CHECK(fg_trace_word(g, "zz+", &t) == FG_ERR_INVALID_ARGUMENT);
  CHECK_FALSE(std::string(fg_last_error()).empty());
  CHECK(fg_trace_expr(g, "X[e+] +", &re, &im) == FG_ERR_PARSE);
  CHECK(fg_moments(g, "(0,1)*X[e+]*X[e-]", "a", 2, m) == FG_ERR_NOT_SELF_ADJOINT);
  CHECK(fg_trace_word(nullptr, "e+", &t) == FG_ERR_INVALID_ARGUMENT);
  fg_graph_free(g);
}

TEST_CASE("graph errors") {
  fg_graph* g = nullptr;
  CHECK(fg_graph_load("/nonexistent.graph", &g) == FG_ERR_IO);
  CHECK(g == nullptr);
  CHECK(fg_graph_parse("vertex a 1\nvertex b 1\n", &g) == FG_ERR_INVALID_GRAPH);
  CHECK(fg_graph_parse("vertex a\n", &g) == FG_ERR_PARSE);
  CHECK(fg_graph_parse("vertex a 1\nedge l a a\n", &g) == FG_OK);
  fg_graph_free(g);
  CHECK(std::string(fg_status_name(FG_ERR_EDGE_COUNT)).size() > 0);
  CHECK(std::string(fg_version()).size() > 0);
}

TEST_CASE("run through a config") {
  fg_config* c = nullptr;
  REQUIRE(fg_config_new("moments", &c) == FG_OK);
  CHECK(fg_config_set(c, "graph", data("self_loop").c_str()) == FG_OK);
  CHECK(fg_config_set(c, "expr", "X[l]") == FG_OK);
  CHECK(fg_config_set(c, "exact", "true") == FG_OK);
  CHECK(fg_config_set(c, "no-such-option", "1") == FG_ERR_INVALID_ARGUMENT);
  CHECK(fg_config_set(c, "max-order", "abc") == FG_ERR_INVALID_ARGUMENT);
  fg_report* r = nullptr;
  REQUIRE(fg_run(c, &r) == FG_OK);
  CHECK(fg_report_exit_code(r) == 0);
  const std::string text = fg_report_text(r);
  CHECK(text.find("8,14") != std::string::npos);
  CHECK(fg_report_file_count(r) == 0);
  fg_report_free(r);
  fg_config_free(c);

  REQUIRE(fg_config_new("classify", &c) == FG_OK);
  CHECK(fg_config_set(c, "graph", "/nonexistent.graph") == FG_OK);
  r = nullptr;
  CHECK(fg_run(c, &r) == FG_ERR_IO);
  CHECK(r == nullptr);
  fg_config_free(c);

  CHECK(fg_config_new("frobnicate", &c) == FG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("attached files") {
  fg_config* c = nullptr;
  REQUIRE(fg_config_new("law", &c) == FG_OK);
  fg_config_set(c, "graph", data("self_loop").c_str());
  fg_config_set(c, "expr", "X[l]");
  fg_config_set(c, "max-order", "20");
  fg_config_set(c, "density", "density.csv");
  fg_report* r = nullptr;
  REQUIRE(fg_run(c, &r) == FG_OK);
  REQUIRE(fg_report_file_count(r) == 1);
  CHECK(std::string(fg_report_file_path(r, 0)) == "density.csv");
  CHECK(std::string(fg_report_file_content(r, 0)).find("\nx,density\n") != std::string::npos);
  CHECK(fg_report_file_path(r, 1) == nullptr);
  fg_report_free(r);
  fg_config_free(c);
}
