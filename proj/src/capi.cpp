#include "freegraph/freegraph.h"

#include "freegraph/commands.hpp"
#include "freegraph/error.hpp"
#include "freegraph/graph.hpp"
#include "freegraph/ncpoly.hpp"
#include "freegraph/trace.hpp"

#include <memory>
#include <set>
#include <string>

using namespace freegraph;

struct fg_graph {
  explicit fg_graph(WeightedGraph g) : dd(std::move(g)), engine(dd) {}
  DirectedDouble dd;
  TraceEngine engine;
};

struct fg_config {
  RunConfig cfg;
};

struct fg_report {
  RunResult result;
};

namespace {

thread_local std::string last_error;

fg_status to_status(ErrorCode c) { return static_cast<fg_status>(static_cast<int>(c)); }

template <class F>
fg_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return FG_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return FG_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal error";
    return FG_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* fg_last_error(void) { return last_error.c_str(); }

const char* fg_status_name(fg_status s) {
  switch (s) {
    case FG_OK: return "ok";
    case FG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case FG_ERR_PARSE: return "parse";
    case FG_ERR_INVALID_GRAPH: return "invalid_graph";
    case FG_ERR_EDGE_COUNT: return "edge_count";
    case FG_ERR_NOT_SELF_ADJOINT: return "not_self_adjoint";
    case FG_ERR_NOT_CORNERED: return "not_cornered";
    case FG_ERR_DEPTH_TOO_SHALLOW: return "depth_too_shallow";
    case FG_ERR_CAPACITY_EXCEEDED: return "capacity_exceeded";
    case FG_ERR_LOOP_EDGE: return "loop_edge";
    case FG_ERR_NOT_EXACT: return "not_exact";
    case FG_ERR_IO: return "io";
    case FG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* fg_version(void) { return "0.1.0"; }

fg_status fg_graph_load(const char* path, fg_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new fg_graph(WeightedGraph::load(path));
  });
}

fg_status fg_graph_parse(const char* text, fg_graph** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    *out = new fg_graph(WeightedGraph::parse(text, "<memory>"));
  });
}

void fg_graph_free(fg_graph* graph) { delete graph; }

size_t fg_graph_vertex_count(const fg_graph* graph) { return graph ? graph->dd.vertex_count() : 0; }
size_t fg_graph_oriented_edge_count(const fg_graph* graph) { return graph ? graph->dd.size() : 0; }

fg_status fg_trace_word(fg_graph* graph, const char* word, double* out) {
  return guarded([&] {
    require(graph, "graph");
    require(word, "word");
    require(out, "out");
    *out = graph->engine.trace(parse_word(graph->dd, word));
  });
}

fg_status fg_trace_expr(fg_graph* graph, const char* expr, double* re, double* im) {
  return guarded([&] {
    require(graph, "graph");
    require(expr, "expr");
    require(re, "re");
    const auto t = graph->engine.trace(to_numeric(parse_expression(expr, graph->dd)));
    *re = t.real();
    if (im) *im = t.imag();
  });
}

fg_status fg_moments(fg_graph* graph, const char* expr, const char* vertex, int max_order, double* out) {
  return guarded([&] {
    require(graph, "graph");
    require(expr, "expr");
    require(out, "out");
    const ExactPoly q = parse_expression(expr, graph->dd);
    VertexId alpha{};
    if (vertex) {
      alpha = graph->dd.graph().vertex_by_name(vertex);
    } else {
      if (q.terms().empty()) throw Error(ErrorCode::invalid_argument, "expression is zero; pass a vertex");
      alpha = q.terms().begin()->first.start;
    }
    const MomentSeq ms = moments(graph->dd, to_numeric(q), alpha, max_order, graph->engine);
    std::copy(ms.m.begin(), ms.m.end(), out);
  });
}

fg_status fg_config_new(const char* command, fg_config** out) {
  return guarded([&] {
    require(command, "command");
    require(out, "out");
    *out = nullptr;
    static const std::set<std::string, std::less<>> known{"classify", "trace",      "moments", "law",
                                                         "series",   "fock-check", "wishart"};
    if (!known.contains(command)) throw Error(ErrorCode::invalid_argument, std::string("unknown command '") + command + "'");
    auto c = std::make_unique<fg_config>();
    c->cfg.command = command;
    *out = c.release();
  });
}

fg_status fg_config_set(fg_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    set_option(config->cfg, key, value);
  });
}

void fg_config_free(fg_config* config) { delete config; }

fg_status fg_run(const fg_config* config, fg_report** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = nullptr;
    RunResult r = run(config->cfg);
    if (r.exit_code == 1)
      throw Error(r.error_code ? static_cast<ErrorCode>(r.error_code) : ErrorCode::invalid_argument, r.error);
    *out = new fg_report{std::move(r)};
  });
}

int fg_report_exit_code(const fg_report* report) { return report ? report->result.exit_code : 1; }
const char* fg_report_text(const fg_report* report) { return report ? report->result.text.c_str() : ""; }
size_t fg_report_file_count(const fg_report* report) { return report ? report->result.files.size() : 0; }

const char* fg_report_file_path(const fg_report* report, size_t i) {
  if (!report || i >= report->result.files.size()) return nullptr;
  return report->result.files[i].first.c_str();
}

const char* fg_report_file_content(const fg_report* report, size_t i) {
  if (!report || i >= report->result.files.size()) return nullptr;
  return report->result.files[i].second.c_str();
}

void fg_report_free(fg_report* report) { delete report; }

}  // extern "C"
