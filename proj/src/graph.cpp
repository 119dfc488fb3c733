#include "freegraph/graph.hpp"

#include "freegraph/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace freegraph {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

}  // namespace

WeightedGraph::WeightedGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) throw Error(ErrorCode::invalid_graph, "graph has no vertices");
  std::set<std::string_view> names;
  for (const auto& v : vertices_) {
    if (!valid_identifier(v.name))
      throw Error(ErrorCode::invalid_graph, "invalid vertex identifier '" + v.name + "'");
    if (!names.insert(v.name).second)
      throw Error(ErrorCode::invalid_graph, "duplicate vertex identifier '" + v.name + "'");
    if (v.weight <= 0)
      throw Error(ErrorCode::invalid_graph,
                  "vertex '" + v.name + "' has non-positive weight " + to_string(v.weight));
  }
  std::set<std::string_view> edge_names;
  for (const auto& e : edges_) {
    if (!valid_identifier(e.name))
      throw Error(ErrorCode::invalid_graph, "invalid edge identifier '" + e.name + "'");
    if (!edge_names.insert(e.name).second)
      throw Error(ErrorCode::invalid_graph, "duplicate edge identifier '" + e.name + "'");
    if (index(e.first) >= vertices_.size() || index(e.second) >= vertices_.size())
      throw Error(ErrorCode::invalid_graph, "edge '" + e.name + "' has a dangling endpoint");
  }

  // Connectivity by union-find.
  std::vector<std::size_t> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges_) parent[find(index(e.first))] = find(index(e.second));
  for (std::size_t v = 1; v < vertices_.size(); ++v)
    if (find(v) != find(0))
      throw Error(ErrorCode::invalid_graph, "graph is disconnected: vertex '" + vertices_[v].name +
                                                "' is not reachable from '" + vertices_[0].name + "'");

  weights_.reserve(vertices_.size());
  for (const auto& v : vertices_) weights_.push_back(to_double(v.weight));
}

WeightedGraph WeightedGraph::parse(std::string_view text, std::string_view source) {
  std::vector<Vertex> vertices;
  struct PendingEdge {
    std::string name, a, b;
    std::size_t line;
  };
  std::vector<PendingEdge> pending;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": " + msg, line_no);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "vertex") {
      if (tok.size() != 3) fail("expected 'vertex <id> <weight>'");
      Rational w;
      try {
        w = parse_rational(tok[2]);
      } catch (const ParseError&) {
        fail("invalid weight '" + std::string(tok[2]) + "'");
      }
      vertices.push_back({std::string(tok[1]), w});
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) fail("expected 'edge <id> <v1> <v2>'");
      pending.push_back({std::string(tok[1]), std::string(tok[2]), std::string(tok[3]), line_no});
    } else {
      fail("unknown directive '" + std::string(tok[0]) + "'");
    }
    if (eol == text.size()) break;
  }

  std::vector<Edge> edges;
  for (const auto& pe : pending) {
    auto lookup = [&](const std::string& name) {
      for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].name == name) return static_cast<VertexId>(i);
      throw Error(ErrorCode::invalid_graph, std::string(source) + ":" + std::to_string(pe.line) + ": edge '" +
                                                pe.name + "' has a dangling endpoint '" + name + "'");
      return VertexId{};
    };
    edges.push_back({pe.name, lookup(pe.a), lookup(pe.b)});
  }
  return WeightedGraph(std::move(vertices), std::move(edges));
}

WeightedGraph WeightedGraph::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open graph file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::optional<VertexId> WeightedGraph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].name == name) return static_cast<VertexId>(i);
  return std::nullopt;
}

std::optional<EdgeId> WeightedGraph::find_edge(std::string_view name) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].name == name) return static_cast<EdgeId>(i);
  return std::nullopt;
}

VertexId WeightedGraph::vertex_by_name(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw Error(ErrorCode::invalid_argument, "unknown vertex '" + std::string(name) + "'");
}

WeightedGraph WeightedGraph::scaled(const Rational& factor) const {
  if (factor <= 0) throw Error(ErrorCode::invalid_argument, "scale factor must be positive");
  auto vs = vertices_;
  for (auto& v : vs) v.weight *= factor;
  return WeightedGraph(std::move(vs), edges_);
}

std::string WeightedGraph::to_text() const {
  std::string out;
  for (const auto& v : vertices_) out += "vertex " + v.name + " " + freegraph::to_string(v.weight) + "\n";
  for (const auto& e : edges_)
    out += "edge " + e.name + " " + vertices_[index(e.first)].name + " " + vertices_[index(e.second)].name + "\n";
  return out;
}

DirectedDouble::DirectedDouble(WeightedGraph graph) : graph_(std::move(graph)) {
  for (std::size_t i = 0; i < graph_.edge_count(); ++i) {
    const Edge& e = graph_.edges()[i];
    const auto parent = static_cast<EdgeId>(i);
    const auto id = static_cast<OrientedEdgeId>(edges_.size());
    if (e.is_loop()) {
      edges_.push_back({e.first, e.first, id, parent, 1.0, e.name + "+"});
      continue;
    }
    const double amp = std::pow(graph_.weight(e.first) / graph_.weight(e.second), 0.25);
    const auto rev = static_cast<OrientedEdgeId>(edges_.size() + 1);
    edges_.push_back({e.first, e.second, rev, parent, amp, e.name + "+"});
    edges_.push_back({e.second, e.first, id, parent, 1.0 / amp, e.name + "-"});
  }
  out_.resize(graph_.vertex_count());
  for (std::size_t i = 0; i < edges_.size(); ++i)
    out_[index(edges_[i].source)].push_back(static_cast<OrientedEdgeId>(i));
}

std::optional<OrientedEdgeId> DirectedDouble::find(std::string_view label) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].label == label) return static_cast<OrientedEdgeId>(i);
  return std::nullopt;
}

std::optional<OrientedEdgeId> DirectedDouble::find(EdgeId edge, VertexId from, VertexId to) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].parent == edge && edges_[i].source == from && edges_[i].target == to)
      return static_cast<OrientedEdgeId>(i);
  return std::nullopt;
}

std::vector<OrientedEdgeId> DirectedDouble::orientations(EdgeId edge) const {
  std::vector<OrientedEdgeId> out;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].parent == edge) out.push_back(static_cast<OrientedEdgeId>(i));
  return out;
}

DirectedDouble build_directed_double(const WeightedGraph& g) { return DirectedDouble(g); }

bool VertexClassification::in_greater(VertexId v) const {
  return std::binary_search(greater.begin(), greater.end(), v);
}

bool VertexClassification::in_equal(VertexId v) const {
  return std::binary_search(equal.begin(), equal.end(), v);
}

VertexClassification classify_vertices(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  VertexClassification c;
  c.multiplicity.assign(n, std::vector<unsigned>(n, 0));
  for (const auto& e : g.edges()) {
    ++c.multiplicity[index(e.first)][index(e.second)];
    if (!e.is_loop()) ++c.multiplicity[index(e.second)][index(e.first)];
  }
  c.neighbour_sum.assign(n, Rational(0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (c.multiplicity[a][b] != 0)
        c.neighbour_sum[a] += c.multiplicity[a][b] * g.exact_weight(static_cast<VertexId>(b));
    const auto v = static_cast<VertexId>(a);
    const Rational& w = g.exact_weight(v);
    if (w > c.neighbour_sum[a]) {
      c.greater.push_back(v);
      c.geq.push_back(v);
    } else if (w == c.neighbour_sum[a]) {
      c.equal.push_back(v);
      c.geq.push_back(v);
    }
  }
  return c;
}

StructureReport structure_report(const WeightedGraph& g) {
  if (g.edge_count() < 2)
    throw Error(ErrorCode::edge_count, "structure report needs at least two undirected edges (graph has " +
                                           std::to_string(g.edge_count()) + ")");
  StructureReport r;
  r.classification = classify_vertices(g);
  const auto& c = r.classification;
  r.simple = c.geq.empty();
  r.unique_trace = r.simple;
  r.ideal_unital = c.equal.empty();
  r.quotient_dimension = c.geq.size();
  for (VertexId v : c.greater) r.summand_traces[v] = g.exact_weight(v) - c.neighbour_sum[index(v)];
  for (std::size_t a = 0; a < g.vertex_count(); ++a) {
    const auto v = static_cast<VertexId>(a);
    if (!c.in_geq(v)) {
      r.k0_basis.push_back(v);
      r.k0_weights.push_back(g.exact_weight(v));
    }
  }
  r.k1_trivial = true;
  return r;
}

bool k0_positive_cone_member(const StructureReport& report, const std::map<VertexId, long long>& coeffs) {
  Rational trace = 0;
  bool all_zero = true;
  for (const auto& [v, n] : coeffs) {
    auto it = std::find(report.k0_basis.begin(), report.k0_basis.end(), v);
    if (it == report.k0_basis.end())
      throw Error(ErrorCode::invalid_argument,
                  "coefficient on vertex " + std::to_string(index(v)) + " outside the K0 basis (vertex in V_>=)");
    if (n != 0) all_zero = false;
    trace += Rational(n) * report.k0_weights[static_cast<std::size_t>(it - report.k0_basis.begin())];
  }
  return all_zero || trace > 0;
}

}  // namespace freegraph
