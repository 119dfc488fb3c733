#pragma once

#include "freegraph/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freegraph {

enum class VertexId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};
enum class OrientedEdgeId : std::uint32_t {};

constexpr std::size_t index(VertexId v) { return static_cast<std::size_t>(v); }
constexpr std::size_t index(EdgeId e) { return static_cast<std::size_t>(e); }
constexpr std::size_t index(OrientedEdgeId e) { return static_cast<std::size_t>(e); }

struct Vertex {
  std::string name;
  Rational weight;
};

/// Undirected edge; `first == second` for a self-loop.
struct Edge {
  std::string name;
  VertexId first;
  VertexId second;
  bool is_loop() const { return first == second; }
};

/// Finite connected undirected multigraph with strictly positive vertex weights.
/// Validated on construction; immutable afterwards.
class WeightedGraph {
 public:
  WeightedGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  /// Line format: `vertex <id> <weight>`, `edge <id> <v1> <v2>`, `#` comments.
  static WeightedGraph parse(std::string_view text, std::string_view source = "<input>");
  static WeightedGraph load(const std::filesystem::path& path);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }
  const Vertex& vertex(VertexId v) const { return vertices_.at(index(v)); }
  const Edge& edge(EdgeId e) const { return edges_.at(index(e)); }
  double weight(VertexId v) const { return weights_.at(index(v)); }
  const Rational& exact_weight(VertexId v) const { return vertices_.at(index(v)).weight; }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;
  VertexId vertex_by_name(std::string_view name) const;  // throws Error

  /// Same graph with every weight multiplied by `factor` (> 0).
  WeightedGraph scaled(const Rational& factor) const;

  /// Canonical text form accepted by parse().
  std::string to_text() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<double> weights_;
};

struct OrientedEdge {
  VertexId source;
  VertexId target;
  OrientedEdgeId opposite;
  EdgeId parent;
  /// Amplitude (μ(source)/μ(target))^{1/4}.
  double amplitude;
  /// `<edge>+` runs first endpoint to second, `<edge>-` the reverse; loops only have `+`.
  std::string label;
};

/// The directed double: every non-loop edge becomes an opposite pair, every
/// self-loop a single oriented edge fixed by the involution.
class DirectedDouble {
 public:
  explicit DirectedDouble(WeightedGraph graph);

  const WeightedGraph& graph() const { return graph_; }
  std::size_t vertex_count() const { return graph_.vertex_count(); }
  std::size_t size() const { return edges_.size(); }
  std::span<const OrientedEdge> edges() const { return edges_; }
  const OrientedEdge& edge(OrientedEdgeId e) const { return edges_.at(index(e)); }
  OrientedEdgeId op(OrientedEdgeId e) const { return edges_[index(e)].opposite; }
  VertexId source(OrientedEdgeId e) const { return edges_[index(e)].source; }
  VertexId target(OrientedEdgeId e) const { return edges_[index(e)].target; }
  double weight(VertexId v) const { return graph_.weight(v); }

  /// Oriented edges leaving `v`, in id order.
  std::span<const OrientedEdgeId> out_edges(VertexId v) const { return out_[index(v)]; }

  std::optional<OrientedEdgeId> find(std::string_view label) const;
  /// The orientation of `edge` running from `from` to `to`.
  std::optional<OrientedEdgeId> find(EdgeId edge, VertexId from, VertexId to) const;
  /// Oriented edges obtained from undirected edge `edge` (one for loops, two otherwise).
  std::vector<OrientedEdgeId> orientations(EdgeId edge) const;

 private:
  WeightedGraph graph_;
  std::vector<OrientedEdge> edges_;
  std::vector<std::vector<OrientedEdgeId>> out_;
};

DirectedDouble build_directed_double(const WeightedGraph& g);

struct VertexClassification {
  std::vector<VertexId> greater;  ///< V_>: μ(α) exceeds the weighted neighbour sum
  std::vector<VertexId> equal;    ///< V_=
  std::vector<VertexId> geq;      ///< V_≥ = V_> ∪ V_=, sorted
  /// multiplicity[α][β] = number of undirected edges with endpoints α and β.
  std::vector<std::vector<unsigned>> multiplicity;
  /// Σ_β n_{α,β} μ(β), exact.
  std::vector<Rational> neighbour_sum;

  bool in_greater(VertexId v) const;
  bool in_equal(VertexId v) const;
  bool in_geq(VertexId v) const { return in_greater(v) || in_equal(v); }
};

/// Exact classification; a self-loop at α counts as a neighbour α of multiplicity one.
VertexClassification classify_vertices(const WeightedGraph& g);

struct StructureReport {
  bool simple = false;
  bool unique_trace = false;
  bool ideal_unital = false;
  std::size_t quotient_dimension = 0;
  /// Trace of the finite-dimensional summand at each γ ∈ V_>: μ(γ) − Σ n_{γ,β} μ(β).
  std::map<VertexId, Rational> summand_traces;
  /// Vertices V ∖ V_≥, whose projections freely generate K_0 of the ideal.
  std::vector<VertexId> k0_basis;
  std::vector<Rational> k0_weights;
  bool k1_trivial = true;
  VertexClassification classification;
};

/// Ideal / K-theory report for graphs with at least two undirected edges.
/// Throws Error(edge_count) otherwise.
StructureReport structure_report(const WeightedGraph& g);

/// Whether Σ n_β [p_β] lies in the positive cone of K_0: trace > 0 or the zero class.
/// Throws Error(invalid_argument) when a coefficient sits on a vertex of V_≥.
bool k0_positive_cone_member(const StructureReport& report, const std::map<VertexId, long long>& coeffs);

}  // namespace freegraph
