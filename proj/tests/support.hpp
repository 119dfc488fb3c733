#pragma once

#include "freegraph/graph.hpp"

#include <string>

namespace fgtest {

inline std::string data_path(const std::string& name) { return std::string(FG_TEST_DATA) + "/" + name + ".graph"; }

inline freegraph::WeightedGraph load_graph(const std::string& name) {
  return freegraph::WeightedGraph::load(data_path(name));
}

inline freegraph::DirectedDouble load(const std::string& name) { return freegraph::DirectedDouble(load_graph(name)); }

inline const char* const corpus[] = {"self_loop", "edge_1_1", "edge_1_4", "parallel_1_2", "triangle", "star"};

inline freegraph::OrientedEdgeId oe(const freegraph::DirectedDouble& g, const std::string& label) {
  return *g.find(label);
}

}  // namespace fgtest
