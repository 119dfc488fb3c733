#pragma once

#include "freegraph/graph.hpp"
#include "freegraph/ncpoly.hpp"
#include "freegraph/trace.hpp"

#include <map>
#include <vector>

namespace freegraph {

/// Truncated noncommutative power series over the oriented-edge alphabet,
/// holding the loop-trace generating series z_α = Σ_{w ∈ L(α)} Tr(w) w.
struct TruncatedNCSeries {
  VertexId base{};
  int max_degree = 0;
  std::map<std::vector<OrientedEdgeId>, double> coeffs;

  double coefficient(const std::vector<OrientedEdgeId>& w) const {
    auto it = coeffs.find(w);
    return it == coeffs.end() ? 0.0 : it->second;
  }
  friend bool operator==(const TruncatedNCSeries&, const TruncatedNCSeries&) = default;
};

using SeriesSystem = std::vector<TruncatedNCSeries>;

/// One application of the proper algebraic system, truncated at `degree`:
///
///   z_α ← Σ_{ε: t(ε)=α, β=s(ε)}  √(μαμβ) ε^op ε + √(μβ/μα) z_α ε^op ε
///                              + √(μα/μβ) ε^op z_β ε + (μαμβ)^{-1/2} z_α ε^op z_β ε
///
/// Self-loops enter as β = α with ε^op = ε.
SeriesSystem fixed_point_step(const DirectedDouble& g, const SeriesSystem& z, int degree);

/// Iterates from z = 0 until the truncated system is stationary (at most degree/2 + 1 steps).
SeriesSystem solve_system(const DirectedDouble& g, int degree, int* iterations = nullptr);

struct CrosscheckRow {
  Word word;
  double coefficient = 0;
  double trace = 0;
  double abs_error = 0;
};

struct CrosscheckResult {
  std::vector<CrosscheckRow> rows;
  double max_abs_error = 0;
};

/// Compares every loop word at the series base (1 ≤ |w| ≤ degree) with the trace engine.
CrosscheckResult crosscheck(const DirectedDouble& g, const TruncatedNCSeries& series, TraceEngine& engine);

/// All loop words based at `base` with 1 ≤ length ≤ max_length, in lexicographic order.
std::vector<Word> enumerate_loops(const DirectedDouble& g, VertexId base, int max_length);

/// Coefficient list c_0..c_degree of Σ_m (Σ_{|w|=m} coeff(w)) z^m.
std::vector<double> specialize_commutative(const TruncatedNCSeries& series);

}  // namespace freegraph
