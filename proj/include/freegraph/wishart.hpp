#pragma once

#include "freegraph/graph.hpp"
#include "freegraph/law.hpp"
#include "freegraph/ncpoly.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace freegraph {

/// Block sizes M_i = round(γ_i n) with γ_1 = 1 and γ_i ≥ 1.
struct EnsembleSpec {
  std::vector<double> ratios{1.0};
  int n = 100;
  int samples = 100;
  std::uint64_t seed = 0;
  /// Map self-loops e<i>_<i> of the limit graph to (A_ii + A_ii^*)/√2.
  bool diagonal = false;
};

/// Throws Error(invalid_argument) or Error(capacity_exceeded, when one sample exceeds 1 GiB).
void validate(const EnsembleSpec& spec);
std::vector<int> block_sizes(const EnsembleSpec& spec);

using ComplexMatrix = Eigen::MatrixXcd;

/// A_ij of shape M_i × M_j, i.i.d. complex Gaussian with E|a|² = 1/√(M_i M_j), E a² = 0.
/// The stream depends only on (seed, sample, i, j).
ComplexMatrix sample_block(const EnsembleSpec& spec, int sample, int i, int j);

struct BlockFamily {
  int k = 0;
  std::vector<ComplexMatrix> blocks;  ///< row-major, A_ij at i·k + j (0-based)
  const ComplexMatrix& block(int i, int j) const { return blocks[static_cast<std::size_t>(i * k + j)]; }
};

BlockFamily sample_ensemble(const EnsembleSpec& spec, int sample);

/// Vertices "1".."k" weighted γ_i; for each ordered pair i ≠ j an edge e<i>_<j> with first
/// endpoint i, so X[e<i>_<j>+] ↦ A_ij and X[e<i>_<j>-] ↦ A_ij^*. With `diagonal`, also loops e<i>_<i>.
WeightedGraph limit_graph(const EnsembleSpec& spec);

/// Substitutes the blocks into q. Every monomial must run from the same vertex to itself.
ComplexMatrix evaluate(const DirectedDouble& g, const Poly& q, const BlockFamily& blocks);

struct MomentComparison {
  int order = 0;
  double empirical = 0;
  double std_error = 0;
  double predicted = 0;
  double z_score = 0;
};

struct HistogramBin {
  double lo = 0;
  double hi = 0;
  long long count = 0;
};

struct WishartOptions {
  int max_moment = 4;
  bool eigenvalues = false;  ///< diagonalize each sample for the histogram and gap report
  int bins = 50;
  int law_moments = 20;
};

struct WishartReport {
  VertexId corner{};
  std::vector<int> sizes;
  std::vector<MomentComparison> moments;
  std::vector<HistogramBin> histogram;
  std::vector<SupportInterval> predicted_support;
  std::vector<Atom> predicted_atoms;
  std::optional<double> gap_fraction;  ///< eigenvalues outside the predicted support and atoms
};

/// Empirical (1/n) tr(Q^m) over samples against Tr(q^m) on the limit graph.
/// Throws Error(not_self_adjoint / not_cornered) for unusable q.
WishartReport compare(const EnsembleSpec& spec, const DirectedDouble& g, const Poly& q, const WishartOptions& opt);

}  // namespace freegraph
