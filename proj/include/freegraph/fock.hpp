#pragma once

#include "freegraph/graph.hpp"
#include "freegraph/ncpoly.hpp"

#include <Eigen/SparseCore>

#include <unordered_map>
#include <vector>

namespace freegraph {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

/// Depth-truncated Fock space of the directed double, in the orthonormal basis
/// e_ξ = ξ / √μ(t(ξ)). In this basis creation operators are 0/1 partial
/// isometries, adjoints are transposes and the modular conjugation J is a
/// permutation (ε_1⋯ε_n ↦ ε_n^op⋯ε_1^op). Creation out of the top level is dropped,
/// so identities are only exact on the interior levels stated by each check.
class TruncatedFock {
 public:
  static constexpr std::size_t default_max_dimension = 200000;

  TruncatedFock(const DirectedDouble& g, int depth, std::size_t max_dimension = default_max_dimension);

  int depth() const { return depth_; }
  std::size_t dimension() const { return basis_.size(); }
  const DirectedDouble& graph() const { return g_; }
  const Word& basis_path(std::size_t i) const { return basis_[i]; }
  std::optional<std::size_t> index_of(const Word& w) const;
  /// Basis indices of paths of length ≤ max_length.
  std::vector<std::size_t> levels_up_to(int max_length) const;

  /// ℓ(ε)
  const SparseMatrix& creation(OrientedEdgeId e) const { return creation_[index(e)]; }
  /// X_ε = a_ε ℓ(ε) + a_ε^{-1} ℓ(ε^op)^*
  const SparseMatrix& generator(OrientedEdgeId e) const { return generator_[index(e)]; }
  /// p_α: projection onto paths starting at α.
  const SparseMatrix& projection(VertexId v) const { return projection_[index(v)]; }
  const SparseMatrix& conjugation() const { return conjugation_; }

  /// Σ_α μ(α) ⟨e_α, X_{ε_1}⋯X_{ε_n} e_α⟩. Exact when |w| ≤ depth; throws
  /// Error(depth_too_shallow) otherwise.
  double trace(const Word& w) const;

  /// max |([ℓ(ε), J X_{ε'} J] − expected) e_ξ| over interior paths |ξ| ≤ depth − 2,
  /// where expected is zero for ε ≠ ε' and
  /// −(μ(s)^3 μ(t))^{-1/4} |s(ε)⟩⟨t(ε)| for ε = ε'. Throws when depth < 2.
  double commutator_residual(OrientedEdgeId e, OrientedEdgeId e_prime) const;

 private:
  const DirectedDouble& g_;
  int depth_;
  std::vector<Word> basis_;
  std::vector<std::size_t> level_start_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::vector<SparseMatrix> creation_;
  std::vector<SparseMatrix> generator_;
  std::vector<SparseMatrix> projection_;
  SparseMatrix conjugation_;
};

/// Number of paths of length ≤ depth (the truncated dimension), without building.
std::size_t fock_dimension(const DirectedDouble& g, int depth);

}  // namespace freegraph
