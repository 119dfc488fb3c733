#include "freegraph/fock.hpp"

#include "freegraph/error.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace freegraph {

std::size_t fock_dimension(const DirectedDouble& g, int depth) {
  // paths ending... counted by start vertex: count[v] = paths of current length starting at v.
  std::vector<double> count(g.vertex_count(), 1.0);
  double total = static_cast<double>(g.vertex_count());
  for (int k = 1; k <= depth; ++k) {
    std::vector<double> next(g.vertex_count(), 0.0);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      for (auto e : g.out_edges(static_cast<VertexId>(v))) next[v] += count[index(g.target(e))];
    count = std::move(next);
    for (double c : count) total += c;
    if (total > 1e18) break;
  }
  return total > 1e18 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(total);
}

TruncatedFock::TruncatedFock(const DirectedDouble& g, int depth, std::size_t max_dimension)
    : g_(g), depth_(depth) {
  if (depth < 0) throw Error(ErrorCode::invalid_argument, "Fock depth must be nonnegative");
  const std::size_t dim = fock_dimension(g, depth);
  if (dim > max_dimension)
    throw Error(ErrorCode::capacity_exceeded, "truncated Fock space at depth " + std::to_string(depth) + " has " +
                                                  std::to_string(dim) + " basis vectors (cap " +
                                                  std::to_string(max_dimension) + ")");
  basis_.reserve(dim);
  level_start_.push_back(0);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) basis_.push_back(vertex_word(static_cast<VertexId>(v)));
  for (int k = 1; k <= depth; ++k) {
    const std::size_t begin = level_start_.back();
    const std::size_t end = basis_.size();
    level_start_.push_back(end);
    for (std::size_t i = begin; i < end; ++i) {
      const Word base = basis_[i];
      for (auto e : g.out_edges(base.end)) {
        Word w = base;
        if (w.letters.empty()) w.start = base.end;
        w.letters.push_back(e);
        w.end = g.target(e);
        basis_.push_back(std::move(w));
      }
    }
  }
  level_start_.push_back(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);

  const auto n = static_cast<Eigen::Index>(basis_.size());
  using Triplet = Eigen::Triplet<double>;

  creation_.resize(g.size());
  for (std::size_t ei = 0; ei < g.size(); ++ei) {
    const auto e = static_cast<OrientedEdgeId>(ei);
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Word& xi = basis_[i];
      if (static_cast<int>(xi.length()) >= depth) continue;
      if (xi.start != g.target(e)) continue;
      Word w{g.source(e), xi.empty() ? g.target(e) : xi.end, {e}};
      w.letters.insert(w.letters.end(), xi.letters.begin(), xi.letters.end());
      t.emplace_back(static_cast<Eigen::Index>(index_.at(w)), static_cast<Eigen::Index>(i), 1.0);
    }
    creation_[ei].resize(n, n);
    creation_[ei].setFromTriplets(t.begin(), t.end());
  }

  generator_.resize(g.size());
  for (std::size_t ei = 0; ei < g.size(); ++ei) {
    const auto e = static_cast<OrientedEdgeId>(ei);
    const double a = g.edge(e).amplitude;
    SparseMatrix annihilation = SparseMatrix(creation_[index(g.op(e))].transpose());
    generator_[ei] = a * creation_[ei] + (1.0 / a) * annihilation;
  }

  projection_.resize(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (index(basis_[i].start) == v) t.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i), 1.0);
    projection_[v].resize(n, n);
    projection_[v].setFromTriplets(t.begin(), t.end());
  }

  std::vector<Triplet> t;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const std::size_t j = index_.at(adjoint_word(g, basis_[i]));
    t.emplace_back(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i), 1.0);
  }
  conjugation_.resize(n, n);
  conjugation_.setFromTriplets(t.begin(), t.end());
}

std::optional<std::size_t> TruncatedFock::index_of(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> TruncatedFock::levels_up_to(int max_length) const {
  std::vector<std::size_t> out;
  if (max_length < 0) return out;
  const std::size_t last = std::min<std::size_t>(static_cast<std::size_t>(max_length) + 1, level_start_.size() - 1);
  for (std::size_t i = 0; i < level_start_[last]; ++i) out.push_back(i);
  return out;
}

double TruncatedFock::trace(const Word& w) const {
  if (static_cast<int>(w.length()) > depth_)
    throw Error(ErrorCode::depth_too_shallow, "word of length " + std::to_string(w.length()) +
                                                  " needs Fock depth >= its length (depth is " +
                                                  std::to_string(depth_) + ")");
  if (!w.is_loop()) return 0.0;
  const auto n = static_cast<Eigen::Index>(basis_.size());
  const std::size_t alpha = index(w.start);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(static_cast<Eigen::Index>(alpha)) = 1.0;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) v = generator_[index(*it)] * v;
  return g_.weight(w.start) * v(static_cast<Eigen::Index>(alpha));
}

double TruncatedFock::commutator_residual(OrientedEdgeId e, OrientedEdgeId e_prime) const {
  if (depth_ < 2)
    throw Error(ErrorCode::depth_too_shallow, "commutator check needs Fock depth >= 2");
  const SparseMatrix right = conjugation_ * generator_[index(e_prime)] * conjugation_;
  const SparseMatrix& left = creation_[index(e)];
  SparseMatrix comm = SparseMatrix(left * right) - SparseMatrix(right * left);
  if (e == e_prime) {
    const VertexId s = g_.source(e);
    const VertexId t = g_.target(e);
    const double ms = g_.weight(s);
    const double mt = g_.weight(t);
    // |p_s⟩⟨p_t| = √(μ(s)μ(t)) |e_s⟩⟨e_t| in the orthonormal basis.
    const double constant = -1.0 / std::pow(ms * ms * ms * mt, 0.25);
    comm.coeffRef(static_cast<Eigen::Index>(index(s)), static_cast<Eigen::Index>(index(t))) -=
        constant * std::sqrt(ms * mt);
  }
  const std::size_t interior_end = level_start_[static_cast<std::size_t>(depth_ - 1)];
  double residual = 0;
  for (Eigen::Index col = 0; col < static_cast<Eigen::Index>(interior_end); ++col)
    for (SparseMatrix::InnerIterator it(comm, col); it; ++it) residual = std::max(residual, std::abs(it.value()));
  return residual;
}

}  // namespace freegraph
