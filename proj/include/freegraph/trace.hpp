#pragma once

#include "freegraph/graph.hpp"
#include "freegraph/ncpoly.hpp"

#include <complex>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace freegraph {

/// Thread-safe memo of loop-word traces shared between engines on the same graph.
class SharedTraceCache {
 public:
  std::optional<double> lookup(const std::u32string& key) const;
  void store(const std::u32string& key, double value);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::u32string, double> values_;
};

/// Canonical trace Tr = tr∘E on words, evaluated by the loop recursion
///
///   Tr(X_{ε_1}⋯X_{ε_n}) = (μ(s(ε_n))μ(t(ε_n)))^{-1/2}
///       Σ_{j<n, ε_j = ε_n^op} Tr(X_{ε_1}⋯X_{ε_{j-1}}) · Tr(X_{ε_{j+1}}⋯X_{ε_{n-1}})
///
/// where an empty loop at α has trace μ(α). The memo is keyed on the exact
/// subword. `T` is double, or Rational for graphs where every √(μ(s)μ(t)) is rational.
template <class T>
class BasicTraceEngine {
 public:
  explicit BasicTraceEngine(const DirectedDouble& g);
  virtual ~BasicTraceEngine() = default;

  /// Zero for non-loop words.
  T trace(const Word& w);
  T trace(std::span<const OrientedEdgeId> letters, VertexId base);
  std::size_t cache_size() const { return memo_.size(); }
  const DirectedDouble& graph() const { return g_; }

 protected:
  T recurse(std::span<const OrientedEdgeId> s, VertexId base);
  virtual std::optional<T> lookup_shared(const std::u32string&) { return std::nullopt; }
  virtual void store_shared(const std::u32string&, const T&) {}

 private:
  const DirectedDouble& g_;
  std::vector<T> weight_;
  std::vector<T> inv_mass_;  // 1/√(μ(s)μ(t)) per oriented edge
  std::unordered_map<std::u32string, T> memo_;
};

extern template class BasicTraceEngine<double>;
extern template class BasicTraceEngine<Rational>;

class TraceEngine : public BasicTraceEngine<double> {
 public:
  explicit TraceEngine(const DirectedDouble& g, std::shared_ptr<SharedTraceCache> shared = nullptr)
      : BasicTraceEngine<double>(g), shared_(std::move(shared)) {}

  using BasicTraceEngine<double>::trace;
  std::complex<double> trace(const Poly& p);

 protected:
  std::optional<double> lookup_shared(const std::u32string& key) override;
  void store_shared(const std::u32string& key, const double& v) override;

 private:
  std::shared_ptr<SharedTraceCache> shared_;
};

/// Rational traces; throws Error(not_exact) unless every μ(s)μ(t) is a rational square.
class ExactTraceEngine : public BasicTraceEngine<Rational> {
 public:
  explicit ExactTraceEngine(const DirectedDouble& g) : BasicTraceEngine<Rational>(g) {}
  using BasicTraceEngine<Rational>::trace;
  QComplex trace(const ExactPoly& p);
};

bool supports_exact_traces(const DirectedDouble& g);

struct MomentSeq {
  VertexId vertex{};
  double corner_weight = 0;  ///< μ(α) = m_0
  std::vector<double> m;     ///< m_k = Tr(q^k), unnormalized

  std::vector<double> normalized() const;
};

/// Requires q = q* and p_α q p_α = q; throws Error(not_self_adjoint / not_cornered).
MomentSeq moments(const DirectedDouble& g, const Poly& q, VertexId alpha, int max_order, TraceEngine& engine);
std::vector<Rational> exact_moments(const DirectedDouble& g, const ExactPoly& q, VertexId alpha, int max_order,
                                    ExactTraceEngine& engine);

/// Smallest eigenvalue of the normalized Hankel matrix relative to its largest; PSD when ≥ −tol.
double hankel_min_relative_eigenvalue(const MomentSeq& ms);
bool hankel_psd(const MomentSeq& ms, double tol = 1e-9);

}  // namespace freegraph
