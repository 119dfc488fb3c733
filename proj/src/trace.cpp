#include "freegraph/trace.hpp"

#include "freegraph/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <mutex>

namespace freegraph {

std::optional<double> SharedTraceCache::lookup(const std::u32string& key) const {
  std::shared_lock lock(mutex_);
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void SharedTraceCache::store(const std::u32string& key, double value) {
  std::unique_lock lock(mutex_);
  values_.emplace(key, value);
}

std::size_t SharedTraceCache::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

namespace {

std::u32string key_of(std::span<const OrientedEdgeId> s) {
  std::u32string k(s.size(), U'\0');
  for (std::size_t i = 0; i < s.size(); ++i) k[i] = static_cast<char32_t>(index(s[i]));
  return k;
}

template <class T>
T make_weight(const WeightedGraph& g, VertexId v);
template <>
double make_weight<double>(const WeightedGraph& g, VertexId v) { return g.weight(v); }
template <>
Rational make_weight<Rational>(const WeightedGraph& g, VertexId v) { return g.exact_weight(v); }

template <class T>
T make_inv_mass(const DirectedDouble& g, const OrientedEdge& e);
template <>
double make_inv_mass<double>(const DirectedDouble& g, const OrientedEdge& e) {
  return 1.0 / std::sqrt(g.weight(e.source) * g.weight(e.target));
}
template <>
Rational make_inv_mass<Rational>(const DirectedDouble& g, const OrientedEdge& e) {
  const auto& w = g.graph();
  auto root = exact_sqrt(w.exact_weight(e.source) * w.exact_weight(e.target));
  if (!root)
    throw Error(ErrorCode::not_exact, "exact traces need rational sqrt(mu(s)mu(t)); edge " + e.label +
                                          " has mu(s)mu(t) = " +
                                          to_string(w.exact_weight(e.source) * w.exact_weight(e.target)));
  return Rational(1) / *root;
}

}  // namespace

template <class T>
BasicTraceEngine<T>::BasicTraceEngine(const DirectedDouble& g) : g_(g) {
  for (std::size_t a = 0; a < g.vertex_count(); ++a)
    weight_.push_back(make_weight<T>(g.graph(), static_cast<VertexId>(a)));
  for (const auto& e : g.edges()) inv_mass_.push_back(make_inv_mass<T>(g, e));
}

template <class T>
T BasicTraceEngine<T>::trace(const Word& w) {
  if (!w.is_loop()) return T(0);
  return trace(w.letters, w.start);
}

template <class T>
T BasicTraceEngine<T>::trace(std::span<const OrientedEdgeId> letters, VertexId base) {
  if (letters.empty()) return weight_[index(base)];
  if (g_.source(letters.front()) != g_.target(letters.back())) return T(0);
  for (std::size_t k = 0; k + 1 < letters.size(); ++k)
    if (g_.target(letters[k]) != g_.source(letters[k + 1])) return T(0);
  return recurse(letters, base);
}

template <class T>
T BasicTraceEngine<T>::recurse(std::span<const OrientedEdgeId> s, VertexId base) {
  if (s.empty()) return weight_[index(base)];
  // Every letter must pair with an opposite letter, so odd loops vanish.
  if (s.size() % 2 == 1) return T(0);
  std::u32string key = key_of(s);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (auto v = lookup_shared(key)) {
    memo_.emplace(std::move(key), *v);
    return *v;
  }

  const std::size_t n = s.size();
  const OrientedEdgeId last = s[n - 1];
  const OrientedEdgeId partner = g_.op(last);
  const VertexId prefix_base = g_.target(last);
  const VertexId middle_base = g_.source(last);
  T sum(0);
  // Prefix and middle are loops of even length only when j is even.
  for (std::size_t j = 0; j + 1 < n; j += 2) {
    if (s[j] != partner) continue;
    T prefix = recurse(s.subspan(0, j), prefix_base);
    if (prefix == T(0)) continue;
    T middle = recurse(s.subspan(j + 1, n - 2 - j), middle_base);
    sum += prefix * middle;
  }
  T value = sum * inv_mass_[index(last)];
  store_shared(key, value);
  memo_.emplace(std::move(key), value);
  return value;
}

template class BasicTraceEngine<double>;
template class BasicTraceEngine<Rational>;

std::complex<double> TraceEngine::trace(const Poly& p) {
  std::complex<double> sum = 0;
  for (const auto& [w, c] : p.terms())
    if (w.is_loop()) sum += c * trace(w);
  return sum;
}

std::optional<double> TraceEngine::lookup_shared(const std::u32string& key) {
  if (!shared_) return std::nullopt;
  return shared_->lookup(key);
}

void TraceEngine::store_shared(const std::u32string& key, const double& v) {
  if (shared_) shared_->store(key, v);
}

QComplex ExactTraceEngine::trace(const ExactPoly& p) {
  QComplex sum;
  for (const auto& [w, c] : p.terms())
    if (w.is_loop()) sum += c * QComplex(trace(w));
  return sum;
}

bool supports_exact_traces(const DirectedDouble& g) {
  const auto& w = g.graph();
  for (const auto& e : g.edges())
    if (!exact_sqrt(w.exact_weight(e.source) * w.exact_weight(e.target))) return false;
  return true;
}

std::vector<double> MomentSeq::normalized() const {
  std::vector<double> out(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) out[k] = m[k] / corner_weight;
  return out;
}

namespace {

template <class S>
void check_corner_element(const DirectedDouble& g, const BasicPoly<S>& q, VertexId alpha, bool self_adjoint) {
  for (const auto& [w, c] : q.terms())
    if (w.start != alpha || w.end != alpha)
      throw Error(ErrorCode::not_cornered, "element is not supported in the corner p_" +
                                               g.graph().vertex(alpha).name + " . p_" +
                                               g.graph().vertex(alpha).name + " (term " + format_word(g, w) + ")");
  if (!self_adjoint) throw Error(ErrorCode::not_self_adjoint, "element is not self-adjoint");
}

}  // namespace

MomentSeq moments(const DirectedDouble& g, const Poly& q, VertexId alpha, int max_order, TraceEngine& engine) {
  if (max_order < 0) throw Error(ErrorCode::invalid_argument, "moment order must be nonnegative");
  check_corner_element(g, q, alpha, max_abs_difference(q, adjoint(g, q)) <= 1e-12);
  MomentSeq ms;
  ms.vertex = alpha;
  ms.corner_weight = g.weight(alpha);
  Poly power = Poly::projection(alpha);
  for (int k = 0; k <= max_order; ++k) {
    ms.m.push_back(engine.trace(power).real());
    if (k < max_order) power = power * q;
  }
  return ms;
}

std::vector<Rational> exact_moments(const DirectedDouble& g, const ExactPoly& q, VertexId alpha, int max_order,
                                    ExactTraceEngine& engine) {
  if (max_order < 0) throw Error(ErrorCode::invalid_argument, "moment order must be nonnegative");
  check_corner_element(g, q, alpha, q == adjoint(g, q));
  std::vector<Rational> out;
  ExactPoly power = ExactPoly::projection(alpha);
  for (int k = 0; k <= max_order; ++k) {
    out.push_back(engine.trace(power).re);
    if (k < max_order) power = power * q;
  }
  return out;
}

double hankel_min_relative_eigenvalue(const MomentSeq& ms) {
  const auto norm = ms.normalized();
  const std::size_t dim = (norm.size() + 1) / 2;  // H_ij = m_{i+j}, i + j ≤ K
  if (dim == 0) return 0;
  Eigen::MatrixXd H(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) H(i, j) = norm[i + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev.minCoeff() / scale;
}

bool hankel_psd(const MomentSeq& ms, double tol) { return hankel_min_relative_eigenvalue(ms) >= -tol; }

}  // namespace freegraph
