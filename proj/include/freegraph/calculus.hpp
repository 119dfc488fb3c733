#pragma once

#include "freegraph/graph.hpp"
#include "freegraph/ncpoly.hpp"
#include "freegraph/trace.hpp"

#include <map>
#include <random>
#include <utility>

namespace freegraph {

/// Element of 𝒜 ⊗ 𝒜 as a sum of elementary tensors of words.
template <class S>
class BasicTensorPoly {
 public:
  using Key = std::pair<Word, Word>;
  using Terms = std::map<Key, S>;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(Word left, Word right, const S& c) {
    if (ScalarTraits<S>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(Key{std::move(left), std::move(right)}, c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  static BasicTensorPoly elementary(const BasicPoly<S>& x, const BasicPoly<S>& y) {
    BasicTensorPoly t;
    for (const auto& [wx, cx] : x.terms())
      for (const auto& [wy, cy] : y.terms()) t.add(wx, wy, cx * cy);
    return t;
  }

  BasicTensorPoly& operator+=(const BasicTensorPoly& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  BasicTensorPoly& operator-=(const BasicTensorPoly& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
  }
  friend BasicTensorPoly operator+(BasicTensorPoly a, const BasicTensorPoly& b) { return a += b; }
  friend BasicTensorPoly operator-(BasicTensorPoly a, const BasicTensorPoly& b) { return a -= b; }
  friend bool operator==(const BasicTensorPoly&, const BasicTensorPoly&) = default;

  /// Bimodule action a·(x⊗y)·b = ax ⊗ yb.
  friend BasicTensorPoly operator*(const BasicPoly<S>& a, const BasicTensorPoly& t) {
    BasicTensorPoly out;
    for (const auto& [wa, ca] : a.terms())
      for (const auto& [k, c] : t.terms_)
        if (auto w = concat(wa, k.first)) out.add(std::move(*w), k.second, ca * c);
    return out;
  }
  friend BasicTensorPoly operator*(const BasicTensorPoly& t, const BasicPoly<S>& b) {
    BasicTensorPoly out;
    for (const auto& [k, c] : t.terms_)
      for (const auto& [wb, cb] : b.terms())
        if (auto w = concat(k.second, wb)) out.add(k.first, std::move(*w), c * cb);
    return out;
  }

 private:
  Terms terms_;
};

using TensorPoly = BasicTensorPoly<std::complex<double>>;
using ExactTensorPoly = BasicTensorPoly<QComplex>;

/// (a ⊗ b) # (x ⊗ y) = ax ⊗ yb, extended bilinearly.
template <class S>
BasicTensorPoly<S> sharp(const BasicTensorPoly<S>& t, const BasicTensorPoly<S>& u) {
  BasicTensorPoly<S> out;
  for (const auto& [kt, ct] : t.terms())
    for (const auto& [ku, cu] : u.terms()) {
      auto left = concat(kt.first, ku.first);
      auto right = concat(ku.second, kt.second);
      if (left && right) out.add(std::move(*left), std::move(*right), ct * cu);
    }
  return out;
}

/// σ(a ⊗ b) = b ⊗ a.
template <class S>
BasicTensorPoly<S> flip(const BasicTensorPoly<S>& t) {
  BasicTensorPoly<S> out;
  for (const auto& [k, c] : t.terms()) out.add(k.second, k.first, c);
  return out;
}

/// (a ⊗ b)* = a* ⊗ b*.
template <class S>
BasicTensorPoly<S> adjoint(const DirectedDouble& g, const BasicTensorPoly<S>& t) {
  BasicTensorPoly<S> out;
  for (const auto& [k, c] : t.terms())
    out.add(adjoint_word(g, k.first), adjoint_word(g, k.second), ScalarTraits<S>::conj(c));
  return out;
}

/// Free difference quotient ∂_ε: the derivation with ∂_ε(X_ε') = δ_{ε,ε'} p_{s(ε)} ⊗ p_{t(ε)}
/// and ∂_ε(p_α) = 0.
template <class S>
BasicTensorPoly<S> derive(const DirectedDouble& g, OrientedEdgeId e, const BasicPoly<S>& p) {
  BasicTensorPoly<S> out;
  for (const auto& [w, c] : p.terms()) {
    const auto first = w.letters.begin();
    for (std::size_t j = 0; j < w.letters.size(); ++j) {
      if (w.letters[j] != e) continue;
      const auto at = first + static_cast<std::ptrdiff_t>(j);
      out.add(Word{w.start, g.source(e), {first, at}}, Word{g.target(e), w.end, {at + 1, w.letters.end()}}, c);
    }
  }
  return out;
}

/// Tr ⊗ Tr.
std::complex<double> trace_tensor(const TensorPoly& t, TraceEngine& engine);
/// (id ⊗ Tr)(t) and (Tr ⊗ id)(t).
Poly partial_trace_right(const TensorPoly& t, TraceEngine& engine);
Poly partial_trace_left(const TensorPoly& t, TraceEngine& engine);

/// |(Tr⊗Tr)(∂_ε P) − √(μ(s)μ(t)) Tr(X_{ε^op} P)|.
double check_conjugate_variable(const DirectedDouble& g, TraceEngine& engine, OrientedEdgeId e, const Poly& p);
/// Largest coefficient of (∂_ε P)* − σ(∂_{ε^op}(P*)).
double check_sigma_symmetry(const DirectedDouble& g, OrientedEdgeId e, const Poly& p);
/// ∂_ε^*(Q ⊗ R) = √(μ(s)μ(t)) Q X_ε R − (id⊗Tr)(∂_{ε^op} Q) R − Q (Tr⊗id)(∂_{ε^op} R).
Poly derivation_adjoint(const DirectedDouble& g, TraceEngine& engine, OrientedEdgeId e, const Poly& q, const Poly& r);
/// |⟨Q⊗R, ∂_ε P⟩ − ⟨∂_ε^*(Q⊗R), P⟩| with ⟨a, b⟩ = Tr(a* b) and Tr⊗Tr on tensors.
double check_adjoint_formula(const DirectedDouble& g, TraceEngine& engine, OrientedEdgeId e, const Poly& q,
                             const Poly& r, const Poly& p);
/// Largest coefficient of ∂_ε(PQ) − ∂_ε(P)·Q − P·∂_ε(Q).
double check_leibniz(const DirectedDouble& g, OrientedEdgeId e, const Poly& p, const Poly& q);

/// Q ⊗ p_β − p_α ⊗ Q − Σ_ε ∂_ε(Q) # (X_ε ⊗ 1 − 1 ⊗ X_ε), exactly.
/// Throws Error(not_cornered) unless p_α Q = Q = Q p_β.
ExactTensorPoly flatness_defect(const DirectedDouble& g, const ExactPoly& q, VertexId alpha, VertexId beta);
/// Number of nonzero terms left in the flatness defect (0 when the identity holds).
double check_flatness_identity(const DirectedDouble& g, const ExactPoly& q, VertexId alpha, VertexId beta);

struct RandomPolyOptions {
  std::size_t max_degree = 5;
  std::size_t terms = 4;
  bool complex_coefficients = true;
  /// When set, every word is a loop based at this vertex.
  std::optional<VertexId> loop_at;
  /// When set, every word starts here (and ends at `end_at` if that is set too).
  std::optional<VertexId> start_at;
  std::optional<VertexId> end_at;
};

/// Seeded random polynomial made of random walks; loops are built by rejection.
Poly random_poly(const DirectedDouble& g, std::mt19937_64& rng, const RandomPolyOptions& opts);
/// Random path word of exactly `length` letters from `start` (empty word if impossible).
Word random_path(const DirectedDouble& g, std::mt19937_64& rng, VertexId start, std::size_t length);

}  // namespace freegraph
