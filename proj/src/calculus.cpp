#include "freegraph/calculus.hpp"

#include "freegraph/error.hpp"

#include <cmath>

namespace freegraph {

std::complex<double> trace_tensor(const TensorPoly& t, TraceEngine& engine) {
  std::complex<double> sum = 0;
  for (const auto& [k, c] : t.terms()) {
    if (!k.first.is_loop() || !k.second.is_loop()) continue;
    const double a = engine.trace(k.first);
    if (a == 0) continue;
    sum += c * a * engine.trace(k.second);
  }
  return sum;
}

Poly partial_trace_right(const TensorPoly& t, TraceEngine& engine) {
  Poly out;
  for (const auto& [k, c] : t.terms())
    if (k.second.is_loop()) out.add(k.first, c * engine.trace(k.second));
  return out;
}

Poly partial_trace_left(const TensorPoly& t, TraceEngine& engine) {
  Poly out;
  for (const auto& [k, c] : t.terms())
    if (k.first.is_loop()) out.add(k.second, c * engine.trace(k.first));
  return out;
}

namespace {

double sqrt_mass(const DirectedDouble& g, OrientedEdgeId e) {
  return std::sqrt(g.weight(g.source(e)) * g.weight(g.target(e)));
}

double max_coefficient(const TensorPoly& t) {
  double m = 0;
  for (const auto& [k, c] : t.terms()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

double check_conjugate_variable(const DirectedDouble& g, TraceEngine& engine, OrientedEdgeId e, const Poly& p) {
  const std::complex<double> lhs = trace_tensor(derive(g, e, p), engine);
  const std::complex<double> rhs = sqrt_mass(g, e) * engine.trace(Poly::generator(g, g.op(e)) * p);
  return std::abs(lhs - rhs);
}

double check_sigma_symmetry(const DirectedDouble& g, OrientedEdgeId e, const Poly& p) {
  const TensorPoly lhs = adjoint(g, derive(g, e, p));
  const TensorPoly rhs = flip(derive(g, g.op(e), adjoint(g, p)));
  return max_coefficient(lhs - rhs);
}

Poly derivation_adjoint(const DirectedDouble& g, TraceEngine& engine, OrientedEdgeId e, const Poly& q, const Poly& r) {
  const OrientedEdgeId opp = g.op(e);
  Poly out = std::complex<double>(sqrt_mass(g, e)) * (q * Poly::generator(g, e) * r);
  out -= partial_trace_right(derive(g, opp, q), engine) * r;
  out -= q * partial_trace_left(derive(g, opp, r), engine);
  return out;
}

double check_adjoint_formula(const DirectedDouble& g, TraceEngine& engine, OrientedEdgeId e, const Poly& q,
                             const Poly& r, const Poly& p) {
  const Poly q_star = adjoint(g, q);
  const Poly r_star = adjoint(g, r);
  std::complex<double> lhs = 0;
  const TensorPoly dp = derive(g, e, p);
  for (const auto& [k, c] : dp.terms()) {
    const std::complex<double> left = engine.trace(q_star * Poly::monomial(k.first));
    if (left == 0.0) continue;
    lhs += c * left * engine.trace(r_star * Poly::monomial(k.second));
  }
  const Poly d = derivation_adjoint(g, engine, e, q, r);
  const std::complex<double> rhs = engine.trace(adjoint(g, d) * p);
  return std::abs(lhs - rhs);
}

double check_leibniz(const DirectedDouble& g, OrientedEdgeId e, const Poly& p, const Poly& q) {
  TensorPoly diff = derive(g, e, p * q);
  diff -= derive(g, e, p) * q;
  diff -= p * derive(g, e, q);
  return max_coefficient(diff);
}

ExactTensorPoly flatness_defect(const DirectedDouble& g, const ExactPoly& q, VertexId alpha, VertexId beta) {
  for (const auto& [w, c] : q.terms())
    if (w.start != alpha || w.end != beta)
      throw Error(ErrorCode::not_cornered, "flatness identity needs p_alpha Q = Q = Q p_beta (term " +
                                               format_word(g, w) + ")");
  const ExactPoly one = ExactPoly::identity(g);
  ExactTensorPoly defect = ExactTensorPoly::elementary(q, ExactPoly::projection(beta));
  defect -= ExactTensorPoly::elementary(ExactPoly::projection(alpha), q);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto e = static_cast<OrientedEdgeId>(i);
    const ExactTensorPoly d = derive(g, e, q);
    if (d.is_zero()) continue;
    const ExactPoly x = ExactPoly::generator(g, e);
    ExactTensorPoly shift = ExactTensorPoly::elementary(x, one);
    shift -= ExactTensorPoly::elementary(one, x);
    defect -= sharp(d, shift);
  }
  return defect;
}

double check_flatness_identity(const DirectedDouble& g, const ExactPoly& q, VertexId alpha, VertexId beta) {
  return static_cast<double>(flatness_defect(g, q, alpha, beta).terms().size());
}

Word random_path(const DirectedDouble& g, std::mt19937_64& rng, VertexId start, std::size_t length) {
  Word w = vertex_word(start);
  for (std::size_t k = 0; k < length; ++k) {
    auto out = g.out_edges(w.end);
    if (out.empty()) return vertex_word(start);
    std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
    const OrientedEdgeId e = out[pick(rng)];
    w.letters.push_back(e);
    w.end = g.target(e);
  }
  return w;
}

Poly random_poly(const DirectedDouble& g, std::mt19937_64& rng, const RandomPolyOptions& opts) {
  std::uniform_int_distribution<std::size_t> vertex_pick(0, g.vertex_count() - 1);
  std::uniform_int_distribution<std::size_t> length_pick(0, opts.max_degree);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const std::optional<VertexId> start = opts.loop_at ? opts.loop_at : opts.start_at;
  const std::optional<VertexId> end = opts.loop_at ? opts.loop_at : opts.end_at;

  Poly p;
  for (std::size_t t = 0; t < opts.terms; ++t) {
    Word w;
    bool found = false;
    for (int attempt = 0; attempt < 2000 && !found; ++attempt) {
      const VertexId s = start ? *start : static_cast<VertexId>(vertex_pick(rng));
      w = random_path(g, rng, s, length_pick(rng));
      found = !end || w.end == *end;
    }
    if (!found) {
      if (start && end && *start != *end) continue;
      w = vertex_word(start ? *start : VertexId{});
    }
    const double re = coeff(rng);
    const double im = opts.complex_coefficients ? coeff(rng) : 0.0;
    p.add(std::move(w), {re, im});
  }
  return p;
}

}  // namespace freegraph
