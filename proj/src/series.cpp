#include "freegraph/series.hpp"

#include "freegraph/error.hpp"

#include <cmath>

namespace freegraph {

SeriesSystem fixed_point_step(const DirectedDouble& g, const SeriesSystem& z, int degree) {
  const std::size_t n = g.vertex_count();
  SeriesSystem next(n);
  for (std::size_t a = 0; a < n; ++a) {
    next[a].base = static_cast<VertexId>(a);
    next[a].max_degree = degree;
  }
  if (degree < 2) return next;
  const auto deg = static_cast<std::size_t>(degree);

  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& edge = g.edges()[i];
    const auto eps = static_cast<OrientedEdgeId>(i);
    const OrientedEdgeId opp = edge.opposite;
    const std::size_t alpha = index(edge.target);
    const std::size_t beta = index(edge.source);
    const double ma = g.weight(edge.target);
    const double mb = g.weight(edge.source);
    auto& out = next[alpha].coeffs;
    const auto& za = z[alpha].coeffs;
    const auto& zb = z[beta].coeffs;

    // μαμβ/√(μαμβ), rounded the way the trace recursion rounds it
    out[{opp, eps}] += ma * mb * (1.0 / std::sqrt(ma * mb));

    const double c_prefix = std::sqrt(mb / ma);
    for (const auto& [u, c] : za) {
      if (u.size() + 2 > deg) continue;
      std::vector<OrientedEdgeId> w = u;
      w.push_back(opp);
      w.push_back(eps);
      out[w] += c_prefix * c;
    }

    const double c_middle = std::sqrt(ma / mb);
    for (const auto& [v, d] : zb) {
      if (v.size() + 2 > deg) continue;
      std::vector<OrientedEdgeId> w;
      w.reserve(v.size() + 2);
      w.push_back(opp);
      w.insert(w.end(), v.begin(), v.end());
      w.push_back(eps);
      out[w] += c_middle * d;
    }

    const double c_both = 1.0 / std::sqrt(ma * mb);
    for (const auto& [u, c] : za) {
      if (u.size() + 4 > deg) continue;
      for (const auto& [v, d] : zb) {
        if (u.size() + v.size() + 2 > deg) continue;
        std::vector<OrientedEdgeId> w = u;
        w.push_back(opp);
        w.insert(w.end(), v.begin(), v.end());
        w.push_back(eps);
        out[w] += c_both * c * d;
      }
    }
  }
  return next;
}

SeriesSystem solve_system(const DirectedDouble& g, int degree, int* iterations) {
  if (degree < 2) throw Error(ErrorCode::invalid_argument, "series degree must be at least 2");
  SeriesSystem z(g.vertex_count());
  for (std::size_t a = 0; a < z.size(); ++a) {
    z[a].base = static_cast<VertexId>(a);
    z[a].max_degree = degree;
  }
  // Each step fixes at least two more degrees, so degree/2 + 1 steps reach the fixed point;
  // the extra step confirms stationarity.
  const int cap = degree / 2 + 2;
  int k = 0;
  for (; k < cap; ++k) {
    SeriesSystem next = fixed_point_step(g, z, degree);
    if (next == z) break;
    z = std::move(next);
  }
  if (iterations) *iterations = k;
  return z;
}

std::vector<Word> enumerate_loops(const DirectedDouble& g, VertexId base, int max_length) {
  std::vector<Word> out;
  Word cur = vertex_word(base);
  auto dfs = [&](auto&& self) -> void {
    if (!cur.empty() && cur.end == base) out.push_back(cur);
    if (static_cast<int>(cur.length()) == max_length) return;
    const VertexId here = cur.end;
    for (auto e : g.out_edges(here)) {
      cur.letters.push_back(e);
      cur.end = g.target(e);
      self(self);
      cur.letters.pop_back();
      cur.end = here;
    }
  };
  dfs(dfs);
  return out;
}

CrosscheckResult crosscheck(const DirectedDouble& g, const TruncatedNCSeries& series, TraceEngine& engine) {
  CrosscheckResult r;
  for (Word& w : enumerate_loops(g, series.base, series.max_degree)) {
    CrosscheckRow row;
    row.coefficient = series.coefficient(w.letters);
    row.trace = engine.trace(w);
    row.abs_error = std::abs(row.coefficient - row.trace);
    r.max_abs_error = std::max(r.max_abs_error, row.abs_error);
    row.word = std::move(w);
    r.rows.push_back(std::move(row));
  }
  // Coefficients on words that are not loops at the base would be errors too.
  for (const auto& [w, c] : series.coeffs) {
    auto word = make_word(g, w);
    if (!word || word->start != series.base || word->end != series.base)
      r.max_abs_error = std::max(r.max_abs_error, std::abs(c));
  }
  return r;
}

std::vector<double> specialize_commutative(const TruncatedNCSeries& series) {
  std::vector<double> c(static_cast<std::size_t>(series.max_degree) + 1, 0.0);
  for (const auto& [w, v] : series.coeffs)
    if (w.size() < c.size()) c[w.size()] += v;
  return c;
}

}  // namespace freegraph
