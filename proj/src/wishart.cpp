#include "freegraph/wishart.hpp"

#include "freegraph/error.hpp"
#include "freegraph/trace.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace freegraph {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, int sample, int i, int j) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ static_cast<std::uint64_t>(sample));
  h = splitmix(h ^ static_cast<std::uint64_t>(i));
  return splitmix(h ^ static_cast<std::uint64_t>(j));
}

int parse_index(const std::string& name) {
  std::size_t pos = 0;
  const int v = std::stoi(name, &pos);
  if (pos != name.size()) throw Error(ErrorCode::invalid_argument, "limit-graph vertex expected: " + name);
  return v - 1;
}

}  // namespace

std::vector<int> block_sizes(const EnsembleSpec& spec) {
  std::vector<int> m;
  for (double g : spec.ratios) m.push_back(static_cast<int>(std::lround(g * spec.n)));
  return m;
}

void validate(const EnsembleSpec& spec) {
  if (spec.ratios.empty()) throw Error(ErrorCode::invalid_argument, "at least one block ratio is required");
  if (spec.ratios[0] != 1.0) throw Error(ErrorCode::invalid_argument, "the first ratio must be 1");
  for (double g : spec.ratios)
    if (!(g >= 1.0)) throw Error(ErrorCode::invalid_argument, fmt::format("ratio {} is below 1", g));
  if (spec.n < 1) throw Error(ErrorCode::invalid_argument, "n must be positive");
  if (spec.samples < 1) throw Error(ErrorCode::invalid_argument, "sample count must be positive");
  double bytes = 0;
  for (int a : block_sizes(spec))
    for (int b : block_sizes(spec)) bytes += 16.0 * a * b;
  if (bytes > 1024.0 * 1024 * 1024)
    throw Error(ErrorCode::capacity_exceeded, fmt::format("one sample needs {:.0f} MiB of blocks", bytes / 1048576));
}

ComplexMatrix sample_block(const EnsembleSpec& spec, int sample, int i, int j) {
  const auto sizes = block_sizes(spec);
  const int mi = sizes.at(static_cast<std::size_t>(i));
  const int mj = sizes.at(static_cast<std::size_t>(j));
  std::mt19937_64 rng(stream_key(spec.seed, sample, i, j));
  // Real and imaginary parts each carry half of E|a|².
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 / std::sqrt(static_cast<double>(mi) * mj)));
  ComplexMatrix a(mi, mj);
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(r, c) = {re, im};
    }
  return a;
}

BlockFamily sample_ensemble(const EnsembleSpec& spec, int sample) {
  validate(spec);
  BlockFamily f;
  f.k = static_cast<int>(spec.ratios.size());
  for (int i = 0; i < f.k; ++i)
    for (int j = 0; j < f.k; ++j) f.blocks.push_back(sample_block(spec, sample, i, j));
  return f;
}

WeightedGraph limit_graph(const EnsembleSpec& spec) {
  validate(spec);
  const int k = static_cast<int>(spec.ratios.size());
  if (k < 2) throw Error(ErrorCode::invalid_argument, "the limit graph needs at least two blocks");
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (int i = 0; i < k; ++i)
    vs.push_back({std::to_string(i + 1), parse_rational(fmt::format("{:.17g}", spec.ratios[static_cast<std::size_t>(i)]))});
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j || spec.diagonal)
        es.push_back({fmt::format("e{}_{}", i + 1, j + 1), static_cast<VertexId>(i), static_cast<VertexId>(j)});
  return WeightedGraph(std::move(vs), std::move(es));
}

ComplexMatrix evaluate(const DirectedDouble& g, const Poly& q, const BlockFamily& blocks) {
  const auto& terms = q.terms();
  if (terms.empty()) throw Error(ErrorCode::invalid_argument, "empty polynomial");
  const VertexId s0 = terms.begin()->first.start;
  const VertexId t0 = terms.begin()->first.end;
  if (s0 != t0) throw Error(ErrorCode::not_cornered, "polynomial does not map a block to itself");
  auto size_of = [&](VertexId v) {
    const int i = parse_index(g.graph().vertex(v).name);
    return blocks.block(i, i).rows();
  };

  auto letter = [&](OrientedEdgeId e) -> ComplexMatrix {
    const OrientedEdge& oe = g.edge(e);
    const Edge& edge = g.graph().edge(oe.parent);
    const int i = parse_index(g.graph().vertex(edge.first).name);
    const int j = parse_index(g.graph().vertex(edge.second).name);
    const ComplexMatrix& a = blocks.block(i, j);
    if (i == j) return (a + a.adjoint()) / std::sqrt(2.0);
    if (oe.source == edge.first) return a;
    return a.adjoint();
  };

  const Eigen::Index dim = size_of(s0);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& [w, c] : terms) {
    if (w.start != s0 || w.end != s0) throw Error(ErrorCode::not_cornered, "monomials live in different corners");
    if (w.empty()) {
      out += c * ComplexMatrix::Identity(dim, dim);
      continue;
    }
    ComplexMatrix prod = letter(w.letters[0]);
    for (std::size_t p = 1; p < w.letters.size(); ++p) prod = prod * letter(w.letters[p]);
    out += c * prod;
  }
  return out;
}

WishartReport compare(const EnsembleSpec& spec, const DirectedDouble& g, const Poly& q, const WishartOptions& opt) {
  validate(spec);
  if (opt.max_moment < 1) throw Error(ErrorCode::invalid_argument, "max moment must be at least 1");
  if (q.terms().empty()) throw Error(ErrorCode::invalid_argument, "empty polynomial");
  if (max_abs_difference(q, adjoint(g, q)) > 1e-12)
    throw Error(ErrorCode::not_self_adjoint, "substituted polynomial is not self-adjoint");

  WishartReport rep;
  rep.corner = q.terms().begin()->first.start;
  rep.sizes = block_sizes(spec);
  const double n = spec.n;

  TraceEngine engine(g);
  const int kmax = std::max(opt.max_moment, opt.eigenvalues ? opt.law_moments : 0);
  const MomentSeq predicted = moments(g, q, rep.corner, kmax, engine);

  const auto S = static_cast<std::size_t>(spec.samples);
  const auto K = static_cast<std::size_t>(opt.max_moment);
  std::vector<std::vector<double>> per_sample(S, std::vector<double>(K, 0.0));
  // Only the blocks that q mentions are drawn; each has its own stream, so this
  // matches the full sample_ensemble draw.
  const int k = static_cast<int>(spec.ratios.size());
  std::vector<bool> used(static_cast<std::size_t>(k * k), false);
  for (const auto& [w, c] : q.terms())
    for (OrientedEdgeId e : w.letters) {
      const Edge& edge = g.graph().edge(g.edge(e).parent);
      used[static_cast<std::size_t>(parse_index(g.graph().vertex(edge.first).name) * k +
                                    parse_index(g.graph().vertex(edge.second).name))] = true;
    }

  std::vector<double> eig;
  for (std::size_t s = 0; s < S; ++s) {
    BlockFamily blocks;
    blocks.k = k;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        blocks.blocks.push_back(used[static_cast<std::size_t>(i * k + j)]
                                    ? sample_block(spec, static_cast<int>(s), i, j)
                                    : ComplexMatrix(rep.sizes[static_cast<std::size_t>(i)], 0));
    ComplexMatrix Q = evaluate(g, q, blocks);
    Q = 0.5 * (Q + Q.adjoint());
    // With Hermitian powers P_k = Q^k: tr Q^{2k} = ‖P_k‖², tr Q^{2k+1} = ⟨P_k, P_{k+1}⟩,
    // so only Q^1..Q^{⌈K/2⌉} are formed.
    std::vector<ComplexMatrix> P{Q};
    while (2 * P.size() < K) P.push_back(P.back() * Q);
    for (std::size_t m = 1; m <= K; ++m) {
      double t;
      if (m == 1)
        t = Q.trace().real();
      else if (m % 2 == 0)
        t = P[m / 2 - 1].squaredNorm();
      else
        t = (P[m / 2 - 1].conjugate().cwiseProduct(P[m / 2])).sum().real();
      per_sample[s][m - 1] = t / n;
    }
    if (opt.eigenvalues) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(Q, Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) eig.push_back(es.eigenvalues()(i));
    }
  }

  for (std::size_t m = 0; m < K; ++m) {
    MomentComparison row;
    row.order = static_cast<int>(m + 1);
    double mean = 0;
    for (std::size_t s = 0; s < S; ++s) mean += per_sample[s][m];
    mean /= static_cast<double>(S);
    double var = 0;
    for (std::size_t s = 0; s < S; ++s) var += (per_sample[s][m] - mean) * (per_sample[s][m] - mean);
    var = S > 1 ? var / static_cast<double>(S - 1) : 0.0;
    row.empirical = mean;
    row.std_error = std::sqrt(var / static_cast<double>(S));
    row.predicted = predicted.m[m + 1];
    const double diff = row.empirical - row.predicted;
    row.z_score = row.std_error > 0 ? diff / row.std_error : (diff == 0 ? 0.0 : std::copysign(INFINITY, diff));
    rep.moments.push_back(row);
  }

  if (opt.eigenvalues && !eig.empty()) {
    const auto [mn, mx] = std::minmax_element(eig.begin(), eig.end());
    const double lo = *mn, hi = *mx > *mn ? *mx : *mn + 1;
    const int bins = std::max(1, opt.bins);
    rep.histogram.resize(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
      rep.histogram[static_cast<std::size_t>(b)].lo = lo + (hi - lo) * b / bins;
      rep.histogram[static_cast<std::size_t>(b)].hi = lo + (hi - lo) * (b + 1) / bins;
    }
    for (double x : eig) {
      auto b = static_cast<std::size_t>(std::floor((x - lo) / (hi - lo) * bins));
      ++rep.histogram[std::min(b, static_cast<std::size_t>(bins - 1))].count;
    }

    MomentSeq law_ms = predicted;
    law_ms.m.resize(static_cast<std::size_t>(opt.law_moments) + 1);
    const SpectralEstimate est = estimate_law(law_ms);
    rep.predicted_support = est.intervals;
    rep.predicted_atoms = est.atoms;
    const double step = est.grid.size() > 1 ? est.grid[1] - est.grid[0] : 0.0;
    long long outside = 0;
    for (double x : eig) {
      bool in = false;
      for (const auto& iv : est.intervals) in = in || (x >= iv.lo - 2 * step && x <= iv.hi + 2 * step);
      for (const auto& at : est.atoms) in = in || std::abs(x - at.location) <= 0.05;
      if (!in) ++outside;
    }
    rep.gap_fraction = static_cast<double>(outside) / static_cast<double>(eig.size());
  }
  return rep;
}

}  // namespace freegraph
