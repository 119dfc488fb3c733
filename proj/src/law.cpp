#include "freegraph/law.hpp"

#include "freegraph/error.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace freegraph {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;
using cd = std::complex<double>;

constexpr double pi = std::numbers::pi;

// Mean of the last few entries of v[1..], preferring an even count so that
// period-two oscillation (two-band spectra) averages out.
double tail_mean(const std::vector<double>& v) {
  if (v.empty()) return 0;
  if (v.size() == 1) return v[0];
  std::size_t avail = v.size() - 1;
  std::size_t cnt = std::min<std::size_t>(4, avail);
  if (cnt == 3) cnt = 2;
  double s = 0;
  for (std::size_t i = v.size() - cnt; i < v.size(); ++i) s += v[i];
  return s / static_cast<double>(cnt);
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y, std::size_t from, std::size_t to) {
  double s = 0;
  for (std::size_t i = from; i < to; ++i) s += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
  return s;
}

}  // namespace

namespace {

// Plain Chebyshev recursion; tail estimates are left to the caller.
JacobiCoefficients chebyshev(std::span<const double> m) {
  if (m.empty() || !(m[0] > 0)) throw Error(ErrorCode::invalid_argument, "moment sequence needs m_0 > 0");
  const std::size_t M = m.size();
  JacobiCoefficients J;
  J.b.push_back(m[0]);
  if (M < 2) return J;

  std::vector<Big> prev2(M, Big(0)), prev(M), cur(M);
  for (std::size_t l = 0; l < M; ++l) prev[l] = Big(m[l]);
  std::vector<Big> a{prev[1] / prev[0]};
  std::vector<Big> b{prev[0]};
  double scale2 = std::max(M > 2 ? std::abs(m[2] / m[0]) : 0.0, std::pow(m[1] / m[0], 2));
  if (!(scale2 > 0)) scale2 = 1;

  for (std::size_t k = 1; 2 * k <= M - 1 && a.size() == k; ++k) {
    for (std::size_t l = k; l + k <= M - 1; ++l) cur[l] = prev[l + 1] - a[k - 1] * prev[l] - b[k - 1] * prev2[l];
    const Big bk = cur[k] / prev[k - 1];
    const double bkd = bk.convert_to<double>();
    if (!std::isfinite(bkd) || bkd < -1e-10 * scale2) {
      J.unstable = true;
      J.unstable_level = static_cast<int>(k);
      break;
    }
    if (bkd <= 1e-10 * scale2) {
      J.finite = true;
      break;
    }
    b.push_back(bk);
    scale2 = std::max(scale2, bkd);
    if (k + 1 + k <= M - 1) {
      const Big ak = cur[k + 1] / cur[k] - prev[k] / prev[k - 1];
      a.push_back(ak);
      scale2 = std::max(scale2, std::pow(ak.convert_to<double>(), 2));
    }
    prev2.swap(prev);
    prev.swap(cur);
  }
  if (J.unstable || J.finite) {
    // Keep a_0..a_{k-1}, b_0..b_{k-1}.
    b.resize(std::min(b.size(), a.size()));
  }

  J.b.clear();
  for (const auto& x : a) J.a.push_back(x.convert_to<double>());
  for (const auto& x : b) J.b.push_back(x.convert_to<double>());
  return J;
}

}  // namespace

JacobiCoefficients jacobi_from_moments(std::span<const double> m) {
  JacobiCoefficients J = chebyshev(m);

  // The moments are doubles and the recursion amplifies their rounding geometrically,
  // so rerun on a relative 1e-13 perturbation and keep the levels both runs agree on.
  std::vector<double> pert(m.begin(), m.end());
  for (std::size_t k = 1; k < pert.size(); ++k) pert[k] *= 1 + (k % 2 ? 1e-13 : -1e-13);
  JacobiCoefficients P;
  try {
    P = chebyshev(pert);
  } catch (const Error&) {
  }
  double scale2 = J.b.size() > 1 ? 0.0 : 1.0;
  for (double x : J.a) scale2 = std::max(scale2, x * x);
  for (std::size_t k = 1; k < J.b.size(); ++k) scale2 = std::max(scale2, J.b[k]);
  if (!(scale2 > 0)) scale2 = 1;
  auto agrees = [](const std::vector<double>& x, const std::vector<double>& y, std::size_t k, double tol) {
    return k < y.size() && std::abs(x[k] - y[k]) <= tol;
  };
  std::size_t keep = J.a.size();
  for (std::size_t k = 1; k < J.a.size(); ++k)
    if (!agrees(J.a, P.a, k, 1e-6 * std::sqrt(scale2)) || !agrees(J.b, P.b, k, 1e-6 * scale2)) {
      keep = k;
      break;
    }
  if (keep < J.a.size()) {
    J.a.resize(keep);
    J.b.resize(keep);
    J.finite = false;
    J.precision_level = static_cast<int>(keep);
  } else if (J.b.size() > J.a.size() && !agrees(J.b, P.b, J.a.size(), 1e-6 * scale2)) {
    J.b.resize(J.a.size());
  }

  J.a_inf = tail_mean(J.a);
  J.b_inf = J.b.size() > 1 ? tail_mean(J.b) : 0.0;
  return J;
}

CauchySeries::CauchySeries(MomentSeq ms) : ms_(std::move(ms)), jacobi_(jacobi_from_moments(ms_.m)) {}

std::complex<double> CauchySeries::truncated_sum(std::complex<double> z) const {
  const cd w = 1.0 / z;
  cd acc = 0;
  for (auto it = ms_.m.rbegin(); it != ms_.m.rend(); ++it) acc = acc * w + *it;
  return acc * w;
}

std::complex<double> CauchySeries::operator()(std::complex<double> z) const {
  const auto& J = jacobi_;
  const std::size_t n = J.a.size();
  if (n == 0) return J.b[0] / z;

  cd tail = 0;
  if (!J.finite) {
    const double bt = J.b.size() > n ? J.b[n] : J.b_inf;
    cd t;
    if (J.b_inf > 0) {
      const double s = 2 * std::sqrt(J.b_inf);
      const cd w = z - J.a_inf;
      t = (w - std::sqrt(w - s) * std::sqrt(w + s)) / (2 * J.b_inf);
    } else {
      t = 1.0 / (z - J.a_inf);
    }
    tail = bt * t;
  }
  cd d = z - J.a[n - 1] - tail;
  for (std::size_t k = n - 1; k-- > 0;) d = z - J.a[k] - J.b[k + 1] / d;
  return J.b[0] / d;
}

double SpectralEstimate::density_at(double x, double eta_) const {
  const cd z(x, eta_);
  cd g = (*cauchy)(z);
  for (const auto& at : atoms) g -= at.mass / (z - at.location);
  return std::abs(g.imag()) / pi;
}

SpectralEstimate estimate_law(const MomentSeq& ms, const LawOptions& opt) {
  if (!(opt.eta > 0)) throw Error(ErrorCode::invalid_argument, "eta must be positive");
  if (opt.grid_points < 3) throw Error(ErrorCode::invalid_argument, "grid needs at least 3 points");
  SpectralEstimate est;
  est.cauchy = std::make_shared<const CauchySeries>(ms);
  est.eta = opt.eta;
  const CauchySeries& G = *est.cauchy;
  const double m0 = ms.m.at(0);
  if (G.jacobi().unstable)
    est.warnings.push_back(fmt::format("UnstableRecursion: Jacobi positivity lost at level {}; continued fraction "
                                       "truncated there",
                                       G.jacobi().unstable_level));
  if (G.jacobi().precision_level >= 0)
    est.warnings.push_back(fmt::format("PrecisionLimited: recurrence coefficients beyond level {} are not "
                                       "resolved by double-precision moments",
                                       G.jacobi().precision_level));

  double r = std::abs(ms.m.size() > 1 ? ms.m[1] / m0 : 0.0);
  for (std::size_t k = 2; k < ms.m.size(); k += 2)
    if (ms.m[k] > 0) r = std::max(r, std::pow(ms.m[k] / m0, 1.0 / static_cast<double>(k)));
  const double lo = opt.lo.value_or(-1.5 * r - 0.5);
  const double hi = opt.hi.value_or(1.5 * r + 0.5);
  if (!(hi > lo)) throw Error(ErrorCode::invalid_argument, "empty grid range");

  const auto np = static_cast<std::size_t>(opt.grid_points);
  est.grid.resize(np);
  std::vector<cd> values(np);
  std::vector<double> raw(np);
  for (std::size_t i = 0; i < np; ++i) {
    est.grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(np - 1);
    values[i] = G(cd(est.grid[i], opt.eta));
    if (values[i].imag() > 1e-12 * std::abs(values[i])) ++est.herglotz_violations;
    raw[i] = std::abs(values[i].imag()) / pi;
  }
  if (est.herglotz_violations > 0)
    est.warnings.push_back(fmt::format("Herglotz sign violated at {} grid points", est.herglotz_violations));

  // Atom candidates: the origin and refined local maxima of the raw density.
  std::vector<double> candidates;
  if (lo < 0 && hi > 0) candidates.push_back(0.0);
  std::vector<std::pair<double, std::size_t>> peaks;
  for (std::size_t i = 1; i + 1 < np; ++i)
    if (raw[i] > raw[i - 1] && raw[i] >= raw[i + 1]) peaks.emplace_back(raw[i], i);
  std::sort(peaks.begin(), peaks.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  if (peaks.size() > 50) peaks.resize(50);
  auto height = [&](double x) { return std::abs(G(cd(x, opt.eta)).imag()); };
  for (const auto& [h, i] : peaks) {
    double l = est.grid[i - 1], u = est.grid[i + 1];
    for (int it = 0; it < 200 && u - l > 1e-13 * std::max(1.0, std::abs(l)); ++it) {
      const double m1 = l + (u - l) / 3, m2 = u - (u - l) / 3;
      if (height(m1) < height(m2))
        l = m1;
      else
        u = m2;
    }
    candidates.push_back(0.5 * (l + u));
  }
  auto sharp = [&](double x) { return std::abs(G(cd(x, 0.1 * opt.eta)).imag()); };
  for (double& t : candidates) {
    // A pole sits exactly at the peak; centre on it before probing.
    double l = t - opt.eta, u = t + opt.eta;
    for (int it = 0; it < 100 && u - l > 1e-14 * std::max(1.0, std::abs(l)); ++it) {
      const double m1 = l + (u - l) / 3, m2 = u - (u - l) / 3;
      if (sharp(m1) < sharp(m2))
        l = m1;
      else
        u = m2;
    }
    const double c = 0.5 * (l + u);
    if (sharp(c) > sharp(t)) t = c;
  }
  for (double t : candidates) {
    const double big = opt.eta * std::abs(G(cd(t, opt.eta)).imag());
    const double small = 0.1 * opt.eta * std::abs(G(cd(t, 0.1 * opt.eta)).imag());
    if (!(small > 0.5 * big && small > 1e-3 * m0)) continue;
    const bool dup = std::any_of(est.atoms.begin(), est.atoms.end(), [&](const Atom& a) {
      return std::abs(a.location - t) < std::max(1e-6, opt.eta);
    });
    if (!dup) est.atoms.push_back({t, (10 * small - big) / 9});
  }
  std::sort(est.atoms.begin(), est.atoms.end(), [](const Atom& x, const Atom& y) { return x.location < y.location; });

  est.density.resize(np);
  for (std::size_t i = 0; i < np; ++i) {
    cd g = values[i];
    const cd z(est.grid[i], opt.eta);
    for (const auto& at : est.atoms) g -= at.mass / (z - at.location);
    est.density[i] = std::abs(g.imag()) / pi;
  }
  est.ac_mass = trapezoid(est.grid, est.density, 0, np - 1);

  const double peak = *std::max_element(est.density.begin(), est.density.end());
  const double step = (hi - lo) / static_cast<double>(np - 1);
  if (peak > 1e-6 * m0) {
    // Integrable singularities (e.g. x^{-1/2} at a hard edge) blow up under η-smoothing,
    // so the peak is capped by the density scale m_0/σ before taking 1%.
    const double mean = ms.m.size() > 1 ? ms.m[1] / m0 : 0.0;
    const double var = ms.m.size() > 2 ? ms.m[2] / m0 - mean * mean : 0.0;
    const double cap = var > 0 ? m0 / std::sqrt(var) : peak;
    const double tau = 1e-2 * std::min(peak, cap);
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t i = 0; i < np; ++i) {
      if (est.density[i] <= tau) continue;
      std::size_t j = i;
      while (j + 1 < np && est.density[j + 1] > tau) ++j;
      if (!runs.empty() && i - runs.back().second < 3)
        runs.back().second = j;
      else
        runs.emplace_back(i, j);
      i = j;
    }
    for (const auto& [i, j] : runs) {
      const double mass = trapezoid(est.grid, est.density, i, j);
      // Leftovers of an imperfectly subtracted atom are not support.
      if (mass >= 1e-3 * m0) est.intervals.push_back({est.grid[i], est.grid[j], mass});
    }
  }

  // Moments of the estimate over the detected support against m_k/m_0.
  const double m2n = ms.m.size() > 2 ? std::abs(ms.m[2] / m0) : 1.0;
  for (std::size_t k = 1; k <= 6 && k < ms.m.size(); ++k) {
    double s = 0;
    for (const auto& iv : est.intervals) {
      std::size_t i = static_cast<std::size_t>(std::llround((iv.lo - lo) / step));
      std::size_t j = static_cast<std::size_t>(std::llround((iv.hi - lo) / step));
      for (std::size_t p = i; p < j; ++p)
        s += 0.5 * step *
             (std::pow(est.grid[p], static_cast<double>(k)) * est.density[p] +
              std::pow(est.grid[p + 1], static_cast<double>(k)) * est.density[p + 1]);
    }
    for (const auto& at : est.atoms) s += at.mass * std::pow(at.location, static_cast<double>(k));
    const double target = ms.m[k] / m0;
    const double denom = std::max(std::abs(target), std::pow(m2n, 0.5 * static_cast<double>(k)));
    est.moment_roundtrip_error.push_back(denom > 0 ? std::abs(s / m0 - target) / denom : 0.0);
  }
  return est;
}

namespace {

struct ScaledSeries {
  double s = 1;
  double m0 = 1;
  std::vector<std::vector<double>> powers;  // powers[j][p] = [w^p] H^j
};

ScaledSeries scaled_series(const MomentSeq& ms, int max_dG) {
  ScaledSeries out;
  const auto& m = ms.m;
  out.m0 = m.at(0);
  if (!(out.m0 > 0)) throw Error(ErrorCode::invalid_argument, "moment sequence needs m_0 > 0");
  double s = 0;
  for (std::size_t k = 1; k < m.size(); ++k)
    if (m[k] != 0) s = std::max(s, std::pow(std::abs(m[k] / out.m0), 1.0 / static_cast<double>(k)));
  out.s = s > 0 ? s : 1.0;
  const std::size_t N = m.size() + 1;  // w^0 .. w^{K+1}
  std::vector<double> h(N, 0.0);
  for (std::size_t k = 0; k < m.size(); ++k) h[k + 1] = m[k] / out.m0 / std::pow(out.s, static_cast<double>(k));
  out.powers.assign(static_cast<std::size_t>(max_dG) + 1, std::vector<double>(N, 0.0));
  out.powers[0][0] = 1;
  for (int j = 1; j <= max_dG; ++j) {
    auto& cur = out.powers[static_cast<std::size_t>(j)];
    const auto& prv = out.powers[static_cast<std::size_t>(j - 1)];
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = 1; q <= p; ++q) cur[p] += prv[p - q] * h[q];
  }
  return out;
}

Eigen::MatrixXd relation_matrix(const ScaledSeries& ss, int dz, int dG) {
  const std::size_t N = ss.powers[0].size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), (dz + 1) * (dG + 1));
  for (int j = 0; j <= dG; ++j)
    for (int i = 0; i <= dz; ++i) {
      const int col = j * (dz + 1) + i;
      for (std::size_t p = 0; p < N; ++p) {
        const long idx = static_cast<long>(p) - dz + i;
        if (idx >= 0) A(static_cast<Eigen::Index>(p), col) = ss.powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx)];
      }
    }
  return A;
}

double scaled_residual(const ScaledSeries& ss, const AlgebraicRelation& r) {
  Eigen::VectorXd c((r.dz + 1) * (r.dG + 1));
  for (int j = 0; j <= r.dG; ++j)
    for (int i = 0; i <= r.dz; ++i)
      c(j * (r.dz + 1) + i) = r.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
                              std::pow(ss.s, i - j) * std::pow(ss.m0, j);
  const double norm = c.norm();
  if (norm == 0) return std::numeric_limits<double>::infinity();
  return (relation_matrix(ss, r.dz, r.dG) * (c / norm)).cwiseAbs().maxCoeff();
}

}  // namespace

double relation_residual(const MomentSeq& ms, const AlgebraicRelation& r) {
  return scaled_residual(scaled_series(ms, r.dG), r);
}

std::optional<AlgebraicRelation> find_algebraic_relation(const MomentSeq& ms, int max_dz, int max_dG) {
  if (max_dz < 0 || max_dG < 1) return std::nullopt;
  const ScaledSeries ss = scaled_series(ms, max_dG);
  const int N = static_cast<int>(ss.powers[0].size());
  const int K = static_cast<int>(ms.m.size()) - 1;
  for (int dG = 1; dG <= max_dG; ++dG) {
    for (int dz = 0; dz <= max_dz; ++dz) {
      const int U = (dz + 1) * (dG + 1);
      if (U > K || N < U + 2) continue;
      const Eigen::MatrixXd A = relation_matrix(ss, dz, dG);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      if (sv(0) == 0 || sv(U - 1) > 1e-8 * sv(0)) continue;
      Eigen::VectorXd c = svd.matrixV().col(U - 1);

      AlgebraicRelation r;
      r.dz = dz;
      r.dG = dG;
      r.order = N;
      r.c.assign(static_cast<std::size_t>(dG) + 1, std::vector<double>(static_cast<std::size_t>(dz) + 1, 0.0));
      double cmax = 0;
      for (int j = 0; j <= dG; ++j)
        for (int i = 0; i <= dz; ++i) {
          double v = c(j * (dz + 1) + i) * std::pow(ss.s, j - i) / std::pow(ss.m0, j);
          r.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
          cmax = std::max(cmax, std::abs(v));
        }
      // Normalize the leading coefficient (highest G power, then highest z power) to 1.
      double lead = 0;
      for (int j = dG; j >= 0 && lead == 0; --j)
        for (int i = dz; i >= 0 && lead == 0; --i)
          if (std::abs(r.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) > 1e-9 * cmax)
            lead = r.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (lead == 0) continue;
      for (auto& row : r.c)
        for (auto& v : row) {
          v /= lead;
          if (std::abs(v) < 1e-12 * cmax / std::abs(lead)) v = 0;
        }
      r.residual = scaled_residual(ss, r);
      if (r.residual <= 1e-8) return r;
    }
  }
  return std::nullopt;
}

std::string format_relation(const AlgebraicRelation& r) {
  std::string out;
  for (int j = r.dG; j >= 0; --j)
    for (int i = r.dz; i >= 0; --i) {
      const double v = r.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (v == 0) continue;
      const double rounded = std::round(v);
      const double shown = std::abs(v - rounded) < 1e-9 * std::max(1.0, std::abs(v)) ? rounded : v;
      std::string mono;
      if (i == 1) mono = "z";
      if (i > 1) mono = fmt::format("z^{}", i);
      if (j >= 1) mono += (mono.empty() ? "" : "*") + std::string(j == 1 ? "G" : fmt::format("G^{}", j));
      const double mag = std::abs(shown);
      std::string coef = fmt::format("{:.10g}", mag);
      std::string term = mono.empty() ? coef : (mag == 1 ? mono : coef + "*" + mono);
      if (out.empty())
        out = (shown < 0 ? "-" : "") + term;
      else
        out += (shown < 0 ? " - " : " + ") + term;
    }
  return (out.empty() ? "0" : out) + " = 0";
}

SupportArithmeticReport check_support_arithmetic(const SpectralEstimate& est, const WeightedGraph& g,
                                                 VertexId alpha) {
  SupportArithmeticReport rep;
  std::set<Rational> distinct;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) distinct.insert(g.exact_weight(static_cast<VertexId>(v)));
  for (const auto& w : distinct) rep.weights.push_back(to_double(w));
  // The lattice search is exponential in the number of distinct weights.
  if (rep.weights.size() > 5) rep.weights.resize(5);
  const double mu = g.weight(alpha);
  rep.tolerance = 0.05 * mu;

  const std::size_t r = rep.weights.size();
  std::vector<std::pair<double, std::vector<int>>> lattice;
  std::vector<int> n(r, -8);
  for (;;) {
    double v = 0;
    for (std::size_t i = 0; i < r; ++i) v += n[i] * rep.weights[i];
    if (v > 1e-12 * mu && v <= mu * (1 + 1e-12)) lattice.emplace_back(v, n);
    std::size_t i = 0;
    while (i < r && n[i] == 8) n[i++] = -8;
    if (i == r) break;
    ++n[i];
  }

  for (const auto& iv : est.intervals) {
    SupportArithmeticRow row;
    row.interval = iv;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [v, comb] : lattice) {
      const double d = std::abs(v - iv.mass);
      if (d < best - 1e-15) {
        best = d;
        row.nearest = v;
        row.combination = comb;
      }
    }
    row.within = best <= rep.tolerance;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

LogMoment log_moment(const SpectralEstimate& est) {
  LogMoment out;
  out.eta = est.eta;
  const double m0 = est.cauchy->moments().m.at(0);
  for (const auto& at : est.atoms)
    if (std::abs(at.location) <= std::max(1e-6, 10 * est.eta) && at.mass > 1e-3 * m0) {
      out.finite = false;
      out.atom_mass += at.mass;
    }
  if (!out.finite) {
    out.value = -std::numeric_limits<double>::infinity();
    return out;
  }
  // The blur of η would smear log-singular mass across 0; integrate the continued
  // fraction's boundary values instead, over the support detected at η.
  const double eta_q = 1e-6 * est.eta;
  double total = 0;
  for (const auto& iv : est.intervals) {
    const double lo = std::max(iv.lo, 0.0);
    if (!(iv.hi > lo)) continue;
    auto f = [&](double x) { return x > 0 ? std::log(x) * est.density_at(x, eta_q) : 0.0; };
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, iv.hi, 20, 1e-10);
  }
  for (const auto& at : est.atoms)
    if (at.location > 0) total += at.mass * std::log(at.location);
  out.value = total / m0;
  return out;
}

FreePoissonLaw::FreePoissonLaw(double mu_alpha, double mu_beta) : mu_alpha_(mu_alpha), mu_beta_(mu_beta) {
  if (!(mu_alpha > 0 && mu_beta > 0)) throw Error(ErrorCode::invalid_argument, "weights must be positive");
  a_ = std::pow(mu_alpha / mu_beta, 0.25);
  const double c = a_ * a_ + 1 / (a_ * a_);
  lo_ = std::max(0.0, c - 2);
  hi_ = c + 2;
}

double FreePoissonLaw::atom() const { return std::max(0.0, mu_beta_ - mu_alpha_); }

double FreePoissonLaw::density(double x) const {
  if (!(x > 0) || x <= lo_ || x >= hi_) return 0;
  const double a2 = a_ * a_;
  const double t = a2 * a2 - 1 - a2 * x;
  const double v = 4 * a2 * x - t * t;
  return v > 0 ? mu_beta_ * std::sqrt(v) / (2 * pi * x) : 0.0;
}

double FreePoissonLaw::moment(int k) const {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double x) { return std::pow(x, k) * density(x); };
  const double ac = integrator.integrate(f, lo_, hi_, 1e-13);
  return ac + (k == 0 ? atom() : 0.0);
}

FreePoissonLaw free_poisson_reference(const DirectedDouble& g, OrientedEdgeId e) {
  if (g.source(e) == g.target(e))
    throw Error(ErrorCode::loop_edge, "free Poisson reference law is defined for non-loop edges only");
  return FreePoissonLaw(g.weight(g.source(e)), g.weight(g.target(e)));
}

}  // namespace freegraph
