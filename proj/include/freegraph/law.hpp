#pragma once

#include "freegraph/graph.hpp"
#include "freegraph/trace.hpp"

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace freegraph {

/// Three-term recurrence coefficients of the measure with the given moments:
/// G(z) = b_0 / (z − a_0 − b_1 / (z − a_1 − …)), b_0 = m_0.
struct JacobiCoefficients {
  std::vector<double> a;
  std::vector<double> b;  ///< may hold one entry more than `a`
  double a_inf = 0;       ///< tail estimate used by the square-root terminator
  double b_inf = 0;
  bool finite = false;    ///< recurrence terminated exactly: finitely many atoms
  bool unstable = false;  ///< positivity lost at level `unstable_level`; coefficients truncated there
  int unstable_level = -1;
  /// First level whose coefficients were not reproducible from perturbed moments; -1 if none.
  int precision_level = -1;
};

/// Chebyshev algorithm in 50-digit arithmetic.
JacobiCoefficients jacobi_from_moments(std::span<const double> m);

class CauchySeries {
 public:
  explicit CauchySeries(MomentSeq ms);

  const MomentSeq& moments() const { return ms_; }
  const JacobiCoefficients& jacobi() const { return jacobi_; }

  /// Σ_k m_k / z^{k+1}
  std::complex<double> truncated_sum(std::complex<double> z) const;
  /// Continued fraction with a square-root tail.
  std::complex<double> operator()(std::complex<double> z) const;

 private:
  MomentSeq ms_;
  JacobiCoefficients jacobi_;
};

struct Atom {
  double location = 0;
  double mass = 0;
};

struct SupportInterval {
  double lo = 0;
  double hi = 0;
  double mass = 0;  ///< ∫ density over [lo, hi]
};

/// Σ_{i,j} c[j][i] z^i G^j = 0.
struct AlgebraicRelation {
  int dz = 0;
  int dG = 0;
  std::vector<std::vector<double>> c;
  double residual = 0;  ///< normalized, over every order available from the moments
  int order = 0;        ///< number of series coefficients certified
};

std::string format_relation(const AlgebraicRelation& r);

struct LawOptions {
  double eta = 1e-3;
  int grid_points = 2000;
  std::optional<double> lo;
  std::optional<double> hi;
};

struct SpectralEstimate {
  std::shared_ptr<const CauchySeries> cauchy;
  double eta = 0;
  std::vector<double> grid;
  std::vector<double> density;  ///< absolutely continuous part, atoms removed
  std::vector<SupportInterval> intervals;
  std::vector<Atom> atoms;
  std::optional<AlgebraicRelation> relation;
  double ac_mass = 0;
  int herglotz_violations = 0;
  std::vector<double> moment_roundtrip_error;  ///< relative, k = 1..6
  std::vector<std::string> warnings;

  /// (1/π)|Im G(x+iη)| with detected atom poles removed.
  double density_at(double x, double eta) const;
};

SpectralEstimate estimate_law(const MomentSeq& ms, const LawOptions& opt = {});

/// Searches dG' = 1..max_dG, then dz' = 0..max_dz; nullopt when nothing certifies.
std::optional<AlgebraicRelation> find_algebraic_relation(const MomentSeq& ms, int max_dz, int max_dG);

/// Coefficient residual of r substituted into Σ m_k z^{-k-1}, scaled like the search.
double relation_residual(const MomentSeq& ms, const AlgebraicRelation& r);

struct SupportArithmeticRow {
  SupportInterval interval;
  double nearest = 0;
  std::vector<int> combination;  ///< multiplicities of `weights`
  bool within = false;
};

struct SupportArithmeticReport {
  std::vector<double> weights;  ///< distinct vertex weights
  double tolerance = 0;
  std::vector<SupportArithmeticRow> rows;
};

SupportArithmeticReport check_support_arithmetic(const SpectralEstimate& est, const WeightedGraph& g, VertexId alpha);

struct LogMoment {
  double value = 0;  ///< ∫ log t dμ̂(t) / m_0; −∞ when an atom sits at 0
  double eta = 0;
  bool finite = true;
  double atom_mass = 0;
};

LogMoment log_moment(const SpectralEstimate& est);

/// Law of X_ε^* X_ε in the corner of β = t(ε), with α = s(ε) and a = (μ(α)/μ(β))^{1/4}:
/// μ(β)·√(4a²x − (a⁴ − 1 − a²x)²)/(2πx) on [a² + a⁻² − 2, a² + a⁻² + 2] plus (μ(β) − μ(α))⁺ δ_0.
class FreePoissonLaw {
 public:
  FreePoissonLaw(double mu_alpha, double mu_beta);

  double a() const { return a_; }
  double mu_alpha() const { return mu_alpha_; }
  double mu_beta() const { return mu_beta_; }
  bool heavy_corner() const { return mu_beta_ >= mu_alpha_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double atom() const;
  double density(double x) const;
  /// ∫ x^k dμ, including the atom for k = 0.
  double moment(int k) const;
  double total_mass() const { return moment(0); }

 private:
  double mu_alpha_, mu_beta_, a_, lo_, hi_;
};

/// Throws Error(loop_edge) for self-loops.
FreePoissonLaw free_poisson_reference(const DirectedDouble& g, OrientedEdgeId e);

}  // namespace freegraph
