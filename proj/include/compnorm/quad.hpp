#pragma once

// Quadrature on the circle (normalized arclength dm) and on the disk
// (normalized area dA), plus closed forms for the series
// (1 - c^2) sum_{n>=1} c^{2n-2}/(n+1) and the Mobius energy integral.

#include <compnorm/error.hpp>

#include <functional>
#include <span>

namespace compnorm {

enum class Refinement { Doubling, AdaptiveBisection };

struct QuadConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  long max_nodes = 1L << 20;
  Refinement refinement = Refinement::Doubling;

  /// Throws InvalidArgument unless tolerances are positive and max_nodes is in [64, 2^20].
  void validate() const;
};

/// Relaxed tolerances (rel 1e-6) with straight adaptive bisection, used for
/// profiles at radii close to 1 where integrands are sharply peaked.
QuadConfig profile_quad_config();

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long nodes = 0;
  /// False when max_nodes was reached first (NoConvergence); value holds the last estimate.
  bool converged = true;
};

/// (1/2pi) * integral of f over [0, 2pi). Periodic trapezoid with node
/// doubling; under Refinement::Doubling it hands over to adaptive
/// Gauss-Kronrod bisection when the integrand is too peaked for the uniform
/// grid. Integrands throwing SingularBoundaryPoint are re-sampled half a step away.
QuadResult circle_integral(const std::function<double(double)>& f, const QuadConfig& config = {});

/// Integral of g over the unit disk against normalized area measure.
/// Radial Gauss-Legendre panels graded geometrically toward 0 (so a
/// log(1/|z|) factor is harmless), times periodic trapezoid in angle; both
/// doubled until successive estimates agree. `radial_breaks` adds panel
/// boundaries at radii where g is known to be non-smooth.
QuadResult disk_integral(const std::function<double(Complex)>& g, const QuadConfig& config = {},
                         std::span<const double> radial_breaks = {});

struct LogSeriesValue {
  double closed_form = 0.0;
  double partial_sum = 0.0;
  long n_terms = 0;
};

/// (1 - c^2) * sum_{n>=1} c^{2n-2}/(n+1) for 0 <= c < 1: closed form and
/// direct partial sum (terms summed until one drops below 1e-16).
LogSeriesValue log_series_value(double c);

/// sum_{n>=1} x^{n-1}/(n+1) = (-log(1-x) - x)/x^2, with the series used for small x.
double log_series_sum(double x);

struct MoebiusEnergy {
  double quadrature = 0.0;
  double closed_form = 0.0;
  QuadResult quad;
};

/// Integral over the disk of (1 - |w|^2)|phi_a'(w)|^2 dA(w), by quadrature and
/// by (1-|a|^2)[1 - (1-|a|^2) S(|a|)].
MoebiusEnergy moebius_energy(Complex a, const QuadConfig& config = {});

}  // namespace compnorm
