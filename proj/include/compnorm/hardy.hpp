#pragma once

// H^2-side quantities: norms of powers of psi, the Poisson-type transform
// I(a) = int (1-|a|^2)/|1 - conj(a) psi|^2 dm (by quadrature and by the
// geometric series in psi), and the exact Littlewood-Paley and
// change-of-variables identities behind it.

#include <compnorm/mapspec.hpp>
#include <compnorm/quad.hpp>

#include <optional>
#include <vector>

namespace compnorm {

/// ||psi^n||^2 = int |psi|^{2n} dm. n = 0 gives exactly 1.
double h2_power_norm(const SelfMap& map, int n, const QuadConfig& config = {});

enum class TailKind { Bounded, Divergent, Unknown };

struct PowerNormTable {
  std::string map_spec;
  /// ||psi^n||^2 for n = 0..N-1.
  std::vector<double> norms_sq;
  double partial_sum = 0.0;
  TailKind tail_kind = TailKind::Unknown;
  /// Geometric bound s^{2N}/(1 - s^2), s = sup_T |psi|; meaningful when tail_kind == Bounded.
  double tail_bound = 0.0;
  double boundary_sup = 0.0;
};

PowerNormTable power_sum_tail(const SelfMap& map, int n_terms, const QuadConfig& config = {});

/// Sampled sup of |psi| on the unit circle (2^14 points).
double boundary_sup(const SelfMap& map);

double poisson_transform(const SelfMap& map, Complex a, const QuadConfig& config = {});
/// Same integral with the quadrature diagnostics.
QuadResult poisson_transform_result(const SelfMap& map, Complex a, const QuadConfig& config = {});

struct SeriesTransform {
  double value = 0.0;
  /// Bound on |I(a) - value| from the truncated tail of sum (conj(a) psi)^n.
  double truncation_bound = 0.0;
  int n_terms = 0;
};

/// (1-|a|^2) sum_{m,n<N} a^n conj(a)^m <psi^n, psi^m>, with the inner
/// products taken from one shared vector of boundary samples. Throws
/// TruncationTooLoose when the tail bound exceeds rel_tol * value.
SeriesTransform poisson_transform_series(const SelfMap& map, Complex a, int n_terms, const QuadConfig& config = {});

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  QuadConfig config;
};

/// lhs = I(a); rhs = (1-|a|^2)[c(a) + 2 int |a psi'/(1 - a psi)^2|^2 log(1/|z|) dA],
/// c(a) = 1/|1 - conj(a) psi(0)|^2.
IdentityCheck littlewood_paley_check(const SelfMap& map, Complex a, const QuadConfig& config = {});

/// lhs = 2 int |a psi'/(1 - a psi)^2|^2 log(1/|z|) dA(z);
/// rhs = 2 int N_psi(w) |a|^2/|1 - conj(a) w|^4 dA(w). Requires a != 0.
IdentityCheck change_of_variables_check(const SelfMap& map, Complex a, const QuadConfig& config = {});

struct CompactnessChain {
  double sqrt_transform = 0.0;  // sqrt(I(a))
  double head = 0.0;            // sqrt(1-|a|^2) sum_{n<N} |a|^n ||psi^n||
  double sqrt_tail = 0.0;       // sqrt(sum_{n>=N} ||psi^n||^2), geometric bound
  bool holds = false;           // sqrt_transform <= head + sqrt_tail
};

/// The Cauchy-Schwarz chain bounding sqrt(I(a)) by a head sum and the tail
/// of sum ||psi^n||^2. Requires sup_T |psi| < 1.
CompactnessChain compactness_chain(const SelfMap& map, Complex a, int n_terms, const QuadConfig& config = {});

}  // namespace compnorm
