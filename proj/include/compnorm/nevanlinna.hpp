#pragma once

// Nevanlinna counting function N_psi(w) = sum over preimages of -log|z|
// (with multiplicity), its radial sup profile, and the Mobius transform laws.

#include <compnorm/diskzeros.hpp>
#include <compnorm/mapspec.hpp>
#include <compnorm/quad.hpp>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace compnorm {

struct CountingOptions {
  double tol = 1e-12;
  SolveOptions solve{};
};

struct CountingValue {
  Complex w;
  double value = 0.0;  // nats
  int n_preimages = 0;
  /// Contribution of roots flagged as lying within 1e-12 of the circle.
  double flagged_boundary_mass = 0.0;
};

/// Throws InfiniteValue when w = psi(0) (a preimage at the origin).
CountingValue counting_function(const SelfMap& map, Complex w, const CountingOptions& options = {});

/// Angle grid sizing: n(r) = clamp(ceil(scale/(1-r)), min_angles, max_angles).
struct AngleBudget {
  int min_angles = 256;
  int max_angles = 1 << 16;
  double scale = 8.0;
  int golden_rounds = 3;

  int angles_for(double r) const;
  void validate() const;
};

struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> argmax_angles;
  std::vector<int> n_angles_used;
  /// Per radius; empty when the value is clean, else the error or non-convergence note.
  std::vector<std::string> flags;
};

/// max over the angle grid of f(r e^{i theta}), sharpened by golden-section
/// rounds around the discrete argmax. f returns nullopt for points to skip.
/// Evaluation order and the max reduction are fixed.
struct AngularSup {
  double value = 0.0;
  double argmax = 0.0;
  int n_angles = 0;
};
AngularSup angular_sup(double r, const AngleBudget& budget,
                       const std::function<std::optional<double>(Complex)>& f);

/// Per radius: sup over theta of N_psi(r e^{i theta}) / (1 - r). The point psi(0) is skipped.
RadialProfile counting_profile(const SelfMap& map, std::span<const double> radii, const AngleBudget& budget = {},
                               const CountingOptions& options = {});

/// phi_a(z) = (a - z) / (1 - conj(a) z).
Complex moebius_apply(Complex a, Complex z);

/// phi_a o psi as a Compose node.
SelfMap compose_with_moebius(Complex a, const SelfMap& map);

struct TransformCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double diff = 0.0;
};

/// N_psi(phi_a(w)) against N_{phi_a o psi}(w).
TransformCheck counting_transform_check(const SelfMap& map, Complex a, Complex w);

struct SubaveragingCheck {
  double integral = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  bool ok = false;
};

/// integral over the disk of N_{phi_a o psi} dA against |phi_a(psi(0))|^2 N_psi(a).
SubaveragingCheck subaveraging_check(const SelfMap& map, Complex a, const QuadConfig& config = profile_quad_config());

}  // namespace compnorm
