#pragma once

// Solutions of psi(z) = w inside the unit disk, with multiplicities, certified
// by argument-principle winding counts.

#include <compnorm/mapspec.hpp>

#include <variant>
#include <vector>

namespace compnorm {

struct DiskRegion {
  Complex center;
  double radius;
};

struct SquareRegion {
  Complex center;
  double half_side;
};

/// {r e^{i t} : r_inner <= r <= r_outer, theta0 <= t <= theta1}; r_inner may be 0.
struct SectorRegion {
  double r_inner;
  double r_outer;
  double theta0;
  double theta1;
};

using Region = std::variant<DiskRegion, SquareRegion, SectorRegion>;

/// Number of solutions of psi(z) = w inside `region`, by adaptive trapezoid
/// integration of psi'/(psi - w) around its boundary. Throws
/// RegionOutsideDomain or BoundaryRootSuspected.
int winding_count(const SelfMap& map, Complex w, const Region& region);

struct Root {
  Complex z;
  int multiplicity = 1;
};

enum class SolveMethod { Auto, Companion, Subdivision };

struct SolveOptions {
  SolveMethod method = SolveMethod::Auto;
  /// Compare the polished root count against the winding count on the
  /// certification disk.
  bool certify = true;
  double certify_radius = 1.0 - 1e-9;
  /// Search radius used by the subdivision path for maps without a rational form.
  double transcendental_radius = 0.999;
};

struct PreimageSet {
  Complex target;
  /// Sorted by (modulus, argument).
  std::vector<Root> roots;
  int certified_total = 0;
  double residual_bound = 0.0;
  /// Roots with |z| > 1 - 1e-12, included in `roots` as well.
  std::vector<Root> boundary_flags;
  /// Radius inside which the root set is complete. Equal to 1 for the
  /// companion path; smaller for transcendental maps.
  double complete_radius = 1.0;
  SolveMethod method = SolveMethod::Companion;
};

/// Requires |w| < 1 and tol in [1e-14, 1e-6]. Throws NonconvergentRoot,
/// CertificationMismatch, or InfiniteValue when psi is constant and equal to w.
PreimageSet solve_preimages(const SelfMap& map, Complex w, double tol, const SolveOptions& options = {});

}  // namespace compnorm
