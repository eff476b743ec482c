#pragma once

// Both sides of the essential-norm identity as finite-radius sup profiles,
// the estimate of ||C_psi||_e^2 and the compactness verdict.

#include <compnorm/carleson.hpp>
#include <compnorm/hardy.hpp>
#include <compnorm/nevanlinna.hpp>

#include <optional>
#include <string>
#include <vector>

namespace compnorm {

/// Per radius: sup over a = r e^{i theta} of poisson_transform(map, a).
RadialProfile integral_profile(const SelfMap& map, std::span<const double> radii, const AngleBudget& budget = {},
                               const QuadConfig& config = profile_quad_config());

struct IdentitySides {
  double counting_side = 0.0;
  double integral_side = 0.0;
  double gap = 0.0;
};

IdentitySides identity_check(const SelfMap& map, double r, const AngleBudget& budget = {},
                             const QuadConfig& config = profile_quad_config(), const CountingOptions& counting = {});

enum class Verdict { CompactConsistent, NonCompactConsistent, Inconclusive };
std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

/// r_k = 1 - 2^{-k}, k = 1..k_max. k_max in [3, 14].
std::vector<double> default_schedule(int k_max = 10);

struct EssNormConfig {
  std::vector<double> radii = default_schedule();
  AngleBudget budget{};
  QuadConfig quad = profile_quad_config();
  CountingOptions counting{};
  bool carleson = false;
  int carleson_atoms = 8192;
  std::vector<double> carleson_h{0.5, 0.25, 0.1, 0.05, 0.02, 0.01};
  /// When set, the Carleson section uses the seeded random sampler.
  std::optional<std::uint64_t> seed;
  /// Worker threads over radii; 0 means hardware concurrency.
  int threads = 0;
};

struct EssNormReport {
  std::string map_spec;
  std::vector<double> radii;
  std::vector<double> counting;
  std::vector<double> integral;
  /// Per radius, empty when clean.
  std::vector<std::string> flags;
  std::optional<CarlesonProfile> carleson;
  double essnorm_sq_estimate = 0.0;
  double beta_proxy = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double gap = 0.0;
  EssNormConfig config;
  double runtime_seconds = 0.0;

  bool has_flags() const;
};

/// CompactConsistent: both profiles < 0.05 and non-increasing over the last three
/// radii. NonCompactConsistent: both >= 0.5 with (max - min)/max < 0.1 there.
Verdict classify(const std::vector<double>& counting, const std::vector<double>& integral);

/// Errors at a radius are caught and recorded in flags (the value becomes NaN).
EssNormReport essential_norm_report(const SelfMap& map, const EssNormConfig& config = {});

}  // namespace compnorm
