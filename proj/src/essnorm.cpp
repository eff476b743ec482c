#include <compnorm/essnorm.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

namespace compnorm {

RadialProfile integral_profile(const SelfMap& map, std::span<const double> radii, const AngleBudget& budget,
                               const QuadConfig& config) {
  config.validate();
  RadialProfile prof;
  double last = 0.0;
  for (double r : radii) {
    if (!(r > last && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "profile radii must increase within (0, 1)");
    last = r;
    bool converged = true;
    const AngularSup s = angular_sup(r, budget, [&](Complex a) -> std::optional<double> {
      const QuadResult q = poisson_transform_result(map, a, config);
      converged = converged && q.converged;
      return q.value;
    });
    prof.radii.push_back(r);
    prof.values.push_back(s.value);
    prof.argmax_angles.push_back(s.argmax);
    prof.n_angles_used.push_back(s.n_angles);
    prof.flags.push_back(converged ? "" : "NoConvergence: quadrature node budget reached");
  }
  return prof;
}

IdentitySides identity_check(const SelfMap& map, double r, const AngleBudget& budget, const QuadConfig& config,
                             const CountingOptions& counting) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "identity_check radius must lie in (0, 1)");
  const double radius[] = {r};
  IdentitySides out;
  out.counting_side = counting_profile(map, radius, budget, counting).values[0];
  out.integral_side = integral_profile(map, radius, budget, config).values[0];
  out.gap = std::abs(out.counting_side - out.integral_side);
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::CompactConsistent: return "CompactConsistent";
    case Verdict::NonCompactConsistent: return "NonCompactConsistent";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict verdict_from_string(std::string_view s) {
  for (Verdict v : {Verdict::CompactConsistent, Verdict::NonCompactConsistent, Verdict::Inconclusive})
    if (to_string(v) == s) return v;
  throw Error(ErrorCode::SyntaxError, "unknown verdict '" + std::string(s) + "'");
}

std::vector<double> default_schedule(int k_max) {
  if (k_max < 3 || k_max > 14) throw Error(ErrorCode::InvalidArgument, "k_max must lie in [3, 14]");
  std::vector<double> r;
  for (int k = 1; k <= k_max; ++k) r.push_back(1.0 - std::ldexp(1.0, -k));
  return r;
}

bool EssNormReport::has_flags() const {
  return std::any_of(flags.begin(), flags.end(), [](const std::string& f) { return !f.empty(); });
}

namespace {

bool all_small_decreasing(const std::vector<double>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = n - 3; i < n; ++i) {
    if (!(v[i] >= 0.0 && v[i] < 0.05)) return false;
    if (i > n - 3 && !(v[i] <= v[i - 1])) return false;
  }
  return true;
}

bool all_large_stable(const std::vector<double>& v) {
  const std::size_t n = v.size();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = n - 3; i < n; ++i) {
    if (!(v[i] >= 0.5)) return false;
    lo = std::min(lo, v[i]);
    hi = std::max(hi, v[i]);
  }
  return (hi - lo) / hi < 0.1;
}

}  // namespace

Verdict classify(const std::vector<double>& counting, const std::vector<double>& integral) {
  if (counting.size() < 3 || integral.size() != counting.size()) return Verdict::Inconclusive;
  if (all_small_decreasing(counting) && all_small_decreasing(integral)) return Verdict::CompactConsistent;
  if (all_large_stable(counting) && all_large_stable(integral)) return Verdict::NonCompactConsistent;
  return Verdict::Inconclusive;
}

EssNormReport essential_norm_report(const SelfMap& map, const EssNormConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.radii.empty()) throw Error(ErrorCode::InvalidArgument, "radius schedule is empty");
  for (std::size_t i = 0; i < config.radii.size(); ++i)
    if (!(config.radii[i] > (i ? config.radii[i - 1] : 0.0) && config.radii[i] < 1.0))
      throw Error(ErrorCode::InvalidArgument, "schedule radii must increase within (0, 1)");
  config.budget.validate();
  config.quad.validate();

  const std::size_t n = config.radii.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EssNormReport rep;
  rep.map_spec = map.spec();
  rep.radii = config.radii;
  rep.counting.assign(n, nan);
  rep.integral.assign(n, nan);
  rep.flags.assign(n, "");
  rep.config = config;

  // Each radius writes only its own slots, so results do not depend on scheduling.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const double r[] = {config.radii[i]};
      std::string flag;
      try {
        rep.counting[i] = counting_profile(map, r, config.budget, config.counting).values[0];
      } catch (const Error& e) {
        flag = "counting: " + std::string(e.what());
      }
      try {
        const RadialProfile p = integral_profile(map, r, config.budget, config.quad);
        rep.integral[i] = p.values[0];
        if (!p.flags[0].empty()) flag += (flag.empty() ? "integral: " : "; integral: ") + p.flags[0];
      } catch (const Error& e) {
        flag += (flag.empty() ? "integral: " : "; integral: ") + std::string(e.what());
      }
      rep.flags[i] = flag;
    }
  };
  unsigned hw = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  hw = std::clamp<unsigned>(hw, 1u, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < hw; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  rep.essnorm_sq_estimate = rep.integral.back();
  rep.gap = std::abs(rep.counting.back() - rep.integral.back());
  rep.beta_proxy = 0.0;
  for (double v : rep.counting)
    if (v > rep.beta_proxy) rep.beta_proxy = v;
  rep.verdict = classify(rep.counting, rep.integral);

  if (config.carleson) {
    const EmpiricalMeasure mu = config.seed ? induced_measure_random(map, config.carleson_atoms, *config.seed)
                                            : induced_measure(map, config.carleson_atoms);
    rep.carleson = carleson_ratio_profile(mu, config.carleson_h);
  }
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace compnorm
