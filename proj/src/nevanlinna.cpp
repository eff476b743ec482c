#include <compnorm/nevanlinna.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace compnorm {

CountingValue counting_function(const SelfMap& map, Complex w, const CountingOptions& options) {
  require_finite(w, "w");
  if (!(std::abs(w) < 1.0)) throw Error(ErrorCode::InvalidArgument, "counting_function requires |w| < 1");
  if (std::abs(w - map.at_zero()) <= 1e-14)
    throw Error(ErrorCode::InfiniteValue, "N_psi(psi(0)) is infinite: z = 0 is a preimage");
  const PreimageSet pre = solve_preimages(map, w, options.tol, options.solve);
  CountingValue out;
  out.w = w;
  for (const auto& r : pre.roots) {
    const double mod = std::abs(r.z);
    if (mod == 0.0) throw Error(ErrorCode::InfiniteValue, "N_psi(psi(0)) is infinite: z = 0 is a preimage");
    const double term = -std::log(mod) * r.multiplicity;
    out.value += term;
    out.n_preimages += r.multiplicity;
    if (mod > 1.0 - 1e-12) out.flagged_boundary_mass += term;
  }
  return out;
}

int AngleBudget::angles_for(double r) const {
  const double want = std::ceil(scale / (1.0 - r));
  const double n = std::clamp(want, static_cast<double>(min_angles), static_cast<double>(max_angles));
  return static_cast<int>(n);
}

void AngleBudget::validate() const {
  if (min_angles < 64) throw Error(ErrorCode::InvalidArgument, "angle budget needs at least 64 angles");
  if (max_angles < min_angles || max_angles > (1 << 16))
    throw Error(ErrorCode::InvalidArgument, "max_angles must lie in [min_angles, 2^16]");
  if (golden_rounds < 0) throw Error(ErrorCode::InvalidArgument, "golden_rounds must be >= 0");
}

AngularSup angular_sup(double r, const AngleBudget& budget,
                       const std::function<std::optional<double>(Complex)>& f) {
  budget.validate();
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "profile radii must lie in (0, 1)");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const int n = budget.angles_for(r);
  AngularSup out;
  out.n_angles = n;
  bool any = false;
  int best_j = 0;
  for (int j = 0; j < n; ++j) {
    const double th = kTwoPi * j / n;
    const auto v = f(std::polar(r, th));
    if (v && (!any || *v > out.value)) {
      any = true;
      out.value = *v;
      out.argmax = th;
      best_j = j;
    }
  }
  if (!any) return out;

  // Golden-section sharpening on the bracket around the grid argmax.
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto eval = [&](double th) {
    const auto v = f(std::polar(r, th));
    if (v && *v > out.value) {
      out.value = *v;
      out.argmax = std::fmod(th + kTwoPi, kTwoPi);
    }
    return v ? *v : -std::numeric_limits<double>::infinity();
  };
  double a = kTwoPi * (best_j - 1) / n, b = kTwoPi * (best_j + 1) / n;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int round = 0; round < budget.golden_rounds; ++round) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = eval(d);
    }
  }
  return out;
}

RadialProfile counting_profile(const SelfMap& map, std::span<const double> radii, const AngleBudget& budget,
                               const CountingOptions& options) {
  RadialProfile prof;
  double last = 0.0;
  for (double r : radii) {
    if (!(r > last && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "profile radii must increase within (0, 1)");
    last = r;
    const AngularSup s = angular_sup(r, budget, [&](Complex w) -> std::optional<double> {
      try {
        return counting_function(map, w, options).value / (1.0 - r);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::InfiniteValue) return std::nullopt;
        throw;
      }
    });
    prof.radii.push_back(r);
    prof.values.push_back(s.value);
    prof.argmax_angles.push_back(s.argmax);
    prof.n_angles_used.push_back(s.n_angles);
    prof.flags.emplace_back();
  }
  return prof;
}

Complex moebius_apply(Complex a, Complex z) {
  require_finite(a, "a");
  require_finite(z, "z");
  if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::InvalidArgument, "moebius parameter must satisfy |a| < 1");
  if (std::abs(z) > 1.0 + 1e-15) throw Error(ErrorCode::InvalidArgument, "moebius_apply requires |z| <= 1");
  return (a - z) / (1.0 - std::conj(a) * z);
}

SelfMap compose_with_moebius(Complex a, const SelfMap& map) {
  // psi is already validated and a Mobius outer factor keeps it a self-map.
  return SelfMap::from_expr_unchecked(make_compose(make_mobius(a), map.expr_ptr()));
}

TransformCheck counting_transform_check(const SelfMap& map, Complex a, Complex w) {
  if (!(std::abs(w) < 1.0)) throw Error(ErrorCode::InvalidArgument, "counting_transform_check requires |w| < 1");
  TransformCheck out;
  out.lhs = counting_function(map, moebius_apply(a, w)).value;
  out.rhs = counting_function(compose_with_moebius(a, map), w).value;
  out.diff = std::abs(out.lhs - out.rhs);
  return out;
}

SubaveragingCheck subaveraging_check(const SelfMap& map, Complex a, const QuadConfig& config) {
  require_finite(a, "a");
  if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::InvalidArgument, "subaveraging_check requires |a| < 1");
  if (std::abs(a - map.at_zero()) <= 1e-14)
    throw Error(ErrorCode::InvalidArgument, "subaveraging_check requires a != psi(0)");
  const SelfMap composed = compose_with_moebius(a, map);
  CountingOptions opts;
  opts.solve.certify = false;
  const double singular_radius[] = {std::abs(composed.at_zero())};
  const QuadResult q = disk_integral(
      [&](Complex z) {
        try {
          return counting_function(composed, z, opts).value;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::InfiniteValue) return 0.0;
          throw;
        }
      },
      config, singular_radius);
  SubaveragingCheck out;
  out.integral = q.value;
  const double c = std::abs(moebius_apply(a, map.at_zero()));
  out.bound = c * c * counting_function(map, a).value;
  out.tolerance = std::max({config.abs_tol, config.rel_tol * std::abs(q.value), q.error_estimate});
  out.ok = out.integral >= out.bound - out.tolerance;
  return out;
}

}  // namespace compnorm
