#include <compnorm/hardy.hpp>
#include <compnorm/nevanlinna.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace compnorm {

namespace {

void require_in_disk(Complex a) {
  require_finite(a, "a");
  if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::InvalidArgument, "the parameter a must satisfy |a| < 1");
}

// |conj(a) psi'(z) / (1 - conj(a) psi(z))^2|^2 log(1/|z|)
double littlewood_paley_integrand(const SelfMap& map, Complex a, Complex z) {
  const double mod = std::abs(z);
  if (mod == 0.0) return 0.0;
  const Jet j = evaluate(map.expr(), z);
  const Complex d = 1.0 - std::conj(a) * j.value;
  return std::norm(std::conj(a) * j.derivative / (d * d)) * -std::log(mod);
}

}  // namespace

double h2_power_norm(const SelfMap& map, int n, const QuadConfig& config) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "power must be >= 0");
  if (n == 0) return 1.0;
  const QuadResult q =
      circle_integral([&](double th) { return std::pow(std::norm(boundary_value(map, th)), n); }, config);
  return std::clamp(q.value, 0.0, 1.0);
}

double boundary_sup(const SelfMap& map) {
  constexpr int kSamples = 1 << 14;
  double sup = 0.0;
  for (int j = 0; j < kSamples; ++j) {
    double th = 2.0 * std::numbers::pi * j / kSamples;
    Complex v;
    try {
      v = boundary_value(map, th);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularBoundaryPoint) throw;
      v = boundary_value(map, th + std::numbers::pi / kSamples);
    }
    sup = std::max(sup, std::abs(v));
  }
  return sup;
}

PowerNormTable power_sum_tail(const SelfMap& map, int n_terms, const QuadConfig& config) {
  if (n_terms < 1) throw Error(ErrorCode::InvalidArgument, "power_sum_tail needs N >= 1");
  PowerNormTable t;
  t.map_spec = map.spec();
  for (int n = 0; n < n_terms; ++n) {
    t.norms_sq.push_back(h2_power_norm(map, n, config));
    t.partial_sum += t.norms_sq.back();
  }
  t.boundary_sup = boundary_sup(map);
  if (map.is_inner()) {
    t.tail_kind = TailKind::Divergent;
  } else if (t.boundary_sup < 1.0 - 1e-12) {
    const double s2 = t.boundary_sup * t.boundary_sup;
    t.tail_kind = TailKind::Bounded;
    t.tail_bound = std::pow(s2, n_terms) / (1.0 - s2);
  }
  return t;
}

QuadResult poisson_transform_result(const SelfMap& map, Complex a, const QuadConfig& config) {
  require_in_disk(a);
  const double s = 1.0 - std::norm(a);
  const Complex ca = std::conj(a);
  return circle_integral([&](double th) { return s / std::norm(1.0 - ca * boundary_value(map, th)); }, config);
}

double poisson_transform(const SelfMap& map, Complex a, const QuadConfig& config) {
  return poisson_transform_result(map, a, config).value;
}

SeriesTransform poisson_transform_series(const SelfMap& map, Complex a, int n_terms, const QuadConfig& config) {
  require_in_disk(a);
  if (n_terms < 1) throw Error(ErrorCode::InvalidArgument, "series needs N >= 1");
  const double s = 1.0 - std::norm(a);
  const Complex ca = std::conj(a);
  // sum_{m,n<N} conj(a)^n a^m psi^n conj(psi)^m at one boundary sample is |sum_n (conj(a) psi)^n|^2,
  // so the Gram form is contracted sample by sample.
  const QuadResult q = circle_integral(
      [&](double th) {
        const Complex u = ca * boundary_value(map, th);
        Complex acc{}, p{1.0, 0.0};
        for (int n = 0; n < n_terms; ++n) {
          acc += p;
          p *= u;
        }
        return std::norm(acc);
      },
      config);
  SeriesTransform out;
  out.n_terms = n_terms;
  out.value = s * q.value;
  const double ratio = std::abs(a) * std::min(1.0, boundary_sup(map));
  const double tail_norm = std::sqrt(s) * std::pow(ratio, n_terms) / (1.0 - ratio);
  out.truncation_bound = 2.0 * std::sqrt(out.value) * tail_norm + tail_norm * tail_norm;
  if (out.truncation_bound > config.rel_tol * out.value) {
    std::ostringstream os;
    os << "series truncation bound " << out.truncation_bound << " exceeds rel_tol * value with N = " << n_terms;
    throw Error(ErrorCode::TruncationTooLoose, os.str());
  }
  return out;
}

IdentityCheck littlewood_paley_check(const SelfMap& map, Complex a, const QuadConfig& config) {
  require_in_disk(a);
  IdentityCheck out;
  out.config = config;
  out.lhs = poisson_transform(map, a, config);
  const double c = 1.0 / std::norm(1.0 - std::conj(a) * map.at_zero());
  const QuadResult area =
      disk_integral([&](Complex z) { return littlewood_paley_integrand(map, a, z); }, config);
  out.rhs = (1.0 - std::norm(a)) * (c + 2.0 * area.value);
  out.abs_err = std::abs(out.lhs - out.rhs);
  out.rel_err = out.abs_err / std::abs(out.lhs);
  return out;
}

IdentityCheck change_of_variables_check(const SelfMap& map, Complex a, const QuadConfig& config) {
  require_in_disk(a);
  if (a == Complex{}) throw Error(ErrorCode::InvalidArgument, "change_of_variables_check requires a != 0");
  IdentityCheck out;
  out.config = config;
  out.lhs = 2.0 * disk_integral([&](Complex z) { return littlewood_paley_integrand(map, a, z); }, config).value;

  CountingOptions opts;
  opts.solve.certify = false;
  const double a2 = std::norm(a);
  const Complex ca = std::conj(a);
  const double breaks[] = {std::abs(map.at_zero())};
  out.rhs = 2.0 * disk_integral(
                      [&](Complex w) {
                        double n = 0.0;
                        try {
                          n = counting_function(map, w, opts).value;
                        } catch (const Error& e) {
                          if (e.code() != ErrorCode::InfiniteValue) throw;
                        }
                        const double d = std::norm(1.0 - ca * w);
                        return n * a2 / (d * d);
                      },
                      config, breaks)
                      .value;
  out.abs_err = std::abs(out.lhs - out.rhs);
  out.rel_err = out.lhs != 0.0 ? out.abs_err / std::abs(out.lhs) : out.abs_err;
  return out;
}

CompactnessChain compactness_chain(const SelfMap& map, Complex a, int n_terms, const QuadConfig& config) {
  require_in_disk(a);
  const PowerNormTable t = power_sum_tail(map, n_terms, config);
  if (t.tail_kind != TailKind::Bounded)
    throw Error(ErrorCode::InvalidArgument, "compactness chain needs sup |psi| < 1 on the circle");
  CompactnessChain out;
  out.sqrt_transform = std::sqrt(poisson_transform(map, a, config));
  const double r = std::abs(a);
  double head = 0.0, rn = 1.0;
  for (int n = 0; n < n_terms; ++n) {
    head += rn * std::sqrt(t.norms_sq[n]);
    rn *= r;
  }
  out.head = std::sqrt(1.0 - r * r) * head;
  out.sqrt_tail = std::sqrt(t.tail_bound);
  out.holds = out.sqrt_transform <= out.head + out.sqrt_tail + 1e-12;
  return out;
}

}  // namespace compnorm
