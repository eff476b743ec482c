#include <compnorm/quad.hpp>

#include "polynomial.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <vector>

namespace compnorm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double target(const QuadConfig& cfg, double estimate) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(estimate));
}

double eval_offset(const std::function<double(double)>& f, double theta, double half_step) {
  try {
    return f(theta);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularBoundaryPoint) throw;
    return f(theta + half_step);
  }
}

struct Panel {
  double a, b;
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G = boost::math::quadrature::gauss<double, 7>;
  const auto& x = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double nudge = h / 30.0;
  const double f0 = eval_offset(f, c, nudge);
  double kron = wk[0] * f0;
  double gauss = wg[0] * f0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fs = eval_offset(f, c - h * x[i], nudge) + eval_offset(f, c + h * x[i], nudge);
    kron += wk[i] * fs;
    if (i % 2 == 0) gauss += wg[i / 2] * fs;
  }
  return {a, b, kron * h, std::abs(kron - gauss) * h};
}

QuadResult adaptive_circle(const std::function<double(double)>& f, const QuadConfig& cfg, long used) {
  auto worse = [](const Panel& x, const Panel& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> heap(worse);
  constexpr int kInitialPanels = 64;
  double total = 0.0, err = 0.0;
  long nodes = used;
  for (int i = 0; i < kInitialPanels; ++i) {
    const Panel p = gk15(f, kTwoPi * i / kInitialPanels, kTwoPi * (i + 1) / kInitialPanels);
    heap.push(p);
    total += p.value;
    err += p.error;
    nodes += 15;
  }
  bool converged = true;
  while (err / kTwoPi > target(cfg, total / kTwoPi)) {
    if (nodes + 30 > cfg.max_nodes) {
      converged = false;
      break;
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel l = gk15(f, worst.a, mid), r = gk15(f, mid, worst.b);
    nodes += 30;
    heap.push(l);
    heap.push(r);
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    if (err < 0) err = 0;
  }
  // Final sum in a fixed (left-endpoint) order for bit-stable results.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> vals, errs;
  for (const auto& p : panels) {
    vals.push_back(p.value);
    errs.push_back(p.error);
  }
  return {poly::pairwise_sum(vals) / kTwoPi, poly::pairwise_sum(errs) / kTwoPi, nodes, converged};
}

struct GaussRule {
  std::vector<double> x;  // on [-1, 1]
  std::vector<double> w;
};

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  for (double z : boost::math::legendre_p_zeros<double>(n)) {
    const double dp = boost::math::legendre_p_prime<double>(n, z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.x.push_back(z);
    rule.w.push_back(w);
    if (z != 0.0) {
      rule.x.push_back(-z);
      rule.w.push_back(w);
    }
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

std::vector<double> radial_panels(std::span<const double> extra) {
  std::vector<double> b{0.0, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.3, 0.55, 0.8, 0.95, 1.0};
  for (double e : extra)
    if (e > 1e-6 && e < 1.0) b.push_back(e);
  std::sort(b.begin(), b.end());
  std::vector<double> out;
  for (double v : b)
    if (out.empty() || v - out.back() > 1e-9) out.push_back(v);
  out.back() = 1.0;
  return out;
}

double disk_level(const std::function<double(Complex)>& g, const std::vector<double>& breaks, int order,
                  int n_theta) {
  const GaussRule& rule = gauss_legendre(order);
  std::vector<Complex> rot(n_theta);
  for (int j = 0; j < n_theta; ++j) rot[j] = std::polar(1.0, kTwoPi * j / n_theta);
  std::vector<double> ring(n_theta);
  std::vector<double> contributions;
  contributions.reserve((breaks.size() - 1) * rule.x.size());
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p], hi = breaks[p + 1];
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double r = mid + half * rule.x[i];
      for (int j = 0; j < n_theta; ++j) ring[j] = g(r * rot[j]);
      const double mean = poly::pairwise_sum(ring) / n_theta;
      contributions.push_back(rule.w[i] * half * 2.0 * r * mean);
    }
  }
  return poly::pairwise_sum(contributions);
}

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "quadrature tolerances must be > 0");
  if (max_nodes < 64 || max_nodes > (1L << 20))
    throw Error(ErrorCode::InvalidArgument, "max_nodes must lie in [64, 2^20]");
}

QuadConfig profile_quad_config() {
  QuadConfig c;
  c.abs_tol = 1e-9;
  c.rel_tol = 1e-6;
  c.refinement = Refinement::AdaptiveBisection;
  return c;
}

QuadResult circle_integral(const std::function<double(double)>& f, const QuadConfig& cfg) {
  cfg.validate();
  if (cfg.refinement == Refinement::AdaptiveBisection) return adaptive_circle(f, cfg, 0);

  constexpr long kStart = 256;
  constexpr long kHandOver = 2048;
  long n = kStart;
  std::vector<double> vals(n);
  for (long j = 0; j < n; ++j) vals[j] = eval_offset(f, kTwoPi * j / n, std::numbers::pi / n);
  double sum = poly::pairwise_sum(vals);
  double estimate = sum / n;
  long nodes = n;
  for (;;) {
    if (nodes + n > cfg.max_nodes) return {estimate, std::numeric_limits<double>::infinity(), nodes, false};
    // New nodes are the midpoints of the current grid.
    for (long j = 0; j < n; ++j) vals[j] = eval_offset(f, kTwoPi * (j + 0.5) / n, std::numbers::pi / (2 * n));
    sum += poly::pairwise_sum(vals);
    nodes += n;
    n *= 2;
    vals.resize(n);
    const double next = sum / n;
    const double diff = std::abs(next - estimate);
    estimate = next;
    if (diff <= target(cfg, estimate)) return {estimate, diff, nodes, true};
    if (n >= kHandOver) break;
  }
  return adaptive_circle(f, cfg, nodes);
}

QuadResult disk_integral(const std::function<double(Complex)>& g, const QuadConfig& cfg,
                         std::span<const double> radial_breaks) {
  cfg.validate();
  const auto breaks = radial_panels(radial_breaks);
  const long panels = static_cast<long>(breaks.size()) - 1;
  int order = 8, n_theta = 256;
  double prev = disk_level(g, breaks, order, n_theta);
  long nodes = panels * order * n_theta;
  double diff = std::numeric_limits<double>::infinity();
  for (;;) {
    const int next_order = order * 2, next_theta = n_theta * 2;
    const long next_nodes = panels * next_order * next_theta;
    if (next_nodes > cfg.max_nodes) return {prev, diff, nodes, false};
    const double cur = disk_level(g, breaks, next_order, next_theta);
    nodes += next_nodes;
    diff = std::abs(cur - prev);
    prev = cur;
    order = next_order;
    n_theta = next_theta;
    if (diff <= target(cfg, cur)) return {cur, diff, nodes, true};
  }
}

double log_series_sum(double x) {
  if (x < 0.1) {
    double sum = 0.0, p = 1.0;
    for (int n = 1; n < 200; ++n) {
      const double term = p / (n + 1);
      sum += term;
      if (term < 1e-18 * sum) break;
      p *= x;
    }
    return sum;
  }
  return (-std::log1p(-x) - x) / (x * x);
}

LogSeriesValue log_series_value(double c) {
  if (!(c >= 0.0 && c < 1.0)) throw Error(ErrorCode::InvalidArgument, "log_series_value requires 0 <= c < 1");
  const double x = c * c;
  LogSeriesValue out;
  out.closed_form = (1.0 - x) * log_series_sum(x);
  // Neumaier-compensated direct summation.
  double sum = 0.0, comp = 0.0, p = 1.0;
  for (long n = 1;; ++n) {
    const double term = (1.0 - x) * p / (n + 1);
    if (n > 1 && term < 1e-16) break;
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    out.n_terms = n;
    p *= x;
  }
  out.partial_sum = sum + comp;
  return out;
}

MoebiusEnergy moebius_energy(Complex a, const QuadConfig& cfg) {
  require_finite(a, "a");
  if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::InvalidArgument, "moebius_energy requires |a| < 1");
  const double x = std::norm(a);
  const double s = 1.0 - x;
  MoebiusEnergy out;
  out.closed_form = s * (1.0 - s * log_series_sum(x));
  out.quad = disk_integral(
      [&](Complex w) {
        const double d = std::norm(1.0 - std::conj(a) * w);
        return (1.0 - std::norm(w)) * s * s / (d * d);
      },
      cfg);
  out.quadrature = out.quad.value;
  return out;
}

}  // namespace compnorm
