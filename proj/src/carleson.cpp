#include <compnorm/carleson.hpp>

#include "polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

namespace compnorm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex sample_boundary(const SelfMap& map, double theta, double half_step) {
  try {
    return boundary_value(map, theta);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularBoundaryPoint) throw;
    return boundary_value(map, theta + half_step);
  }
}

double angle_of(Complex z) {
  const double t = std::arg(z);
  return t < 0.0 ? t + kTwoPi : t;
}

double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

double total_weight(const std::vector<Atom>& atoms) {
  std::vector<double> w;
  w.reserve(atoms.size());
  for (const auto& a : atoms) w.push_back(a.weight);
  return poly::pairwise_sum(w);
}

void check_size(int n) {
  if (n < 256 || (n & (n - 1)) != 0)
    throw Error(ErrorCode::InvalidArgument, "induced measure needs n >= 256, a power of two");
}

// Largest mass of atoms (angles sorted, with radius filter applied) inside an arc of length 2h.
std::pair<double, double> edge_aligned_max(const std::vector<std::pair<double, double>>& pts, double h) {
  const std::size_t m = pts.size();
  if (m == 0) return {0.0, 0.0};
  if (2.0 * h >= kTwoPi) {
    double s = 0.0;
    for (const auto& p : pts) s += p.second;
    return {s, 0.0};
  }
  double best = 0.0, arg = 0.0, run = 0.0;
  std::size_t j = 0;  // index into the unrolled sequence [0, 2m)
  for (std::size_t i = 0; i < m; ++i) {
    if (j < i) {
      j = i;
      run = 0.0;
    }
    auto angle_at = [&](std::size_t k) { return pts[k % m].first + (k >= m ? kTwoPi : 0.0); };
    while (j < i + m && angle_at(j) - pts[i].first <= 2.0 * h) {
      run += pts[j % m].second;
      ++j;
    }
    if (run > best) {
      best = run;
      arg = std::fmod(pts[i].first + h, kTwoPi);
    }
    run -= pts[i].second;
  }
  return {best, arg};
}

}  // namespace

EmpiricalMeasure induced_measure(const SelfMap& map, int n) {
  check_size(n);
  EmpiricalMeasure mu;
  mu.atoms.reserve(n);
  const double w = 1.0 / n;
  for (int j = 0; j < n; ++j) mu.atoms.push_back({sample_boundary(map, kTwoPi * j / n, std::numbers::pi / n), w});
  mu.total = total_weight(mu.atoms);
  return mu;
}

EmpiricalMeasure induced_measure_random(const SelfMap& map, int n, std::uint64_t seed) {
  check_size(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  EmpiricalMeasure mu;
  mu.atoms.reserve(n);
  for (int j = 0; j < n; ++j) mu.atoms.push_back({sample_boundary(map, u(rng), std::numbers::pi / n), 1.0 / n});
  mu.total = total_weight(mu.atoms);
  return mu;
}

double window_mass(const EmpiricalMeasure& mu, const CarlesonWindow& window) {
  if (!(window.h > 0.0 && window.h <= 1.0)) throw Error(ErrorCode::InvalidArgument, "window h must lie in (0, 1]");
  if (!(window.theta0 >= 0.0 && window.theta0 < kTwoPi))
    throw Error(ErrorCode::InvalidArgument, "window theta0 must lie in [0, 2pi)");
  double mass = 0.0;
  for (const auto& a : mu.atoms) {
    if (std::abs(a.xi) < 1.0 - window.h) continue;
    if (angular_distance(angle_of(a.xi), window.theta0) <= window.h) mass += a.weight;
  }
  return mass;
}

CarlesonProfile carleson_ratio_profile(const EmpiricalMeasure& mu, std::span<const double> h_grid, int n_theta) {
  if (n_theta < 360) throw Error(ErrorCode::InvalidArgument, "n_theta must be >= 360");
  if (h_grid.empty()) throw Error(ErrorCode::InvalidArgument, "h grid is empty");
  if (mu.atoms.empty()) throw Error(ErrorCode::InvalidArgument, "measure has no atoms");
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (!(h_grid[i] > 0.0 && h_grid[i] <= 1.0)) throw Error(ErrorCode::InvalidArgument, "h values must lie in (0, 1]");
    if (i > 0 && !(h_grid[i] < h_grid[i - 1])) throw Error(ErrorCode::InvalidArgument, "h grid must be decreasing");
  }
  const double guard = 8.0 * kTwoPi / static_cast<double>(mu.atoms.size());
  if (h_grid.back() < guard) {
    std::ostringstream os;
    os << "h = " << h_grid.back() << " is below the atom resolution guard " << guard;
    throw Error(ErrorCode::ResolutionExceeded, os.str());
  }

  CarlesonProfile prof;
  for (double h : h_grid) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& a : mu.atoms)
      if (std::abs(a.xi) >= 1.0 - h) pts.emplace_back(angle_of(a.xi), a.weight);
    std::sort(pts.begin(), pts.end());
    auto [best, arg] = edge_aligned_max(pts, h);
    for (int j = 0; j < n_theta; ++j) {
      const double th = kTwoPi * j / n_theta;
      const double m = window_mass(mu, {h, th});
      if (m > best) {
        best = m;
        arg = th;
      }
    }
    prof.h.push_back(h);
    prof.ratio.push_back(best / h);
    prof.argmax.push_back(arg);
  }
  return prof;
}

double poisson_of_measure(const EmpiricalMeasure& mu, Complex a) {
  require_finite(a, "a");
  if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::InvalidArgument, "poisson_of_measure requires |a| < 1");
  const double s = 1.0 - std::norm(a);
  const Complex ca = std::conj(a);
  std::vector<double> terms;
  terms.reserve(mu.atoms.size());
  for (const auto& at : mu.atoms) terms.push_back(at.weight * s / std::norm(1.0 - ca * at.xi));
  return poly::pairwise_sum(terms);
}

EmpiricalMeasure restrict_to_annulus(const EmpiricalMeasure& mu, double R) {
  EmpiricalMeasure out;
  for (const auto& a : mu.atoms)
    if (std::abs(a.xi) >= R) out.atoms.push_back(a);
  out.total = total_weight(out.atoms);
  return out;
}

std::string measure_to_csv(const EmpiricalMeasure& mu) {
  std::string out = "re,im,weight\n";
  char buf[96];
  for (const auto& a : mu.atoms) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", a.xi.real(), a.xi.imag(), a.weight);
    out += buf;
  }
  return out;
}

EmpiricalMeasure measure_from_csv(std::string_view text) {
  auto fail = [](std::size_t line, const std::string& what) -> Error {
    return Error(ErrorCode::SyntaxError, "measure CSV line " + std::to_string(line) + ": " + what);
  };
  EmpiricalMeasure mu;
  std::size_t line_no = 0, pos = 0;
  bool header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header) {
      if (line != "re,im,weight") throw fail(line_no, "expected header 're,im,weight'");
      header = true;
      continue;
    }
    double v[3];
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
      const std::size_t comma = k < 2 ? line.find(',', start) : line.size();
      if (comma == std::string_view::npos) throw fail(line_no, "expected 3 columns");
      const char* b = line.data() + start;
      const char* e = line.data() + comma;
      auto [ptr, ec] = std::from_chars(b, e, v[k]);
      if (ec != std::errc() || ptr != e) throw fail(line_no, "malformed number");
      start = comma + 1;
    }
    const Complex xi{v[0], v[1]};
    if (!is_finite(xi) || std::abs(xi) > 1.0 + 1e-12) throw fail(line_no, "atom outside the closed disk");
    if (!(v[2] > 0.0) || !std::isfinite(v[2])) throw fail(line_no, "weight must be > 0");
    mu.atoms.push_back({xi, v[2]});
  }
  if (!header) throw fail(line_no, "missing header");
  mu.total = total_weight(mu.atoms);
  return mu;
}

}  // namespace compnorm
