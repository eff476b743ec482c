#pragma once

#include <compnorm/catalog.hpp>
#include <compnorm/mapspec.hpp>

#include <doctest.h>

#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace testing {

using compnorm::Complex;

inline constexpr double kPi = std::numbers::pi;

inline std::vector<compnorm::SelfMap> rational_catalog() {
  std::vector<compnorm::SelfMap> out;
  for (const auto& e : compnorm::catalog())
    if (e.rational) out.push_back(compnorm::SelfMap::parse(e.spec));
  return out;
}

// Uniform points in the disk of radius r_max (fixed seed per call site).
inline std::vector<Complex> disk_points(int n, double r_max, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(std::polar(r_max * std::sqrt(u(rng)), 2.0 * kPi * u(rng)));
  return out;
}

inline bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace testing
