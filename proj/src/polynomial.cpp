#include "polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace compnorm::poly {

Jet horner(std::span<const Complex> p, Complex z) {
  Complex v{0.0, 0.0};
  Complex d{0.0, 0.0};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::max(a.size(), b.size()), Complex{});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, Complex{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Coeffs scaled(Coeffs a, Complex s) {
  for (auto& c : a) c *= s;
  return a;
}

Coeffs power(const Coeffs& a, int n) {
  Coeffs out{Complex{1.0, 0.0}};
  for (int i = 0; i < n; ++i) out = mul(out, a);
  return out;
}

void trim(Coeffs& p, double rel) {
  double mx = 0.0;
  for (const auto& c : p) mx = std::max(mx, std::abs(c));
  const double cut = rel * mx;
  while (p.size() > 1 && std::abs(p.back()) <= cut) p.pop_back();
}

int degree(const Coeffs& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != Complex{}) return i;
  return -1;
}

std::vector<Complex> roots(const Coeffs& p_in) {
  Coeffs p = p_in;
  trim(p);
  const int n = degree(p);
  if (n <= 0) return {};
  if (n == 1) return {-p[0] / p[1]};
  if (n == 2) {
    // Numerically stable quadratic formula.
    const Complex a = p[2], b = p[1], c = p[0];
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    const Complex q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
    if (q == Complex{}) return {Complex{}, Complex{}};
    return {q / a, c / q};
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[i] / p[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace compnorm::poly
