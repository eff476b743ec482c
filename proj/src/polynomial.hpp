#pragma once

#include <compnorm/mapspec.hpp>

#include <span>
#include <vector>

namespace compnorm::poly {

/// Horner evaluation of p and p'.
Jet horner(std::span<const Complex> p, Complex z);

Coeffs add(const Coeffs& a, const Coeffs& b);
Coeffs mul(const Coeffs& a, const Coeffs& b);
Coeffs scaled(Coeffs a, Complex s);
Coeffs power(const Coeffs& a, int n);

/// Drops leading coefficients below rel * max|coeff|. Keeps at least one.
void trim(Coeffs& p, double rel = 0.0);
int degree(const Coeffs& p);

/// All complex roots (companion matrix eigenvalues; closed form for degree <= 2).
std::vector<Complex> roots(const Coeffs& p);

/// Pairwise (cascade) summation; fixed order.
double pairwise_sum(std::span<const double> v);

}  // namespace compnorm::poly
