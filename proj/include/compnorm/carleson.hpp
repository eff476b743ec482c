#pragma once

// Empirical induced measure mu_psi (push-forward of dm under the boundary
// trace), Carleson window masses and the window/Poisson tests on it.

#include <compnorm/mapspec.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace compnorm {

/// S(h, theta0) = {r e^{i t}: 1 - h <= r <= 1, |t - theta0| <= h}, angle distance mod 2pi.
struct CarlesonWindow {
  double h = 1.0;
  double theta0 = 0.0;
};

struct Atom {
  Complex xi;
  double weight = 0.0;
};

struct EmpiricalMeasure {
  std::vector<Atom> atoms;
  double total = 0.0;
};

/// Atoms psi(e^{i theta_j}) at n uniform angles, weight 1/n. n >= 256, a power of two.
EmpiricalMeasure induced_measure(const SelfMap& map, int n);

/// Same, at n angles drawn uniformly with a seeded mt19937_64 (stress testing).
EmpiricalMeasure induced_measure_random(const SelfMap& map, int n, std::uint64_t seed);

double window_mass(const EmpiricalMeasure& mu, const CarlesonWindow& window);

struct CarlesonProfile {
  std::vector<double> h;      // descending
  std::vector<double> ratio;  // sup over theta0 of mass / h
  std::vector<double> argmax;
};

/// For each h: max of window_mass/h over a uniform theta0 grid of n_theta
/// points and over all windows with an edge on an atom angle.
/// Throws ResolutionExceeded when min h < 8 * 2pi / n_atoms.
CarlesonProfile carleson_ratio_profile(const EmpiricalMeasure& mu, std::span<const double> h_grid, int n_theta = 720);

/// sum weight * (1 - |a|^2)/|1 - conj(a) xi|^2.
double poisson_of_measure(const EmpiricalMeasure& mu, Complex a);

/// nu_R: the atoms with |xi| >= R. total is the retained mass (not renormalized).
EmpiricalMeasure restrict_to_annulus(const EmpiricalMeasure& mu, double R);

/// CSV with header "re,im,weight".
std::string measure_to_csv(const EmpiricalMeasure& mu);
EmpiricalMeasure measure_from_csv(std::string_view text);

}  // namespace compnorm
