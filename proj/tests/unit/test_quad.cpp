#include "support.hpp"

#include <compnorm/quad.hpp>

using namespace compnorm;
using testing::kPi;

TEST_SUITE("quad") {
  TEST_CASE("circle examples") {
    CHECK(circle_integral([](double) { return 1.0; }).value == doctest::Approx(1.0).epsilon(1e-15));
    const QuadResult p = circle_integral([](double t) { return (1 - 0.81) / std::norm(1.0 - 0.9 * std::polar(1.0, t)); });
    CHECK(p.converged);
    CHECK(std::abs(p.value - 1.0) < 1e-8);
    const double v = circle_integral([](double t) { return 1.0 / std::norm(1.0 - 0.5 * std::polar(1.0, t)); }).value;
    CHECK(std::abs(v - 4.0 / 3.0) < 1e-9);
  }

  TEST_CASE("poisson kernels have unit mean") {
    for (Refinement ref : {Refinement::Doubling, Refinement::AdaptiveBisection})
      for (Complex a : {Complex{0.3, 0.1}, Complex{-0.9}, Complex{0.0, 0.99}, Complex{0.7, -0.7}}) {
        QuadConfig cfg;
        cfg.refinement = ref;
        const QuadResult q =
            circle_integral([&](double t) { return (1 - std::norm(a)) / std::norm(1.0 - std::conj(a) * std::polar(1.0, t)); }, cfg);
        CHECK(q.converged);
        CHECK(std::abs(q.value - 1.0) <= std::max(cfg.abs_tol, cfg.rel_tol) * 10);
      }
  }

  TEST_CASE("node budget exhaustion is reported") {
    QuadConfig cfg;
    cfg.max_nodes = 512;
    const QuadResult q = circle_integral([](double t) { return 1e-4 / (1e-8 + std::pow(std::sin(t / 2), 2)); }, cfg);
    CHECK_FALSE(q.converged);
  }

  TEST_CASE("config validation") {
    QuadConfig cfg;
    cfg.abs_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.max_nodes = 32;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.max_nodes = (1L << 20) + 1;
    CHECK_THROWS_AS(cfg.validate(), Error);
  }

  TEST_CASE("disk examples") {
    CHECK(disk_integral([](Complex) { return 1.0; }).value == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(disk_integral([](Complex z) { return std::norm(z); }).value == doctest::Approx(0.5).epsilon(1e-13));
    for (int k = 0; k <= 6; ++k) {
      const double v = disk_integral([&](Complex z) { return std::pow(std::abs(z), 2 * k); }).value;
      CHECK(std::abs(v - 1.0 / (k + 1)) < 1e-10);
    }
    // Logarithmic weight: int log(1/|z|) dA = 1/2.
    const double lg = disk_integral([](Complex z) { return z == Complex{} ? 0.0 : -std::log(std::abs(z)); }).value;
    CHECK(std::abs(lg - 0.5) < 1e-9);
  }

  TEST_CASE("log series") {
    CHECK(log_series_value(0.0).closed_form == 0.5);
    CHECK(log_series_value(0.0).partial_sum == 0.5);
    CHECK(std::abs(log_series_value(0.9).closed_form - 0.2463635) < 1e-6);
    double prev = 1.0;
    for (int k = 1; k <= 19; ++k) {
      const LogSeriesValue v = log_series_value(0.05 * k);
      CHECK(std::abs(v.closed_form - v.partial_sum) < 1e-12);
      CHECK(v.closed_form < prev);
      prev = v.closed_form;
    }
    CHECK(log_series_value(0.999).closed_form < log_series_value(0.99).closed_form);
    CHECK_THROWS_AS(log_series_value(1.0), Error);
    CHECK_THROWS_AS(log_series_value(-0.1), Error);
  }

  TEST_CASE("series sum branches meet") {
    // Series branch below 0.1, closed form above; both should agree near the switch.
    const double below = log_series_sum(0.1 - 1e-12), above = log_series_sum(0.1);
    CHECK(std::abs(below - above) < 1e-12);
  }

  TEST_CASE("mobius energy") {
    for (Complex a : {Complex{0.0}, Complex{0.3}, Complex{0.6, 0.2}, Complex{0.9}}) {
      const MoebiusEnergy e = moebius_energy(a);
      CHECK(std::abs(e.quadrature - e.closed_form) < 1e-6);
    }
    CHECK(moebius_energy(0.0).closed_form == 0.5);
    CHECK(std::abs(moebius_energy(0.9).closed_form - 0.1431909) < 1e-6);
    CHECK(moebius_energy(0.99).closed_form < moebius_energy(0.9).closed_form);
  }

  TEST_CASE("deterministic results") {
    auto f = [](double t) { return std::exp(std::cos(3 * t)) / (1.1 - std::cos(t)); };
    CHECK(circle_integral(f).value == circle_integral(f).value);
    auto g = [](Complex z) { return std::norm(z) / std::norm(1.0 - 0.8 * z); };
    CHECK(disk_integral(g).value == disk_integral(g).value);
    (void)kPi;
  }
}
