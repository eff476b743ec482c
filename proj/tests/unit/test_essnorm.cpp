#include "support.hpp"

#include <compnorm/essnorm.hpp>

using namespace compnorm;

TEST_SUITE("essnorm") {
  TEST_CASE("integral profile examples") {
    const double radii[] = {0.5, 0.75, 0.9};
    const RadialProfile m2 = integral_profile(SelfMap::parse("monomial(2)"), radii);
    for (double v : m2.values) CHECK(std::abs(v - 1.0) < 1e-8);
    const RadialProfile c0 = integral_profile(SelfMap::parse("const(0)"), radii);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(c0.values[i] - (1 - radii[i] * radii[i])) < 1e-9);
    const RadialProfile hp = integral_profile(SelfMap::parse("halfplane"), radii);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(hp.values[i] - (1 + radii[i])) < 1e-6);
      CHECK(std::abs(hp.argmax_angles[i]) < 1e-3);
    }
  }

  TEST_CASE("integral profile is monotone for constants and scalings") {
    const std::vector<double> radii = default_schedule(8);
    for (const char* spec : {"const(0)", "const(0.3)", "scale(0.5, identity)"}) {
      const RadialProfile p = integral_profile(SelfMap::parse(spec), radii);
      for (std::size_t i = 1; i < p.values.size(); ++i) CHECK(p.values[i] <= p.values[i - 1]);
    }
  }

  TEST_CASE("identity check examples") {
    const IdentitySides m2 = identity_check(SelfMap::parse("monomial(2)"), 0.999);
    CHECK(std::abs(m2.counting_side - (-std::log(0.999) / 0.001)) < 1e-6);
    CHECK(std::abs(m2.integral_side - 1.0) < 1e-8);
    CHECK(m2.gap <= 1e-2);
    const IdentitySides hp = identity_check(SelfMap::parse("halfplane"), 0.999);
    CHECK(std::abs(hp.counting_side - 2.0) < 1e-2);
    CHECK(std::abs(hp.integral_side - 2.0) < 1e-2);
    // At r = 0.9 the counting side vanishes; the integral side is the closed form at real a.
    const IdentitySides sc = identity_check(SelfMap::parse("scale(0.5, identity)"), 0.9);
    CHECK(sc.counting_side == 0.0);
    CHECK(std::abs(sc.integral_side - 0.19 / (1 - 0.81 / 4)) < 1e-8);
    CHECK(sc.gap == doctest::Approx(sc.integral_side).epsilon(1e-15));
    CHECK_THROWS_AS(identity_check(SelfMap::parse("identity"), 1.0), Error);
  }

  TEST_CASE("schedule") {
    const auto s = default_schedule();
    REQUIRE(s.size() == 10);
    CHECK(s.front() == 0.5);
    CHECK(s.back() == 1.0 - std::ldexp(1.0, -10));
    CHECK_THROWS_AS(default_schedule(2), Error);
    CHECK_THROWS_AS(default_schedule(15), Error);
  }

  TEST_CASE("classification rules") {
    CHECK(classify({0.5, 0.04, 0.03, 0.02}, {0.5, 0.04, 0.03, 0.03}) == Verdict::CompactConsistent);
    CHECK(classify({0.5, 0.04, 0.05, 0.02}, {0.5, 0.04, 0.03, 0.03}) == Verdict::Inconclusive);
    CHECK(classify({0.03, 0.02, 0.03}, {0.01, 0.01, 0.01}) == Verdict::Inconclusive);
    CHECK(classify({1.0, 1.0, 1.0}, {1.0, 0.95, 1.0}) == Verdict::NonCompactConsistent);
    CHECK(classify({1.0, 0.8, 1.0}, {1.0, 1.0, 1.0}) == Verdict::Inconclusive);
    CHECK(classify({0.55, 0.5, 0.52}, {2.0, 2.0, 2.0}) == Verdict::NonCompactConsistent);
    CHECK(classify({0.6, 0.5, 0.55}, {2.0, 2.0, 2.0}) == Verdict::Inconclusive);
    CHECK(classify({0.4, 0.4, 0.4}, {2.0, 2.0, 2.0}) == Verdict::Inconclusive);
    CHECK(classify({1.0, 1.0}, {1.0, 1.0}) == Verdict::Inconclusive);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK(classify({1.0, nan, 1.0}, {1.0, 1.0, 1.0}) == Verdict::Inconclusive);
  }

  TEST_CASE("verdict names round trip") {
    for (Verdict v : {Verdict::CompactConsistent, Verdict::NonCompactConsistent, Verdict::Inconclusive})
      CHECK(verdict_from_string(to_string(v)) == v);
    CHECK_THROWS_AS(verdict_from_string("Compact"), Error);
  }

  TEST_CASE("report on a short schedule") {
    // The integral side (1-r^2)/(1-r^2/4) first drops below 0.05 at k = 6, so three compact radii need kmax = 8.
    EssNormConfig cfg;
    cfg.radii = default_schedule(8);
    const EssNormReport r = essential_norm_report(SelfMap::parse("scale(0.5, identity)"), cfg);
    CHECK(r.verdict == Verdict::CompactConsistent);
    CHECK(r.essnorm_sq_estimate == r.integral.back());
    CHECK(r.beta_proxy == *std::max_element(r.counting.begin(), r.counting.end()));
    CHECK(r.gap == std::abs(r.counting.back() - r.integral.back()));
    CHECK_FALSE(r.has_flags());
    CHECK_FALSE(r.carleson.has_value());
    for (double v : r.counting) CHECK(v >= 0.0);
    for (double v : r.integral) CHECK(v >= 0.0);
  }

  TEST_CASE("inner maps fixing zero are non compact") {
    EssNormConfig cfg;
    cfg.radii = default_schedule(6);
    const EssNormReport r = essential_norm_report(SelfMap::parse("monomial(2)"), cfg);
    CHECK(r.verdict == Verdict::NonCompactConsistent);
    for (double v : r.integral) CHECK(std::abs(v - 1.0) < 1e-8);
  }

  TEST_CASE("carleson summary is attached on request") {
    EssNormConfig cfg;
    cfg.radii = default_schedule(4);
    cfg.carleson = true;
    cfg.carleson_atoms = 2048;
    cfg.carleson_h = {0.5, 0.25, 0.1, 0.05};
    const EssNormReport r = essential_norm_report(SelfMap::parse("const(0.3)"), cfg);
    REQUIRE(r.carleson.has_value());
    CHECK(r.carleson->ratio.size() == 4);
    for (double v : r.carleson->ratio) CHECK(v == 0.0);
  }

  TEST_CASE("reports are deterministic across thread counts") {
    EssNormConfig a, b;
    a.radii = b.radii = default_schedule(5);
    a.threads = 1;
    b.threads = 4;
    const SelfMap m = SelfMap::parse("compose(monomial(2), mobius(0.3+0.1i))");
    const EssNormReport ra = essential_norm_report(m, a), rb = essential_norm_report(m, b);
    CHECK(ra.counting == rb.counting);
    CHECK(ra.integral == rb.integral);
  }
}
