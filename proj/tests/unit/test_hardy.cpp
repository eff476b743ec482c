#include "support.hpp"

#include <compnorm/hardy.hpp>

using namespace compnorm;

TEST_SUITE("hardy") {
  TEST_CASE("power norms") {
    CHECK(h2_power_norm(SelfMap::parse("atomic(1)"), 0) == 1.0);
    for (int n : {1, 3, 7}) CHECK(std::abs(h2_power_norm(SelfMap::parse("monomial(2)"), n) - 1.0) < 1e-12);
    CHECK(std::abs(h2_power_norm(SelfMap::parse("const(0.3)"), 2) - 0.0081) < 1e-14);
    for (int n : {1, 2, 5}) CHECK(std::abs(h2_power_norm(SelfMap::parse("scale(0.5, identity)"), n) - std::pow(4.0, -n)) < 1e-14);
    CHECK_THROWS_AS(h2_power_norm(SelfMap::parse("identity"), -1), Error);
    for (const auto& e : catalog()) {
      const double v = h2_power_norm(SelfMap::parse(e.spec), 3);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
  }

  TEST_CASE("power sum tail") {
    const PowerNormTable s = power_sum_tail(SelfMap::parse("scale(0.5, identity)"), 4);
    CHECK(s.tail_kind == TailKind::Bounded);
    CHECK(std::abs(s.tail_bound - 0.0052083) < 1e-7);
    REQUIRE(s.norms_sq.size() == 4);
    CHECK(s.norms_sq[0] == 1.0);
    CHECK(power_sum_tail(SelfMap::parse("monomial(3)"), 4).tail_kind == TailKind::Divergent);
    const PowerNormTable c = power_sum_tail(SelfMap::parse("const(0.3)"), 2);
    CHECK(std::abs(c.tail_bound - 0.0089011) < 1e-7);
    CHECK(power_sum_tail(SelfMap::parse("halfplane"), 4).tail_kind == TailKind::Unknown);
    CHECK_THROWS_AS(power_sum_tail(SelfMap::parse("identity"), 0), Error);
    // Partial sum plus tail brackets the geometric total 4/3.
    CHECK(s.partial_sum + s.tail_bound == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  }

  TEST_CASE("boundary sup") {
    CHECK(boundary_sup(SelfMap::parse("scale(0.5, identity)")) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(boundary_sup(SelfMap::parse("const(0.3)")) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(boundary_sup(SelfMap::parse("monomial(2)")) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("transform examples") {
    CHECK(std::abs(poisson_transform(SelfMap::parse("identity"), {0.4, 0.5}) - 1.0) < 1e-8);
    CHECK(std::abs(poisson_transform(SelfMap::parse("const(0)"), {0.6, 0.0}) - 0.64) < 1e-12);
    for (double r : {0.2, 0.7, 0.95})
      CHECK(std::abs(poisson_transform(SelfMap::parse("halfplane"), r) - (1 + r)) < 1e-7 * (1 + r));
    CHECK_THROWS_AS(poisson_transform(SelfMap::parse("identity"), 1.0), Error);
  }

  TEST_CASE("inner maps fixing zero give one") {
    for (const char* spec : {"monomial(2)", "monomial(3)", "blaschke(0, 0.5)"})
      for (Complex a : {Complex{0.3}, Complex{0.0, -0.9}, Complex{0.99}, Complex{0.999}}) {
        INFO(spec, " a = ", a);
        CHECK(std::abs(poisson_transform(SelfMap::parse(spec), a) - 1.0) < 1e-8);
      }
  }

  TEST_CASE("series examples") {
    const SeriesTransform m = poisson_transform_series(SelfMap::parse("monomial(2)"), 0.5, 64);
    CHECK(std::abs(m.value - 1.0) < 1e-10);
    const SeriesTransform c = poisson_transform_series(SelfMap::parse("const(0)"), 0.5, 1);
    CHECK(c.value == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(std::abs(poisson_transform_series(SelfMap::parse("identity"), 0.5, 64).value - 1.0) < 1e-10);
    try {
      poisson_transform_series(SelfMap::parse("identity"), 0.9, 4);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TruncationTooLoose);
    }
  }

  TEST_CASE("series agrees with quadrature") {
    for (const auto& e : catalog()) {
      const SelfMap m = SelfMap::parse(e.spec);
      for (Complex a : {Complex{0.3}, Complex{0.0, 0.6}, Complex{0.8}, Complex{0.95}}) {
        const double q = poisson_transform(m, a);
        double s = 0.0;
        for (int n = 64;; n *= 2) {
          try {
            s = poisson_transform_series(m, a, n).value;
            break;
          } catch (const Error& err) {
            REQUIRE(err.code() == ErrorCode::TruncationTooLoose);
            REQUIRE(n < 8192);
          }
        }
        INFO(e.spec, " a = ", a);
        CHECK(std::abs(s - q) < 1e-7);
      }
    }
  }

  TEST_CASE("littlewood paley examples") {
    const IdentityCheck c = littlewood_paley_check(SelfMap::parse("const(0.3)"), 0.5);
    CHECK(c.rhs == doctest::Approx(1.0380623).epsilon(1e-7));
    CHECK(c.abs_err < 1e-12);
    CHECK(littlewood_paley_check(SelfMap::parse("monomial(2)"), 0.5).rel_err < 1e-6);
    const IdentityCheck id = littlewood_paley_check(SelfMap::parse("identity"), 0.7);
    CHECK(std::abs(id.rhs - 1.0) < 1e-6);
  }

  TEST_CASE("littlewood paley holds for rational maps") {
    for (const auto& m : testing::rational_catalog())
      for (Complex a : {Complex{0.5}, Complex{-0.3, 0.4}, Complex{0.0, 0.9}}) {
        INFO(m.spec(), " a = ", a);
        CHECK(littlewood_paley_check(m, a).rel_err < 1e-6);
      }
  }

  TEST_CASE("change of variables examples") {
    const IdentityCheck id = change_of_variables_check(SelfMap::parse("identity"), 0.5);
    CHECK(id.abs_err < 1e-6);
    CHECK(change_of_variables_check(SelfMap::parse("monomial(2)"), 0.5).abs_err < 1e-4);
    const IdentityCheck b = change_of_variables_check(SelfMap::parse("blaschke(0, 0.5)"), {0.3, 0.2});
    CHECK(b.abs_err < std::max(1e-4, 1e-3 * b.lhs));
    CHECK_THROWS_AS(change_of_variables_check(SelfMap::parse("identity"), 0.0), Error);
  }

  TEST_CASE("compactness chain for a strict contraction") {
    const SelfMap m = SelfMap::parse("scale(0.5, identity)");
    for (double r : {0.0, 0.5, 0.9, 0.99, 0.999}) {
      const CompactnessChain c = compactness_chain(m, r, 8);
      INFO("r = ", r);
      CHECK(c.holds);
      CHECK(c.sqrt_transform <= c.head + c.sqrt_tail + 1e-12);
    }
    // Near the boundary the head term shrinks like sqrt(1-|a|^2).
    CHECK(compactness_chain(m, 0.999, 8).head < compactness_chain(m, 0.9, 8).head);
  }
}
