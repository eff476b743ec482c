#include "support.hpp"

#include <compnorm/mapspec.hpp>

using namespace compnorm;
using testing::close;
using testing::kPi;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

MapPtr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 3 ? 6 : 9);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  auto c = [&] { return Complex{u(rng), u(rng)}; };
  switch (pick(rng)) {
    case 0: return make_identity();
    case 1: return make_const(c());
    case 2: return make_monomial(1 + static_cast<int>(rng() % 4));
    case 3: return make_mobius(c());
    case 4: return make_blaschke({c(), c()});
    case 5: return make_halfplane();
    case 6: return make_atomic(0.5 + std::abs(u(rng)));
    case 7: return make_scale(0.25 + std::abs(u(rng)), random_tree(rng, depth + 1));
    default: return make_compose(random_tree(rng, depth + 1), random_tree(rng, depth + 1));
  }
}

}  // namespace

TEST_SUITE("mapspec") {
  TEST_CASE("parse examples") {
    CHECK(*parse_map("identity") == *make_identity());
    CHECK(*parse_map("mobius(0.5)") == *make_mobius(0.5));
    CHECK(*parse_map("compose(monomial(2), mobius(0.3+0.1i))") ==
          *make_compose(make_monomial(2), make_mobius({0.3, 0.1})));
    CHECK(*parse_map("  blaschke( 0 , 0.5-0.25i )") == *make_blaschke({0.0, {0.5, -0.25}}));
    CHECK(*parse_map("const(0.3i)") == *make_const({0.0, 0.3}));
    CHECK(*parse_map("rational(0, 1; 2, 0.5)") == *make_rational({0.0, 1.0}, {2.0, 0.5}));
  }

  TEST_CASE("syntax errors carry a position") {
    try {
      parse_map("mobius(0.5");
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SyntaxError);
      CHECK(std::string(e.what()).find("position 10") != std::string::npos);
    }
    CHECK(code_of([] { parse_map("unknown(1)"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { parse_map(""); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { parse_map("identity extra"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { parse_map(std::string(5000, ' ') + "identity"); }) == ErrorCode::SyntaxError);
  }

  TEST_CASE("domain errors") {
    CHECK(code_of([] { parse_map("mobius(1.2)"); }) == ErrorCode::DomainError);
    CHECK(code_of([] { parse_map("blaschke(0, 1)"); }) == ErrorCode::DomainError);
    CHECK(code_of([] { parse_map("scale(1.5, identity)"); }) == ErrorCode::DomainError);
    CHECK(code_of([] { parse_map("scale(0, identity)"); }) == ErrorCode::DomainError);
    CHECK(code_of([] { parse_map("const(1)"); }) == ErrorCode::DomainError);
    CHECK(code_of([] { parse_map("atomic(0)"); }) == ErrorCode::DomainError);
    CHECK(code_of([] { parse_map("monomial(0)"); }) == ErrorCode::DomainError);
    CHECK(code_of([] { parse_map("rational(1; 0.5, 1)"); }) == ErrorCode::DomainError);
  }

  TEST_CASE("tree depth limit") {
    std::string s = "identity";
    for (int i = 0; i < 40; ++i) s = "compose(identity, " + s + ")";
    CHECK(code_of([&] { parse_map(s); }) == ErrorCode::DomainError);
  }

  TEST_CASE("self-map validation") {
    const ValidationReport half = validate_self_map(SelfMap::parse("scale(0.5, identity)"), 256);
    CHECK(half.accepted);
    CHECK(half.max_modulus == doctest::Approx(0.5).epsilon(1e-12));
    const ValidationReport p = validate_self_map(SelfMap::parse("poly(0, 0.5, 0.5)"), 256);
    CHECK(p.accepted);
    CHECK(p.max_modulus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(code_of([] { SelfMap::parse("poly(0, 2)"); }) == ErrorCode::NotSelfMap);
    CHECK(code_of([] { SelfMap::parse("rational(0, 1.5; 1, 0.1)"); }) == ErrorCode::NotSelfMap);
  }

  TEST_CASE("evaluation examples") {
    CHECK(close(eval_map(SelfMap::parse("mobius(0.5)"), 0.0), 0.5, 1e-15));
    CHECK(close(eval_map(SelfMap::parse("monomial(2)"), {0.0, 0.3}), -0.09, 1e-15));
    CHECK(close(eval_map(SelfMap::parse("halfplane"), 0.0), 0.5, 1e-15));
    CHECK(close(map_derivative(SelfMap::parse("identity"), {0.2, 0.4}), 1.0, 1e-15));
    CHECK(close(map_derivative(SelfMap::parse("monomial(2)"), 0.4), 0.8, 1e-15));
    CHECK(close(map_derivative(SelfMap::parse("mobius(0.5)"), 0.0), -0.75, 1e-15));
    CHECK(code_of([] { eval_map(SelfMap::parse("identity"), 1.0); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("boundary values") {
    CHECK(close(boundary_value(SelfMap::parse("identity"), kPi), -1.0, 1e-15));
    CHECK(std::abs(boundary_value(SelfMap::parse("blaschke(0, 0.5)"), kPi / 3)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(close(boundary_value(SelfMap::parse("const(0.3)"), 2.0), 0.3, 1e-15));
    CHECK(code_of([] { boundary_value(SelfMap::parse("atomic(1)"), 0.0); }) == ErrorCode::SingularBoundaryPoint);
    for (const auto& e : catalog()) {
      if (!e.inner) continue;
      const SelfMap m = SelfMap::parse(e.spec);
      for (double th : {0.3, 1.7, 3.0, 5.5}) CHECK(std::abs(std::abs(boundary_value(m, th)) - 1.0) < 1e-10);
    }
  }

  TEST_CASE("flags") {
    CHECK(SelfMap::parse("blaschke(0, 0.5)").is_inner());
    CHECK(SelfMap::parse("compose(monomial(2), mobius(0.3))").is_inner());
    CHECK_FALSE(SelfMap::parse("halfplane").is_inner());
    CHECK_FALSE(SelfMap::parse("scale(0.5, identity)").is_inner());
    CHECK(SelfMap::parse("monomial(3)").fixes_zero());
    CHECK_FALSE(SelfMap::parse("atomic(1)").fixes_zero());
    CHECK(SelfMap::parse("halfplane").rational_form().has_value());
    CHECK_FALSE(SelfMap::parse("atomic(1)").rational_form().has_value());
  }

  TEST_CASE("interior images stay inside the disk") {
    const auto pts = testing::disk_points(1000, 0.999, 11);
    for (const auto& e : catalog()) {
      const SelfMap m = SelfMap::parse(e.spec);
      for (Complex z : pts) REQUIRE(std::abs(eval_map(m, z)) < 1.0);
    }
  }

  TEST_CASE("derivative matches central differences") {
    const double h = 1e-5;
    const auto pts = testing::disk_points(50, 0.9, 12);
    for (const auto& e : catalog()) {
      const SelfMap m = SelfMap::parse(e.spec);
      for (Complex z : pts) {
        const Complex fd = (eval_map(m, z + h) - eval_map(m, z - h)) / (2.0 * h);
        const Complex d = map_derivative(m, z);
        INFO(e.spec, " at ", z);
        CHECK(std::abs(fd - d) <= 1e-6 * std::max(1.0, std::abs(d)));
      }
    }
  }

  TEST_CASE("rational form agrees with the tree") {
    const auto pts = testing::disk_points(64, 0.95, 13);
    for (const auto& m : testing::rational_catalog()) {
      const auto& rf = *m.rational_form();
      for (Complex z : pts) {
        Complex n{}, d{};
        for (std::size_t k = rf.num.size(); k-- > 0;) n = n * z + rf.num[k];
        for (std::size_t k = rf.den.size(); k-- > 0;) d = d * z + rf.den[k];
        CHECK(std::abs(n / d - eval_map(m, z)) < 1e-12);
      }
    }
  }

  TEST_CASE("printer round trip on random trees") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
      const MapPtr t = random_tree(rng, 0);
      const std::string s = print_map(*t);
      INFO(s);
      CHECK(*parse_map(s) == *t);
      CHECK(print_map(*parse_map(s)) == s);
    }
  }

  TEST_CASE("compose is associative") {
    const auto f = make_mobius({0.2, -0.4});
    const auto g = make_blaschke({0.1, {0.3, 0.3}});
    const auto h = make_halfplane();
    const SelfMap left = SelfMap::from_expr(make_compose(f, make_compose(g, h)));
    const SelfMap right = SelfMap::from_expr(make_compose(make_compose(f, g), h));
    for (Complex z : testing::disk_points(200, 0.99, 14)) CHECK(std::abs(eval_map(left, z) - eval_map(right, z)) < 1e-13);
  }

  TEST_CASE("taylor coefficients") {
    const TaylorSeries id = taylor_coefficients(SelfMap::parse("identity"), 3);
    REQUIRE(id.coeffs.size() == 4);
    CHECK(close(id.coeffs[0], 0.0, 1e-12));
    CHECK(close(id.coeffs[1], 1.0, 1e-12));
    CHECK(close(id.coeffs[3], 0.0, 1e-12));
    const TaylorSeries c = taylor_coefficients(SelfMap::parse("const(0.3)"), 2);
    CHECK(close(c.coeffs[0], 0.3, 1e-12));
    const Complex a{0.4, -0.3};
    const TaylorSeries mob = taylor_coefficients(SelfMap::from_expr(make_mobius(a)), 20);
    CHECK(close(mob.coeffs[0], a, 1e-10));
    for (int n = 1; n <= 20; ++n) {
      const Complex expected = -(1.0 - std::norm(a)) * std::pow(std::conj(a), n - 1);
      CHECK(close(mob.coeffs[n], expected, 1e-10));
    }
    for (const auto& e : catalog()) {
      const TaylorSeries t = taylor_coefficients(SelfMap::parse(e.spec), 16);
      CHECK(t.trunc_error_bound >= 0.0);
      for (Complex k : t.coeffs) CHECK(std::abs(k) <= 1.0 + 1e-9);
    }
    CHECK(code_of([] { taylor_coefficients(SelfMap::parse("identity"), 0); }) == ErrorCode::InvalidArgument);
  }
}
