#include "support.hpp"

#include <compnorm/diskzeros.hpp>

#include <algorithm>

using namespace compnorm;
using testing::close;

namespace {

int total_multiplicity(const PreimageSet& p) {
  int n = 0;
  for (const auto& r : p.roots) n += r.multiplicity;
  return n;
}

}  // namespace

TEST_SUITE("diskzeros") {
  TEST_CASE("winding count examples") {
    CHECK(winding_count(SelfMap::parse("monomial(2)"), 0.25, DiskRegion{0.0, 0.9}) == 2);
    CHECK(winding_count(SelfMap::parse("mobius(0.5)"), 0.2, DiskRegion{0.0, 0.99}) == 1);
    CHECK(winding_count(SelfMap::parse("monomial(2)"), 0.0, DiskRegion{0.0, 0.1}) == 2);
    CHECK(winding_count(SelfMap::parse("monomial(2)"), 0.25, SquareRegion{{0.5, 0.0}, 0.1}) == 1);
    CHECK(winding_count(SelfMap::parse("monomial(2)"), 0.25, SectorRegion{0.4, 0.6, -0.5, 0.5}) == 1);
    CHECK(winding_count(SelfMap::parse("const(0.3)"), 0.7, DiskRegion{0.0, 0.9}) == 0);
  }

  TEST_CASE("regions must lie inside the disk") {
    CHECK_THROWS_AS(winding_count(SelfMap::parse("identity"), 0.0, DiskRegion{0.5, 0.6}), Error);
    try {
      winding_count(SelfMap::parse("identity"), 0.0, SquareRegion{0.0, 0.8});
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RegionOutsideDomain);
    }
  }

  TEST_CASE("root on the contour is reported") {
    try {
      winding_count(SelfMap::parse("identity"), 0.5, DiskRegion{0.0, 0.5});
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BoundaryRootSuspected);
    }
  }

  TEST_CASE("solve examples") {
    const PreimageSet sq = solve_preimages(SelfMap::parse("monomial(2)"), 0.25, 1e-12);
    REQUIRE(sq.roots.size() == 2);
    CHECK(sq.certified_total == 2);
    CHECK(((close(sq.roots[0].z, 0.5, 1e-12) && close(sq.roots[1].z, -0.5, 1e-12)) ||
           (close(sq.roots[0].z, -0.5, 1e-12) && close(sq.roots[1].z, 0.5, 1e-12))));

    const PreimageSet mob = solve_preimages(SelfMap::parse("mobius(0.5)"), 0.2, 1e-12);
    REQUIRE(mob.roots.size() == 1);
    CHECK(close(mob.roots[0].z, 1.0 / 3.0, 1e-12));

    const PreimageSet bl = solve_preimages(SelfMap::parse("blaschke(0, 0.5)"), 0.0, 1e-12);
    REQUIRE(bl.roots.size() == 2);
    CHECK(close(bl.roots[0].z, 0.0, 1e-12));
    CHECK(close(bl.roots[1].z, 0.5, 1e-12));
    CHECK(bl.roots[0].multiplicity == 1);
  }

  TEST_CASE("multiplicity of a double root") {
    const PreimageSet p = solve_preimages(SelfMap::parse("monomial(2)"), 0.0, 1e-12);
    REQUIRE(p.roots.size() == 1);
    CHECK(p.roots[0].multiplicity == 2);
    const PreimageSet q = solve_preimages(SelfMap::parse("monomial(3)"), 0.0, 1e-12, {SolveMethod::Subdivision});
    REQUIRE(q.roots.size() == 1);
    CHECK(q.roots[0].multiplicity == 3);
  }

  TEST_CASE("empty preimage and argument checks") {
    const PreimageSet p = solve_preimages(SelfMap::parse("scale(0.5, identity)"), 0.7, 1e-12);
    CHECK(p.roots.empty());
    CHECK(p.certified_total == 0);
    CHECK_THROWS_AS(solve_preimages(SelfMap::parse("identity"), 1.0, 1e-12), Error);
    CHECK_THROWS_AS(solve_preimages(SelfMap::parse("identity"), 0.1, 1e-3), Error);
  }

  TEST_CASE("companion totals match winding counts on random rational targets") {
    const auto maps = testing::rational_catalog();
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> pick(0, maps.size() - 1);
    const auto targets = testing::disk_points(200, 0.97, 18);
    for (Complex w : targets) {
      const SelfMap& m = maps[pick(rng)];
      if (std::abs(w - m.at_zero()) < 1e-6) continue;
      PreimageSet p;
      try {
        p = solve_preimages(m, w, 1e-12);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::InfiniteValue) continue;  // constant map hit exactly
        throw;
      }
      INFO(m.spec(), " w = ", w);
      CHECK(total_multiplicity(p) == p.certified_total);
      CHECK(p.certified_total == winding_count(m, w, DiskRegion{0.0, 1.0 - 1e-9}));
      for (const auto& r : p.roots) {
        CHECK(std::abs(r.z) < 1.0);
        CHECK(std::abs(eval_map(m, r.z) - w) <= p.residual_bound);
      }
      CHECK(p.residual_bound <= 1e-10);
    }
  }

  TEST_CASE("blaschke degree consistency") {
    const SelfMap m = SelfMap::parse("blaschke(0.1+0.2i, -0.5, 0.3-0.6i, 0.8i)");
    for (Complex w : testing::disk_points(50, 0.99, 19)) CHECK(total_multiplicity(solve_preimages(m, w, 1e-12)) == 4);
  }

  TEST_CASE("subdivision and companion agree") {
    for (const char* spec : {"monomial(3)", "blaschke(0, 0.5)", "halfplane", "compose(monomial(2), mobius(0.3+0.1i))"}) {
      const SelfMap m = SelfMap::parse(spec);
      for (Complex w : testing::disk_points(6, 0.8, 20)) {
        const PreimageSet a = solve_preimages(m, w, 1e-12, {SolveMethod::Companion});
        const PreimageSet b = solve_preimages(m, w, 1e-12, {SolveMethod::Subdivision});
        INFO(std::string(spec), " w = ", w);
        REQUIRE(a.roots.size() == b.roots.size());
        // Roots of equal modulus may come back in either order; match by distance.
        for (const auto& ra : a.roots) {
          const auto it = std::min_element(b.roots.begin(), b.roots.end(), [&](const Root& x, const Root& y) {
            return std::abs(x.z - ra.z) < std::abs(y.z - ra.z);
          });
          CHECK(close(it->z, ra.z, 1e-8));
          CHECK(it->multiplicity == ra.multiplicity);
        }
      }
    }
  }

  TEST_CASE("transcendental map via subdivision") {
    const SelfMap m = SelfMap::parse("atomic(1)");
    const Complex w{0.2, 0.1};
    const PreimageSet p = solve_preimages(m, w, 1e-12);
    CHECK(p.method == SolveMethod::Subdivision);
    CHECK(p.roots.size() >= 1);
    for (const auto& r : p.roots) CHECK(std::abs(eval_map(m, r.z) - w) <= 1e-10);
  }

  TEST_CASE("roots come back sorted by modulus") {
    const PreimageSet p = solve_preimages(SelfMap::parse("blaschke(0.9, -0.2, 0.5i)"), 0.1, 1e-12);
    for (std::size_t i = 1; i < p.roots.size(); ++i) CHECK(std::abs(p.roots[i - 1].z) <= std::abs(p.roots[i].z));
  }
}
