#include <doctest.h>

#include <cmath>
#include <numbers>

#include "yinset/booleans.hpp"
#include "yinset/shapes.hpp"
#include "yinset/verify.hpp"

using namespace yinset;

namespace {

const Tolerance tol{1e-9};
constexpr double kPi = std::numbers::pi;

GElement sphereEl(const Vec3& c, double r, Rng& rng, int level = 3) {
  return shapes::solid(shapes::icosphere(c, r, level), rng, tol);
}

double sphereMeshVolume(double r, int level = 3) {
  return shapes::icosphere(Vec3::Zero(), r, level).signedVolume();
}

}  // namespace

TEST_CASE("sentinel arithmetic") {
  Rng rng(1);
  GElement s = sphereEl(Vec3::Zero(), 1.0, rng);
  CHECK(meet(GElement::bottom(), s, rng, tol).isBottom());
  CHECK(meet(GElement::top(), s, rng, tol).isShape());
  CHECK(join(GElement::bottom(), s, rng, tol).isShape());
  CHECK(complement(GElement::bottom(), rng, tol).isTop());
  CHECK(complement(GElement::top(), rng, tol).isBottom());
  CHECK(difference(s, GElement::top(), rng, tol).isBottom());
}

TEST_CASE("complement of a ball is the unbounded atom with one hole") {
  Rng rng(2);
  GElement s = sphereEl(Vec3(0.5, 0, 0), 1.0, rng);
  GElement c = complement(s, rng, tol);
  REQUIRE(c.isShape());
  REQUIRE(c.shape.atoms.size() == 1);
  CHECK(!c.shape.atoms[0].positive.has_value());
  CHECK(c.shape.atoms[0].negatives.size() == 1);
  CHECK_THROWS_AS(meshVolume(c), InfiniteVolumeError);
}

TEST_CASE("complement is an involution") {
  Rng rng(3);
  GElement s = sphereEl(Vec3(1, 2, 3), 1.5, rng);
  GElement cc = complement(complement(s, rng, tol), rng, tol);
  REQUIRE(cc.isShape());
  REQUIRE(cc.shape.atoms.size() == 1);
  CHECK(cc.shape.atoms[0].positive.has_value());
  CHECK(meshVolume(cc) == doctest::Approx(meshVolume(s)).epsilon(1e-12));
  CHECK(hausdorffBoundary(s, cc, rng, 500) < 2 * tol.eps);
}

TEST_CASE("meet of disjoint balls is empty; their join has two atoms") {
  Rng rng(4);
  GElement a = sphereEl(Vec3(0, 0, 0), 1.0, rng, 2);
  GElement b = sphereEl(Vec3(4, 0, 0), 1.0, rng, 2);
  CHECK(meet(a, b, rng, tol).isBottom());
  GElement u = join(a, b, rng, tol);
  REQUIRE(u.isShape());
  CHECK(u.shape.atoms.size() == 2);
  CHECK(meshVolume(u) ==
        doctest::Approx(meshVolume(a) + meshVolume(b)).epsilon(1e-9));
}

TEST_CASE("meet of crossing balls is the lens") {
  Rng rng(5);
  GElement a = sphereEl(Vec3(-0.5, 0, 0), 1.0, rng);
  GElement b = sphereEl(Vec3(0.5, 0, 0), 1.0, rng);
  GElement lens = meet(a, b, rng, tol);
  REQUIRE(lens.isShape());
  REQUIRE(lens.shape.atoms.size() == 1);
  CHECK(lens.shape.atoms[0].positive.has_value());
  CHECK(lens.shape.atoms[0].negatives.empty());
  // Analytic: pi (4R + d)(2R - d)^2 / 12 with R = 1, d = 1.
  CHECK(meshVolume(lens) == doctest::Approx(5 * kPi / 12).epsilon(0.02));

  OracleReport rep = pointwiseLawCheck(lens, a, b, LawOp::Meet, 4000, rng, tol);
  CHECK(rep.agreementRate() >= 0.999);
}

TEST_CASE("join of crossing balls by inclusion-exclusion") {
  Rng rng(6);
  GElement a = sphereEl(Vec3(-0.5, 0, 0), 1.0, rng);
  GElement b = sphereEl(Vec3(0.5, 0, 0), 1.0, rng);
  GElement u = join(a, b, rng, tol);
  GElement m = meet(a, b, rng, tol);
  REQUIRE(u.isShape());
  CHECK(u.shape.atoms.size() == 1);
  CHECK(meshVolume(u) + meshVolume(m) ==
        doctest::Approx(meshVolume(a) + meshVolume(b)).epsilon(1e-6));
  OracleReport rep = pointwiseLawCheck(u, a, b, LawOp::Join, 4000, rng, tol);
  CHECK(rep.agreementRate() >= 0.999);
}

TEST_CASE("meet is idempotent on coincident boundaries") {
  Rng rng(7);
  GElement a = sphereEl(Vec3(0.1, -0.2, 0.3), 0.9, rng, 2);
  GElement m = meet(a, a, rng, tol);
  REQUIRE(m.isShape());
  CHECK(meshVolume(m) == doctest::Approx(meshVolume(a)).epsilon(1e-9));
}

TEST_CASE("meet with the complement empties the shape") {
  Rng rng(8);
  GElement a = sphereEl(Vec3::Zero(), 1.0, rng, 2);
  GElement c = complement(a, rng, tol);
  CHECK(meet(a, c, rng, tol).isBottom());
}

TEST_CASE("difference carves a cap out of a ball") {
  Rng rng(9);
  GElement a = sphereEl(Vec3(-0.5, 0, 0), 1.0, rng);
  GElement b = sphereEl(Vec3(0.5, 0, 0), 1.0, rng);
  GElement d = difference(a, b, rng, tol);
  GElement m = meet(a, b, rng, tol);
  REQUIRE(d.isShape());
  CHECK(meshVolume(d) + meshVolume(m) ==
        doctest::Approx(meshVolume(a)).epsilon(1e-6));
  OracleReport rep =
      pointwiseLawCheck(d, a, b, LawOp::Difference, 4000, rng, tol);
  CHECK(rep.agreementRate() >= 0.999);
}

TEST_CASE("inclusion-exclusion is near-exact on crossing boxes") {
  Rng rng(10);
  GElement a = shapes::solid(shapes::box(Vec3(0, 0, 0), Vec3(1, 1, 1)), rng, tol);
  GElement b = shapes::solid(
      shapes::box(Vec3(0.5, 0.25, 0.25), Vec3(1.5, 0.75, 0.75)), rng, tol);
  GElement m = meet(a, b, rng, tol);
  GElement u = join(a, b, rng, tol);
  REQUIRE(m.isShape());
  REQUIRE(u.isShape());
  double vm = meshVolume(m), vu = meshVolume(u);
  CHECK(vm == doctest::Approx(0.5 * 0.5 * 0.5).epsilon(1e-9));
  CHECK(vu + vm == doctest::Approx(1.0 + 0.25).epsilon(1e-9));
}

TEST_CASE("meet of a ball with a shell keeps the cavity") {
  Rng rng(11);
  GElement shell = shapes::shell(Vec3::Zero(), 1.0, 0.5, 3, rng, tol);
  GElement ball = sphereEl(Vec3(0.9, 0, 0), 0.6, rng);
  GElement m = meet(shell, ball, rng, tol);
  REQUIRE(m.isShape());
  OracleReport rep =
      pointwiseLawCheck(m, shell, ball, LawOp::Meet, 4000, rng, tol);
  CHECK(rep.agreementRate() >= 0.999);
}
