#include <doctest.h>

#include <cmath>
#include <numbers>

#include "yinset/pasting.hpp"
#include "yinset/shapes.hpp"

using namespace yinset;

namespace {
const Tolerance tol{1e-9};
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("directed angle against hand-computed wedges") {
  Vec3 nA(0, 0, 1);
  Vec3 rp(1, 0, 0);

  // Orthogonal mate, rp on the positive side of nA x nB.
  Vec3 nB(0, -1, 0);
  CHECK(nA.cross(nB).dot(rp) > 0);
  CHECK(directedAngle(nA, nB, rp, tol) == doctest::Approx(kPi / 2).epsilon(1e-12));
  // Same mate seen across the reversed edge direction.
  CHECK(directedAngle(nA, nB, -rp, tol) ==
        doctest::Approx(3 * kPi / 2).epsilon(1e-12));

  // Smooth continuation: straight angle.
  CHECK(directedAngle(nA, nA, rp, tol) == doctest::Approx(kPi).epsilon(1e-12));

  // A 30-degree tilt, resolved to pi -/+ alpha by the side.
  double a = kPi / 6;
  Vec3 nC(0, std::sin(a), std::cos(a));
  double th = directedAngle(nA, nC, rp, tol);
  double expected = nA.cross(nC).dot(rp) > 0 ? kPi - a : kPi + a;
  CHECK(th == doctest::Approx(expected).epsilon(1e-12));

  // Fold-back is ill-posed.
  CHECK_THROWS_AS(directedAngle(nA, -nA, rp, tol), FoldBackError);
}

TEST_CASE("mate selection takes the smallest wedge and flags ties") {
  Vec3 nA(0, 0, 1);
  Vec3 rp(1, 0, 0);
  auto tilt = [](double a) { return Vec3(0, std::sin(a), std::cos(a)); };
  // Angles pi - 0.9, pi - 0.3 (choose signs so both land below pi).
  std::vector<Vec3> cands;
  for (double a : {0.9, 0.3}) {
    Vec3 n = tilt(a);
    if (nA.cross(n).dot(rp) < 0) n = tilt(-a);
    cands.push_back(n);
  }
  CHECK(selectMate(nA, rp, cands, tol) == 0);

  std::vector<Vec3> tied = {cands[0], cands[0]};
  CHECK_THROWS_AS(selectMate(nA, rp, tied, tol), AmbiguousTieError);
  CHECK_THROWS_AS(selectMate(nA, rp, {}, tol), NoCandidateError);
}

TEST_CASE("closed surfaces pass through pasting unchanged") {
  GluedSurface torus = makeGluedSurface(shapes::torus(Vec3::Zero(), 2, 0.5, 32, 12), 0);
  SegmentedSpadopag seg;
  seg.closed_surfaces.push_back(torus);
  auto out = paste(seg, tol);
  REQUIRE(out.size() == 1);
  CHECK(out[0].mesh.signedVolume() ==
        doctest::Approx(torus.mesh.signedVolume()));
  CHECK(out[0].sign == Orientation::Positive);
}

TEST_CASE("cut then paste restores an untouched configuration") {
  std::vector<GluedSurface> ss = {
      makeGluedSurface(shapes::icosphere(Vec3(0, 0, 0), 1.0, 2), 0),
      makeGluedSurface(shapes::icosphere(Vec3(0, 0, 0), 0.5, 2).flipped(), 1),
      makeGluedSurface(shapes::icosphere(Vec3(4, 0, 0), 1.0, 2), 2)};
  SegmentedSpadopag seg = cut(ss, detectIntersections(ss, tol), tol);
  auto out = paste(seg, tol);
  REQUIRE(out.size() == 3);
  double vIn = 0, vOut = 0;
  for (const auto& s : ss) vIn += s.mesh.signedVolume();
  for (const auto& s : out) vOut += s.mesh.signedVolume();
  CHECK(vOut == doctest::Approx(vIn).epsilon(1e-12));
}

TEST_CASE("tangent ellipsoid pair reassembles into two crescents") {
  auto [e1, e2] = shapes::tangentEllipsoidPair(48, 24);
  std::vector<GluedSurface> ss = {makeGluedSurface(e1, 0),
                                  makeGluedSurface(e2.flipped(), 1)};
  SegmentedSpadopag seg = cut(ss, detectIntersections(ss, tol), tol);
  REQUIRE(seg.patches.size() == 4);

  auto out = paste(seg, tol);
  REQUIRE(out.size() == 2);
  double vol = 0;
  for (const auto& s : out) {
    CHECK(s.sign == Orientation::Positive);
    CHECK(s.mesh.isClosed());
    vol += s.mesh.signedVolume();
  }
  // Crescent volumes add up to vol(E1) - vol(E2) = 16pi/3 - 8pi/3.
  double expect = e1.signedVolume() - e2.signedVolume();
  CHECK(vol == doctest::Approx(expect).epsilon(1e-6));

  // The round trip is now stable: cutting and pasting the crescents again
  // reproduces them.
  SegmentedSpadopag seg2 = cut(out, detectIntersections(out, tol), tol);
  auto out2 = paste(seg2, tol);
  REQUIRE(out2.size() == 2);
  double vol2 = 0;
  for (const auto& s : out2) vol2 += s.mesh.signedVolume();
  CHECK(vol2 == doctest::Approx(vol).epsilon(1e-6));
}
