#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "yinset/booleans.hpp"
#include "yinset/shapes.hpp"
#include "yinset/verify.hpp"

using namespace yinset;

namespace {
const Tolerance tol{1e-9};
constexpr double kPi = std::numbers::pi;

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}
}  // namespace

TEST_CASE("mesh volume of elementary solids") {
  Rng rng(1);
  GElement cube = shapes::solid(shapes::box(Vec3(0, 0, 0), Vec3(2, 1, 1)), rng, tol);
  CHECK(meshVolume(cube) == doctest::Approx(2.0).epsilon(1e-14));

  GElement ball = shapes::solid(shapes::icosphere(Vec3::Zero(), 1.0, 4), rng, tol);
  CHECK(meshVolume(ball) == doctest::Approx(4.0 / 3.0 * kPi).epsilon(2e-3));

  GElement shell = shapes::shell(Vec3::Zero(), 1.0, 0.5, 3, rng, tol);
  double vOuter = shapes::icosphere(Vec3::Zero(), 1.0, 3).signedVolume();
  double vInner = shapes::icosphere(Vec3::Zero(), 0.5, 3).signedVolume();
  CHECK(meshVolume(shell) == doctest::Approx(vOuter - vInner).epsilon(1e-12));

  CHECK(meshVolume(GElement::bottom()) == 0.0);
  CHECK_THROWS_AS(meshVolume(GElement::top()), InfiniteVolumeError);
}

TEST_CASE("hausdorff distance of boundaries") {
  Rng rng(2);
  GElement a = shapes::solid(shapes::icosphere(Vec3::Zero(), 1.0, 3), rng, tol);
  CHECK(hausdorffBoundary(a, a, rng, 500) < 1e-12);

  GElement b =
      shapes::solid(shapes::icosphere(Vec3(0.1, 0, 0), 1.0, 3), rng, tol);
  double h = hausdorffBoundary(a, b, rng, 2000);
  CHECK(h == doctest::Approx(0.1).epsilon(0.05));

  CHECK(hausdorffBoundary(GElement::bottom(), GElement::bottom(), rng) == 0.0);
  CHECK(std::isinf(hausdorffBoundary(a, GElement::bottom(), rng)));
}

TEST_CASE("voxel topology agrees with the structural reading") {
  Rng rng(3);
  GElement ball = shapes::solid(shapes::icosphere(Vec3::Zero(), 1.0, 3), rng, tol);
  TopologyReport vt = voxelTopology(ball, 48);
  CHECK(vt.components == 1);
  CHECK(sorted(vt.holes_per_component) == std::vector<int>{0});

  GElement shell = shapes::shell(Vec3::Zero(), 1.0, 0.45, 3, rng, tol);
  vt = voxelTopology(shell, 48);
  TopologyReport st = topology(shell);
  CHECK(vt.components == st.components);
  CHECK(sorted(vt.holes_per_component) == sorted(st.holes_per_component));

  GElement two = join(ball,
                      shapes::solid(shapes::icosphere(Vec3(4, 0, 0), 1.0, 2),
                                    rng, tol),
                      rng, tol);
  vt = voxelTopology(two, 48);
  CHECK(vt.components == 2);
  CHECK(sorted(vt.holes_per_component) == std::vector<int>{0, 0});
}

TEST_CASE("the pointwise oracle rejects a corrupted result") {
  Rng rng(4);
  GElement a = shapes::solid(shapes::icosphere(Vec3(-0.5, 0, 0), 1.0, 3), rng, tol);
  GElement b = shapes::solid(shapes::icosphere(Vec3(0.5, 0, 0), 1.0, 3), rng, tol);
  GElement lens = meet(a, b, rng, tol);

  OracleReport good = pointwiseLawCheck(lens, a, b, LawOp::Meet, 3000, rng, tol);
  CHECK(good.agreementRate() >= 0.999);

  // Negative control: pass the first operand off as the meet.
  OracleReport bad = pointwiseLawCheck(a, a, b, LawOp::Meet, 3000, rng, tol);
  CHECK(bad.agreementRate() < 0.99);

  // And a complementary mix-up.
  OracleReport swapped =
      pointwiseLawCheck(lens, a, b, LawOp::Join, 3000, rng, tol);
  CHECK(swapped.agreementRate() < 0.99);
}

TEST_CASE("oracle report summary is structured") {
  Rng rng(5);
  GElement a = shapes::solid(shapes::icosphere(Vec3::Zero(), 1.0, 2), rng, tol);
  OracleReport rep =
      pointwiseLawCheck(a, a, a, LawOp::Meet, 200, rng, tol);
  std::string s = rep.summary();
  CHECK(s.find("samples=") != std::string::npos);
  CHECK(s.find("rate=") != std::string::npos);
  CHECK(rep.samples_requested == 200);
  CHECK(rep.samples_used + rep.excluded_band == 200);
}
