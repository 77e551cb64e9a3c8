#include <doctest.h>

#include <numbers>

#include "yinset/mars.hpp"
#include "yinset/shapes.hpp"
#include "yinset/verify.hpp"

using namespace yinset;

namespace {
const Tolerance tol{1e-9};
constexpr double kPi = std::numbers::pi;

double maxEdgeLength(const TriMesh& m) {
  double mx = 0;
  for (const auto& f : m.F)
    for (int k = 0; k < 3; ++k)
      mx = std::max(mx, (m.V[f[k]] - m.V[f[(k + 1) % 3]]).norm());
  return mx;
}
}  // namespace

TEST_CASE("constant-field advection is exact") {
  TriMesh m = shapes::icosphere(Vec3::Zero(), 1.0, 2);
  Vec3 v(0.3, -0.2, 0.7);
  TriMesh out = advectMesh(m, VelocityField::translation(v), 0.0, 0.25);
  for (std::size_t i = 0; i < m.V.size(); ++i)
    CHECK((out.V[i] - (m.V[i] + 0.25 * v)).norm() < 1e-15);
}

TEST_CASE("rotation preserves radii to fourth order") {
  TriMesh m = shapes::icosphere(Vec3::Zero(), 1.0, 2);
  TriMesh cur = m;
  for (int i = 0; i < 16; ++i)
    cur = advectMesh(cur, VelocityField::rotationZ(1.0), i * (kPi / 16), kPi / 16);
  // Half a revolution in sixteen RK4 steps.
  for (const auto& p : cur.V) CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(cur.signedVolume() == doctest::Approx(m.signedVolume()).epsilon(1e-4));
}

TEST_CASE("blow-up is detected") {
  TriMesh m = shapes::icosphere(Vec3::Zero(), 1.0, 0);
  VelocityField bad{[](const Vec3& p, double) {
    return Vec3(p.x() * 1e200, 0, 0);
  }};
  CHECK_THROWS_AS(advectMesh(advectMesh(m, bad, 0, 1e200), bad, 0, 1e200),
                  BlowUpError);
}

TEST_CASE("the deformation field reverses sign at half period") {
  VelocityField f = VelocityField::deformation(2.0);
  Vec3 p(0.3, 0.4, 0.6);
  CHECK(f(p, 1.0).norm() < 1e-14);                      // cos(pi/2) = 0
  CHECK((f(p, 0.25) + f(p, 1.75)).norm() < 1e-14);      // antisymmetric
  CHECK(f(p, 0.0).allFinite());
}

TEST_CASE("regularization enforces the edge-length window and closedness") {
  MarsParams params;
  params.hL = 0.25;
  TriMesh m = shapes::icosphere(Vec3::Zero(), 1.0, 1);  // edges ~0.6
  MarsStats st = regularizeMesh(m, params, tol);
  CHECK(st.splits > 0);
  CHECK(m.isClosed());
  CHECK(maxEdgeLength(m) <= params.hL + 1e-12);
  CHECK(st.min_angle_deg > 0);
}

TEST_CASE("tiny edges are collapsed") {
  MarsParams params;
  params.hL = 1.0;  // no splits at this scale
  TriMesh m = shapes::icosphere(Vec3::Zero(), 1.0, 1);
  // Shrink one edge far below the collapse threshold.
  int a = m.F[0][0], b = m.F[0][1];
  m.V[b] = m.V[a] + 1e-4 * (m.V[b] - m.V[a]);
  MarsStats st = regularizeMesh(m, params, tol);
  CHECK(st.collapses >= 1);
  CHECK(m.isClosed());
}

TEST_CASE("a tracked ball under rotation keeps its volume and topology") {
  Rng rng(7);
  GElement g = shapes::solid(shapes::icosphere(Vec3(0.5, 0, 0), 0.3, 2), rng, tol);
  double v0 = meshVolume(g);
  MarsParams params;
  params.hL = 0.15;
  params.dt = kPi / 16;
  GElement out = trackInterface(g, VelocityField::rotationZ(1.0), 0.0,
                                kPi / 2, params);
  REQUIRE(out.isShape());
  CHECK(topology(out) == topology(g));
  CHECK(meshVolume(out) == doctest::Approx(v0).epsilon(0.02));
  // A quarter turn moves the center to ~(0, 0.5, 0).
  Aabb box = out.shape.bounds();
  CHECK(box.center().y() == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("local solutions partition the volume") {
  Rng rng(9);
  GElement g = shapes::solid(shapes::icosphere(Vec3::Zero(), 0.8, 3), rng, tol);
  Aabb box;
  box.extend(Vec3(-1, -1, -1));
  box.extend(Vec3(1, 1, 1));
  auto locals = localSolutions(g, box, 2, rng, tol);
  CHECK(!locals.empty());
  double sum = 0;
  for (const auto& ls : locals) sum += meshVolume(ls.element);
  CHECK(sum == doctest::Approx(meshVolume(g)).epsilon(1e-6));
}
