#include <doctest.h>

#include "yinset/core.hpp"
#include "yinset/shapes.hpp"

using namespace yinset;

namespace {

TriMesh unitTetra() {
  TriMesh m;
  m.V = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  m.F = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  return m;
}

}  // namespace

TEST_CASE("rng is deterministic and seeds decorrelate") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  int same = 0;
  Rng a2(42);
  for (int i = 0; i < 100; ++i)
    if (a2.next() == c.next()) ++same;
  CHECK(same == 0);
}

TEST_CASE("rng uniform stays in range and unit vectors have norm one") {
  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  for (int i = 0; i < 100; ++i)
    CHECK((r.unitVector().norm() - 1.0) == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("split rng diverges from its parent") {
  Rng a(5);
  Rng b = a.split();
  CHECK(a.next() != b.next());
}

TEST_CASE("tetrahedron signed volume") {
  TriMesh m = unitTetra();
  CHECK(m.isClosed());
  CHECK(m.signedVolume() == doctest::Approx(1.0 / 6).epsilon(1e-14));
}

TEST_CASE("flip negates signed volume exactly") {
  Rng r(11);
  TriMesh m = shapes::icosphere(Vec3(0.3, -0.2, 1.0), 1.3, 2);
  double v = m.signedVolume();
  CHECK(v > 0);
  CHECK(m.flipped().signedVolume() == doctest::Approx(-v).epsilon(1e-15));
}

TEST_CASE("icosphere volume approaches analytic sphere volume") {
  double exact = 4.0 / 3.0 * 3.14159265358979323846;
  double v3 = shapes::icosphere(Vec3::Zero(), 1.0, 3).signedVolume();
  double v4 = shapes::icosphere(Vec3::Zero(), 1.0, 4).signedVolume();
  CHECK(std::abs(v4 - exact) < std::abs(v3 - exact));
  CHECK(v4 == doctest::Approx(exact).epsilon(3e-3));
}

TEST_CASE("area vector of a closed mesh vanishes") {
  TriMesh m = shapes::torus(Vec3::Zero(), 2.0, 0.5, 48, 16);
  CHECK(m.isClosed());
  CHECK(areaVectorSum(m).norm() <= 1e-9 * m.totalArea());
}

TEST_CASE("open mesh reports its unmatched edges") {
  TriMesh m = unitTetra();
  m.F.pop_back();
  auto open = m.unmatchedEdges();
  CHECK(open.size() == 3);
  CHECK_THROWS_AS(m.signedVolume(), NotClosedError);
}

TEST_CASE("point registry snaps nearby points to the first seen") {
  Tolerance tol{1e-6};
  PointRegistry reg(tol);
  Vec3 p(1, 2, 3);
  Vec3 q = p + Vec3(1e-7, -2e-7, 5e-8);
  CHECK(reg.canonical(p) == p);
  CHECK(reg.canonical(q) == p);
  CHECK(reg.canonicalIndex(q) == reg.canonicalIndex(p));
  Vec3 far = p + Vec3(1e-5, 0, 0);
  CHECK(reg.canonical(far) == far);
}

TEST_CASE("weldMesh merges duplicate vertices across triangles") {
  Tolerance tol{1e-9};
  TriMesh ref = unitTetra();
  // Rebuild as soup: every face owns private copies of its vertices.
  std::vector<Triangle> soup;
  for (std::size_t f = 0; f < ref.F.size(); ++f) soup.push_back(ref.tri(int(f)));
  PointRegistry reg(tol);
  TriMesh welded = weldMesh(soup, reg, tol);
  CHECK(welded.V.size() == 4);
  CHECK(welded.isClosed());
  CHECK(welded.signedVolume() == doctest::Approx(1.0 / 6).epsilon(1e-14));
}

TEST_CASE("aabb predicates") {
  Aabb a;
  CHECK(a.empty);
  a.extend(Vec3(0, 0, 0));
  a.extend(Vec3(1, 1, 1));
  Aabb b;
  b.extend(Vec3(0.5, 0.5, 0.5));
  b.extend(Vec3(2, 2, 2));
  CHECK(a.overlaps(b));
  CHECK(a.contains(Vec3(0.5, 0.5, 0.5)));
  CHECK(!a.contains(Vec3(1.5, 0.5, 0.5)));
  b = Aabb{};
  b.extend(Vec3(3, 3, 3));
  CHECK(!a.overlaps(b));
}
