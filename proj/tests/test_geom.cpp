#include <doctest.h>

#include "yinset/geom.hpp"

using namespace yinset;

namespace {
const Tolerance tol{1e-9};

Triangle xyTri() { return {Vec3(0, 0, 0), Vec3(2, 0, 0), Vec3(0, 2, 0)}; }

double triAreaSum(const std::vector<Triangle>& ts) {
  double s = 0;
  for (const auto& t : ts) s += t.area();
  return s;
}
}  // namespace

TEST_CASE("disjoint triangles do not intersect") {
  Triangle t1 = xyTri();
  Triangle t2{Vec3(0, 0, 1), Vec3(1, 0, 1), Vec3(0, 1, 1)};
  CHECK(triTriIntersect(t1, t2, tol).kind == TriTriIntersection::Kind::None);
}

TEST_CASE("crossing triangles intersect in the expected segment") {
  Triangle t1 = xyTri();
  // Vertical triangle piercing the xy plane along y = 0.25.
  Triangle t2{Vec3(0.25, 0.25, -1), Vec3(1.25, 0.25, -1), Vec3(0.75, 0.25, 1)};
  auto r = triTriIntersect(t1, t2, tol);
  REQUIRE(r.kind == TriTriIntersection::Kind::Segment);
  // The segment lies at y = 0.25, z = 0 with x in [0.5, 1.0].
  double lo = std::min(r.geom[0].x(), r.geom[1].x());
  double hi = std::max(r.geom[0].x(), r.geom[1].x());
  CHECK(lo == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.geom[0].y() == doctest::Approx(0.25));
  CHECK(std::abs(r.geom[0].z()) < 1e-12);
}

TEST_CASE("intersection is symmetric in its arguments") {
  Rng rng(3);
  int found = 0;
  for (int i = 0; i < 300; ++i) {
    auto rv = [&] { return Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)); };
    Triangle t1{rv(), rv(), rv()};
    Triangle t2{rv(), rv(), rv()};
    auto a = triTriIntersect(t1, t2, tol);
    auto b = triTriIntersect(t2, t1, tol);
    CHECK(a.kind == b.kind);
    if (a.kind == TriTriIntersection::Kind::Segment) {
      ++found;
      double la = (a.geom[0] - a.geom[1]).norm();
      double lb = (b.geom[0] - b.geom[1]).norm();
      CHECK(la == doctest::Approx(lb).epsilon(1e-9));
    }
  }
  CHECK(found > 20);  // the sweep actually exercises the segment path
}

TEST_CASE("touching at a single vertex yields a point") {
  Triangle t1 = xyTri();
  Triangle t2{Vec3(0, 0, 0), Vec3(-1, 0, 1), Vec3(0, -1, 1)};
  auto r = triTriIntersect(t1, t2, tol);
  REQUIRE(r.kind == TriTriIntersection::Kind::Point);
  CHECK((r.geom[0] - Vec3(0, 0, 0)).norm() < 1e-12);
}

TEST_CASE("coplanar overlapping triangles report a region") {
  Triangle t1 = xyTri();
  Triangle t2{Vec3(0.5, 0.5, 0), Vec3(2.5, 0.5, 0), Vec3(0.5, 2.5, 0)};
  auto r = triTriIntersect(t1, t2, tol);
  CHECK(r.kind == TriTriIntersection::Kind::CoplanarRegion);
}

TEST_CASE("retriangulation conserves area to machine precision") {
  Triangle t = xyTri();
  std::vector<std::pair<Vec3, Vec3>> cons = {
      {Vec3(0.2, 0.2, 0), Vec3(1.2, 0.4, 0)},
      {Vec3(0.3, 1.0, 0), Vec3(1.0, 0.3, 0)},
  };
  auto out = retriangulate(t, cons, tol);
  CHECK(out.size() > 1);
  CHECK(triAreaSum(out) == doctest::Approx(t.area()).epsilon(1e-12));
  // Winding is preserved.
  for (const auto& o : out) CHECK(o.normal().dot(t.normal()) > 0.99);
}

TEST_CASE("retriangulation turns constraints into mesh edges") {
  Triangle t = xyTri();
  Vec3 a(0.5, 0.5, 0), b(1.0, 0.5, 0);
  auto out = retriangulate(t, {{a, b}}, tol);
  // Both endpoints appear as vertices, and some edge joins points on ab.
  auto isVertex = [&](const Vec3& p) {
    for (const auto& o : out)
      for (int k = 0; k < 3; ++k)
        if ((o[k] - p).norm() < 1e-9) return true;
    return false;
  };
  CHECK(isVertex(a));
  CHECK(isVertex(b));
  int onSegmentEdges = 0;
  for (const auto& o : out)
    for (int k = 0; k < 3; ++k) {
      Vec3 u = o[k], v = o[(k + 1) % 3];
      if (pointSegmentDistance(u, a, b) < 1e-9 &&
          pointSegmentDistance(v, a, b) < 1e-9 &&
          (u - v).norm() > 1e-9)
        ++onSegmentEdges;
    }
  CHECK(onSegmentEdges >= 2);  // each undirected edge counted from both sides
}

TEST_CASE("constraint off the supporting plane is rejected") {
  Triangle t = xyTri();
  CHECK_THROWS_AS(
      retriangulate(t, {{Vec3(0.5, 0.5, 0.5), Vec3(1, 0.5, 0.5)}}, tol),
      ConstraintOutsideTriangleError);
}

TEST_CASE("point-triangle distance") {
  Triangle t = xyTri();
  CHECK(pointTriangleDistance(Vec3(0.3, 0.3, 2.0), t) == doctest::Approx(2.0));
  CHECK(pointTriangleDistance(Vec3(-1, -1, 0), t) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(pointTriangleDistance(Vec3(0.2, 0.2, 0), t) == doctest::Approx(0.0));
}
