#pragma once

#include "yinset/core.hpp"

namespace yinset {

struct TriTriIntersection {
  enum class Kind { None, Point, Segment, CoplanarRegion };
  Kind kind = Kind::None;
  // Point: 1 entry; Segment: 2 endpoints; CoplanarRegion: polygon loop.
  std::vector<Vec3> geom;
};

// Eps-classified intersection of two triangles. Shared-edge and shared-vertex
// contacts come back as Segment/Point; eps-coplanar overlap as CoplanarRegion.
// Throws DegenerateInput if a triangle fails the area floor.
TriTriIntersection triTriIntersect(const Triangle& t1, const Triangle& t2,
                                   const Tolerance& tol);

// Constraint segments are given in world coordinates, already clipped to t.
// Output triangles partition t, every constraint appears as a union of
// output edges, and output windings match t's.
std::vector<Triangle> retriangulate(const Triangle& t,
                                    const std::vector<std::pair<Vec3, Vec3>>& constraints,
                                    const Tolerance& tol);

double pointSegmentDistance(const Vec3& p, const Vec3& a, const Vec3& b);
double pointTriangleDistance(const Vec3& p, const Triangle& t);

// True when the two vectors are eps-parallel: |v1 x v2| < eps*|v1||v2|.
bool epsParallel(const Vec3& v1, const Vec3& v2, const Tolerance& tol);

}  // namespace yinset
