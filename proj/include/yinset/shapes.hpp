#pragma once

#include "yinset/brep.hpp"

namespace yinset {
namespace shapes {

// Geodesic sphere from a subdivided icosahedron; level 0 is the icosahedron.
TriMesh icosphere(const Vec3& center, double radius, int level);

// Latitude/longitude sphere with the pole axis along `axis`.
TriMesh uvSphere(const Vec3& center, double radius, int slices, int stacks,
                 const Vec3& axis = Vec3(0, 0, 1));

// Torus around the z axis: tube of radius r about the circle of radius R.
TriMesh torus(const Vec3& center, double R, double r, int segMajor, int segMinor);

// Axis-aligned box.
TriMesh box(const Vec3& lo, const Vec3& hi);

// A pair of ellipsoids of revolution about the z axis that touch exactly in
// their common equator circle x^2 + y^2 = 4, z = 0, triangulated so both
// meshes carry that circle as a shared ring of identical vertices.
//   first:  x^2 + y^2 = 4 (1 - z^2)      (half-height 1)
//   second: x^2 + y^2 = 4 (1 - 4 z^2)    (half-height 1/2)
std::pair<TriMesh, TriMesh> tangentEllipsoidPair(int slices, int stacks);

// Sphere-like closed surface of radius `radius` about `center`, squashed so
// its equator is pinned exactly onto the given circle (a ring of `slices`
// vertices); used to build surfaces meeting a torus tube in whole circles.
TriMesh pinnedSphere(const Vec3& center, double radius,
                     const std::vector<Vec3>& equatorRing, int stacks);

// The torus tube cross-section circle at major angle u, as `n` exact vertices.
std::vector<Vec3> torusTubeCircle(const Vec3& center, double R, double r,
                                  double u, int n);

// Convenience wrappers to spadopag elements.
GElement solid(TriMesh mesh, Rng& rng, const Tolerance& tol);
GElement shell(const Vec3& center, double rOuter, double rInner, int level,
               Rng& rng, const Tolerance& tol);

}  // namespace shapes
}  // namespace yinset
