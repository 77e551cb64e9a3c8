#pragma once

#include "yinset/brep.hpp"
#include "yinset/geom.hpp"

namespace yinset {

// Curves/points at which surfaces (self-)intersect, indexed back to the
// source triangles.
struct IntersectionSet {
  struct Provenance {
    std::vector<std::pair<int, int>> sources;  // (surface id, triangle id)
  };
  std::vector<PolyCurve> curves;
  std::vector<Provenance> curve_sources;  // parallel to curves
  std::vector<Vec3> isolated_points;
  std::vector<Provenance> point_sources;  // parallel to isolated_points

  bool empty() const { return curves.empty() && isolated_points.empty(); }
};

// A connected 2-manifold-with-boundary piece of one source surface, wound so
// facet normals give the actual boundary normal field.
struct SurfacePatch {
  TriMesh mesh;
  int source_surface = 0;
  int patch_id = 0;
  std::vector<PolyCurve> boundary_loops;

  // One slot per (boundary edge, incident triangle): the unit of gluing.
  struct Slot {
    Vec3 a, b;    // directed as traversed by the patch winding
    Vec3 normal;  // incident triangle normal
    int tri = 0;
    bool matched = false;
  };
  std::vector<Slot> slots;

  Vec3 interiorSample() const;  // centroid of the largest triangle

  void flipOrientation();
};

struct SegmentedSpadopag {
  std::vector<SurfacePatch> patches;
  std::vector<GluedSurface> closed_surfaces;
};

// All pairwise and self intersections, chained into maximal polycurves split
// at junction points. Point tangencies land in isolated_points.
IntersectionSet detectIntersections(const std::vector<GluedSurface>& surfaces,
                                    const Tolerance& tol);

// Self-intersections of a single (possibly non-manifold) closed mesh:
// non-manifold edges plus genuine crossings of non-adjacent triangles.
IntersectionSet selfIntersections(const TriMesh& mesh, const Tolerance& tol);

// The cutting map: retriangulates each surface so the intersection curves are
// unions of mesh edges, then splits into maximal patches along those curves.
SegmentedSpadopag cut(const std::vector<GluedSurface>& surfaces,
                      const IntersectionSet& isect, const Tolerance& tol);

// Core variant over meshes already wound with the actual normal field.
// Closed output components get their sign back from the winding.
SegmentedSpadopag cutOriented(const std::vector<TriMesh>& oriented,
                              const std::vector<int>& surfaceIds,
                              const IntersectionSet& isect, const Tolerance& tol);

}  // namespace yinset
