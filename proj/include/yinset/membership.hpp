#pragma once

#include "yinset/brep.hpp"
#include "yinset/octree.hpp"

namespace yinset {

enum class PointClass { Inside, Outside, OnBoundary };

// Octree-accelerated queries against one triangle mesh.
class MeshIndex {
 public:
  explicit MeshIndex(const TriMesh& mesh);

  const TriMesh& mesh() const { return mesh_; }

  double distance(const Vec3& p) const;

  // True iff some triangle lies within r of p. Much cheaper than comparing
  // distance(p) against r when p is far from the mesh.
  bool withinDistance(const Vec3& p, double r) const;

  struct RayStats {
    int rays_used = 0;
    int degenerate_rays = 0;
  };

  // True iff q is in the mesh's bounded complement. Degenerate casts (ray
  // within eps of a vertex/edge, or eps-coplanar with a facet it meets) are
  // re-rolled, up to 64 rays. Throws RetryExhausted.
  bool insideByRay(const Vec3& q, Rng& rng, const Tolerance& tol,
                   RayStats* stats = nullptr) const;

 private:
  TriMesh mesh_;
  Octree tree_;
};

// Shared immutable index over all surfaces of a GElement.
class ShapeIndex {
 public:
  explicit ShapeIndex(const GElement& g);

  const GElement& element() const { return g_; }

  // Distance to the nearest surface of the shape (infinity for 0/1 sentinels).
  double boundaryDistance(const Vec3& p) const;

  // True iff some surface of the shape lies within r of p (false for the
  // 0/1 sentinels, whose boundary is empty).
  bool nearBoundary(const Vec3& p, double r) const;

  PointClass classify(const Vec3& q, Rng& rng, const Tolerance& tol) const;

 private:
  GElement g_;
  // Parallel to g_.shape flattened atom surfaces: per-atom list of
  // (orientation, mesh index).
  struct Entry {
    Orientation sign;
    std::shared_ptr<MeshIndex> idx;
  };
  std::vector<std::vector<Entry>> atoms_;
};

PointClass classifyPoint(const Vec3& q, const GElement& g, Rng& rng,
                         const Tolerance& tol);

}  // namespace yinset
