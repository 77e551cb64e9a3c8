#pragma once

#include "yinset/brep.hpp"

namespace yinset {

// Boolean occupancy grid of voxel centers.
struct VoxelGrid {
  int res = 0;
  Aabb box;
  std::vector<std::uint8_t> inside;

  std::size_t index(int i, int j, int k) const {
    return (std::size_t(k) * res + j) * res + i;
  }
  bool at(int i, int j, int k) const { return inside[index(i, j, k)] != 0; }
  Vec3 center(int i, int j, int k) const {
    Vec3 d = box.hi - box.lo;
    return box.lo + Vec3((i + 0.5) * d.x() / res, (j + 0.5) * d.y() / res,
                         (k + 0.5) * d.z() / res);
  }
};

// Bounded-complement membership of each voxel center, by column-parity ray
// casting along x with deterministic jitter against grazing degeneracies.
VoxelGrid voxelizeMesh(const TriMesh& mesh, const Aabb& box, int res);

// rho(g) sampled at voxel centers over `box`.
VoxelGrid voxelizeElement(const GElement& g, const Aabb& box, int res);

// 6-connected component labels of set voxels; returns component count and
// writes labels (-1 outside the set).
int labelComponents(const VoxelGrid& grid, std::vector<int>& labels);

}  // namespace yinset
