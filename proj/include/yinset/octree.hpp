#pragma once

#include "yinset/core.hpp"

#include <set>

namespace yinset {

// Adaptive octree over triangle bounding boxes. A triangle id appears in
// every leaf whose cell its box overlaps; sibling leaves whose id sets give
// no pair-count reduction over the parent are merged bottom-up.
class Octree {
 public:
  struct Node {
    Aabb box;
    int firstChild = -1;  // index of 8 contiguous children, -1 for leaf
    std::vector<int> ids; // leaf payload
  };

  Octree() = default;

  static Octree build(const std::vector<Aabb>& boxes, int leafCap = 16,
                      int maxDepth = 12);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Aabb& rootBox() const { return nodes_.empty() ? emptyBox_ : nodes_[0].box; }

  // All unordered id pairs co-resident in some leaf.
  std::vector<std::pair<int, int>> candidatePairs() const;

  // Ids in leaves overlapping the query box.
  std::vector<int> query(const Aabb& box) const;

  // Ids in leaves pierced by the ray origin + t*dir, t >= 0.
  std::vector<int> queryRay(const Vec3& origin, const Vec3& dir) const;

  template <typename F>
  void forEachLeaf(F&& f) const {
    for (const auto& n : nodes_)
      if (n.firstChild < 0) f(n);
  }

 private:
  std::vector<Node> nodes_;
  Aabb emptyBox_;
};

}  // namespace yinset
