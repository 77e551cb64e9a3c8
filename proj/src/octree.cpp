#include "yinset/octree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_set>

namespace yinset {

namespace {

Aabb childBox(const Aabb& b, int k) {
  Vec3 c = b.center();
  Aabb out;
  out.empty = false;
  for (int axis = 0; axis < 3; ++axis) {
    bool hiHalf = (k >> axis) & 1;
    out.lo[axis] = hiHalf ? c[axis] : b.lo[axis];
    out.hi[axis] = hiHalf ? b.hi[axis] : c[axis];
  }
  return out;
}

std::uint64_t pairKey(int a, int b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
}

}  // namespace

Octree Octree::build(const std::vector<Aabb>& boxes, int leafCap, int maxDepth) {
  Octree t;
  Aabb root;
  for (const auto& b : boxes) root.extend(b);
  if (root.empty) return t;
  root.inflate(1e-12 + 1e-9 * root.diagonal());
  t.nodes_.push_back(Node{root, -1, {}});
  t.nodes_[0].ids.resize(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) t.nodes_[0].ids[int(i)] = int(i);

  // Top-down subdivision. Mutually overlapping boxes (e.g. long slivers
  // whose bounds cover the same region) can defeat subdivision entirely, so
  // give up on a branch once two consecutive splits barely shrink it.
  struct Work {
    int node;
    int depth;
    int stalled;
  };
  std::vector<Work> stack{{0, 0, 0}};
  std::array<std::vector<int>, 8> childIds;
  while (!stack.empty()) {
    auto [ni, depth, stalled] = stack.back();
    stack.pop_back();
    int count = int(t.nodes_[ni].ids.size());
    if (count <= leafCap || depth >= maxDepth) continue;
    std::size_t biggest = 0;
    for (int k = 0; k < 8; ++k) {
      childIds[k].clear();
      Aabb cb = childBox(t.nodes_[ni].box, k);
      for (int id : t.nodes_[ni].ids)
        if (cb.overlaps(boxes[id])) childIds[k].push_back(id);
      biggest = std::max(biggest, childIds[k].size());
    }
    int nowStalled = biggest > 0.9 * count ? stalled + 1 : 0;
    if (nowStalled >= 2) continue;  // keep as leaf
    int first = int(t.nodes_.size());
    t.nodes_[ni].ids.clear();
    t.nodes_[ni].ids.shrink_to_fit();
    t.nodes_[ni].firstChild = first;
    for (int k = 0; k < 8; ++k) {
      Node child;
      child.box = childBox(t.nodes_[ni].box, k);
      child.ids = std::move(childIds[k]);
      childIds[k] = {};
      t.nodes_.push_back(std::move(child));
    }
    for (int k = 0; k < 8; ++k) stack.push_back({first + k, depth + 1, nowStalled});
  }

  // Bottom-up adaptive merge: collapse a subdivision when its leaves offer
  // no pair-count reduction over testing all the parent's ids together.
  std::vector<int> order(t.nodes_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), std::greater<int>());
  for (int ni : order) {
    Node& n = t.nodes_[ni];
    if (n.firstChild < 0) continue;
    bool allLeaves = true;
    std::unordered_set<int> unionIds;
    std::unordered_set<std::uint64_t> childPairs;
    for (int k = 0; k < 8 && allLeaves; ++k) {
      const Node& c = t.nodes_[n.firstChild + k];
      if (c.firstChild >= 0) {
        allLeaves = false;
        break;
      }
      for (int id : c.ids) unionIds.insert(id);
      for (std::size_t i = 0; i < c.ids.size(); ++i)
        for (std::size_t j = i + 1; j < c.ids.size(); ++j)
          childPairs.insert(pairKey(c.ids[i], c.ids[j]));
    }
    if (!allLeaves || unionIds.size() > 512) continue;
    std::size_t parentPairs = unionIds.size() * (unionIds.size() - 1) / 2;
    if (childPairs.size() == parentPairs) {
      n.ids.assign(unionIds.begin(), unionIds.end());
      std::sort(n.ids.begin(), n.ids.end());
      n.firstChild = -1;
    }
  }
  return t;
}

std::vector<std::pair<int, int>> Octree::candidatePairs() const {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::pair<int, int>> pairs;
  forEachLeaf([&](const Node& leaf) {
    for (std::size_t i = 0; i < leaf.ids.size(); ++i)
      for (std::size_t j = i + 1; j < leaf.ids.size(); ++j) {
        int a = leaf.ids[i], b = leaf.ids[j];
        if (a > b) std::swap(a, b);
        if (seen.insert(pairKey(a, b)).second) pairs.push_back({a, b});
      }
  });
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<int> Octree::query(const Aabb& box) const {
  std::vector<int> out;
  if (nodes_.empty()) return out;
  std::unordered_set<int> seen;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    if (!n.box.overlaps(box)) continue;
    if (n.firstChild < 0) {
      for (int id : n.ids)
        if (seen.insert(id).second) out.push_back(id);
    } else {
      for (int k = 0; k < 8; ++k) stack.push_back(n.firstChild + k);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool rayHitsBox(const Vec3& o, const Vec3& d, const Aabb& b) {
  double tmin = 0.0, tmax = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) < 1e-300) {
      if (o[i] < b.lo[i] || o[i] > b.hi[i]) return false;
      continue;
    }
    double inv = 1.0 / d[i];
    double t0 = (b.lo[i] - o[i]) * inv;
    double t1 = (b.hi[i] - o[i]) * inv;
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    if (tmin > tmax) return false;
  }
  return true;
}

}  // namespace

std::vector<int> Octree::queryRay(const Vec3& origin, const Vec3& dir) const {
  std::vector<int> out;
  if (nodes_.empty()) return out;
  std::unordered_set<int> seen;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    if (!rayHitsBox(origin, dir, n.box)) continue;
    if (n.firstChild < 0) {
      for (int id : n.ids)
        if (seen.insert(id).second) out.push_back(id);
    } else {
      for (int k = 0; k < 8; ++k) stack.push_back(n.firstChild + k);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace yinset
