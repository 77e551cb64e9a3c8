#include "yinset/membership.hpp"

#include "yinset/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace yinset {

MeshIndex::MeshIndex(const TriMesh& mesh) : mesh_(mesh) {
  std::vector<Aabb> boxes(mesh_.F.size());
  for (std::size_t f = 0; f < mesh_.F.size(); ++f) {
    Triangle t = mesh_.tri(int(f));
    boxes[f].extend(t.a);
    boxes[f].extend(t.b);
    boxes[f].extend(t.c);
  }
  tree_ = Octree::build(boxes);
}

double MeshIndex::distance(const Vec3& p) const {
  // Expanding-box search seeded by a cheap upper bound.
  double bound = std::numeric_limits<double>::infinity();
  if (!mesh_.F.empty()) bound = pointTriangleDistance(p, mesh_.tri(0));
  for (;;) {
    Aabb box;
    box.extend(p);
    box.inflate(bound * 1.0000001 + 1e-300);
    double best = std::numeric_limits<double>::infinity();
    for (int id : tree_.query(box))
      best = std::min(best, pointTriangleDistance(p, mesh_.tri(id)));
    if (best <= bound || !std::isfinite(best)) return std::min(best, bound);
    bound = best;
  }
}

bool MeshIndex::withinDistance(const Vec3& p, double r) const {
  Aabb box;
  box.extend(p);
  box.inflate(r);
  for (int id : tree_.query(box))
    if (pointTriangleDistance(p, mesh_.tri(id)) <= r) return true;
  return false;
}

bool MeshIndex::insideByRay(const Vec3& q, Rng& rng, const Tolerance& tol,
                            RayStats* stats) const {
  constexpr int kBudget = 64;
  for (int attempt = 0; attempt < kBudget; ++attempt) {
    Vec3 d = rng.unitVector();
    if (stats) stats->rays_used += 1;
    bool degenerate = false;
    int crossings = 0;
    for (int id : tree_.queryRay(q, d)) {
      Triangle t = mesh_.tri(id);
      Vec3 n = t.normalUnnormalized();
      double denom = n.dot(d);
      double planeDist = n.dot(t.a - q);
      if (std::abs(denom) < 1e-12 * n.norm()) {
        // Ray eps-parallel to the facet plane: degenerate only if the ray
        // actually passes near the triangle's slab.
        if (std::abs(planeDist) < tol.eps * n.norm()) {
          // Check proximity of the ray line to the triangle.
          double tc = (t.centroid() - q).dot(d);
          if (tc > 0 && pointTriangleDistance(q + tc * d, t) < 4 * tol.eps) {
            degenerate = true;
            break;
          }
        }
        continue;
      }
      double thit = planeDist / denom;
      if (thit <= 0) continue;
      Vec3 x = q + thit * d;
      // Distance from the hit point to the triangle boundary decides between
      // a clean crossing, a clean miss, and a degenerate graze.
      double dEdge = std::min({pointSegmentDistance(x, t.a, t.b),
                               pointSegmentDistance(x, t.b, t.c),
                               pointSegmentDistance(x, t.c, t.a)});
      if (dEdge < tol.eps) {
        degenerate = true;
        break;
      }
      if (pointTriangleDistance(x, t) < tol.eps) crossings += 1;
    }
    if (!degenerate) return (crossings % 2) == 1;
    if (stats) stats->degenerate_rays += 1;
  }
  throw RetryExhaustedError("ray casting hit degeneracies for 64 rays");
}

ShapeIndex::ShapeIndex(const GElement& g) : g_(g) {
  if (!g_.isShape()) return;
  for (const auto& atom : g_.shape.atoms) {
    std::vector<Entry> entries;
    for (const auto* s : atom.surfaces())
      entries.push_back({s->sign, std::make_shared<MeshIndex>(s->mesh)});
    atoms_.push_back(std::move(entries));
  }
}

double ShapeIndex::boundaryDistance(const Vec3& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& atom : atoms_)
    for (const auto& e : atom) best = std::min(best, e.idx->distance(p));
  return best;
}

bool ShapeIndex::nearBoundary(const Vec3& p, double r) const {
  for (const auto& atom : atoms_)
    for (const auto& e : atom)
      if (e.idx->withinDistance(p, r)) return true;
  return false;
}

PointClass ShapeIndex::classify(const Vec3& q, Rng& rng, const Tolerance& tol) const {
  if (g_.isBottom()) return PointClass::Outside;
  if (g_.isTop()) return PointClass::Inside;
  if (nearBoundary(q, tol.eps)) return PointClass::OnBoundary;
  for (const auto& atom : atoms_) {
    bool inAtom = true;
    for (const auto& e : atom) {
      bool bounded = e.idx->insideByRay(q, rng, tol);
      bool inInterior = (e.sign == Orientation::Positive) ? bounded : !bounded;
      if (!inInterior) {
        inAtom = false;
        break;
      }
    }
    if (inAtom) return PointClass::Inside;
  }
  return PointClass::Outside;
}

PointClass classifyPoint(const Vec3& q, const GElement& g, Rng& rng,
                         const Tolerance& tol) {
  return ShapeIndex(g).classify(q, rng, tol);
}

}  // namespace yinset
