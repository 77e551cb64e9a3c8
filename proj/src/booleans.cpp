#include "yinset/booleans.hpp"

#include <limits>

#include "yinset/membership.hpp"
#include "yinset/pasting.hpp"

namespace yinset {

namespace {

// Largest facet of a mesh wound with the actual normal field: sample point
// plus the boundary normal there.
struct SampleOn {
  Vec3 point;
  Vec3 normal;
};

SampleOn sampleLargestFacet(const TriMesh& oriented) {
  int best = 0;
  double bestArea = -1;
  for (std::size_t f = 0; f < oriented.F.size(); ++f) {
    double a = oriented.tri(int(f)).area();
    if (a > bestArea) {
      bestArea = a;
      best = int(f);
    }
  }
  Triangle t = oriented.tri(best);
  return {t.centroid(), t.normal()};
}

struct ClosestFacet {
  double dist = std::numeric_limits<double>::infinity();
  Vec3 normal = Vec3::Zero();
};

ClosestFacet closestFacet(const std::vector<TriMesh>& oriented, const Vec3& p) {
  ClosestFacet best;
  for (const auto& m : oriented) {
    for (std::size_t f = 0; f < m.F.size(); ++f) {
      Triangle t = m.tri(int(f));
      double d = pointTriangleDistance(p, t);
      if (d < best.dist) {
        best.dist = d;
        best.normal = t.normal();
      }
    }
  }
  return best;
}

std::vector<TriMesh> orientedMeshes(const GElement& g) {
  std::vector<TriMesh> out;
  for (const auto* s : g.shape.surfaces()) out.push_back(s->oriented());
  return out;
}

// Whether a boundary sample of one operand should survive the meet: it must
// sit strictly inside the other operand, or coincide with the other operand's
// boundary with matching normal field (kept once, from the first operand).
enum class Fate { Keep, Drop, KeepIfCoincidentMate };

Fate patchFate(const SampleOn& s, const ShapeIndex& other,
               const std::vector<TriMesh>& otherOriented, bool firstOperand,
               Rng& rng, const Tolerance& tol) {
  const double coincThresh = 10 * tol.eps;
  ClosestFacet cf = closestFacet(otherOriented, s.point);
  if (cf.dist < coincThresh) {
    if (!firstOperand) return Fate::Drop;  // the twin survives from operand one
    return s.normal.dot(cf.normal) > 0 ? Fate::Keep : Fate::Drop;
  }
  return other.classify(s.point, rng, tol) == PointClass::Inside ? Fate::Keep
                                                                 : Fate::Drop;
}

}  // namespace

GElement complement(const GElement& g, Rng& rng, const Tolerance& tol) {
  if (g.isBottom()) return GElement::top();
  if (g.isTop()) return GElement::bottom();

  std::vector<GluedSurface> surfaces = g.shape.surfacesCopy();
  IntersectionSet isect = detectIntersections(surfaces, tol);
  SegmentedSpadopag seg = cut(surfaces, isect, tol);

  for (auto& p : seg.patches) p.flipOrientation();
  for (auto& s : seg.closed_surfaces) s.sign = flipped(s.sign);

  std::vector<GluedSurface> pasted = paste(seg, tol);
  return GElement::of(decomposeAtoms(pasted, rng, tol));
}

GElement meet(const GElement& g1, const GElement& g2, Rng& rng,
              const Tolerance& tol) {
  if (g1.isBottom() || g2.isBottom()) return GElement::bottom();
  if (g1.isTop()) return g2;
  if (g2.isTop()) return g1;

  std::vector<GluedSurface> all = g1.shape.surfacesCopy();
  const int n1 = int(all.size());
  for (const auto* s : g2.shape.surfaces()) all.push_back(*s);
  // Positional labels so each patch can be traced to its operand.
  for (std::size_t i = 0; i < all.size(); ++i) all[i].id = int(i);

  IntersectionSet isect = detectIntersections(all, tol);
  SegmentedSpadopag seg = cut(all, isect, tol);

  ShapeIndex idx1(g1);
  ShapeIndex idx2(g2);
  std::vector<TriMesh> or1 = orientedMeshes(g1);
  std::vector<TriMesh> or2 = orientedMeshes(g2);

  SegmentedSpadopag kept;
  for (auto& p : seg.patches) {
    const bool fromFirst = p.source_surface < n1;
    SampleOn s = sampleLargestFacet(p.mesh);
    Fate f = patchFate(s, fromFirst ? idx2 : idx1, fromFirst ? or2 : or1,
                       fromFirst, rng, tol);
    if (f == Fate::Keep) kept.patches.push_back(std::move(p));
  }
  for (auto& c : seg.closed_surfaces) {
    const bool fromFirst = c.id < n1;
    SampleOn s = sampleLargestFacet(c.oriented());
    Fate f = patchFate(s, fromFirst ? idx2 : idx1, fromFirst ? or2 : or1,
                       fromFirst, rng, tol);
    if (f == Fate::Keep) kept.closed_surfaces.push_back(std::move(c));
  }

  if (kept.patches.empty() && kept.closed_surfaces.empty())
    return GElement::bottom();

  std::vector<GluedSurface> pasted = paste(kept, tol);
  return GElement::of(decomposeAtoms(pasted, rng, tol));
}

GElement join(const GElement& g1, const GElement& g2, Rng& rng,
              const Tolerance& tol) {
  return complement(meet(complement(g1, rng, tol), complement(g2, rng, tol),
                         rng, tol),
                    rng, tol);
}

GElement difference(const GElement& g1, const GElement& g2, Rng& rng,
                    const Tolerance& tol) {
  return meet(g1, complement(g2, rng, tol), rng, tol);
}

}  // namespace yinset
