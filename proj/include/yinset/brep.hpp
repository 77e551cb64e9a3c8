#pragma once

#include "yinset/core.hpp"
#include "yinset/octree.hpp"

#include <memory>
#include <optional>

namespace yinset {

enum class Orientation { Positive, Negative };

inline Orientation flipped(Orientation o) {
  return o == Orientation::Positive ? Orientation::Negative : Orientation::Positive;
}

// Closed oriented triangulation whose complement has exactly two components.
// The mesh is always stored with outward winding; the orientation sign is a
// separate flag (Positive: interior is the bounded complement).
struct GluedSurface {
  TriMesh mesh;
  Orientation sign = Orientation::Positive;
  int id = 0;

  // Winding adjusted so facet normals give the actual boundary normal field
  // of the Yin set (outward for Positive, inward for Negative).
  TriMesh oriented() const {
    return sign == Orientation::Positive ? mesh : mesh.flipped();
  }
};

// Builds a GluedSurface from a closed mesh of either winding; the stored
// winding is canonicalized outward and the sign recorded from the input
// winding's signed volume.
GluedSurface makeGluedSurface(TriMesh mesh, int id = 0);

struct AtomSpadopag {
  std::optional<GluedSurface> positive;
  std::vector<GluedSurface> negatives;

  std::vector<const GluedSurface*> surfaces() const {
    std::vector<const GluedSurface*> out;
    if (positive) out.push_back(&*positive);
    for (const auto& s : negatives) out.push_back(&s);
    return out;
  }
};

struct RealizableSpadopag {
  std::vector<AtomSpadopag> atoms;

  std::vector<const GluedSurface*> surfaces() const {
    std::vector<const GluedSurface*> out;
    for (const auto& a : atoms)
      for (const auto* s : a.surfaces()) out.push_back(s);
    return out;
  }
  std::vector<GluedSurface> surfacesCopy() const {
    std::vector<GluedSurface> out;
    for (const auto* s : surfaces()) out.push_back(*s);
    return out;
  }
  Aabb bounds() const {
    Aabb b;
    for (const auto* s : surfaces()) b.extend(s->mesh.bounds());
    return b;
  }
};

// Carrier of the Boolean algebra: bottom (empty set), top (all of space),
// or a realizable spadopag.
struct GElement {
  enum class Kind { Bottom, Top, Shape };
  Kind kind = Kind::Bottom;
  RealizableSpadopag shape;

  static GElement bottom() { return GElement{Kind::Bottom, {}}; }
  static GElement top() { return GElement{Kind::Top, {}}; }
  static GElement of(RealizableSpadopag s) {
    if (s.atoms.empty()) return bottom();
    return GElement{Kind::Shape, std::move(s)};
  }
  bool isBottom() const { return kind == Kind::Bottom; }
  bool isTop() const { return kind == Kind::Top; }
  bool isShape() const { return kind == Kind::Shape; }
};

struct HasseDiagram {
  struct NodeInfo {
    int surface_id;
    Orientation sign;
  };
  std::vector<NodeInfo> nodes;
  // Covering pairs (includer index, included index) into `nodes`.
  std::vector<std::pair<int, int>> edges;
};

struct TopologyReport {
  int components = 0;
  std::vector<int> holes_per_component;

  bool operator==(const TopologyReport&) const = default;
};

// ---------------------------------------------------------------------------
// Operations

// True iff sl's bounded complement nests inside sk's. Both surfaces must be
// almost disjoint (no proper intersections).
bool includes(const GluedSurface& sk, const GluedSurface& sl, Rng& rng,
              const Tolerance& tol);

// Transitive reduction of the inclusion relation.
HasseDiagram hasse(const std::vector<GluedSurface>& surfaces, Rng& rng,
                   const Tolerance& tol);

// Groups each positive surface with its immediate negative children; leftover
// negatives form the single negative-type atom. Throws NotRealizable.
RealizableSpadopag decomposeAtoms(const std::vector<GluedSurface>& surfaces,
                                  Rng& rng, const Tolerance& tol);

// Empty vector iff all invariants hold. Violations are data, not errors.
std::vector<std::string> validate(const GElement& g, Rng& rng, const Tolerance& tol);

// O(1) in the surface count; reads the structure only.
TopologyReport topology(const GElement& g);

// A point strictly inside s's bounded complement, > eps away from s.
Vec3 interiorWitness(const GluedSurface& s, Rng& rng, const Tolerance& tol);

// Default tolerance for a set of operands: 1e-9 x joint bbox diagonal.
Tolerance defaultTolerance(const std::vector<const GluedSurface*>& surfaces);

}  // namespace yinset
