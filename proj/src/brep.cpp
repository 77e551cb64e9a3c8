#include "yinset/brep.hpp"

#include "yinset/geom.hpp"
#include "yinset/membership.hpp"
#include "yinset/voxel.hpp"

#include <algorithm>
#include <cmath>

namespace yinset {

GluedSurface makeGluedSurface(TriMesh mesh, int id) {
  double v = mesh.signedVolume();
  if (v == 0.0) throw DegenerateInputError("surface encloses zero volume");
  GluedSurface s;
  s.id = id;
  if (v > 0) {
    s.mesh = std::move(mesh);
    s.sign = Orientation::Positive;
  } else {
    mesh.flip();
    s.mesh = std::move(mesh);
    s.sign = Orientation::Negative;
  }
  return s;
}

Tolerance defaultTolerance(const std::vector<const GluedSurface*>& surfaces) {
  Aabb box;
  for (const auto* s : surfaces) box.extend(s->mesh.bounds());
  double diag = box.diagonal();
  return Tolerance::fromDiagonal(diag > 0 ? diag : 1.0);
}

Vec3 interiorWitness(const GluedSurface& s, Rng& rng, const Tolerance& tol) {
  MeshIndex idx(s.mesh);
  // Largest facets first: their inward offsets are most likely to clear eps.
  std::vector<int> order(s.mesh.F.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return s.mesh.tri(a).area() > s.mesh.tri(b).area();
  });
  double diag = s.mesh.bounds().diagonal();
  int budget = std::min<int>(32, int(order.size()));
  for (int k = 0; k < budget; ++k) {
    Triangle t = s.mesh.tri(order[k]);
    Vec3 n = t.normal();  // outward
    for (double frac : {0.05, 0.01, 0.2, 0.002}) {
      Vec3 p = t.centroid() - frac * diag * n;
      if (idx.distance(p) <= 2 * tol.eps) continue;
      try {
        if (idx.insideByRay(p, rng, tol)) return p;
      } catch (const RetryExhaustedError&) {
      }
    }
  }
  throw WitnessNotFoundError("no interior witness after retry budget");
}

bool includes(const GluedSurface& sk, const GluedSurface& sl, Rng& rng,
              const Tolerance& tol) {
  Vec3 w = interiorWitness(sl, rng, tol);
  MeshIndex idx(sk.mesh);
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (idx.distance(w) > tol.eps) return idx.insideByRay(w, rng, tol);
    w = interiorWitness(sl, rng, tol);  // witness re-sampled off the boundary
  }
  throw WitnessNotFoundError("witness kept landing on the boundary");
}

HasseDiagram hasse(const std::vector<GluedSurface>& surfaces, Rng& rng,
                   const Tolerance& tol) {
  int n = int(surfaces.size());
  std::vector<std::vector<bool>> in(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) in[i][j] = includes(surfaces[i], surfaces[j], rng, tol);

  HasseDiagram h;
  for (const auto& s : surfaces) h.nodes.push_back({s.id, s.sign});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!in[i][j]) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (k != i && k != j && in[i][k] && in[k][j]) cover = false;
      if (cover) h.edges.push_back({i, j});
    }
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

RealizableSpadopag decomposeAtoms(const std::vector<GluedSurface>& surfaces,
                                  Rng& rng, const Tolerance& tol) {
  HasseDiagram h = hasse(surfaces, rng, tol);
  int n = int(surfaces.size());
  std::vector<std::vector<int>> children(n);
  std::vector<int> parent(n, -1);
  for (const auto& [i, j] : h.edges) {
    children[i].push_back(j);
    parent[j] = i;
  }
  // Every cover edge must connect opposite orientations; otherwise two atoms'
  // interiors would overlap.
  for (const auto& [i, j] : h.edges)
    if (surfaces[i].sign == surfaces[j].sign)
      throw NotRealizableError("cover edge joins two surfaces of equal orientation");

  RealizableSpadopag g;
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    if (surfaces[i].sign != Orientation::Positive) continue;
    AtomSpadopag atom;
    atom.positive = surfaces[i];
    used[i] = true;
    for (int j : children[i]) {
      atom.negatives.push_back(surfaces[j]);
      used[j] = true;
    }
    g.atoms.push_back(std::move(atom));
  }
  AtomSpadopag leftover;
  for (int i = 0; i < n; ++i)
    if (!used[i]) leftover.negatives.push_back(surfaces[i]);
  if (!leftover.negatives.empty()) g.atoms.push_back(std::move(leftover));
  return g;
}

TopologyReport topology(const GElement& g) {
  if (g.isBottom()) return TopologyReport{0, {}};
  if (g.isTop()) return TopologyReport{1, {0}};
  TopologyReport r;
  for (const auto& atom : g.shape.atoms) {
    r.components += 1;
    r.holes_per_component.push_back(int(atom.negatives.size()));
  }
  return r;
}

namespace {

bool atomVoxelConnected(const AtomSpadopag& atom, int res) {
  GElement single = GElement::of(RealizableSpadopag{{atom}});
  Aabb box;
  for (const auto* s : atom.surfaces()) box.extend(s->mesh.bounds());
  if (box.empty) return true;
  box.inflate(0.1 * box.diagonal());
  VoxelGrid grid = voxelizeElement(single, box, res);
  std::vector<int> labels;
  int count = labelComponents(grid, labels);
  // An unbounded atom reaches the box faces; that region is one component.
  return count <= 1;
}

}  // namespace

std::vector<std::string> validate(const GElement& g, Rng& rng, const Tolerance& tol) {
  std::vector<std::string> v;
  if (!g.isShape()) return v;
  const auto& atoms = g.shape.atoms;

  int negAtomCount = 0;
  for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
    const auto& atom = atoms[ai];
    std::string tag = "atom " + std::to_string(ai) + ": ";
    if (!atom.positive) {
      negAtomCount += 1;
      if (atom.negatives.empty()) v.push_back(tag + "empty atom");
    }
    for (const auto* s : atom.surfaces()) {
      if (!s->mesh.isClosed()) {
        v.push_back(tag + "surface " + std::to_string(s->id) + " is not closed");
        continue;
      }
      if (s->mesh.signedVolume() <= 0)
        v.push_back(tag + "surface " + std::to_string(s->id) +
                    " stored winding is not outward");
    }
    if (atom.positive) {
      for (const auto& neg : atom.negatives) {
        try {
          if (!includes(*atom.positive, neg, rng, tol))
            v.push_back(tag + "negative surface " + std::to_string(neg.id) +
                        " not included in the positive surface");
        } catch (const Error& e) {
          v.push_back(tag + std::string(e.what()));
        }
      }
    }
    // Negatives mutually incomparable.
    for (std::size_t i = 0; i < atom.negatives.size(); ++i)
      for (std::size_t j = 0; j < atom.negatives.size(); ++j) {
        if (i == j) continue;
        try {
          if (includes(atom.negatives[i], atom.negatives[j], rng, tol))
            v.push_back(tag + "negatives are comparable under inclusion");
        } catch (const Error& e) {
          v.push_back(tag + std::string(e.what()));
        }
      }
    // Approximate connectedness of rho(atom) (voxel flood fill at 64^3).
    if (atom.surfaces().size() > 1 && !atomVoxelConnected(atom, 64))
      v.push_back(tag + "rho(atom) appears disconnected (voxel check, approximate)");
  }
  if (negAtomCount > 1) v.push_back("more than one negative-type atom");

  // Pairwise disjoint atom interiors: a witness inside one atom's positive
  // surface region must not classify Inside for another atom.
  for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
    if (!atoms[ai].positive) continue;
    try {
      Vec3 w = interiorWitness(*atoms[ai].positive, rng, tol);
      GElement other;
      other.kind = GElement::Kind::Shape;
      for (std::size_t aj = 0; aj < atoms.size(); ++aj)
        if (aj != ai) other.shape.atoms.push_back(atoms[aj]);
      if (!other.shape.atoms.empty() &&
          ShapeIndex(GElement::of(other.shape)).classify(w, rng, tol) == PointClass::Inside) {
        // Witness is in the positive region but maybe in a hole of atom ai;
        // only flag when it is genuinely interior to atom ai as well.
        GElement self = GElement::of(RealizableSpadopag{{atoms[ai]}});
        if (ShapeIndex(self).classify(w, rng, tol) == PointClass::Inside)
          v.push_back("atom interiors intersect");
      }
    } catch (const Error&) {
      // Witness search failure is reported via the per-atom checks above.
    }
  }
  return v;
}

}  // namespace yinset
