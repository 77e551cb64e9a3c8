#include "yinset/cutting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace yinset {

Vec3 SurfacePatch::interiorSample() const {
  int best = 0;
  double bestArea = -1;
  for (std::size_t f = 0; f < mesh.F.size(); ++f) {
    double a = mesh.tri(int(f)).area();
    if (a > bestArea) {
      bestArea = a;
      best = int(f);
    }
  }
  return mesh.tri(best).centroid();
}

void SurfacePatch::flipOrientation() {
  mesh.flip();
  for (auto& s : slots) {
    std::swap(s.a, s.b);
    s.normal = -s.normal;
  }
  for (auto& loop : boundary_loops) std::reverse(loop.pts.begin(), loop.pts.end());
}

namespace {

struct RawSeg {
  Vec3 p, q;
  std::vector<std::pair<int, int>> srcs;
};
struct RawPoint {
  Vec3 p;
  std::vector<std::pair<int, int>> srcs;
};

double distToSegs(const Vec3& p, const std::vector<RawSeg>& segs) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : segs) best = std::min(best, pointSegmentDistance(p, s.p, s.q));
  return best;
}

// Chains raw segments into maximal polycurves, splitting at junctions where
// three or more segments meet at one eps-point.
IntersectionSet chainSegments(std::vector<RawSeg> rawSegs,
                              std::vector<RawPoint> rawPoints, const Tolerance& tol) {
  IntersectionSet out;
  PointRegistry reg(tol);

  struct Seg {
    int a, b;
    std::vector<std::pair<int, int>> srcs;
  };
  std::map<std::pair<int, int>, Seg> dedup;
  for (auto& rs : rawSegs) {
    int a = reg.canonicalIndex(rs.p);
    int b = reg.canonicalIndex(rs.q);
    if (a == b) continue;
    auto key = std::minmax(a, b);
    auto [it, fresh] = dedup.try_emplace({key.first, key.second},
                                         Seg{key.first, key.second, {}});
    auto& srcs = it->second.srcs;
    srcs.insert(srcs.end(), rs.srcs.begin(), rs.srcs.end());
  }
  std::vector<Seg> segs;
  for (auto& [k, s] : dedup) {
    std::sort(s.srcs.begin(), s.srcs.end());
    s.srcs.erase(std::unique(s.srcs.begin(), s.srcs.end()), s.srcs.end());
    segs.push_back(std::move(s));
  }

  std::unordered_map<int, std::vector<int>> incident;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    incident[segs[i].a].push_back(int(i));
    incident[segs[i].b].push_back(int(i));
  }
  auto isJunction = [&](int node) { return incident[node].size() != 2; };

  std::vector<bool> used(segs.size(), false);
  auto emitPath = [&](int startNode, int firstSeg) {
    PolyCurve c;
    IntersectionSet::Provenance prov;
    c.pts.push_back(reg.point(startNode));
    int node = startNode, sid = firstSeg;
    for (;;) {
      used[sid] = true;
      const Seg& s = segs[sid];
      prov.sources.insert(prov.sources.end(), s.srcs.begin(), s.srcs.end());
      node = (s.a == node) ? s.b : s.a;
      c.pts.push_back(reg.point(node));
      if (isJunction(node) || node == startNode) break;
      int next = -1;
      for (int cand : incident[node])
        if (!used[cand]) next = cand;
      if (next < 0) break;
      sid = next;
    }
    if (c.pts.size() > 2 && (c.pts.front() - c.pts.back()).norm() < tol.eps) {
      c.pts.pop_back();
      c.closed = true;
    }
    std::sort(prov.sources.begin(), prov.sources.end());
    prov.sources.erase(std::unique(prov.sources.begin(), prov.sources.end()),
                       prov.sources.end());
    out.curves.push_back(std::move(c));
    out.curve_sources.push_back(std::move(prov));
  };

  // Paths anchored at junction nodes first, then leftover cycles.
  for (const auto& [node, segIds] : incident) {
    if (!isJunction(node)) continue;
    for (int sid : segIds)
      if (!used[sid]) emitPath(node, sid);
  }
  for (std::size_t i = 0; i < segs.size(); ++i)
    if (!used[i]) emitPath(segs[i].a, int(i));

  // Isolated points: tangencies not lying on any curve.
  for (auto& rp : rawPoints) {
    if (distToSegs(rp.p, rawSegs) < tol.eps) continue;
    bool dup = false;
    for (const auto& p : out.isolated_points)
      if ((p - rp.p).norm() < tol.eps) dup = true;
    if (dup) continue;
    std::sort(rp.srcs.begin(), rp.srcs.end());
    rp.srcs.erase(std::unique(rp.srcs.begin(), rp.srcs.end()), rp.srcs.end());
    out.isolated_points.push_back(rp.p);
    out.point_sources.push_back({std::move(rp.srcs)});
  }
  return out;
}

Aabb triBox(const Triangle& t, double inflate) {
  Aabb b;
  b.extend(t.a);
  b.extend(t.b);
  b.extend(t.c);
  b.inflate(inflate);
  return b;
}

void collectFromIntersection(const TriTriIntersection& isect,
                             std::pair<int, int> srcA, std::pair<int, int> srcB,
                             std::vector<RawSeg>& segs, std::vector<RawPoint>& pts) {
  std::vector<std::pair<int, int>> srcs{srcA, srcB};
  switch (isect.kind) {
    case TriTriIntersection::Kind::None:
      break;
    case TriTriIntersection::Kind::Point:
      pts.push_back({isect.geom[0], srcs});
      break;
    case TriTriIntersection::Kind::Segment:
      segs.push_back({isect.geom[0], isect.geom[1], srcs});
      break;
    case TriTriIntersection::Kind::CoplanarRegion:
      // The overlap polygon's boundary enters the intersection set.
      for (std::size_t i = 0; i < isect.geom.size(); ++i)
        segs.push_back({isect.geom[i], isect.geom[(i + 1) % isect.geom.size()], srcs});
      break;
  }
}

int sharedVertexCount(const std::array<int, 3>& f, const std::array<int, 3>& g) {
  int n = 0;
  for (int a : f)
    for (int b : g)
      if (a == b) ++n;
  return n;
}

void collectSelf(const TriMesh& mesh, int surfaceId, const Tolerance& tol,
                 std::vector<RawSeg>& segs, std::vector<RawPoint>& pts) {
  // Non-manifold edges are self-intersection curves of the point set.
  std::map<std::pair<int, int>, std::vector<int>> edgeFaces;
  for (std::size_t f = 0; f < mesh.F.size(); ++f)
    for (int e = 0; e < 3; ++e) {
      int a = mesh.F[f][e], b = mesh.F[f][(e + 1) % 3];
      auto key = std::minmax(a, b);
      edgeFaces[{key.first, key.second}].push_back(int(f));
    }
  for (const auto& [edge, faces] : edgeFaces) {
    if (faces.size() <= 2) continue;
    RawSeg s{mesh.V[edge.first], mesh.V[edge.second], {}};
    for (int f : faces) s.srcs.push_back({surfaceId, f});
    segs.push_back(std::move(s));
  }

  std::vector<Aabb> boxes(mesh.F.size());
  for (std::size_t f = 0; f < mesh.F.size(); ++f)
    boxes[f] = triBox(mesh.tri(int(f)), tol.eps);
  Octree tree = Octree::build(boxes);
  for (const auto& [i, j] : tree.candidatePairs()) {
    int shared = sharedVertexCount(mesh.F[i], mesh.F[j]);
    if (shared >= 2) continue;  // adjacency, not intersection
    TriTriIntersection isect = triTriIntersect(mesh.tri(i), mesh.tri(j), tol);
    if (isect.kind == TriTriIntersection::Kind::None) continue;
    if (shared == 1 && isect.kind == TriTriIntersection::Kind::Point)
      continue;  // expected contact at the shared vertex
    collectFromIntersection(isect, {surfaceId, i}, {surfaceId, j}, segs, pts);
  }
}

}  // namespace

IntersectionSet selfIntersections(const TriMesh& mesh, const Tolerance& tol) {
  std::vector<RawSeg> segs;
  std::vector<RawPoint> pts;
  collectSelf(mesh, 0, tol, segs, pts);
  return chainSegments(std::move(segs), std::move(pts), tol);
}

IntersectionSet detectIntersections(const std::vector<GluedSurface>& surfaces,
                                    const Tolerance& tol) {
  std::vector<RawSeg> segs;
  std::vector<RawPoint> pts;

  // Tag every triangle of every surface and broad-phase them together.
  struct Tag {
    int surface;
    int tri;
  };
  std::vector<Tag> tags;
  std::vector<Aabb> boxes;
  for (std::size_t s = 0; s < surfaces.size(); ++s)
    for (std::size_t f = 0; f < surfaces[s].mesh.F.size(); ++f) {
      tags.push_back({int(s), int(f)});
      boxes.push_back(triBox(surfaces[s].mesh.tri(int(f)), tol.eps));
    }
  if (!boxes.empty()) {
    Octree tree = Octree::build(boxes);
    for (const auto& [i, j] : tree.candidatePairs()) {
      if (tags[i].surface == tags[j].surface) continue;  // self handled below
      const auto& sa = surfaces[tags[i].surface];
      const auto& sb = surfaces[tags[j].surface];
      TriTriIntersection isect =
          triTriIntersect(sa.mesh.tri(tags[i].tri), sb.mesh.tri(tags[j].tri), tol);
      if (isect.kind == TriTriIntersection::Kind::None) continue;
      collectFromIntersection(isect, {tags[i].surface, tags[i].tri},
                              {tags[j].surface, tags[j].tri}, segs, pts);
    }
  }
  for (std::size_t s = 0; s < surfaces.size(); ++s)
    collectSelf(surfaces[s].mesh, int(s), tol, segs, pts);

  return chainSegments(std::move(segs), std::move(pts), tol);
}

// ---------------------------------------------------------------------------
// Cutting map

namespace {

// Clips segment (p, q) to the triangle in its plane; returns the surviving
// piece if its length exceeds eps.
std::optional<std::pair<Vec3, Vec3>> clipSegmentToTriangle(const Vec3& p, const Vec3& q,
                                                           const Triangle& t,
                                                           const Tolerance& tol) {
  Vec3 n = t.normal();
  if (std::abs(n.dot(p - t.a)) > 10 * tol.eps || std::abs(n.dot(q - t.a)) > 10 * tol.eps)
    return std::nullopt;
  double t0 = 0.0, t1 = 1.0;
  const Vec3* v[3] = {&t.a, &t.b, &t.c};
  for (int e = 0; e < 3; ++e) {
    Vec3 edge = *v[(e + 1) % 3] - *v[e];
    Vec3 inward = n.cross(edge).normalized();  // points into the triangle
    double dp = inward.dot(p - *v[e]);
    double dq = inward.dot(q - *v[e]);
    // Keep the part with signed distance >= -eps.
    if (dp < -tol.eps && dq < -tol.eps) return std::nullopt;
    if (std::abs(dp - dq) > 1e-300) {
      double s = dp / (dp - dq);
      if (dp < -tol.eps) t0 = std::max(t0, s);
      if (dq < -tol.eps) t1 = std::min(t1, s);
    }
    if (t0 >= t1) return std::nullopt;
  }
  Vec3 a = p + t0 * (q - p);
  Vec3 b = p + t1 * (q - p);
  if ((a - b).norm() < tol.eps) return std::nullopt;
  return std::make_pair(a, b);
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<PolyCurve> chainLoops(const std::vector<SurfacePatch::Slot>& slots) {
  std::vector<PolyCurve> loops;
  std::vector<bool> used(slots.size(), false);
  auto key = [](const Vec3& p) {
    return std::array<double, 3>{p.x(), p.y(), p.z()};
  };
  std::map<std::array<double, 3>, std::vector<int>> startAt;
  for (std::size_t i = 0; i < slots.size(); ++i) startAt[key(slots[i].a)].push_back(int(i));
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (used[i]) continue;
    PolyCurve loop;
    int cur = int(i);
    loop.pts.push_back(slots[i].a);
    while (cur >= 0 && !used[cur]) {
      used[cur] = true;
      loop.pts.push_back(slots[cur].b);
      int next = -1;
      auto it = startAt.find(key(slots[cur].b));
      if (it != startAt.end())
        for (int cand : it->second)
          if (!used[cand]) {
            next = cand;
            break;
          }
      cur = next;
    }
    if (loop.pts.size() > 1 && (loop.pts.front() - loop.pts.back()).norm() == 0.0) {
      loop.pts.pop_back();
      loop.closed = true;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

// Subdivides every edge of `mesh` lying along the curve set at any canonical
// curve point interior to it, so all surfaces agree on the boundary edges.
void refineCurveEdges(TriMesh& mesh, const std::vector<Vec3>& curvePts,
                      const std::vector<RawSeg>& curveSegs, const Tolerance& tol) {
  bool again = true;
  while (again) {
    again = false;
    std::vector<bool> onCurve(mesh.V.size(), false);
    for (std::size_t v = 0; v < mesh.V.size(); ++v)
      onCurve[v] = distToSegs(mesh.V[v], curveSegs) < tol.eps;
    std::map<std::pair<int, int>, std::vector<int>> ef;
    for (std::size_t f = 0; f < mesh.F.size(); ++f)
      for (int e = 0; e < 3; ++e) {
        auto k = std::minmax(mesh.F[f][e], mesh.F[f][(e + 1) % 3]);
        ef[{k.first, k.second}].push_back(int(f));
      }
    for (const auto& [edge, faces] : ef) {
      int u = edge.first, v = edge.second;
      if (!onCurve[u] || !onCurve[v]) continue;
      const Vec3 pu = mesh.V[u], pv = mesh.V[v];
      if (distToSegs(0.5 * (pu + pv), curveSegs) >= tol.eps) continue;
      // Canonical points strictly inside (u, v), ordered along it.
      std::vector<std::pair<double, Vec3>> splits;
      double len2 = (pv - pu).squaredNorm();
      for (const Vec3& w : curvePts) {
        if ((w - pu).norm() < tol.eps || (w - pv).norm() < tol.eps) continue;
        if (pointSegmentDistance(w, pu, pv) >= tol.eps) continue;
        double t = (w - pu).dot(pv - pu) / len2;
        if (t <= 0.0 || t >= 1.0) continue;
        splits.push_back({t, w});
      }
      if (splits.empty()) continue;
      std::sort(splits.begin(), splits.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      // Vertex index of w in this mesh (reusing an exact-equal vertex).
      auto indexOf = [&](const Vec3& w) {
        for (std::size_t i = 0; i < mesh.V.size(); ++i)
          if (mesh.V[i] == w) return int(i);
        mesh.V.push_back(w);
        return int(mesh.V.size()) - 1;
      };
      std::vector<int> chainUV{u};
      for (const auto& [t, w] : splits) chainUV.push_back(indexOf(w));
      chainUV.push_back(v);

      for (int f : faces) {
        for (int e = 0; e < 3; ++e) {
          int i = mesh.F[f][e], j = mesh.F[f][(e + 1) % 3];
          if (std::minmax(i, j) != std::minmax(u, v)) continue;
          int c = mesh.F[f][(e + 2) % 3];
          std::vector<int> chain = chainUV;
          if (i != u) std::reverse(chain.begin(), chain.end());
          mesh.F[f] = {chain[0], chain[1], c};
          for (std::size_t m = 1; m + 1 < chain.size(); ++m)
            mesh.F.push_back({chain[m], chain[m + 1], c});
          break;
        }
      }
      again = true;
      break;  // adjacency is stale; rebuild and rescan
    }
  }
}

}  // namespace

SegmentedSpadopag cutOriented(const std::vector<TriMesh>& oriented,
                              const std::vector<int>& surfaceIds,
                              const IntersectionSet& isect, const Tolerance& tol) {
  for (const auto& prov : isect.curve_sources)
    for (const auto& [sid, tid] : prov.sources)
      if (sid < 0 || sid >= int(oriented.size()))
        throw InconsistentProvenanceError("intersection references unknown surface " +
                                          std::to_string(sid));

  SegmentedSpadopag out;
  PointRegistry reg(tol);
  // Curve points register first so retriangulation and welding snap onto them.
  for (const auto& c : isect.curves)
    for (const auto& p : c.pts) reg.canonicalIndex(p);

  // Flattened curve segments, for cut-edge identification below.
  std::vector<RawSeg> curveSegs;
  for (const auto& c : isect.curves) {
    std::size_t n = c.pts.size();
    for (std::size_t i = 0; i + 1 < n; ++i) curveSegs.push_back({c.pts[i], c.pts[i + 1], {}});
    if (c.closed && n > 1) curveSegs.push_back({c.pts.back(), c.pts.front(), {}});
  }

  // Pass 1: retriangulate and weld every surface through the shared registry,
  // so curve points are bitwise-shared across surfaces.
  std::vector<TriMesh> meshes(oriented.size());
  for (std::size_t s = 0; s < oriented.size(); ++s) {
    const TriMesh& src = oriented[s];

    // Constraints per triangle of this surface.
    std::unordered_map<int, std::vector<std::pair<Vec3, Vec3>>> constraints;
    for (std::size_t c = 0; c < isect.curves.size(); ++c) {
      const PolyCurve& curve = isect.curves[c];
      std::vector<int> tids;
      for (const auto& [sid, tid] : isect.curve_sources[c].sources)
        if (sid == int(s)) tids.push_back(tid);
      if (tids.empty()) continue;
      std::size_t n = curve.pts.size();
      std::size_t m = curve.closed ? n : n - 1;
      for (std::size_t i = 0; i < m; ++i) {
        const Vec3& p = curve.pts[i];
        const Vec3& q = curve.pts[(i + 1) % n];
        for (int tid : tids) {
          if (tid < 0 || tid >= int(src.F.size()))
            throw InconsistentProvenanceError("intersection references unknown triangle");
          auto clipped = clipSegmentToTriangle(p, q, src.tri(tid), tol);
          if (clipped) constraints[tid].push_back(*clipped);
        }
      }
    }

    std::vector<Triangle> tris;
    for (std::size_t f = 0; f < src.F.size(); ++f) {
      auto it = constraints.find(int(f));
      if (it == constraints.end()) {
        tris.push_back(src.tri(int(f)));
      } else {
        auto pieces = retriangulate(src.tri(int(f)), it->second, tol);
        tris.insert(tris.end(), pieces.begin(), pieces.end());
      }
    }
    meshes[s] = weldMesh(tris, reg, tol);
  }

  // Canonical points on the curve set, from every surface. Retriangulation
  // may have refined the curve differently per surface; the prospective cut
  // edges of each mesh are subdivided at all of these points so the boundary
  // segmentations agree exactly.
  std::vector<Vec3> curvePts;
  for (std::size_t i = 0; i < reg.size(); ++i)
    if (distToSegs(reg.point(int(i)), curveSegs) < tol.eps)
      curvePts.push_back(reg.point(int(i)));
  for (auto& mesh : meshes) refineCurveEdges(mesh, curvePts, curveSegs, tol);

  int patchCounter = 0;
  for (std::size_t s = 0; s < oriented.size(); ++s) {
    TriMesh& mesh = meshes[s];

    // Cut edges: both endpoints and the midpoint lie on the curve set.
    std::vector<bool> onCurve(mesh.V.size(), false);
    for (std::size_t v = 0; v < mesh.V.size(); ++v)
      onCurve[v] = distToSegs(mesh.V[v], curveSegs) < tol.eps;
    std::map<std::pair<int, int>, std::vector<int>> edgeFaces;
    for (std::size_t f = 0; f < mesh.F.size(); ++f)
      for (int e = 0; e < 3; ++e) {
        int a = mesh.F[f][e], b = mesh.F[f][(e + 1) % 3];
        auto k = std::minmax(a, b);
        edgeFaces[{k.first, k.second}].push_back(int(f));
      }
    std::set<std::pair<int, int>> cutEdges;
    for (const auto& [edge, faces] : edgeFaces) {
      if (!onCurve[edge.first] || !onCurve[edge.second]) continue;
      Vec3 mid = 0.5 * (mesh.V[edge.first] + mesh.V[edge.second]);
      if (distToSegs(mid, curveSegs) < tol.eps) cutEdges.insert(edge);
    }

    // Connected components across non-cut edges.
    DisjointSet ds(int(mesh.F.size()));
    for (const auto& [edge, faces] : edgeFaces) {
      if (cutEdges.count(edge)) continue;
      for (std::size_t i = 1; i < faces.size(); ++i) ds.unite(faces[0], faces[i]);
    }
    std::map<int, std::vector<int>> groups;
    for (std::size_t f = 0; f < mesh.F.size(); ++f) groups[ds.find(int(f))].push_back(int(f));

    for (const auto& [root, faces] : groups) {
      // Submesh with local indexing.
      TriMesh sub;
      std::unordered_map<int, int> vmap;
      auto local = [&](int v) {
        auto it = vmap.find(v);
        if (it != vmap.end()) return it->second;
        int idx = int(sub.V.size());
        sub.V.push_back(mesh.V[v]);
        vmap.emplace(v, idx);
        return idx;
      };
      std::vector<SurfacePatch::Slot> slots;
      for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const auto& f = mesh.F[faces[fi]];
        sub.F.push_back({local(f[0]), local(f[1]), local(f[2])});
        for (int e = 0; e < 3; ++e) {
          int a = f[e], b = f[(e + 1) % 3];
          auto k = std::minmax(a, b);
          if (!cutEdges.count({k.first, k.second})) continue;
          SurfacePatch::Slot slot;
          slot.a = mesh.V[a];
          slot.b = mesh.V[b];
          slot.normal = mesh.tri(faces[fi]).normal();
          slot.tri = int(fi);
          slots.push_back(slot);
        }
      }
      if (slots.empty()) {
        GluedSurface gs = makeGluedSurface(std::move(sub), surfaceIds[s]);
        out.closed_surfaces.push_back(std::move(gs));
      } else {
        SurfacePatch patch;
        patch.mesh = std::move(sub);
        patch.source_surface = surfaceIds[s];
        patch.patch_id = patchCounter++;
        patch.boundary_loops = chainLoops(slots);
        patch.slots = std::move(slots);
        out.patches.push_back(std::move(patch));
      }
    }
  }
  return out;
}

SegmentedSpadopag cut(const std::vector<GluedSurface>& surfaces,
                      const IntersectionSet& isect, const Tolerance& tol) {
  std::vector<TriMesh> oriented;
  std::vector<int> ids;
  for (const auto& s : surfaces) {
    oriented.push_back(s.oriented());
    ids.push_back(s.id);
  }
  return cutOriented(oriented, ids, isect, tol);
}

}  // namespace yinset
