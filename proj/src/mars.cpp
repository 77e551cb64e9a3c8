#include "yinset/mars.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>

#include "yinset/booleans.hpp"
#include "yinset/membership.hpp"
#include "yinset/shapes.hpp"

namespace yinset {

namespace {
constexpr double kPi = std::numbers::pi;
}

VelocityField VelocityField::translation(const Vec3& v) {
  return {[v](const Vec3&, double) { return v; }};
}

VelocityField VelocityField::rotationZ(double omega) {
  return {[omega](const Vec3& p, double) {
    return Vec3(-omega * p.y(), omega * p.x(), 0.0);
  }};
}

VelocityField VelocityField::deformation(double T) {
  return {[T](const Vec3& p, double t) {
    const double c = std::cos(kPi * t / T);
    const double sx = std::sin(kPi * p.x()), sy = std::sin(kPi * p.y()),
                 sz = std::sin(kPi * p.z());
    const double s2x = std::sin(2 * kPi * p.x()),
                 s2y = std::sin(2 * kPi * p.y()),
                 s2z = std::sin(2 * kPi * p.z());
    return Vec3(2 * sx * sx * s2y * s2z * c, -s2x * sy * sy * s2z * c,
                -s2x * s2y * sz * sz * c);
  }};
}

TriMesh advectMesh(const TriMesh& mesh, const VelocityField& vel, double t0,
                   double dt) {
  TriMesh out = mesh;
  for (auto& p : out.V) {
    Vec3 k1 = vel(p, t0);
    Vec3 k2 = vel(p + 0.5 * dt * k1, t0 + 0.5 * dt);
    Vec3 k3 = vel(p + 0.5 * dt * k2, t0 + 0.5 * dt);
    Vec3 k4 = vel(p + dt * k3, t0 + dt);
    p += (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    if (!p.allFinite()) throw BlowUpError("non-finite vertex after advection");
  }
  return out;
}

namespace {

// Undirected edge (a < b) with its first two incident faces. Edges are
// produced in sorted (a, b) order so every pass is deterministic.
struct EdgeRec {
  int a, b;
  int f[2];
  int count;
};

std::uint64_t edgeKey(int a, int b) {
  return (std::uint64_t(std::min(a, b)) << 32) | std::uint32_t(std::max(a, b));
}

std::vector<EdgeRec> edgeRecords(const TriMesh& m) {
  std::vector<std::pair<std::uint64_t, int>> items;
  items.reserve(3 * m.F.size());
  for (std::size_t f = 0; f < m.F.size(); ++f)
    for (int e = 0; e < 3; ++e)
      items.emplace_back(edgeKey(m.F[f][e], m.F[f][(e + 1) % 3]), int(f));
  std::sort(items.begin(), items.end());
  std::vector<EdgeRec> recs;
  recs.reserve(items.size() / 2);
  for (std::size_t s = 0; s < items.size();) {
    std::size_t e = s;
    while (e < items.size() && items[e].first == items[s].first) ++e;
    EdgeRec r;
    r.a = int(items[s].first >> 32);
    r.b = int(items[s].first & 0xffffffffu);
    r.count = int(e - s);
    r.f[0] = items[s].second;
    r.f[1] = r.count > 1 ? items[s + 1].second : -1;
    recs.push_back(r);
    s = e;
  }
  return recs;
}

// Splits every manifold edge longer than hL at its midpoint (1-4 on the two
// incident triangles). Returns the number of splits.
int splitLongEdges(TriMesh& m, double hL) {
  int splits = 0;
  bool any = true;
  int guard = 0;
  while (any && guard++ < 20) {
    any = false;
    auto recs = edgeRecords(m);
    std::vector<char> dirty(m.F.size(), 0);
    for (const auto& r : recs) {
      if (r.count != 2) continue;
      if ((m.V[r.a] - m.V[r.b]).norm() <= hL) continue;
      if (dirty[r.f[0]] || dirty[r.f[1]]) continue;
      int mid = int(m.V.size());
      m.V.push_back(0.5 * (m.V[r.a] + m.V[r.b]));
      for (int fi = 0; fi < 2; ++fi) {
        int f = r.f[fi];
        auto tri = m.F[f];
        // Replace the far corner pairing: (a,b,c) -> (a,mid,c) + (mid,b,c)
        for (int k = 0; k < 3; ++k) {
          int i = tri[k], j = tri[(k + 1) % 3], c = tri[(k + 2) % 3];
          if ((i == r.a && j == r.b) || (i == r.b && j == r.a)) {
            m.F[f] = {i, mid, c};
            m.F.push_back({mid, j, c});
            break;
          }
        }
        dirty[f] = 1;
      }
      ++splits;
      any = true;
    }
  }
  return splits;
}

// Largest corner cosine of a triangle given its squared side lengths in any
// order. The smallest corner angle corresponds to the largest cosine, so
// angle comparisons reduce to cosine comparisons without trig calls.
double maxCornerCos(double s1, double s2, double s3) {
  double l1 = std::sqrt(s1), l2 = std::sqrt(s2), l3 = std::sqrt(s3);
  if (l1 * l2 * l3 == 0.0) return 1.0;
  return std::max({(s1 + s2 - s3) / (2 * l1 * l2), (s2 + s3 - s1) / (2 * l2 * l3),
                   (s3 + s1 - s2) / (2 * l3 * l1)});
}

// Collapses edges shorter than minLen to their midpoint when the link
// condition holds and no incident triangle's normal turns by more than 60
// degrees. Returns the number of collapses.
int collapseShortEdges(TriMesh& m, double minLen, const Tolerance& tol) {
  int collapses = 0;
  bool any = true;
  int guard = 0;
  while (any && guard++ < 50) {
    any = false;
    auto recs = edgeRecords(m);
    // Vertex -> neighbor vertices (sorted) and incident faces.
    std::vector<std::vector<int>> nbr(m.V.size());
    for (const auto& r : recs) {
      nbr[r.a].push_back(r.b);
      nbr[r.b].push_back(r.a);
    }
    for (auto& v : nbr) std::sort(v.begin(), v.end());
    std::vector<std::vector<int>> vfaces(m.V.size());
    for (std::size_t f = 0; f < m.F.size(); ++f)
      for (int k = 0; k < 3; ++k) vfaces[m.F[f][k]].push_back(int(f));

    // Several collapses per sweep; a dirty mark keeps each decision on the
    // adjacency snapshot it was computed from.
    std::vector<char> vdirty(m.V.size(), 0);
    std::vector<char> fdead(m.F.size(), 0);
    bool compact = false;
    for (const auto& r : recs) {
      if (r.count != 2) continue;
      if (vdirty[r.a] || vdirty[r.b]) continue;
      if ((m.V[r.a] - m.V[r.b]).norm() >= minLen) continue;
      // Link condition: common neighbors are exactly the two far corners.
      std::vector<int> common;
      std::set_intersection(nbr[r.a].begin(), nbr[r.a].end(), nbr[r.b].begin(),
                            nbr[r.b].end(), std::back_inserter(common));
      if (common.size() != 2) continue;

      Vec3 mid = 0.5 * (m.V[r.a] + m.V[r.b]);
      // Normal guard over all surviving incident triangles.
      bool ok = true;
      auto guardFace = [&](int f) {
        if (fdead[f]) return true;
        auto tri = m.F[f];
        bool dies = false;
        Vec3 p[3];
        for (int k = 0; k < 3; ++k) {
          if (tri[k] == r.a || tri[k] == r.b) {
            if ((tri[(k + 1) % 3] == r.a || tri[(k + 1) % 3] == r.b))
              dies = true;
            p[k] = mid;
          } else {
            p[k] = m.V[tri[k]];
          }
        }
        if (dies) return true;
        Vec3 oldN = m.tri(f).normal();
        Vec3 newCross = (p[1] - p[0]).cross(p[2] - p[0]);
        return newCross.norm() >= 2 * tol.areaFloor() &&
               oldN.dot(newCross.normalized()) >= 0.5;
      };
      for (int f : vfaces[r.a])
        if (!guardFace(f)) { ok = false; break; }
      if (ok)
        for (int f : vfaces[r.b])
          if (!guardFace(f)) { ok = false; break; }
      if (!ok) continue;

      m.V[r.a] = mid;
      for (int f : vfaces[r.b]) {
        if (fdead[f]) continue;
        auto& tri = m.F[f];
        for (int k = 0; k < 3; ++k)
          if (tri[k] == r.b) tri[k] = r.a;
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[2] == tri[0])
          fdead[f] = 1;
        else
          vfaces[r.a].push_back(f);
      }
      // Everything whose one-ring changed is off limits for this sweep.
      vdirty[r.a] = vdirty[r.b] = 1;
      for (int u : nbr[r.a]) vdirty[u] = 1;
      for (int u : nbr[r.b]) vdirty[u] = 1;
      compact = true;
      ++collapses;
      any = true;
    }
    if (compact) {
      std::vector<std::array<int, 3>> keep;
      keep.reserve(m.F.size());
      for (std::size_t f = 0; f < m.F.size(); ++f)
        if (!fdead[f]) keep.push_back(m.F[f]);
      m.F = std::move(keep);
    }
  }
  // Drop unreferenced vertices.
  std::vector<int> remap(m.V.size(), -1);
  std::vector<Vec3> nv;
  for (auto& tri : m.F)
    for (int k = 0; k < 3; ++k) {
      if (remap[tri[k]] < 0) {
        remap[tri[k]] = int(nv.size());
        nv.push_back(m.V[tri[k]]);
      }
      tri[k] = remap[tri[k]];
    }
  m.V = std::move(nv);
  return collapses;
}

double meshMinAngle(const TriMesh& m) {
  double worstCos = -1.0;
  for (const auto& t : m.F) {
    worstCos = std::max(
        worstCos, maxCornerCos((m.V[t[1]] - m.V[t[0]]).squaredNorm(),
                               (m.V[t[2]] - m.V[t[1]]).squaredNorm(),
                               (m.V[t[0]] - m.V[t[2]]).squaredNorm()));
  }
  return std::acos(std::clamp(worstCos, -1.0, 1.0));
}

int flipPass(TriMesh& m, double hL) {
  int flips = 0;
  auto recs = edgeRecords(m);
  std::vector<char> dirty(m.F.size(), 0);
  std::set<std::uint64_t> newDiagonals;
  auto hasEdge = [&](std::uint64_t key) {
    auto it = std::lower_bound(
        recs.begin(), recs.end(), key,
        [](const EdgeRec& r, std::uint64_t k) { return edgeKey(r.a, r.b) < k; });
    return it != recs.end() && edgeKey(it->a, it->b) == key;
  };
  for (const auto& r : recs) {
    if (r.count != 2) continue;
    if (dirty[r.f[0]] || dirty[r.f[1]]) continue;
    int f0 = r.f[0], f1 = r.f[1];
    auto corner = [&](int f) {
      for (int k = 0; k < 3; ++k) {
        int v = m.F[f][k];
        if (v != r.a && v != r.b) return v;
      }
      return -1;
    };
    int c0 = corner(f0), c1 = corner(f1);
    if (c0 < 0 || c1 < 0 || c0 == c1) continue;
    // Skip if the flipped diagonal already exists, either in the original
    // mesh or as the result of an earlier flip in this pass.
    std::uint64_t diag = edgeKey(c0, c1);
    if (hasEdge(diag) || newDiagonals.count(diag)) continue;

    double cc2 = (m.V[c0] - m.V[c1]).squaredNorm();
    if (cc2 > hL * hL) continue;
    // The four triangles of the quad share six side lengths; compare worst
    // corner angles via largest cosines (smaller max cosine = better quad).
    double ab2 = (m.V[r.a] - m.V[r.b]).squaredNorm();
    double a0 = (m.V[c0] - m.V[r.a]).squaredNorm();
    double b0 = (m.V[c0] - m.V[r.b]).squaredNorm();
    double a1 = (m.V[c1] - m.V[r.a]).squaredNorm();
    double b1 = (m.V[c1] - m.V[r.b]).squaredNorm();
    double oldMaxCos =
        std::max(maxCornerCos(ab2, a0, b0), maxCornerCos(ab2, a1, b1));
    double newMaxCos =
        std::max(maxCornerCos(cc2, a0, a1), maxCornerCos(cc2, b0, b1));
    if (newMaxCos >= oldMaxCos - 1e-12) continue;
    // Keep the normals coherent.
    Vec3 n0 = m.tri(f0).normal() + m.tri(f1).normal();
    Vec3 na = (m.V[c1] - m.V[c0]).cross(m.V[r.a] - m.V[c0]);
    Vec3 nb = (m.V[c0] - m.V[c1]).cross(m.V[r.b] - m.V[c1]);
    if (na.dot(n0) <= 0 || nb.dot(n0) <= 0) continue;

    // Rewind preserving orientation; the two cases are a<->b symmetric with
    // each corner staying opposite its original face.
    auto f0TraversesAB = [&] {
      for (int k = 0; k < 3; ++k) {
        int i = m.F[f0][k], j = m.F[f0][(k + 1) % 3];
        if (i == r.a && j == r.b) return true;
        if (i == r.b && j == r.a) return false;
      }
      return true;
    };
    if (f0TraversesAB()) {
      m.F[f0] = {r.a, c1, c0};
      m.F[f1] = {r.b, c0, c1};
    } else {
      m.F[f0] = {r.b, c1, c0};
      m.F[f1] = {r.a, c0, c1};
    }
    dirty[f0] = 1;
    dirty[f1] = 1;
    newDiagonals.insert(diag);
    ++flips;
  }
  return flips;
}

int smoothPass(TriMesh& m, double maxStep) {
  // On a closed oriented mesh each directed edge occurs once, so the heads
  // of the directed edges list each one-ring exactly once. Stored flat
  // (offsets + heads) to avoid per-vertex allocations.
  std::vector<int> deg(m.V.size() + 1, 0);
  for (const auto& t : m.F)
    for (int k = 0; k < 3; ++k) ++deg[t[k] + 1];
  for (std::size_t v = 1; v < deg.size(); ++v) deg[v] += deg[v - 1];
  std::vector<int> heads(m.F.size() * 3);
  {
    std::vector<int> fill(deg.begin(), deg.end() - 1);
    for (const auto& t : m.F)
      for (int k = 0; k < 3; ++k) heads[fill[t[k]]++] = t[(k + 1) % 3];
  }
  // Area-weighted vertex normals for the tangential projection.
  std::vector<Vec3> vn(m.V.size(), Vec3::Zero());
  for (std::size_t f = 0; f < m.F.size(); ++f) {
    Triangle t = m.tri(int(f));
    Vec3 an = (t.b - t.a).cross(t.c - t.a);
    for (int k = 0; k < 3; ++k) vn[m.F[f][k]] += an;
  }
  std::vector<Vec3> nv = m.V;
  int moved = 0;
  for (std::size_t v = 0; v < m.V.size(); ++v) {
    int n0 = deg[v], n1 = deg[v + 1];
    if (n0 == n1) continue;
    Vec3 c = Vec3::Zero();
    for (int i = n0; i < n1; ++i) c += m.V[heads[i]];
    c /= double(n1 - n0);
    Vec3 d = 0.5 * (c - m.V[v]);
    double nn = vn[v].norm();
    if (nn > 0) {
      Vec3 n = vn[v] / nn;
      d -= d.dot(n) * n;
    }
    if (d.norm() > maxStep) d *= maxStep / d.norm();
    if (d.norm() > 0) ++moved;
    nv[v] = m.V[v] + d;
  }
  m.V = std::move(nv);
  return moved;
}

}  // namespace

MarsStats regularizeMesh(TriMesh& mesh, const MarsParams& params,
                         const Tolerance& tol) {
  MarsStats st;
  st.splits = splitLongEdges(mesh, params.hL);
  st.collapses = collapseShortEdges(mesh, params.rTiny * params.hL, tol);

  const double target = params.minAngleDeg * kPi / 180.0;
  for (int it = 0; it < params.maxQualityIters; ++it) {
    if (meshMinAngle(mesh) >= target) break;
    int flips = flipPass(mesh, params.hL);
    st.flips += flips;
    smoothPass(mesh, params.hL / 10.0);
    ++st.smooth_iters;
    if (flips == 0 && it > 10) break;
  }
  st.min_angle_deg = meshMinAngle(mesh) * 180.0 / kPi;
  st.quality_reached = st.min_angle_deg >= params.minAngleDeg - 1e-9;
  if (!mesh.isClosed())
    throw CannotRegularizeError("regularization broke surface closedness");
  return st;
}

GElement advanceInterface(const GElement& g, const VelocityField& vel,
                          double t0, double dt, const MarsParams& params,
                          MarsStats* stats) {
  if (!g.isShape()) return g;
  GElement out = g;
  Tolerance tol = defaultTolerance(g.shape.surfaces());
  MarsStats agg;
  for (auto& atom : out.shape.atoms) {
    auto step = [&](GluedSurface& s) {
      s.mesh = advectMesh(s.mesh, vel, t0, dt);
      MarsStats st = regularizeMesh(s.mesh, params, tol);
      agg.splits += st.splits;
      agg.collapses += st.collapses;
      agg.flips += st.flips;
      agg.smooth_iters += st.smooth_iters;
      agg.min_angle_deg = agg.min_angle_deg == 0
                              ? st.min_angle_deg
                              : std::min(agg.min_angle_deg, st.min_angle_deg);
      agg.quality_reached = agg.quality_reached && st.quality_reached;
    };
    if (atom.positive) step(*atom.positive);
    for (auto& neg : atom.negatives) step(neg);
  }
  if (stats) *stats = agg;
  return out;
}

GElement trackInterface(
    const GElement& g, const VelocityField& vel, double t0, double t1,
    const MarsParams& params,
    const std::function<void(double, const GElement&)>& checkpoint) {
  GElement cur = g;
  double t = t0;
  const double dt0 = params.stepSize();
  while (t < t1 - 1e-12) {
    double dt = std::min(dt0, t1 - t);
    cur = advanceInterface(cur, vel, t, dt, params);
    t += dt;
    if (checkpoint) checkpoint(t, cur);
  }
  return cur;
}

std::vector<LocalSolution> localSolutions(const GElement& g, const Aabb& box,
                                          int cellsPerSide, Rng& rng,
                                          const Tolerance& tol) {
  std::vector<LocalSolution> out;
  if (g.isBottom()) return out;
  ShapeIndex idx(g);
  Vec3 d = (box.hi - box.lo) / double(cellsPerSide);
  for (int k = 0; k < cellsPerSide; ++k)
    for (int j = 0; j < cellsPerSide; ++j)
      for (int i = 0; i < cellsPerSide; ++i) {
        Aabb cell;
        cell.extend(box.lo + Vec3(i * d.x(), j * d.y(), k * d.z()));
        cell.extend(box.lo + Vec3((i + 1) * d.x(), (j + 1) * d.y(), (k + 1) * d.z()));
        Vec3 c = cell.center();
        double bd = idx.boundaryDistance(c);
        double half = 0.5 * cell.diagonal();
        if (bd > half) {
          // Uncut cell: inside keeps the whole cube, outside drops it.
          if (g.isTop() || idx.classify(c, rng, tol) == PointClass::Inside) {
            GluedSurface cube =
                makeGluedSurface(shapes::box(cell.lo, cell.hi));
            RealizableSpadopag sp;
            sp.atoms.push_back({cube, {}});
            out.push_back({cell, GElement::of(std::move(sp))});
          }
          continue;
        }
        GluedSurface cube = makeGluedSurface(shapes::box(cell.lo, cell.hi));
        RealizableSpadopag sp;
        sp.atoms.push_back({cube, {}});
        GElement cellEl = GElement::of(std::move(sp));
        GElement local = meet(g, cellEl, rng, tol);
        if (!local.isBottom()) out.push_back({cell, std::move(local)});
      }
  return out;
}

}  // namespace yinset
