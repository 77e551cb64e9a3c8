#include "yinset/pasting.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numbers>
#include <optional>

namespace yinset {

double directedAngle(const Vec3& nA, const Vec3& nB, const Vec3& rp,
                     const Tolerance& tol) {
  Vec3 cross = nA.cross(nB);
  double sinA = std::clamp(cross.norm(), 0.0, 1.0);
  double cosA = std::clamp(nA.dot(nB), -1.0, 1.0);
  double alpha = std::atan2(sinA, cosA);
  if (sinA < tol.eps) {
    if (cosA > 0) return std::numbers::pi;  // flat continuation
    throw FoldBackError("mate normal is antiparallel; directed angle undefined");
  }
  return cross.dot(rp) > 0 ? std::numbers::pi - alpha : std::numbers::pi + alpha;
}

int selectMate(const Vec3& nA, const Vec3& rp,
               const std::vector<Vec3>& candidateNormals, const Tolerance& tol) {
  if (candidateNormals.empty()) throw NoCandidateError("no patch shares the curve");
  int best = -1;
  double bestTheta = 0;
  for (std::size_t i = 0; i < candidateNormals.size(); ++i) {
    double theta = directedAngle(nA, candidateNormals[i], rp, tol);
    if (best < 0 || theta < bestTheta - kAngularEps) {
      best = int(i);
      bestTheta = theta;
    } else if (theta < bestTheta + kAngularEps && int(i) != best) {
      throw AmbiguousTieError("two mates within angular eps along the curve");
    }
  }
  return best;
}

namespace {

struct BitKey {
  std::array<std::uint64_t, 3> w;
  bool operator<(const BitKey& o) const { return w < o.w; }
  bool operator==(const BitKey& o) const { return w == o.w; }
};

BitKey keyOf(const Vec3& p) {
  BitKey k;
  std::memcpy(k.w.data(), p.data(), 24);
  return k;
}

struct EdgeKey {
  BitKey lo, hi;
  bool operator<(const EdgeKey& o) const { return std::tie(lo, hi) < std::tie(o.lo, o.hi); }
};

EdgeKey edgeKeyOf(const Vec3& a, const Vec3& b) {
  BitKey ka = keyOf(a), kb = keyOf(b);
  return ka < kb ? EdgeKey{ka, kb} : EdgeKey{kb, ka};
}

struct SlotRef {
  int patch;
  int slot;
};

// Glues a pool of patches into closed oriented meshes by the per-edge
// minimal-directed-angle rule. Gluing is greedy and deterministic: patches
// in ascending (source surface, patch id), slots in construction order.
std::vector<TriMesh> glueAll(std::vector<SurfacePatch> patches, const Tolerance& tol) {
  std::vector<int> order(patches.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(patches[a].source_surface, patches[a].patch_id) <
           std::tie(patches[b].source_surface, patches[b].patch_id);
  });

  // Global slot index by undirected edge key.
  std::map<EdgeKey, std::vector<SlotRef>> slotsAt;
  for (int pi : order)
    for (std::size_t si = 0; si < patches[pi].slots.size(); ++si)
      slotsAt[edgeKeyOf(patches[pi].slots[si].a, patches[pi].slots[si].b)].push_back(
          {pi, int(si)});

  std::vector<bool> inAssembly(patches.size(), false);
  std::vector<bool> consumed(patches.size(), false);
  std::vector<TriMesh> results;

  for (int seed : order) {
    if (consumed[seed]) continue;
    std::vector<int> members{seed};
    inAssembly[seed] = true;
    consumed[seed] = true;

    auto nextUnmatched = [&]() -> std::optional<SlotRef> {
      for (int pi : members)
        for (std::size_t si = 0; si < patches[pi].slots.size(); ++si)
          if (!patches[pi].slots[si].matched) return SlotRef{pi, int(si)};
      return std::nullopt;
    };

    while (auto open = nextUnmatched()) {
      auto& beta = patches[open->patch].slots[open->slot];
      Vec3 rp = (beta.b - beta.a).normalized();
      // Candidates: unmatched slots on the same edge, traversed oppositely.
      std::vector<SlotRef> cands;
      std::vector<Vec3> candNormals;
      for (const auto& ref : slotsAt[edgeKeyOf(beta.a, beta.b)]) {
        if (ref.patch == open->patch && ref.slot == open->slot) continue;
        const auto& cand = patches[ref.patch].slots[ref.slot];
        if (cand.matched) continue;
        if (!(keyOf(cand.a) == keyOf(beta.b) && keyOf(cand.b) == keyOf(beta.a)))
          continue;  // must share the curve with opposite orientation
        // Exact-coincident duplicates enter the neighborhood once.
        bool dup = false;
        for (const auto& n : candNormals)
          if ((n - cand.normal).norm() < kAngularEps) dup = true;
        if (dup) continue;
        cands.push_back(ref);
        candNormals.push_back(cand.normal);
      }
      if (cands.empty())
        throw GluingStuckError("boundary edge has no admissible mate");
      int pick = selectMate(beta.normal, rp, candNormals, tol);
      auto& mate = patches[cands[pick].patch].slots[cands[pick].slot];
      beta.matched = true;
      mate.matched = true;
      if (!inAssembly[cands[pick].patch]) {
        inAssembly[cands[pick].patch] = true;
        consumed[cands[pick].patch] = true;
        members.push_back(cands[pick].patch);
      }
    }

    // Assembly closed: merge member triangles (vertices are exact-shared).
    TriMesh merged;
    std::map<BitKey, int> vmap;
    auto local = [&](const Vec3& p) {
      auto [it, fresh] = vmap.try_emplace(keyOf(p), int(merged.V.size()));
      if (fresh) merged.V.push_back(p);
      return it->second;
    };
    for (int pi : members)
      for (const auto& f : patches[pi].mesh.F)
        merged.F.push_back({local(patches[pi].mesh.V[f[0]]),
                            local(patches[pi].mesh.V[f[1]]),
                            local(patches[pi].mesh.V[f[2]])});
    results.push_back(std::move(merged));
  }
  return results;
}

}  // namespace

std::vector<GluedSurface> divide(const TriMesh& closedOriented, const Tolerance& tol) {
  // C2G-1/2: segment at self-intersections, then reverse every patch.
  TriMesh reversed = closedOriented.flipped();
  IntersectionSet isect = selfIntersections(reversed, tol);
  SegmentedSpadopag seg = cutOriented({reversed}, {0}, isect, tol);

  std::vector<GluedSurface> out;
  // Pieces closed already by the segmentation pass straight through (their
  // double reversal is a no-op).
  for (auto& s : seg.closed_surfaces) out.push_back(std::move(s));
  // C2G-3: glue with the same rule, then reverse each closure back.
  for (TriMesh& closed : glueAll(std::move(seg.patches), tol)) {
    closed.flip();
    out.push_back(makeGluedSurface(std::move(closed)));
  }
  return out;
}

std::vector<GluedSurface> paste(const SegmentedSpadopag& seg, const Tolerance& tol) {
  std::vector<GluedSurface> out = seg.closed_surfaces;  // S2R-1
  for (TriMesh& closed : glueAll(seg.patches, tol)) {
    IntersectionSet self = selfIntersections(closed, tol);
    if (self.curves.empty()) {
      out.push_back(makeGluedSurface(std::move(closed)));  // S2R-3 direct
    } else {
      for (auto& s : divide(closed, tol)) out.push_back(std::move(s));
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = int(i);
  return out;
}

}  // namespace yinset
