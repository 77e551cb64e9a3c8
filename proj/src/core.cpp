#include "yinset/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace yinset {

std::vector<std::pair<int, int>> TriMesh::unmatchedEdges() const {
  std::map<std::pair<int, int>, int> count;
  for (const auto& f : F) {
    for (int e = 0; e < 3; ++e) {
      int a = f[e], b = f[(e + 1) % 3];
      count[{a, b}] += 1;
    }
  }
  std::vector<std::pair<int, int>> bad;
  for (const auto& [edge, n] : count) {
    auto rev = count.find({edge.second, edge.first});
    int m = rev == count.end() ? 0 : rev->second;
    if (n != 1 || m != 1) bad.push_back(edge);
  }
  return bad;
}

double TriMesh::signedVolume() const {
  auto bad = unmatchedEdges();
  if (!bad.empty())
    throw NotClosedError("mesh has " + std::to_string(bad.size()) +
                         " unmatched directed edges");
  double v = 0;
  for (const auto& f : F) {
    const Vec3 &a = V[f[0]], &b = V[f[1]], &c = V[f[2]];
    v += a.dot(b.cross(c));
  }
  return v / 6.0;
}

Vec3 areaVectorSum(const TriMesh& m) {
  Vec3 s = Vec3::Zero();
  for (std::size_t f = 0; f < m.F.size(); ++f)
    s += 0.5 * m.tri(int(f)).normalUnnormalized();
  return s;
}

std::uint64_t PointRegistry::keyOf(std::int64_t i, std::int64_t j,
                                   std::int64_t k) const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t v : {i, j, k}) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

int PointRegistry::find(const Vec3& p) const {
  std::int64_t ci = cellOf(p.x()), cj = cellOf(p.y()), ck = cellOf(p.z());
  int best = -1;
  double bestd = eps_;
  for (std::int64_t di = -1; di <= 1; ++di)
    for (std::int64_t dj = -1; dj <= 1; ++dj)
      for (std::int64_t dk = -1; dk <= 1; ++dk) {
        auto it = grid_.find(keyOf(ci + di, cj + dj, ck + dk));
        if (it == grid_.end()) continue;
        for (int idx : it->second) {
          double d = (pts_[idx] - p).norm();
          if (d < bestd) {
            bestd = d;
            best = idx;
          }
        }
      }
  return best;
}

int PointRegistry::canonicalIndex(const Vec3& p) {
  int idx = find(p);
  if (idx >= 0) return idx;
  idx = int(pts_.size());
  pts_.push_back(p);
  grid_[keyOf(cellOf(p.x()), cellOf(p.y()), cellOf(p.z()))].push_back(idx);
  return idx;
}

Vec3 PointRegistry::canonical(const Vec3& p) { return pts_[canonicalIndex(p)]; }

TriMesh weldMesh(const std::vector<Triangle>& tris, PointRegistry& reg,
                 const Tolerance& tol) {
  TriMesh m;
  std::unordered_map<int, int> regToLocal;
  auto local = [&](const Vec3& p) {
    int ci = reg.canonicalIndex(p);
    auto it = regToLocal.find(ci);
    if (it != regToLocal.end()) return it->second;
    int idx = int(m.V.size());
    m.V.push_back(reg.point(ci));
    regToLocal.emplace(ci, idx);
    return idx;
  };
  for (const auto& t : tris) {
    int a = local(t.a), b = local(t.b), c = local(t.c);
    if (a == b || b == c || a == c) continue;
    if (Triangle{m.V[a], m.V[b], m.V[c]}.area() < tol.areaFloor()) continue;
    m.F.push_back({a, b, c});
  }
  return m;
}

}  // namespace yinset
