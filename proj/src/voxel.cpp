#include "yinset/voxel.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace yinset {

namespace {

// Crossing x-values of the axis line (y0, z0) with the mesh. Returns false
// when the line grazes a vertex/edge or an eps-parallel facet.
bool columnCrossings(const TriMesh& mesh, double y0, double z0, double guard,
                     std::vector<double>& xs) {
  xs.clear();
  for (const auto& f : mesh.F) {
    const Vec3 &a = mesh.V[f[0]], &b = mesh.V[f[1]], &c = mesh.V[f[2]];
    auto side = [&](const Vec3& p, const Vec3& q) {
      return (q.y() - p.y()) * (z0 - p.z()) - (q.z() - p.z()) * (y0 - p.y());
    };
    double s1 = side(a, b), s2 = side(b, c), s3 = side(c, a);
    bool pos = s1 > guard && s2 > guard && s3 > guard;
    bool neg = s1 < -guard && s2 < -guard && s3 < -guard;
    bool zeroish = std::abs(s1) <= guard || std::abs(s2) <= guard || std::abs(s3) <= guard;
    if (pos || neg) {
      double area2 = s1 + s2 + s3;  // twice the signed projected area
      if (std::abs(area2) < 1e-14) return false;
      double w1 = s2 / area2, w2 = s3 / area2, w3 = s1 / area2;
      xs.push_back(w1 * a.x() + w2 * b.x() + w3 * c.x());
    } else if (zeroish) {
      // Near an edge/vertex in projection, or an eps-parallel facet. Check
      // whether the line passes close to the triangle's projected hull.
      double minY = std::min({a.y(), b.y(), c.y()}) - guard;
      double maxY = std::max({a.y(), b.y(), c.y()}) + guard;
      double minZ = std::min({a.z(), b.z(), c.z()}) - guard;
      double maxZ = std::max({a.z(), b.z(), c.z()}) + guard;
      if (y0 >= minY && y0 <= maxY && z0 >= minZ && z0 <= maxZ) return false;
    }
  }
  std::sort(xs.begin(), xs.end());
  return true;
}

}  // namespace

VoxelGrid voxelizeMesh(const TriMesh& mesh, const Aabb& box, int res) {
  VoxelGrid g;
  g.res = res;
  g.box = box;
  g.inside.assign(std::size_t(res) * res * res, 0);
  Vec3 d = box.hi - box.lo;
  double guard = 1e-9 * std::max({d.x(), d.y(), d.z()});
  std::vector<double> xs;
  for (int k = 0; k < res; ++k) {
    for (int j = 0; j < res; ++j) {
      Vec3 base = g.center(0, j, k);
      double y0 = base.y(), z0 = base.z();
      // Deterministic jitter ladder against grazing lines.
      bool ok = false;
      for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
        double off = attempt * 0.131 * d.norm() * 1e-7;
        ok = columnCrossings(mesh, y0 + off, z0 + off * 0.618, guard, xs);
      }
      if (!ok) continue;  // leave the column outside; jitter exhausted
      for (int i = 0; i < res; ++i) {
        double x = g.center(i, j, k).x();
        std::size_t n = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
        if (n % 2 == 1) g.inside[g.index(i, j, k)] = 1;
      }
    }
  }
  return g;
}

VoxelGrid voxelizeElement(const GElement& g, const Aabb& box, int res) {
  VoxelGrid out;
  out.res = res;
  out.box = box;
  std::size_t n = std::size_t(res) * res * res;
  out.inside.assign(n, g.isTop() ? 1 : 0);
  if (!g.isShape()) return out;
  for (const auto& atom : g.shape.atoms) {
    std::vector<std::uint8_t> inAtom(n, 1);
    for (const auto* s : atom.surfaces()) {
      VoxelGrid vg = voxelizeMesh(s->mesh, box, res);
      for (std::size_t i = 0; i < n; ++i) {
        bool bounded = vg.inside[i] != 0;
        bool interior = s->sign == Orientation::Positive ? bounded : !bounded;
        if (!interior) inAtom[i] = 0;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (inAtom[i]) out.inside[i] = 1;
  }
  return out;
}

int labelComponents(const VoxelGrid& grid, std::vector<int>& labels) {
  int res = grid.res;
  labels.assign(grid.inside.size(), -1);
  int count = 0;
  for (int k = 0; k < res; ++k)
    for (int j = 0; j < res; ++j)
      for (int i = 0; i < res; ++i) {
        std::size_t idx = grid.index(i, j, k);
        if (!grid.inside[idx] || labels[idx] >= 0) continue;
        int label = count++;
        std::queue<std::array<int, 3>> q;
        q.push({i, j, k});
        labels[idx] = label;
        while (!q.empty()) {
          auto [ci, cj, ck] = q.front();
          q.pop();
          const int d[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                               {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
          for (const auto& dd : d) {
            int ni = ci + dd[0], nj = cj + dd[1], nk = ck + dd[2];
            if (ni < 0 || nj < 0 || nk < 0 || ni >= res || nj >= res || nk >= res)
              continue;
            std::size_t nidx = grid.index(ni, nj, nk);
            if (!grid.inside[nidx] || labels[nidx] >= 0) continue;
            labels[nidx] = label;
            q.push({ni, nj, nk});
          }
        }
      }
  return count;
}

}  // namespace yinset
