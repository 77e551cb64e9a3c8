#include "yinset/shapes.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace yinset {
namespace shapes {

namespace {

constexpr double kPi = std::numbers::pi;

// Orthonormal frame (e1, e2, a) with a = normalize(axis).
void frameFromAxis(const Vec3& axis, Vec3& e1, Vec3& e2, Vec3& a) {
  a = axis.normalized();
  Vec3 seed = std::abs(a.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
  e1 = seed.cross(a).normalized();
  e2 = a.cross(e1);
}

int midpoint(TriMesh& m, std::map<std::pair<int, int>, int>& cache, int i, int j,
             const Vec3& center, double radius) {
  auto key = std::minmax(i, j);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Vec3 p = center + radius * ((m.V[i] + m.V[j]) * 0.5 - center).normalized();
  int idx = int(m.V.size());
  m.V.push_back(p);
  cache.emplace(key, idx);
  return idx;
}

}  // namespace

TriMesh icosphere(const Vec3& center, double radius, int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriMesh m;
  const double raw[12][3] = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                             {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                             {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (const auto& v : raw)
    m.V.push_back(center + radius * Vec3(v[0], v[1], v[2]).normalized());
  const int faces[20][3] = {{0, 11, 5}, {0, 5, 1},   {0, 1, 7},   {0, 7, 10},
                            {0, 10, 11}, {1, 5, 9},  {5, 11, 4},  {11, 10, 2},
                            {10, 7, 6},  {7, 1, 8},  {3, 9, 4},   {3, 4, 2},
                            {3, 2, 6},   {3, 6, 8},  {3, 8, 9},   {4, 9, 5},
                            {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (const auto& f : faces) m.F.push_back({f[0], f[1], f[2]});

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> cache;
    std::vector<std::array<int, 3>> next;
    next.reserve(m.F.size() * 4);
    for (const auto& f : m.F) {
      int ab = midpoint(m, cache, f[0], f[1], center, radius);
      int bc = midpoint(m, cache, f[1], f[2], center, radius);
      int ca = midpoint(m, cache, f[2], f[0], center, radius);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.F = std::move(next);
  }
  return m;
}

TriMesh uvSphere(const Vec3& center, double radius, int slices, int stacks,
                 const Vec3& axis) {
  Vec3 e1, e2, a;
  frameFromAxis(axis, e1, e2, a);
  TriMesh m;
  int north = 0, south = 1;
  m.V.push_back(center + radius * a);
  m.V.push_back(center - radius * a);
  // ring(s, k) for s = 1..stacks-1
  auto ringIdx = [&](int s, int k) { return 2 + (s - 1) * slices + (k % slices); };
  for (int s = 1; s < stacks; ++s) {
    double phi = kPi * s / stacks;
    for (int k = 0; k < slices; ++k) {
      double v = 2 * kPi * k / slices;
      Vec3 dir = std::sin(phi) * (std::cos(v) * e1 + std::sin(v) * e2) +
                 std::cos(phi) * a;
      m.V.push_back(center + radius * dir);
    }
  }
  for (int k = 0; k < slices; ++k) {
    m.F.push_back({north, ringIdx(1, k), ringIdx(1, k + 1)});
    m.F.push_back({south, ringIdx(stacks - 1, k + 1), ringIdx(stacks - 1, k)});
  }
  for (int s = 1; s + 1 < stacks; ++s)
    for (int k = 0; k < slices; ++k) {
      int a0 = ringIdx(s, k), a1 = ringIdx(s, k + 1);
      int b0 = ringIdx(s + 1, k), b1 = ringIdx(s + 1, k + 1);
      m.F.push_back({a0, b0, b1});
      m.F.push_back({a0, b1, a1});
    }
  return m;
}

TriMesh torus(const Vec3& center, double R, double r, int segMajor, int segMinor) {
  TriMesh m;
  for (int i = 0; i < segMajor; ++i) {
    double u = 2 * kPi * i / segMajor;
    std::vector<Vec3> ring = torusTubeCircle(center, R, r, u, segMinor);
    for (const auto& p : ring) m.V.push_back(p);
  }
  auto idx = [&](int i, int j) {
    return (i % segMajor) * segMinor + (j % segMinor);
  };
  for (int i = 0; i < segMajor; ++i)
    for (int j = 0; j < segMinor; ++j) {
      int a0 = idx(i, j), a1 = idx(i, j + 1);
      int b0 = idx(i + 1, j), b1 = idx(i + 1, j + 1);
      m.F.push_back({a0, b0, b1});
      m.F.push_back({a0, b1, a1});
    }
  return m;
}

std::vector<Vec3> torusTubeCircle(const Vec3& center, double R, double r,
                                  double u, int n) {
  std::vector<Vec3> ring;
  ring.reserve(n);
  double cu = std::cos(u), su = std::sin(u);
  for (int j = 0; j < n; ++j) {
    double v = 2 * kPi * j / n;
    double w = R + r * std::cos(v);
    ring.push_back(center + Vec3(w * cu, w * su, r * std::sin(v)));
  }
  return ring;
}

TriMesh box(const Vec3& lo, const Vec3& hi) {
  TriMesh m;
  for (int i = 0; i < 8; ++i)
    m.V.push_back(Vec3(i & 1 ? hi.x() : lo.x(), i & 2 ? hi.y() : lo.y(),
                       i & 4 ? hi.z() : lo.z()));
  // Quads with outward winding, split along a diagonal.
  const int quads[6][4] = {{0, 4, 6, 2},   // x = lo
                           {1, 3, 7, 5},   // x = hi
                           {0, 1, 5, 4},   // y = lo
                           {2, 6, 7, 3},   // y = hi
                           {0, 2, 3, 1},   // z = lo
                           {4, 5, 7, 6}};  // z = hi
  for (const auto& q : quads) {
    m.F.push_back({q[0], q[1], q[2]});
    m.F.push_back({q[0], q[2], q[3]});
  }
  return m;
}

namespace {

// Ellipsoid of revolution about z: x^2 + y^2 = re^2 (1 - (z/c)^2), with the
// equator ring z = 0 pinned to exact values shared between meshes.
TriMesh zEllipsoid(double re, double c, int slices, int stacks) {
  if (stacks % 2 != 0) ++stacks;
  TriMesh m;
  int north = 0, south = 1;
  m.V.push_back(Vec3(0, 0, c));
  m.V.push_back(Vec3(0, 0, -c));
  auto ringIdx = [&](int s, int k) { return 2 + (s - 1) * slices + (k % slices); };
  for (int s = 1; s < stacks; ++s) {
    for (int k = 0; k < slices; ++k) {
      double v = 2 * kPi * k / slices;
      if (s == stacks / 2) {
        m.V.push_back(Vec3(re * std::cos(v), re * std::sin(v), 0.0));
      } else {
        double phi = kPi * s / stacks;
        m.V.push_back(Vec3(re * std::sin(phi) * std::cos(v),
                           re * std::sin(phi) * std::sin(v), c * std::cos(phi)));
      }
    }
  }
  for (int k = 0; k < slices; ++k) {
    m.F.push_back({north, ringIdx(1, k), ringIdx(1, k + 1)});
    m.F.push_back({south, ringIdx(stacks - 1, k + 1), ringIdx(stacks - 1, k)});
  }
  for (int s = 1; s + 1 < stacks; ++s)
    for (int k = 0; k < slices; ++k) {
      int a0 = ringIdx(s, k), a1 = ringIdx(s, k + 1);
      int b0 = ringIdx(s + 1, k), b1 = ringIdx(s + 1, k + 1);
      m.F.push_back({a0, b0, b1});
      m.F.push_back({a0, b1, a1});
    }
  return m;
}

}  // namespace

std::pair<TriMesh, TriMesh> tangentEllipsoidPair(int slices, int stacks) {
  return {zEllipsoid(2.0, 1.0, slices, stacks),
          zEllipsoid(2.0, 0.5, slices, stacks)};
}

TriMesh pinnedSphere(const Vec3& center, double radius,
                     const std::vector<Vec3>& equatorRing, int stacks) {
  if (stacks % 2 != 0) ++stacks;
  const int slices = int(equatorRing.size());
  const double rRing = (equatorRing[0] - center).norm();
  Vec3 e1 = (equatorRing[0] - center) / rRing;
  Vec3 a = e1.cross((equatorRing[1] - center).normalized()).normalized();
  Vec3 e2 = a.cross(e1);

  TriMesh m;
  int north = 0, south = 1;
  m.V.push_back(center + radius * a);
  m.V.push_back(center - radius * a);
  auto ringIdx = [&](int s, int k) { return 2 + (s - 1) * slices + (k % slices); };
  for (int s = 1; s < stacks; ++s) {
    for (int k = 0; k < slices; ++k) {
      if (s == stacks / 2) {
        m.V.push_back(equatorRing[k]);
      } else {
        double phi = kPi * s / stacks;
        double rho = radius + (rRing - radius) * std::sin(phi);
        double v = 2 * kPi * k / slices;
        Vec3 dir = std::sin(phi) * (std::cos(v) * e1 + std::sin(v) * e2) +
                   std::cos(phi) * a;
        m.V.push_back(center + rho * dir);
      }
    }
  }
  for (int k = 0; k < slices; ++k) {
    m.F.push_back({north, ringIdx(1, k), ringIdx(1, k + 1)});
    m.F.push_back({south, ringIdx(stacks - 1, k + 1), ringIdx(stacks - 1, k)});
  }
  for (int s = 1; s + 1 < stacks; ++s)
    for (int k = 0; k < slices; ++k) {
      int a0 = ringIdx(s, k), a1 = ringIdx(s, k + 1);
      int b0 = ringIdx(s + 1, k), b1 = ringIdx(s + 1, k + 1);
      m.F.push_back({a0, b0, b1});
      m.F.push_back({a0, b1, a1});
    }
  return m;
}

GElement solid(TriMesh mesh, Rng& rng, const Tolerance& tol) {
  GluedSurface gs = makeGluedSurface(std::move(mesh));
  return GElement::of(decomposeAtoms({gs}, rng, tol));
}

GElement shell(const Vec3& center, double rOuter, double rInner, int level,
               Rng& rng, const Tolerance& tol) {
  GluedSurface outer = makeGluedSurface(icosphere(center, rOuter, level), 0);
  GluedSurface inner = makeGluedSurface(icosphere(center, rInner, level).flipped(), 1);
  return GElement::of(decomposeAtoms({outer, inner}, rng, tol));
}

}  // namespace shapes
}  // namespace yinset
