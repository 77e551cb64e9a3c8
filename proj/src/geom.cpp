#include "yinset/geom.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace yinset {

double pointSegmentDistance(const Vec3& p, const Vec3& a, const Vec3& b) {
  Vec3 ab = b - a;
  double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double pointTriangleDistance(const Vec3& p, const Triangle& t) {
  Vec3 n = t.normalUnnormalized();
  double n2 = n.squaredNorm();
  if (n2 > 0) {
    Vec3 q = p - n * ((p - t.a).dot(n) / n2);
    // Inside test via same-side checks against the three edges.
    bool inside = true;
    const Vec3* v[3] = {&t.a, &t.b, &t.c};
    for (int e = 0; e < 3; ++e) {
      Vec3 edge = *v[(e + 1) % 3] - *v[e];
      if (edge.cross(q - *v[e]).dot(n) < 0) {
        inside = false;
        break;
      }
    }
    if (inside) return (p - q).norm();
  }
  double d = pointSegmentDistance(p, t.a, t.b);
  d = std::min(d, pointSegmentDistance(p, t.b, t.c));
  d = std::min(d, pointSegmentDistance(p, t.c, t.a));
  return d;
}

bool epsParallel(const Vec3& v1, const Vec3& v2, const Tolerance& tol) {
  return v1.cross(v2).norm() < tol.eps * v1.norm() * v2.norm();
}

namespace {

// Contact of a triangle with a plane: up to two points (after snapping
// near-plane vertices onto the plane).
std::vector<Vec3> planeContact(const Triangle& t, const Vec3& n, double d,
                               const Tolerance& tol) {
  double dist[3];
  const Vec3* v[3] = {&t.a, &t.b, &t.c};
  for (int i = 0; i < 3; ++i) {
    dist[i] = n.dot(*v[i]) - d;
    if (std::abs(dist[i]) < tol.eps) dist[i] = 0.0;
  }
  std::vector<Vec3> pts;
  auto push = [&](const Vec3& p) {
    for (const auto& q : pts)
      if ((q - p).norm() < tol.eps) return;
    pts.push_back(p);
  };
  for (int i = 0; i < 3; ++i) {
    if (dist[i] == 0.0) push(*v[i]);
    int j = (i + 1) % 3;
    if (dist[i] * dist[j] < 0.0) {
      double s = dist[i] / (dist[i] - dist[j]);
      push(*v[i] + s * (*v[j] - *v[i]));
    }
  }
  return pts;
}

// Clips polygon `poly` (2D, CCW) against half-plane to the left of a->b.
std::vector<Vec2> clipHalfPlane(const std::vector<Vec2>& poly, const Vec2& a,
                                const Vec2& b, double eps) {
  std::vector<Vec2> out;
  Vec2 dir = b - a;
  auto side = [&](const Vec2& p) { return dir.x() * (p.y() - a.y()) - dir.y() * (p.x() - a.x()); };
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    double sp = side(p), sq = side(q);
    if (sp >= -eps) out.push_back(p);
    if ((sp > eps && sq < -eps) || (sp < -eps && sq > eps)) {
      double t = sp / (sp - sq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

}  // namespace

TriTriIntersection triTriIntersect(const Triangle& t1, const Triangle& t2,
                                   const Tolerance& tol) {
  if (t1.area() < tol.areaFloor() || t2.area() < tol.areaFloor())
    throw DegenerateInputError("triangle below area floor");

  Vec3 n1 = t1.normal(), n2 = t2.normal();
  double d2 = n2.dot(t2.a);

  // Coplanar when all of t1's vertices are within eps of t2's plane.
  bool coplanar = std::abs(n2.dot(t1.a) - d2) < tol.eps &&
                  std::abs(n2.dot(t1.b) - d2) < tol.eps &&
                  std::abs(n2.dot(t1.c) - d2) < tol.eps;

  TriTriIntersection out;
  if (coplanar) {
    // 2D clip of t1 against t2 in t2's plane.
    Vec3 e1 = (t2.b - t2.a).normalized();
    Vec3 e2 = n2.cross(e1);
    auto to2d = [&](const Vec3& p) {
      return Vec2((p - t2.a).dot(e1), (p - t2.a).dot(e2));
    };
    auto to3d = [&](const Vec2& p) { return t2.a + p.x() * e1 + p.y() * e2; };
    std::vector<Vec2> poly = {to2d(t1.a), to2d(t1.b), to2d(t1.c)};
    // t1's projected winding may be reversed relative to t2's normal.
    double twice = (poly[1] - poly[0]).x() * (poly[2] - poly[0]).y() -
                   (poly[1] - poly[0]).y() * (poly[2] - poly[0]).x();
    if (twice < 0) std::swap(poly[1], poly[2]);
    Vec2 a = to2d(t2.a), b = to2d(t2.b), c = to2d(t2.c);
    poly = clipHalfPlane(poly, a, b, tol.eps);
    if (!poly.empty()) poly = clipHalfPlane(poly, b, c, tol.eps);
    if (!poly.empty()) poly = clipHalfPlane(poly, c, a, tol.eps);
    // Dedup eps-equal consecutive vertices.
    std::vector<Vec2> ded;
    for (const auto& p : poly) {
      if (ded.empty() || (ded.back() - p).norm() >= tol.eps) ded.push_back(p);
    }
    while (ded.size() > 1 && (ded.front() - ded.back()).norm() < tol.eps) ded.pop_back();
    if (ded.empty()) return out;
    double area = 0;
    for (std::size_t i = 1; i + 1 < ded.size(); ++i)
      area += 0.5 * std::abs((ded[i] - ded[0]).x() * (ded[i + 1] - ded[0]).y() -
                             (ded[i] - ded[0]).y() * (ded[i + 1] - ded[0]).x());
    if (area > tol.areaFloor()) {
      out.kind = TriTriIntersection::Kind::CoplanarRegion;
      for (const auto& p : ded) out.geom.push_back(to3d(p));
      return out;
    }
    // Degenerate overlap: farthest pair.
    double best = 0;
    Vec2 pa = ded[0], pb = ded[0];
    for (const auto& p : ded)
      for (const auto& q : ded)
        if ((p - q).norm() > best) {
          best = (p - q).norm();
          pa = p;
          pb = q;
        }
    if (best >= tol.eps) {
      out.kind = TriTriIntersection::Kind::Segment;
      out.geom = {to3d(pa), to3d(pb)};
    } else {
      out.kind = TriTriIntersection::Kind::Point;
      out.geom = {to3d(ded[0])};
    }
    return out;
  }

  double d1 = n1.dot(t1.a);
  auto c1 = planeContact(t1, n2, d2, tol);
  auto c2 = planeContact(t2, n1, d1, tol);
  if (c1.empty() || c2.empty()) return out;

  // Both contact sets lie (eps-close) on the planes' common line.
  Vec3 dir = n1.cross(n2);
  if (dir.norm() < 1e-14) return out;  // parallel but not coplanar
  dir.normalize();
  auto interval = [&](const std::vector<Vec3>& c) {
    double lo = dir.dot(c.front()), hi = lo;
    Vec3 plo = c.front(), phi = c.front();
    for (const auto& p : c) {
      double s = dir.dot(p);
      if (s < lo) {
        lo = s;
        plo = p;
      }
      if (s > hi) {
        hi = s;
        phi = p;
      }
    }
    return std::tuple<double, double, Vec3, Vec3>(lo, hi, plo, phi);
  };
  auto [lo1, hi1, p1lo, p1hi] = interval(c1);
  auto [lo2, hi2, p2lo, p2hi] = interval(c2);
  double lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
  if (hi < lo - tol.eps) return out;
  Vec3 plo = lo1 >= lo2 ? p1lo : p2lo;
  Vec3 phi = hi1 <= hi2 ? p1hi : p2hi;
  if ((phi - plo).norm() < tol.eps) {
    out.kind = TriTriIntersection::Kind::Point;
    out.geom = {0.5 * (plo + phi)};
  } else {
    out.kind = TriTriIntersection::Kind::Segment;
    out.geom = {plo, phi};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constrained retriangulation by stitched point/segment insertion.

namespace {

struct Mesh2 {
  std::vector<Vec2> p2;
  std::vector<Vec3> p3;
  std::vector<std::array<int, 3>> tris;  // CCW in the 2D basis
  double eps;

  static double cross2(const Vec2& a, const Vec2& b) {
    return a.x() * b.y() - a.y() * b.x();
  }

  int addVertex(const Vec2& q2, const Vec3& q3) {
    p2.push_back(q2);
    p3.push_back(q3);
    return int(p2.size()) - 1;
  }

  double distToEdge(const Vec2& p, int u, int w) const {
    Vec2 ab = p2[w] - p2[u];
    double len2 = ab.squaredNorm();
    if (len2 == 0) return (p - p2[u]).norm();
    double t = std::clamp((p - p2[u]).dot(ab) / len2, 0.0, 1.0);
    return (p - (p2[u] + t * ab)).norm();
  }

  bool insideTri(const Vec2& p, const std::array<int, 3>& t) const {
    for (int e = 0; e < 3; ++e) {
      Vec2 a = p2[t[e]], b = p2[t[(e + 1) % 3]];
      if (cross2(b - a, p - a) < -eps * (b - a).norm()) return false;
    }
    return true;
  }

  void splitEdge(int u, int w, int pnew) {
    std::vector<std::array<int, 3>> fresh;
    for (auto it = tris.begin(); it != tris.end();) {
      const auto& t = *it;
      int e = -1;
      for (int k = 0; k < 3; ++k)
        if ((t[k] == u && t[(k + 1) % 3] == w) || (t[k] == w && t[(k + 1) % 3] == u)) e = k;
      if (e < 0) {
        ++it;
        continue;
      }
      int a = t[e], b = t[(e + 1) % 3], o = t[(e + 2) % 3];
      fresh.push_back({a, pnew, o});
      fresh.push_back({pnew, b, o});
      it = tris.erase(it);
    }
    tris.insert(tris.end(), fresh.begin(), fresh.end());
  }

  // Inserts q; returns its vertex index, snapping to nearby vertices/edges.
  int insertPoint(const Vec2& q2, const Vec3& q3) {
    for (std::size_t i = 0; i < p2.size(); ++i)
      if ((p2[i] - q2).norm() < eps) return int(i);
    // On-edge?
    for (const auto& t : tris) {
      for (int e = 0; e < 3; ++e) {
        int u = t[e], w = t[(e + 1) % 3];
        if (distToEdge(q2, u, w) < eps) {
          // Snap the 3D point onto the edge's 3D support for consistency.
          Vec2 ab = p2[w] - p2[u];
          double s = std::clamp((q2 - p2[u]).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
          int pnew = addVertex(p2[u] + s * ab, p3[u] + s * (p3[w] - p3[u]));
          splitEdge(u, w, pnew);
          return pnew;
        }
      }
    }
    // Interior of some triangle.
    for (std::size_t i = 0; i < tris.size(); ++i) {
      if (insideTri(q2, tris[i])) {
        auto t = tris[i];
        int pnew = addVertex(q2, q3);
        tris.erase(tris.begin() + long(i));
        tris.push_back({t[0], t[1], pnew});
        tris.push_back({t[1], t[2], pnew});
        tris.push_back({t[2], t[0], pnew});
        return pnew;
      }
    }
    throw ConstraintOutsideTriangleError("constraint point outside triangle");
  }

  bool edgeExists(int a, int b) const {
    for (const auto& t : tris)
      for (int k = 0; k < 3; ++k)
        if ((t[k] == a && t[(k + 1) % 3] == b) || (t[k] == b && t[(k + 1) % 3] == a))
          return true;
    return false;
  }

  // Walks from `cur` toward `target`, splitting crossed edges, until the
  // straight segment is covered by existing edges.
  void connect(int cur, int target) {
    int guard = 0;
    while (cur != target) {
      if (++guard > 10000) throw ConstraintOutsideTriangleError("segment stitch diverged");
      if (edgeExists(cur, target)) return;
      Vec2 d = p2[target] - p2[cur];
      int next = -1;
      // A vertex lying eps-on the remaining segment is the next waypoint.
      double dn = d.norm();
      for (std::size_t i = 0; i < p2.size(); ++i) {
        if (int(i) == cur || int(i) == target) continue;
        Vec2 v = p2[i] - p2[cur];
        double t = v.dot(d) / (dn * dn);
        if (t <= 0.0 || t >= 1.0) continue;
        if (std::abs(cross2(d, v)) / dn < eps && edgeExists(cur, int(i))) {
          next = int(i);
          break;
        }
      }
      if (next >= 0) {
        cur = next;
        continue;
      }
      // Otherwise cross an opposite edge of a triangle incident to cur.
      bool advanced = false;
      for (std::size_t i = 0; i < tris.size() && !advanced; ++i) {
        const auto t = tris[i];
        int k = -1;
        for (int j = 0; j < 3; ++j)
          if (t[j] == cur) k = j;
        if (k < 0) continue;
        int u = t[(k + 1) % 3], w = t[(k + 2) % 3];
        Vec2 eu = p2[u] - p2[cur], ew = p2[w] - p2[cur];
        if (cross2(eu, d) < -eps * dn || cross2(d, ew) < -eps * dn) continue;
        // Segment cur->target exits through edge (u, w).
        Vec2 uw = p2[w] - p2[u];
        double denom = cross2(d, uw);
        if (std::abs(denom) < 1e-30) continue;
        double s = cross2(p2[u] - p2[cur], uw) / denom;  // along cur->target
        Vec2 x = p2[cur] + s * d;
        double r = (x - p2[u]).dot(uw) / uw.squaredNorm();  // along u->w
        if (s <= 0.0 || s > 1.0 + eps / dn) continue;
        if (r < -eps || r > 1.0 + eps) continue;
        if ((x - p2[u]).norm() < eps) {
          cur = u;
          advanced = true;
          break;
        }
        if ((x - p2[w]).norm() < eps) {
          cur = w;
          advanced = true;
          break;
        }
        int pnew = addVertex(x, p3[u] + r * (p3[w] - p3[u]));
        splitEdge(u, w, pnew);
        cur = pnew;
        advanced = true;
      }
      if (!advanced)
        throw ConstraintOutsideTriangleError("segment stitch found no crossing");
    }
  }
};

}  // namespace

std::vector<Triangle> retriangulate(const Triangle& t,
                                    const std::vector<std::pair<Vec3, Vec3>>& constraints,
                                    const Tolerance& tol) {
  if (t.area() < tol.areaFloor()) throw DegenerateInputError("retriangulate: degenerate input");
  if (constraints.empty()) return {t};

  Vec3 n = t.normal();
  Vec3 e1 = (t.b - t.a).normalized();
  Vec3 e2 = n.cross(e1);
  auto to2d = [&](const Vec3& p) { return Vec2((p - t.a).dot(e1), (p - t.a).dot(e2)); };

  Mesh2 m;
  m.eps = tol.eps;
  m.addVertex(to2d(t.a), t.a);
  m.addVertex(to2d(t.b), t.b);
  m.addVertex(to2d(t.c), t.c);
  m.tris.push_back({0, 1, 2});

  for (const auto& [a, b] : constraints) {
    if (std::abs(n.dot(a - t.a)) > 10 * tol.eps || std::abs(n.dot(b - t.a)) > 10 * tol.eps)
      throw ConstraintOutsideTriangleError("constraint off the triangle plane");
    if ((a - b).norm() < tol.eps) continue;
    int ia = m.insertPoint(to2d(a), a);
    int ib = m.insertPoint(to2d(b), b);
    m.connect(ia, ib);
  }

  std::vector<Triangle> out;
  for (const auto& f : m.tris) {
    Triangle s{m.p3[f[0]], m.p3[f[1]], m.p3[f[2]]};
    if (s.area() >= tol.areaFloor()) out.push_back(s);
  }
  return out;
}

}  // namespace yinset
