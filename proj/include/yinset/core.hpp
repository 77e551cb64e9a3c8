#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace yinset {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  explicit Error(const std::string& kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind(kind) {}
  std::string kind;
};

struct DegenerateInputError : Error {
  explicit DegenerateInputError(const std::string& d) : Error("DegenerateInput", d) {}
};
struct NotClosedError : Error {
  explicit NotClosedError(const std::string& d) : Error("NotClosed", d) {}
};
struct ConstraintOutsideTriangleError : Error {
  explicit ConstraintOutsideTriangleError(const std::string& d)
      : Error("ConstraintOutsideTriangle", d) {}
};
struct InconsistentProvenanceError : Error {
  explicit InconsistentProvenanceError(const std::string& d)
      : Error("InconsistentProvenance", d) {}
};
struct GluingStuckError : Error {
  explicit GluingStuckError(const std::string& d) : Error("GluingStuck", d) {}
};
struct AmbiguousTieError : Error {
  explicit AmbiguousTieError(const std::string& d) : Error("AmbiguousTie", d) {}
};
struct NoCandidateError : Error {
  explicit NoCandidateError(const std::string& d) : Error("NoCandidate", d) {}
};
struct FoldBackError : Error {
  explicit FoldBackError(const std::string& d) : Error("FoldBack", d) {}
};
struct NotRealizableError : Error {
  explicit NotRealizableError(const std::string& d) : Error("NotRealizable", d) {}
};
struct RetryExhaustedError : Error {
  explicit RetryExhaustedError(const std::string& d) : Error("RetryExhausted", d) {}
};
struct WitnessNotFoundError : Error {
  explicit WitnessNotFoundError(const std::string& d) : Error("WitnessNotFound", d) {}
};
struct InfiniteVolumeError : Error {
  explicit InfiniteVolumeError(const std::string& d) : Error("InfiniteVolume", d) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& d) : Error("ParseError", d) {}
};
struct BlowUpError : Error {
  explicit BlowUpError(const std::string& d) : Error("BlowUp", d) {}
};
struct CannotRegularizeError : Error {
  explicit CannotRegularizeError(const std::string& d) : Error("CannotRegularize", d) {}
};
struct CannotSerializeError : Error {
  explicit CannotSerializeError(const std::string& d) : Error("CannotSerialize", d) {}
};

// ---------------------------------------------------------------------------
// Tolerance

// The single length tolerance. Two points closer than eps are the same
// point; a triangle with area below eps^2 is degenerate.
struct Tolerance {
  double eps = 1e-9;

  double areaFloor() const { return eps * eps; }

  // Scale-invariant default: 1e-9 times the bounding-box diagonal.
  static Tolerance fromDiagonal(double diag) { return Tolerance{1e-9 * diag}; }
};

inline bool epsEq(const Vec3& p, const Vec3& q, const Tolerance& tol) {
  return (p - q).norm() < tol.eps;
}

// Angular tolerance for directed-angle ties.
inline constexpr double kAngularEps = 1e-7;

// ---------------------------------------------------------------------------
// Rng: splitmix64-based counter generator; deterministic and splittable.

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return double(next() >> 11) * (1.0 / 9007199254740992.0); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Vec3 unitVector() {
    // Marsaglia rejection on the disc.
    for (;;) {
      double u = uniform(-1.0, 1.0), v = uniform(-1.0, 1.0);
      double s = u * u + v * v;
      if (s >= 1.0 || s == 0.0) continue;
      double f = 2.0 * std::sqrt(1.0 - s);
      return Vec3(u * f, v * f, 1.0 - 2.0 * s);
    }
  }

  Rng split() { return Rng(next() ^ 0xa02bdbf7bb3c0a7ull); }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Basic geometry carriers

struct Triangle {
  Vec3 a, b, c;

  Vec3 normalUnnormalized() const { return (b - a).cross(c - a); }
  Vec3 normal() const { return normalUnnormalized().normalized(); }
  double area() const { return 0.5 * normalUnnormalized().norm(); }
  Vec3 centroid() const { return (a + b + c) / 3.0; }
  const Vec3& operator[](int i) const { return i == 0 ? a : (i == 1 ? b : c); }
};

struct PolyCurve {
  std::vector<Vec3> pts;
  bool closed = false;

  double length() const {
    double s = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) s += (pts[i] - pts[i - 1]).norm();
    if (closed && pts.size() > 1) s += (pts.front() - pts.back()).norm();
    return s;
  }
};

struct Aabb {
  Vec3 lo{0, 0, 0}, hi{0, 0, 0};
  bool empty = true;

  void extend(const Vec3& p) {
    if (empty) {
      lo = hi = p;
      empty = false;
    } else {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  void extend(const Aabb& o) {
    if (o.empty) return;
    extend(o.lo);
    extend(o.hi);
  }
  void inflate(double d) {
    lo.array() -= d;
    hi.array() += d;
  }
  bool overlaps(const Aabb& o) const {
    return !empty && !o.empty && (lo.array() <= o.hi.array()).all() &&
           (o.lo.array() <= hi.array()).all();
  }
  bool contains(const Vec3& p) const {
    return !empty && (lo.array() <= p.array()).all() && (p.array() <= hi.array()).all();
  }
  Vec3 center() const { return 0.5 * (lo + hi); }
  double diagonal() const { return empty ? 0.0 : (hi - lo).norm(); }
};

// ---------------------------------------------------------------------------
// TriMesh: indexed triangle mesh, value-semantic.

struct TriMesh {
  std::vector<Vec3> V;
  std::vector<std::array<int, 3>> F;

  Triangle tri(int f) const { return Triangle{V[F[f][0]], V[F[f][1]], V[F[f][2]]}; }
  std::size_t numFaces() const { return F.size(); }
  std::size_t numVertices() const { return V.size(); }

  Aabb bounds() const {
    Aabb b;
    for (const auto& p : V) b.extend(p);
    return b;
  }

  double totalArea() const {
    double s = 0;
    for (std::size_t f = 0; f < F.size(); ++f) s += tri(int(f)).area();
    return s;
  }

  void flip() {
    for (auto& f : F) std::swap(f[1], f[2]);
  }
  TriMesh flipped() const {
    TriMesh m = *this;
    m.flip();
    return m;
  }

  // Every directed edge must be matched by its reverse exactly once.
  // Returns the list of unmatched directed edges (empty for a closed mesh).
  std::vector<std::pair<int, int>> unmatchedEdges() const;
  bool isClosed() const { return unmatchedEdges().empty(); }

  // (1/6) sum of det(a,b,c); positive for outward winding.
  // Throws NotClosed if edge pairing fails.
  double signedVolume() const;
};

// Sum over facets of area-weighted normals; zero for a closed mesh.
Vec3 areaVectorSum(const TriMesh& m);

// ---------------------------------------------------------------------------
// PointRegistry: eps-snap-rounding of points to canonical representatives.
// First-seen wins; callers insert in a deterministic order.

class PointRegistry {
 public:
  explicit PointRegistry(const Tolerance& tol) : eps_(tol.eps), cell_(2.0 * tol.eps) {}

  // Returns the canonical representative of p (an existing point within eps
  // if one is registered, otherwise p itself, now registered).
  Vec3 canonical(const Vec3& p);

  // Canonical index of p (registering it if new).
  int canonicalIndex(const Vec3& p);

  const Vec3& point(int i) const { return pts_[i]; }
  std::size_t size() const { return pts_.size(); }

 private:
  std::int64_t cellOf(double x) const {
    return static_cast<std::int64_t>(std::floor(x / cell_));
  }
  std::uint64_t keyOf(std::int64_t i, std::int64_t j, std::int64_t k) const;
  int find(const Vec3& p) const;

  double eps_;
  double cell_;
  std::vector<Vec3> pts_;
  std::unordered_map<std::uint64_t, std::vector<int>> grid_;
};

// Rebuilds a mesh from a triangle soup, welding vertices through a registry
// and dropping triangles that became degenerate under snapping.
TriMesh weldMesh(const std::vector<Triangle>& tris, PointRegistry& reg,
                 const Tolerance& tol);

}  // namespace yinset
