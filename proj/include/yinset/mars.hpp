#pragma once

#include <functional>

#include "yinset/brep.hpp"

namespace yinset {

struct VelocityField {
  std::function<Vec3(const Vec3&, double)> f;

  Vec3 operator()(const Vec3& p, double t) const { return f(p, t); }

  static VelocityField translation(const Vec3& v);
  static VelocityField rotationZ(double omega);
  // Time-reversed vortex: u = 2 sin^2(pi x) sin(2 pi y) sin(2 pi z) cos(pi t/T)
  //                       v = - sin(2 pi x) sin^2(pi y) sin(2 pi z) cos(pi t/T)
  //                       w = - sin(2 pi x) sin(2 pi y) sin^2(pi z) cos(pi t/T)
  static VelocityField deformation(double T);
};

struct MarsParams {
  double hL = 1.0 / 32;      // target edge length
  double rTiny = 0.1;        // collapse edges shorter than rTiny * hL
  double minAngleDeg = 15;   // triangle quality target
  double dt = 0;             // time step; 0 means hL per step
  int maxQualityIters = 50;

  double stepSize() const { return dt > 0 ? dt : hL; }
};

struct MarsStats {
  int splits = 0;
  int collapses = 0;
  int flips = 0;
  int smooth_iters = 0;
  double min_angle_deg = 0;
  bool quality_reached = true;
};

// Classic RK4 on every vertex. Throws BlowUp on non-finite positions.
TriMesh advectMesh(const TriMesh& mesh, const VelocityField& vel, double t0,
                   double dt);

// Splits long edges, collapses tiny ones (link condition and normal guard),
// then improves quality by flips and capped tangential smoothing.
MarsStats regularizeMesh(TriMesh& mesh, const MarsParams& params,
                         const Tolerance& tol);

// One advect + regularize step over every boundary surface; the atom
// structure is carried along (the flow map is a homeomorphism).
GElement advanceInterface(const GElement& g, const VelocityField& vel,
                          double t0, double dt, const MarsParams& params,
                          MarsStats* stats = nullptr);

GElement trackInterface(
    const GElement& g, const VelocityField& vel, double t0, double t1,
    const MarsParams& params,
    const std::function<void(double, const GElement&)>& checkpoint = {});

// Restriction of g to each cell of an n^3 grid over `box`: the meet with the
// cell cube, with shortcuts for fully-inside and fully-outside cells. Empty
// cells are omitted.
struct LocalSolution {
  Aabb cell;
  GElement element;
};
std::vector<LocalSolution> localSolutions(const GElement& g, const Aabb& box,
                                          int cellsPerSide, Rng& rng,
                                          const Tolerance& tol);

}  // namespace yinset
