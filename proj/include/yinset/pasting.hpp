#pragma once

#include "yinset/cutting.hpp"

namespace yinset {

// Gluing-selection angle in (0, 2pi): theta = pi - alpha when
// (nA x nB) . rp > 0, else pi + alpha, with alpha the unsigned angle between
// the patch normals at a boundary point. Throws FoldBack when nB = -nA.
double directedAngle(const Vec3& nA, const Vec3& nB, const Vec3& rp,
                     const Tolerance& tol);

// Index into `candidates` minimizing the directed angle from (nA, rp).
// Throws NoCandidate on empty input and AmbiguousTie on angular-eps ties.
int selectMate(const Vec3& nA, const Vec3& rp,
               const std::vector<Vec3>& candidateNormals, const Tolerance& tol);

// The pasting map: closed surfaces pass through; patches are glued greedily
// by minimal directed angle until closed; self-intersecting closures are
// routed through divide().
std::vector<GluedSurface> paste(const SegmentedSpadopag& seg, const Tolerance& tol);

// Splits a self-intersecting closed surface (oriented winding) into glued
// surfaces via the double orientation reversal.
std::vector<GluedSurface> divide(const TriMesh& closedOriented, const Tolerance& tol);

}  // namespace yinset
