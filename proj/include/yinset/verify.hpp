#pragma once

#include "yinset/brep.hpp"

namespace yinset {

enum class LawOp { Meet, Join, Complement, Difference };

// Pointwise comparison of a Boolean result against per-point membership of
// the operands, over uniform samples in an inflated joint bounding box.
// Samples within `band` of any involved boundary are excluded.
struct OracleReport {
  int samples_requested = 0;
  int samples_used = 0;
  int agreements = 0;
  int excluded_band = 0;

  double agreementRate() const {
    return samples_used == 0 ? 1.0 : double(agreements) / samples_used;
  }
  std::string summary() const;
};

OracleReport pointwiseLawCheck(const GElement& result, const GElement& g1,
                               const GElement& g2, LawOp op, int samples,
                               Rng& rng, const Tolerance& tol,
                               double bandFactor = 3.0);

// Signed measure of rho(g): positive-atom volumes minus their holes. Throws
// InfiniteVolume for the top element or unbounded (negative-type) atoms.
double meshVolume(const GElement& g);

// Symmetric Hausdorff distance between the boundary surfaces, estimated from
// area-weighted samples plus all mesh vertices.
double hausdorffBoundary(const GElement& a, const GElement& b, Rng& rng,
                         int samplesPerSide = 4000);

// Component/hole counts recovered from an occupancy grid alone, independent
// of the boundary structure: components by 6-connected flood fill, holes as
// cavities of the complement that do not reach the grid boundary.
TopologyReport voxelTopology(const GElement& g, int res);

}  // namespace yinset
