#include "yinset/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "yinset/membership.hpp"
#include "yinset/voxel.hpp"

namespace yinset {

namespace {

Aabb jointBounds(std::initializer_list<const GElement*> gs) {
  Aabb box;
  for (const GElement* g : gs)
    if (g->isShape()) box.extend(g->shape.bounds());
  if (box.empty) {
    box.extend(Vec3(-1, -1, -1));
    box.extend(Vec3(1, 1, 1));
  }
  box.inflate(0.1 * box.diagonal());
  return box;
}

bool isIn(PointClass c) { return c == PointClass::Inside; }

}  // namespace

std::string OracleReport::summary() const {
  std::ostringstream os;
  os << "samples=" << samples_requested << " used=" << samples_used
     << " excluded_band=" << excluded_band << " agreements=" << agreements
     << " rate=" << agreementRate();
  return os.str();
}

OracleReport pointwiseLawCheck(const GElement& result, const GElement& g1,
                               const GElement& g2, LawOp op, int samples,
                               Rng& rng, const Tolerance& tol,
                               double bandFactor) {
  OracleReport rep;
  rep.samples_requested = samples;
  const bool unary = op == LawOp::Complement;

  Aabb box = unary ? jointBounds({&result, &g1}) : jointBounds({&result, &g1, &g2});
  const double band = bandFactor * tol.eps;

  ShapeIndex ir(result), i1(g1);
  std::optional<ShapeIndex> i2;
  if (!unary) i2.emplace(g2);

  for (int s = 0; s < samples; ++s) {
    Vec3 p = box.lo + Vec3(rng.uniform() * (box.hi - box.lo).x(),
                           rng.uniform() * (box.hi - box.lo).y(),
                           rng.uniform() * (box.hi - box.lo).z());
    if (ir.nearBoundary(p, band) || i1.nearBoundary(p, band) ||
        (i2 && i2->nearBoundary(p, band))) {
      ++rep.excluded_band;
      continue;
    }
    PointClass cr = ir.classify(p, rng, tol);
    PointClass c1 = i1.classify(p, rng, tol);
    PointClass c2 = i2 ? i2->classify(p, rng, tol) : PointClass::Outside;
    if (cr == PointClass::OnBoundary || c1 == PointClass::OnBoundary ||
        c2 == PointClass::OnBoundary) {
      ++rep.excluded_band;
      continue;
    }
    bool expected = false;
    switch (op) {
      case LawOp::Meet: expected = isIn(c1) && isIn(c2); break;
      case LawOp::Join: expected = isIn(c1) || isIn(c2); break;
      case LawOp::Complement: expected = !isIn(c1); break;
      case LawOp::Difference: expected = isIn(c1) && !isIn(c2); break;
    }
    ++rep.samples_used;
    if (isIn(cr) == expected) ++rep.agreements;
  }
  return rep;
}

double meshVolume(const GElement& g) {
  if (g.isBottom()) return 0.0;
  if (g.isTop()) throw InfiniteVolumeError("top element has infinite measure");
  double vol = 0.0;
  for (const auto& atom : g.shape.atoms) {
    if (!atom.positive)
      throw InfiniteVolumeError("unbounded atom has infinite measure");
    vol += atom.positive->mesh.signedVolume();
    for (const auto& neg : atom.negatives) vol -= neg.mesh.signedVolume();
  }
  return vol;
}

namespace {

// One direction of the sampled Hausdorff estimate.
double oneSidedHausdorff(const std::vector<const GluedSurface*>& from,
                         const std::vector<MeshIndex>& to, Rng& rng,
                         int samples) {
  // Area-weighted triangle selection.
  std::vector<std::pair<double, std::pair<int, int>>> prefix;  // (cum, (mesh, tri))
  double total = 0;
  for (std::size_t m = 0; m < from.size(); ++m)
    for (std::size_t f = 0; f < from[m]->mesh.F.size(); ++f) {
      total += from[m]->mesh.tri(int(f)).area();
      prefix.push_back({total, {int(m), int(f)}});
    }
  auto distTo = [&](const Vec3& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& idx : to) best = std::min(best, idx.distance(p));
    return best;
  };
  double h = 0;
  for (const auto* s : from)
    for (const auto& v : s->mesh.V) h = std::max(h, distTo(v));
  for (int i = 0; i < samples; ++i) {
    double target = rng.uniform() * total;
    auto it = std::lower_bound(prefix.begin(), prefix.end(), target,
                               [](const auto& a, double t) { return a.first < t; });
    if (it == prefix.end()) it = std::prev(prefix.end());
    Triangle t = from[it->second.first]->mesh.tri(it->second.second);
    double r1 = std::sqrt(rng.uniform()), r2 = rng.uniform();
    Vec3 p = (1 - r1) * t.a + r1 * (1 - r2) * t.b + r1 * r2 * t.c;
    h = std::max(h, distTo(p));
  }
  return h;
}

}  // namespace

double hausdorffBoundary(const GElement& a, const GElement& b, Rng& rng,
                         int samplesPerSide) {
  std::vector<const GluedSurface*> sa, sb;
  if (a.isShape()) sa = a.shape.surfaces();
  if (b.isShape()) sb = b.shape.surfaces();
  if (sa.empty() && sb.empty()) return 0.0;
  if (sa.empty() || sb.empty())
    return std::numeric_limits<double>::infinity();

  std::vector<MeshIndex> ia, ib;
  for (const auto* s : sa) ia.emplace_back(s->mesh);
  for (const auto* s : sb) ib.emplace_back(s->mesh);
  return std::max(oneSidedHausdorff(sa, ib, rng, samplesPerSide),
                  oneSidedHausdorff(sb, ia, rng, samplesPerSide));
}

TopologyReport voxelTopology(const GElement& g, int res) {
  if (g.isBottom()) return {0, {}};
  if (g.isTop()) return {1, {0}};

  Aabb box = g.shape.bounds();
  box.inflate(0.05 * box.diagonal());
  VoxelGrid grid = voxelizeElement(g, box, res);

  std::vector<int> labels;
  int nc = labelComponents(grid, labels);

  VoxelGrid comp = grid;
  for (auto& v : comp.inside) v = v ? 0 : 1;
  std::vector<int> clabels;
  int ncc = labelComponents(comp, clabels);

  // Complement components reaching the grid boundary are the outside.
  std::vector<char> touchesBoundary(ncc, 0);
  const int r = res;
  for (int k = 0; k < r; ++k)
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < r; ++i) {
        if (i != 0 && i != r - 1 && j != 0 && j != r - 1 && k != 0 && k != r - 1)
          continue;
        int cl = clabels[grid.index(i, j, k)];
        if (cl >= 0) touchesBoundary[cl] = 1;
      }

  // Attribute each cavity to the set component first hit marching +x.
  std::vector<int> holes(nc, 0);
  std::vector<char> counted(ncc, 0);
  for (int k = 0; k < r; ++k)
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < r; ++i) {
        int cl = clabels[grid.index(i, j, k)];
        if (cl < 0 || touchesBoundary[cl] || counted[cl]) continue;
        counted[cl] = 1;
        for (int x = i + 1; x < r; ++x) {
          int sl = labels[grid.index(x, j, k)];
          if (sl >= 0) {
            ++holes[sl];
            break;
          }
        }
      }

  TopologyReport rep;
  rep.components = nc;
  rep.holes_per_component = holes;
  return rep;
}

}  // namespace yinset
