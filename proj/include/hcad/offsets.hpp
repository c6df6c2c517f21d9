#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdlib>
#include <vector>

namespace hcad {

/// Integer displacement between two cells whose minimum inter-cell distance
/// is below epsilon. `layer` is the Chebyshev norm of the displacement.
struct NeighborOffset {
  Eigen::VectorXi delta;
  int layer = 0;
};

/// Infimum Euclidean distance between any two points placed in cells
/// separated by `delta`, for cells of the given side length. Along each axis
/// the gap is (|delta_i| - 1) cell widths; touching or overlapping axes
/// contribute zero.
inline double min_cell_distance(const Eigen::VectorXi& delta, double side) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    const double g = std::max(std::abs(delta[i]) - 1, 0);
    s += g * g;
  }
  return side * std::sqrt(s);
}

namespace detail {

inline void enumerate_offsets(int d, int radius, int axis, double gap_sq,
                              Eigen::VectorXi& delta,
                              std::vector<NeighborOffset>& out) {
  if (axis == d) {
    const int layer = delta.cwiseAbs().maxCoeff();
    if (layer > 0) out.push_back({delta, layer});
    return;
  }
  for (int v = -radius; v <= radius; ++v) {
    const int g = std::max(std::abs(v) - 1, 0);
    const double s = gap_sq + static_cast<double>(g) * g;
    // Offsets whose inter-cell gap already reaches the cell diagonal can
    // never hold a point pair closer than epsilon; prune the whole branch.
    if (s >= static_cast<double>(d)) continue;
    delta[axis] = v;
    enumerate_offsets(d, radius, axis + 1, s, delta, out);
  }
  delta[axis] = 0;
}

}  // namespace detail

/// All nonzero integer offsets with Chebyshev norm <= ceil(sqrt(d)) whose
/// minimum inter-cell distance is below the cell diagonal (side * sqrt(d)
/// = epsilon). Deterministic, lexicographically sorted. For d = 2 this is
/// the 5x5 block minus the center and the four (±2, ±2) corners: 20 offsets.
inline std::vector<NeighborOffset> neighbor_offsets(int d) {
  const int radius = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));
  std::vector<NeighborOffset> out;
  Eigen::VectorXi delta = Eigen::VectorXi::Zero(d);
  detail::enumerate_offsets(d, radius, 0, 0.0, delta, out);
  return out;
}

}  // namespace hcad
