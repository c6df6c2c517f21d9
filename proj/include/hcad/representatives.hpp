#pragma once

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

#include "hcad/grid.hpp"
#include "hcad/offsets.hpp"
#include "hcad/types.hpp"

namespace hcad {

/// A boundary direction: a nonzero sign vector in {-1, 0, +1}^d. In 2-D the
/// eight values are the Top/TopRight/... faces and corners of a cell.
using Direction = Eigen::VectorXi;

inline std::string direction_key(const Direction& dir) {
  std::string key(static_cast<std::size_t>(dir.size()), '\0');
  for (Eigen::Index i = 0; i < dir.size(); ++i)
    key[static_cast<std::size_t>(i)] = static_cast<char>(dir[i] + 1);
  return key;
}

/// The point on the cell boundary farthest toward `direction`: cell center
/// plus direction * side / 2 componentwise.
inline Eigen::VectorXd ideal_position(const CellKey& key,
                                      const Direction& direction,
                                      const GridConfig& config) {
  return ((key.cast<double>().array() + 0.5 +
           0.5 * direction.cast<double>().array()) *
          config.side)
      .matrix();
}

/// Facing direction pair for a neighbor offset: the source cell looks along
/// sign(delta), the target cell along -sign(delta). Layer-2 offsets clamp to
/// the same pair as their layer-1 counterpart.
inline std::pair<Direction, Direction> paired_direction(
    const Eigen::VectorXi& delta) {
  Direction fwd = delta.array().sign();
  return {fwd, -fwd};
}

/// Member of `cell` minimizing (distance to the ideal position, point id).
/// Memoized on first access; repeated lookups return the same id.
inline int representative_for(const CellRecord& cell, const Direction& dir,
                              const SparseGrid& grid) {
  const std::string key = direction_key(dir);
  if (auto it = cell.representatives.find(key);
      it != cell.representatives.end())
    return it->second;

  const Eigen::VectorXd ideal = ideal_position(cell.key, dir, grid.config);
  int best = cell.members.front();
  double best_d2 = (grid.shifted.row(best).transpose() - ideal).squaredNorm();
  for (std::size_t i = 1; i < cell.members.size(); ++i) {
    const int id = cell.members[i];
    const double d2 = (grid.shifted.row(id).transpose() - ideal).squaredNorm();
    if (d2 < best_d2 || (d2 == best_d2 && id < best)) {
      best = id;
      best_d2 = d2;
    }
  }
  cell.representatives.emplace(key, best);
  return best;
}

namespace detail {

inline void for_each_direction(int d, int axis, Direction& dir, auto&& fn) {
  if (axis == d) {
    if (!dir.isZero()) fn(dir);
    return;
  }
  for (int v : {-1, 0, 1}) {
    dir[axis] = v;
    for_each_direction(d, axis + 1, dir, fn);
  }
  dir[axis] = 0;
}

}  // namespace detail

/// Eager per-insertion update of all 3^d - 1 representatives, following the
/// insertion-time rule: the first member seeds every direction; later members
/// take over a direction when strictly closer to its ideal position (ties go
/// to the lower point id). Only practical for small d; the lazy accessor
/// above is the default path and computes identical results.
inline void update_representatives(CellRecord& cell, int point_id,
                                   const SparseGrid& grid) {
  const auto point = grid.shifted.row(point_id).transpose();
  CellKey low = assign_cell(grid.shifted.row(point_id), grid.config);
  if (!CellKeyEq{}(low, cell.key))
    throw WrongCell("update_representatives: point outside cell bounds");

  const int d = grid.dims();
  Direction dir = Direction::Zero(d);
  detail::for_each_direction(d, 0, dir, [&](const Direction& delta) {
    const std::string key = direction_key(delta);
    const Eigen::VectorXd ideal = ideal_position(cell.key, delta, grid.config);
    auto it = cell.representatives.find(key);
    if (it == cell.representatives.end()) {
      cell.representatives.emplace(key, point_id);
      return;
    }
    const double cur = (grid.shifted.row(it->second).transpose() - ideal)
                           .squaredNorm();
    const double cand = (point - ideal).squaredNorm();
    if (cand < cur || (cand == cur && point_id < it->second))
      it->second = point_id;
  });
}

}  // namespace hcad
