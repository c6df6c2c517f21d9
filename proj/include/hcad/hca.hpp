#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "hcad/grid.hpp"
#include "hcad/offsets.hpp"
#include "hcad/representatives.hpp"
#include "hcad/types.hpp"

namespace hcad {

/// How two neighboring cells are tested for merging. `representative` is the
/// paper's algorithm: one distance check between the facing representative
/// points. `exact` scans all cross-cell member pairs and is equivalent to the
/// epsilon-connectivity oracle.
enum class MergePolicy { representative, exact };

/// True when cells `a` and `b` (at offset `delta` from `a`) must share a
/// cluster. Strict < epsilon throughout.
inline bool merge_condition(const CellRecord& a, const CellRecord& b,
                            const Eigen::VectorXi& delta, double epsilon,
                            MergePolicy policy, const SparseGrid& grid) {
  const double eps2 = epsilon * epsilon;
  if (policy == MergePolicy::representative) {
    const auto [fwd, bwd] = paired_direction(delta);
    const int pa = representative_for(a, fwd, grid);
    const int pb = representative_for(b, bwd, grid);
    return (grid.shifted.row(pa) - grid.shifted.row(pb)).squaredNorm() < eps2;
  }
  for (int pa : a.members)
    for (int pb : b.members)
      if ((grid.shifted.row(pa) - grid.shifted.row(pb)).squaredNorm() < eps2)
        return true;
  return false;
}

struct ClusterResult {
  ClusterLabeling labeling;
  std::uint64_t merge_tests = 0;  // merge_condition evaluations
};

namespace detail {

/// Relabels clusters smaller than `min_size` as noise and renumbers the
/// survivors contiguously in ascending old-id order.
inline void apply_min_cluster_size(ClusterLabeling& labeling, int min_size) {
  if (min_size <= 1) return;
  std::vector<int> sizes(static_cast<std::size_t>(labeling.cluster_count) + 1, 0);
  for (int l : labeling.labels)
    if (l != kNoise) ++sizes[static_cast<std::size_t>(l)];
  std::vector<int> remap(sizes.size(), kNoise);
  int next = 1;
  for (std::size_t c = 1; c < sizes.size(); ++c)
    if (sizes[c] >= min_size) remap[c] = next++;
  for (int& l : labeling.labels)
    if (l != kNoise) l = remap[static_cast<std::size_t>(l)];
  labeling.cluster_count = next - 1;
}

}  // namespace detail

/// Connected components of the occupied-cell graph: cells are adjacent when
/// their offset is in neighbor_offsets(d) and merge_condition holds. Every
/// member of a cell gets its cell's component id. Seeds are visited in
/// lexicographic cell-key order so ids are reproducible; traversal is an
/// iterative work list (long cell chains would overflow a recursive stack).
inline ClusterResult cluster(SparseGrid& grid, double epsilon,
                             MergePolicy policy, int min_cluster_size = 0) {
  if (std::abs(epsilon - grid.config.epsilon) >
      1e-12 * std::max(epsilon, grid.config.epsilon))
    throw ConfigMismatch("cluster: epsilon does not match the grid");

  for (auto& [key, cell] : grid.cells) {
    cell.visited = false;
    cell.cluster.reset();
  }

  const std::vector<NeighborOffset> offsets = neighbor_offsets(grid.dims());

  ClusterResult result;
  result.labeling.labels.assign(static_cast<std::size_t>(grid.size()), kNoise);

  int next_id = 1;
  std::deque<CellRecord*> work;
  for (const CellKey& seed : sorted_cell_keys(grid)) {
    CellRecord& seed_cell = grid.cells.at(seed);
    if (seed_cell.visited) continue;
    const int id = next_id++;
    seed_cell.visited = true;
    seed_cell.cluster = id;
    work.push_back(&seed_cell);
    while (!work.empty()) {
      CellRecord* cell = work.front();
      work.pop_front();
      for (const NeighborOffset& off : offsets) {
        auto it = grid.cells.find(cell->key + off.delta);
        if (it == grid.cells.end() || it->second.visited) continue;
        ++result.merge_tests;
        if (!merge_condition(*cell, it->second, off.delta, epsilon, policy,
                             grid))
          continue;
        it->second.visited = true;
        it->second.cluster = id;
        work.push_back(&it->second);
      }
    }
  }

  for (const auto& [key, cell] : grid.cells)
    for (int member : cell.members)
      result.labeling.labels[static_cast<std::size_t>(member)] = *cell.cluster;
  result.labeling.cluster_count = next_id - 1;

  detail::apply_min_cluster_size(result.labeling, min_cluster_size);
  return result;
}

}  // namespace hcad
