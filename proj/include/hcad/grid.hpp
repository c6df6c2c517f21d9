#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hcad/types.hpp"

namespace hcad {

/// Geometry of the hypercube overlay: the cell side is epsilon / sqrt(d), so
/// the space diagonal of every cell equals epsilon.
struct GridConfig {
  double epsilon = 0.0;
  Eigen::VectorXd origin;  // componentwise minimum of the data
  double side = 0.0;

  int dims() const { return static_cast<int>(origin.size()); }
};

inline GridConfig make_grid_config(const Dataset& data, double epsilon) {
  if (epsilon <= 0.0) throw InvalidEpsilon("epsilon must be positive");
  if (data.size() == 0) throw EmptyInput("dataset is empty");
  GridConfig cfg;
  cfg.epsilon = epsilon;
  cfg.origin = data.coords.colwise().minCoeff();
  cfg.side = epsilon / std::sqrt(static_cast<double>(data.dims()));
  return cfg;
}

using CellKey = Eigen::VectorXi;

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Eigen::Index i = 0; i < k.size(); ++i) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(k[i]));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct CellKeyEq {
  bool operator()(const CellKey& a, const CellKey& b) const noexcept {
    return a.size() == b.size() && a == b;
  }
};

inline bool cell_key_less(const CellKey& a, const CellKey& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(),
                                      b.data(), b.data() + b.size());
}

/// One occupied hypercube. `members` holds dataset point ids in processing
/// order. Representatives are memoized per direction (keyed by the packed
/// sign vector); `visited` and `cluster` belong to the active clustering run.
struct CellRecord {
  CellKey key;
  std::vector<int> members;
  mutable std::unordered_map<std::string, int> representatives;
  bool visited = false;
  std::optional<int> cluster;
};

/// Subtracts the componentwise minimum from every point. Adding the returned
/// origin back recovers the input exactly.
inline std::pair<Dataset, Eigen::VectorXd> shift_origin(const Dataset& data) {
  if (data.size() == 0) throw EmptyInput("shift_origin: dataset is empty");
  Eigen::VectorXd origin = data.coords.colwise().minCoeff();
  Dataset shifted = data;
  shifted.coords.rowwise() -= origin.transpose();
  return {std::move(shifted), std::move(origin)};
}

/// Row order sorted lexicographically by coordinates, ties broken by point
/// id. Stable across permutations of the input.
inline std::vector<int> sort_order(const Dataset& data) {
  std::vector<int> order(static_cast<std::size_t>(data.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (Eigen::Index c = 0; c < data.dims(); ++c) {
      if (data.coords(a, c) != data.coords(b, c))
        return data.coords(a, c) < data.coords(b, c);
    }
    return data.ids[static_cast<std::size_t>(a)] <
           data.ids[static_cast<std::size_t>(b)];
  });
  return order;
}

inline Dataset sort_dataset(const Dataset& data) {
  const std::vector<int> order = sort_order(data);
  Dataset out;
  out.coords.resize(data.size(), data.dims());
  out.ids.resize(static_cast<std::size_t>(data.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.coords.row(static_cast<Eigen::Index>(i)) = data.coords.row(order[i]);
    out.ids[i] = data.ids[static_cast<std::size_t>(order[i])];
  }
  return out;
}

/// Cell index of an origin-shifted point: floor(coord / side) per axis.
/// Cells are half-open boxes [k*side, (k+1)*side) along each axis.
template <typename Derived>
CellKey assign_cell(const Eigen::MatrixBase<Derived>& coords,
                    const GridConfig& config) {
  CellKey key(coords.size());
  for (Eigen::Index i = 0; i < coords.size(); ++i) {
    const double c = coords[i];
    if (c < 0.0) throw NotOriginShifted("assign_cell: negative coordinate");
    key[i] = static_cast<int>(std::floor(c / config.side));
  }
  return key;
}

/// Occupied cells of the overlay, keyed by cell index vector. `shifted` holds
/// the origin-shifted coordinates row-indexed by point id; immutable after
/// build apart from lazy representative memoization.
struct SparseGrid {
  GridConfig config;
  Eigen::MatrixXd shifted;
  std::unordered_map<CellKey, CellRecord, CellKeyHash, CellKeyEq> cells;

  Eigen::Index size() const { return shifted.rows(); }
  int dims() const { return config.dims(); }
};

/// Builds the sparse grid: origin shift, lexicographic point order, one map
/// insertion per point. Only occupied cells are stored.
inline SparseGrid build_grid(const Dataset& data, double epsilon) {
  GridConfig config = make_grid_config(data, epsilon);
  auto [shifted, origin] = shift_origin(data);

  SparseGrid grid;
  grid.config = std::move(config);
  // Members are recorded under the point's stable id so labels line up with
  // the caller's row order even when ids are not 0..n-1.
  Eigen::Index max_id = 0;
  for (int id : shifted.ids) max_id = std::max<Eigen::Index>(max_id, id);
  grid.shifted.resize(max_id + 1, shifted.dims());
  for (Eigen::Index r = 0; r < shifted.size(); ++r)
    grid.shifted.row(shifted.ids[static_cast<std::size_t>(r)]) =
        shifted.coords.row(r);

  for (int row : sort_order(shifted)) {
    const int id = shifted.ids[static_cast<std::size_t>(row)];
    CellKey key = assign_cell(shifted.coords.row(row), grid.config);
    CellRecord& cell = grid.cells[key];
    if (cell.members.empty()) cell.key = key;
    cell.members.push_back(id);
  }
  return grid;
}

/// Occupied cell keys in lexicographic order; the seed order for clustering.
inline std::vector<CellKey> sorted_cell_keys(const SparseGrid& grid) {
  std::vector<CellKey> keys;
  keys.reserve(grid.cells.size());
  for (const auto& [key, cell] : grid.cells) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), cell_key_less);
  return keys;
}

}  // namespace hcad
