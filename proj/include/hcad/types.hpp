#pragma once

#include <Eigen/Core>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcad {

/// Label value marking a point as noise in a ClusterLabeling.
inline constexpr int kNoise = -1;

// Errors thrown across the library. The CLI maps data errors to exit 1.
struct EmptyInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidEpsilon : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotOriginShifted : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct WrongCell : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConfigMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct LabelingMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A fixed-dimensionality point set. Row i of `coords` is the point whose
/// stable identity is `ids[i]`; a freshly loaded or generated dataset has
/// ids 0..n-1 and reorderings (sort_dataset) carry the ids along.
struct Dataset {
  Eigen::MatrixXd coords;  // n x d
  std::vector<int> ids;

  Dataset() = default;
  explicit Dataset(Eigen::MatrixXd c) : coords(std::move(c)) {
    ids.resize(static_cast<std::size_t>(coords.rows()));
    std::iota(ids.begin(), ids.end(), 0);
  }

  Eigen::Index size() const { return coords.rows(); }
  Eigen::Index dims() const { return coords.cols(); }
};

/// Per-point cluster assignment. Cluster ids are contiguous 1..cluster_count;
/// kNoise marks unassigned points.
struct ClusterLabeling {
  std::vector<int> labels;
  int cluster_count = 0;

  std::size_t size() const { return labels.size(); }
  int noise_count() const {
    int c = 0;
    for (int l : labels) c += (l == kNoise);
    return c;
  }
};

}  // namespace hcad
