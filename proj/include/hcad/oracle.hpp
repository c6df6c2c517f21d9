#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <deque>
#include <map>
#include <unordered_map>
#include <vector>

#include "hcad/types.hpp"

namespace hcad {

/// Distance comparator against epsilon. Definition 1 of classic DBSCAN uses
/// <=; the hypercube algorithm's merging condition uses strict <.
enum class Comparator { le, lt };

struct DbscanParams {
  double epsilon = 0.0;
  int minpts = 1;
  Comparator comparator = Comparator::le;
};

namespace detail {

inline bool within(double d2, double eps2, Comparator cmp) {
  return cmp == Comparator::le ? d2 <= eps2 : d2 < eps2;
}

}  // namespace detail

/// Indices of all points within epsilon of point `p`, p itself included.
/// Deliberately a naive O(n) scan.
inline std::vector<int> epsilon_neighborhood(int p, const Dataset& data,
                                             const DbscanParams& params) {
  const double eps2 = params.epsilon * params.epsilon;
  Eigen::VectorXd d2 = (data.coords.rowwise() - data.coords.row(p))
                           .rowwise()
                           .squaredNorm();
  std::vector<int> out;
  for (Eigen::Index q = 0; q < data.size(); ++q)
    if (detail::within(d2[q], eps2, params.comparator))
      out.push_back(static_cast<int>(q));
  return out;
}

/// Classic DBSCAN: visits points in index order, grows a cluster from each
/// unvisited core point by density-reachability, labels the rest noise.
/// Border points reachable from several clusters go to the first one that
/// reaches them.
inline ClusterLabeling dbscan(const Dataset& data, const DbscanParams& params) {
  const int n = static_cast<int>(data.size());
  ClusterLabeling out;
  out.labels.assign(static_cast<std::size_t>(n), kNoise);
  std::vector<bool> visited(static_cast<std::size_t>(n), false);

  int next_id = 0;
  for (int p = 0; p < n; ++p) {
    if (visited[static_cast<std::size_t>(p)]) continue;
    visited[static_cast<std::size_t>(p)] = true;
    std::vector<int> seeds = epsilon_neighborhood(p, data, params);
    if (static_cast<int>(seeds.size()) < params.minpts) continue;  // noise for now
    const int id = ++next_id;
    out.labels[static_cast<std::size_t>(p)] = id;
    std::deque<int> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      if (out.labels[static_cast<std::size_t>(q)] == kNoise)
        out.labels[static_cast<std::size_t>(q)] = id;  // border or queued core
      if (visited[static_cast<std::size_t>(q)]) continue;
      visited[static_cast<std::size_t>(q)] = true;
      std::vector<int> nq = epsilon_neighborhood(q, data, params);
      if (static_cast<int>(nq.size()) >= params.minpts)
        queue.insert(queue.end(), nq.begin(), nq.end());
    }
  }
  out.cluster_count = next_id;
  return out;
}

/// Connected components of the graph on points with edges where the distance
/// passes the comparator against epsilon. Equals dbscan with minpts = 1.
/// Component ids in first-point order, no noise.
inline ClusterLabeling connectivity_components(const Dataset& data,
                                               double epsilon,
                                               Comparator comparator) {
  const int n = static_cast<int>(data.size());
  const double eps2 = epsilon * epsilon;
  ClusterLabeling out;
  out.labels.assign(static_cast<std::size_t>(n), kNoise);
  int next_id = 0;
  std::deque<int> queue;
  for (int p = 0; p < n; ++p) {
    if (out.labels[static_cast<std::size_t>(p)] != kNoise) continue;
    const int id = ++next_id;
    out.labels[static_cast<std::size_t>(p)] = id;
    queue.push_back(p);
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      Eigen::VectorXd d2 = (data.coords.rowwise() - data.coords.row(q))
                               .rowwise()
                               .squaredNorm();
      for (int r = 0; r < n; ++r) {
        if (out.labels[static_cast<std::size_t>(r)] != kNoise) continue;
        if (!detail::within(d2[r], eps2, comparator)) continue;
        out.labels[static_cast<std::size_t>(r)] = id;
        queue.push_back(r);
      }
    }
  }
  out.cluster_count = next_id;
  return out;
}

namespace detail {

/// Canonical block ids with noise expanded to singletons: first-occurrence
/// numbering, so two labelings are partition-identical iff their canonical
/// forms are equal element-wise.
inline std::vector<int> canonical_blocks(const ClusterLabeling& labeling) {
  std::vector<int> out(labeling.labels.size());
  std::unordered_map<int, int> seen;
  int next = 0;
  for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
    const int l = labeling.labels[i];
    if (l == kNoise) {
      out[i] = next++;  // each noise point is its own block
      continue;
    }
    auto [it, inserted] = seen.emplace(l, next);
    if (inserted) ++next;
    out[i] = it->second;
  }
  return out;
}

}  // namespace detail

inline bool partitions_identical(const ClusterLabeling& a,
                                 const ClusterLabeling& b) {
  if (a.labels.size() != b.labels.size())
    throw LabelingMismatch("partitions_identical: length mismatch");
  return detail::canonical_blocks(a) == detail::canonical_blocks(b);
}

/// Fraction of unordered point pairs on which the two partitions agree
/// (same-block in both, or split in both). Noise points count as singleton
/// blocks. Computed from the contingency table.
inline double rand_index(const ClusterLabeling& a, const ClusterLabeling& b) {
  if (a.labels.size() != b.labels.size())
    throw LabelingMismatch("rand_index: length mismatch");
  const std::size_t n = a.labels.size();
  if (n < 2) return 1.0;

  const std::vector<int> ba = detail::canonical_blocks(a);
  const std::vector<int> bb = detail::canonical_blocks(b);
  std::unordered_map<int, std::uint64_t> sa, sb;
  std::map<std::pair<int, int>, std::uint64_t> joint;
  for (std::size_t i = 0; i < n; ++i) {
    ++sa[ba[i]];
    ++sb[bb[i]];
    ++joint[{ba[i], bb[i]}];
  }
  auto choose2 = [](std::uint64_t k) { return k * (k - 1) / 2; };
  std::uint64_t pa = 0, pb = 0, pj = 0;
  for (const auto& [k, c] : sa) pa += choose2(c);
  for (const auto& [k, c] : sb) pb += choose2(c);
  for (const auto& [k, c] : joint) pj += choose2(c);
  const std::uint64_t total = choose2(static_cast<std::uint64_t>(n));
  // agreements = both-together + both-apart
  const std::uint64_t agree = pj + (total - pa - pb + pj);
  return static_cast<double>(agree) / static_cast<double>(total);
}

/// Number of unordered pairs the two partitions disagree on.
inline std::uint64_t mismatched_pairs(const ClusterLabeling& a,
                                      const ClusterLabeling& b) {
  const std::size_t n = a.labels.size();
  if (n < 2) return 0;
  auto choose2 = [](std::uint64_t k) { return k * (k - 1) / 2; };
  const std::uint64_t total = choose2(static_cast<std::uint64_t>(n));
  const double agree = rand_index(a, b) * static_cast<double>(total);
  return total - static_cast<std::uint64_t>(agree + 0.5);
}

/// True iff every block of `fine` lies inside exactly one block of `coarse`.
/// Noise points are singleton blocks on both sides.
inline bool refinement_check(const ClusterLabeling& fine,
                             const ClusterLabeling& coarse) {
  if (fine.labels.size() != coarse.labels.size())
    throw LabelingMismatch("refinement_check: length mismatch");
  const std::vector<int> bf = detail::canonical_blocks(fine);
  const std::vector<int> bc = detail::canonical_blocks(coarse);
  std::unordered_map<int, int> image;
  for (std::size_t i = 0; i < bf.size(); ++i) {
    auto [it, inserted] = image.emplace(bf[i], bc[i]);
    if (!inserted && it->second != bc[i]) return false;
  }
  return true;
}

struct AgreementReport {
  double rand = 1.0;
  bool identical = true;
  std::pair<int, int> cluster_counts{0, 0};
  std::uint64_t mismatched = 0;
};

inline AgreementReport compare_labelings(const ClusterLabeling& a,
                                         const ClusterLabeling& b) {
  AgreementReport rep;
  rep.rand = rand_index(a, b);
  rep.identical = partitions_identical(a, b);
  rep.cluster_counts = {a.cluster_count, b.cluster_count};
  rep.mismatched = mismatched_pairs(a, b);
  return rep;
}

}  // namespace hcad
