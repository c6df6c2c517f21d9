// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Timing criteria use median-of-5 wall clocks; thresholds already
// carry 2x slack.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "hcad/hcad.hpp"

namespace {

using namespace hcad;

bool all_pass = true;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  all_pass &= pass;
}

Dataset random_dataset(std::mt19937_64& rng, int n, int d, double extent) {
  Eigen::MatrixXd m(n, d);
  std::uniform_real_distribution<double> u(0.0, extent);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) m(i, c) = u(rng);
  return Dataset(std::move(m));
}

struct RandomCase {
  Dataset data;
  double epsilon;
};

// 200 random datasets, n <= 2000, d in 1..5, random epsilon; shared by
// criteria 2, 3 and 4.
std::vector<RandomCase> random_suite() {
  std::vector<RandomCase> suite;
  std::mt19937_64 rng(20260826);
  std::uniform_int_distribution<int> d_dist(1, 5);
  std::uniform_int_distribution<int> n_dist(20, 2000);
  std::uniform_real_distribution<double> eps_dist(0.02, 0.6);
  for (int i = 0; i < 200; ++i) {
    const int d = d_dist(rng);
    const int n = n_dist(rng);
    suite.push_back({random_dataset(rng, n, d, 1.0), eps_dist(rng)});
  }
  return suite;
}

std::vector<Dataset> generator_suite() {
  std::vector<Dataset> out;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    GeneratorSpec blobs;
    blobs.kind = GeneratorSpec::Kind::blobs;
    blobs.n = 3000;
    blobs.d = 2;
    blobs.seed = seed;
    out.push_back(generate(blobs));

    GeneratorSpec rings;
    rings.kind = GeneratorSpec::Kind::rings;
    rings.n = 2000;
    rings.d = 2;
    rings.seed = seed;
    out.push_back(generate(rings));

    GeneratorSpec uniform;
    uniform.kind = GeneratorSpec::Kind::uniform;
    uniform.n = 2500;
    uniform.d = 3;
    uniform.seed = seed;
    out.push_back(generate(uniform));
  }
  return out;
}

double epsilon_for(const Dataset& data) {
  // a radius that produces nontrivial structure on any of the suites
  const Eigen::VectorXd span = (data.coords.colwise().maxCoeff() -
                                data.coords.colwise().minCoeff());
  return std::max(span.maxCoeff() * 0.03, 1e-6);
}

template <typename F>
double median_ms(int repeat, F&& fn) {
  std::vector<double> times;
  for (int r = 0; r < repeat; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(
        std::chrono::duration<double, std::milli>(stop - start).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t c2 = neighbor_offsets(2).size();
  const std::size_t c3 = neighbor_offsets(3).size();
  const std::size_t c4 = neighbor_offsets(4).size();
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  const bool pass = c2 == 20 && c3 == 116 && c4 == 608 && ms < 1000.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "neighbor offsets d=2,3,4 -> %zu,%zu,%zu (expect 20,116,608) "
                "in %.1f ms",
                c2, c3, c4, ms);
  report(1, pass, buf);
}

void criterion_2(const std::vector<RandomCase>& suite) {
  long violations = 0;
  for (const RandomCase& rc : suite) {
    SparseGrid grid = build_grid(rc.data, rc.epsilon);
    const double eps2 = rc.epsilon * rc.epsilon;
    for (const auto& [key, cell] : grid.cells)
      for (std::size_t i = 0; i < cell.members.size(); ++i)
        for (std::size_t j = i + 1; j < cell.members.size(); ++j)
          if ((grid.shifted.row(cell.members[i]) -
               grid.shifted.row(cell.members[j]))
                  .squaredNorm() >= eps2)
            ++violations;
  }
  report(2, violations == 0,
         "same-cell pairs >= epsilon across 200 datasets: " +
             std::to_string(violations) + " violations");
}

void criterion_3(const std::vector<RandomCase>& suite,
                 const std::vector<Dataset>& generated) {
  const auto start = std::chrono::steady_clock::now();
  int mismatches = 0, cases = 0;
  auto check = [&](const Dataset& data, double eps) {
    SparseGrid grid = build_grid(data, eps);
    ClusterResult res = cluster(grid, eps, MergePolicy::exact);
    ClusterLabeling oracle = connectivity_components(data, eps, Comparator::lt);
    if (rand_index(res.labeling, oracle) != 1.0 ||
        !partitions_identical(res.labeling, oracle))
      ++mismatches;
    ++cases;
  };
  for (const RandomCase& rc : suite) check(rc.data, rc.epsilon);
  for (const Dataset& data : generated) check(data, epsilon_for(data));
  const double s = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "exact policy vs oracle on %d datasets: %d mismatches, %.1f s "
                "(limit 60)",
                cases, mismatches, s);
  report(3, mismatches == 0 && s < 60.0, buf);
}

void criterion_4(const std::vector<RandomCase>& suite) {
  int violations = 0;
  double rand_sum = 0.0;
  for (const RandomCase& rc : suite) {
    SparseGrid grid = build_grid(rc.data, rc.epsilon);
    ClusterResult res = cluster(grid, rc.epsilon, MergePolicy::representative);
    ClusterLabeling oracle =
        connectivity_components(rc.data, rc.epsilon, Comparator::lt);
    if (!refinement_check(res.labeling, oracle)) ++violations;
    rand_sum += rand_index(res.labeling, oracle);
  }
  const double adversarial_mean = rand_sum / suite.size();

  // well-separated blob suites: mean agreement must be exactly 1.0
  double blob_rand_sum = 0.0;
  int blob_cases = 0;
  for (std::uint64_t seed : {11ull, 12ull, 13ull, 14ull, 15ull}) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::blobs;
    spec.n = 4000;
    spec.d = 2;
    spec.seed = seed;
    Dataset data = generate(spec);
    const double eps = 3.0 * spec.blob_sigma;
    SparseGrid grid = build_grid(data, eps);
    ClusterResult res = cluster(grid, eps, MergePolicy::representative);
    ClusterLabeling oracle = connectivity_components(data, eps, Comparator::lt);
    blob_rand_sum += rand_index(res.labeling, oracle);
    ++blob_cases;
  }
  const double blob_mean = blob_rand_sum / blob_cases;

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "representative refinement: %d violations; blob-suite mean "
                "rand %.6f (require 1.0); random-suite mean rand %.6f "
                "(recorded)",
                violations, blob_mean, adversarial_mean);
  report(4, violations == 0 && blob_mean == 1.0, buf);
}

// definitional core/border/noise classifier, same construction as the unit
// tests but kept independent of the dbscan implementation under test
void criterion_5() {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> n_dist(20, 500);
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = n_dist(rng);
    Dataset data = random_dataset(rng, n, 2, 1.0);
    for (int minpts : {1, 3, 5}) {
      DbscanParams params{0.08, minpts, Comparator::le};
      ClusterLabeling out = dbscan(data, params);
      const double eps2 = params.epsilon * params.epsilon;
      auto within = [&](int i, int j) {
        return (data.coords.row(i) - data.coords.row(j)).squaredNorm() <= eps2;
      };
      std::vector<bool> core(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        int deg = 0;
        for (int j = 0; j < n; ++j) deg += within(i, j);
        core[static_cast<std::size_t>(i)] = deg >= minpts;
      }
      bool ok = true;
      // classification: noise iff neither core nor within eps of a core
      for (int i = 0; i < n; ++i) {
        bool border = false;
        for (int j = 0; j < n && !border; ++j)
          border = core[static_cast<std::size_t>(j)] && within(i, j);
        const bool expected_noise = !core[static_cast<std::size_t>(i)] && !border;
        ok &= (out.labels[static_cast<std::size_t>(i)] == kNoise) ==
              expected_noise;
      }
      // partition on cores: connected components of the core-core relation
      std::vector<int> comp(static_cast<std::size_t>(n), -1);
      int next = 0;
      for (int s = 0; s < n; ++s) {
        if (!core[static_cast<std::size_t>(s)] ||
            comp[static_cast<std::size_t>(s)] >= 0)
          continue;
        const int id = next++;
        std::vector<int> stack{s};
        comp[static_cast<std::size_t>(s)] = id;
        while (!stack.empty()) {
          const int q = stack.back();
          stack.pop_back();
          for (int r = 0; r < n; ++r)
            if (core[static_cast<std::size_t>(r)] &&
                comp[static_cast<std::size_t>(r)] < 0 && within(q, r)) {
              comp[static_cast<std::size_t>(r)] = id;
              stack.push_back(r);
            }
        }
      }
      // core labels must be a bijection onto core components
      std::vector<int> seen_label(static_cast<std::size_t>(next), 0);
      std::vector<int> label_of(static_cast<std::size_t>(next), 0);
      for (int i = 0; i < n; ++i) {
        if (!core[static_cast<std::size_t>(i)]) continue;
        const int c = comp[static_cast<std::size_t>(i)];
        const int l = out.labels[static_cast<std::size_t>(i)];
        if (!seen_label[static_cast<std::size_t>(c)]) {
          seen_label[static_cast<std::size_t>(c)] = 1;
          label_of[static_cast<std::size_t>(c)] = l;
        } else {
          ok &= label_of[static_cast<std::size_t>(c)] == l;
        }
      }
      // borders carry the label of a core that reaches them
      for (int i = 0; i < n; ++i) {
        if (core[static_cast<std::size_t>(i)] ||
            out.labels[static_cast<std::size_t>(i)] == kNoise)
          continue;
        bool justified = false;
        for (int j = 0; j < n && !justified; ++j)
          justified = core[static_cast<std::size_t>(j)] && within(i, j) &&
                      out.labels[static_cast<std::size_t>(j)] ==
                          out.labels[static_cast<std::size_t>(i)];
        ok &= justified;
      }
      if (!ok) ++failures;
    }
  }
  report(5, failures == 0,
         "dbscan vs definitional classifier, 100 datasets x minpts {1,3,5}: " +
             std::to_string(failures) + " failures");
}

void criterion_6() {
  // uniform 2-D, epsilon fixed so occupancy is ~10 points per cell mid-range
  const double eps = 0.02;
  auto hca_time = [&](int n) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::uniform;
    spec.n = n;
    spec.d = 2;
    spec.seed = 99;
    Dataset data = generate(spec);
    return median_ms(5, [&] {
      SparseGrid grid = build_grid(data, eps);
      cluster(grid, eps, MergePolicy::representative);
    });
  };
  auto oracle_time = [&](int n) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::uniform;
    spec.n = n;
    spec.d = 2;
    spec.seed = 99;
    Dataset data = generate(spec);
    return median_ms(5,
                     [&] { connectivity_components(data, eps, Comparator::lt); });
  };
  const double h25 = hca_time(25000), h100 = hca_time(100000);
  const double o5 = oracle_time(5000), o20 = oracle_time(20000);
  const double hca_ratio = h100 / h25;
  const double oracle_ratio = o20 / o5;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "HCA T(100k)/T(25k) = %.2f (< 8); oracle T(20k)/T(5k) = %.2f "
                "(> 10) [HCA %.1f/%.1f ms, oracle %.1f/%.1f ms]",
                hca_ratio, oracle_ratio, h25, h100, o5, o20);
  report(6, hca_ratio < 8.0 && oracle_ratio > 10.0, buf);
}

void criterion_7_8() {
  GeneratorSpec spec;
  spec.kind = GeneratorSpec::Kind::blobs;
  spec.n = 50000;
  spec.d = 2;
  spec.seed = 77;
  Dataset data = generate(spec);
  const double eps = 3.0 * spec.blob_sigma;

  std::uint64_t merge_tests = 0;
  const double hca_ms = median_ms(5, [&] {
    SparseGrid grid = build_grid(data, eps);
    merge_tests = cluster(grid, eps, MergePolicy::representative).merge_tests;
  });
  const double dbscan_ms = median_ms(5, [&] {
    dbscan(data, {eps, 1, Comparator::lt});
  });

  const double ratio = hca_ms / dbscan_ms;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "HCA %.1f ms vs naive DBSCAN %.1f ms, ratio %.4f (< 0.5)",
                hca_ms, dbscan_ms, ratio);
  report(7, ratio < 0.5, buf);

  const double n2 = static_cast<double>(spec.n) * spec.n;
  const double fraction = static_cast<double>(merge_tests) / n2;
  std::snprintf(buf, sizeof(buf),
                "merge_tests = %llu = %.6f%% of n^2 (< 1%%)",
                static_cast<unsigned long long>(merge_tests),
                100.0 * fraction);
  report(8, fraction < 0.01, buf);
}

void criterion_9() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "hcad_acceptance";
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
  };

  // generator determinism, byte level
  GeneratorSpec spec;
  spec.kind = GeneratorSpec::Kind::blobs;
  spec.n = 2000;
  spec.d = 3;
  spec.seed = 4242;
  Dataset data = generate(spec);
  write_csv(data, (dir / "a.csv").string());
  write_csv(generate(spec), (dir / "b.csv").string());
  const bool gen_ok = slurp(dir / "a.csv") == slurp(dir / "b.csv");

  // csv round-trip is exact
  Dataset loaded = load_csv((dir / "a.csv").string());
  const bool roundtrip_ok = loaded.coords == data.coords;

  // identical runs produce byte-identical label files
  const double eps = 3.0;
  SparseGrid g1 = build_grid(loaded, eps);
  SparseGrid g2 = build_grid(loaded, eps);
  write_labels(cluster(g1, eps, MergePolicy::representative).labeling,
               (dir / "l1.csv").string());
  write_labels(cluster(g2, eps, MergePolicy::representative).labeling,
               (dir / "l2.csv").string());
  const bool label_ok = slurp(dir / "l1.csv") == slurp(dir / "l2.csv");

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "determinism: generator %s, csv round-trip %s, labels %s",
                gen_ok ? "ok" : "FAIL", roundtrip_ok ? "ok" : "FAIL",
                label_ok ? "ok" : "FAIL");
  report(9, gen_ok && roundtrip_ok && label_ok, buf);
}

}  // namespace

int main() {
  criterion_1();
  const std::vector<RandomCase> suite = random_suite();
  criterion_2(suite);
  criterion_3(suite, generator_suite());
  criterion_4(suite);
  criterion_5();
  criterion_6();
  criterion_7_8();
  criterion_9();
  return all_pass ? 0 : 1;
}
