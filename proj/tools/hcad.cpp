// hcad: cluster CSV point sets with HCA-DBSCAN, compare against reference
// implementations, and benchmark scaling. Exit codes: 0 success, 1 data
// error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hcad/hcad.hpp"

namespace {

using nlohmann::json;

struct Timed {
  hcad::ClusterLabeling labeling;
  double wall_ms = 0.0;
  std::optional<std::uint64_t> merge_tests;
  std::optional<std::uint64_t> occupied_cells;
};

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

hcad::Comparator parse_comparator(const std::string& s) {
  return s == "le" ? hcad::Comparator::le : hcad::Comparator::lt;
}

Timed run_algorithm(const std::string& algorithm, const hcad::Dataset& data,
                    double epsilon, int minpts, hcad::MergePolicy policy,
                    hcad::Comparator comparator, int min_cluster_size) {
  Timed t;
  const double start = now_ms();
  if (algorithm == "hca") {
    hcad::SparseGrid grid = hcad::build_grid(data, epsilon);
    hcad::ClusterResult res =
        hcad::cluster(grid, epsilon, policy, min_cluster_size);
    t.labeling = std::move(res.labeling);
    t.merge_tests = res.merge_tests;
    t.occupied_cells = grid.cells.size();
  } else if (algorithm == "dbscan") {
    t.labeling = hcad::dbscan(data, {epsilon, minpts, comparator});
  } else {  // components
    t.labeling = hcad::connectivity_components(data, epsilon, comparator);
  }
  t.wall_ms = now_ms() - start;
  return t;
}

json run_report(const std::string& algorithm, const std::string& policy,
                double epsilon, std::optional<int> minpts,
                const hcad::Dataset& data, const Timed& t) {
  json j{{"algorithm", algorithm},
         {"epsilon", epsilon},
         {"n", data.size()},
         {"d", data.dims()},
         {"cluster_count", t.labeling.cluster_count},
         {"noise_count", t.labeling.noise_count()},
         {"wall_time_ms", t.wall_ms}};
  if (algorithm == "hca") j["policy"] = policy;
  if (minpts) j["minpts"] = *minpts;
  if (t.occupied_cells) j["occupied_cells"] = *t.occupied_cells;
  if (t.merge_tests) j["merge_tests"] = *t.merge_tests;
  return j;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hcad::IoError("cannot write report: " + path);
  out << j.dump(2) << '\n';
}

json agreement_json(const hcad::AgreementReport& a) {
  return json{{"rand_index", a.rand},
              {"identical", a.identical},
              {"cluster_counts", {a.cluster_counts.first, a.cluster_counts.second}},
              {"mismatched_pairs", a.mismatched}};
}

// --- generator spec parsing, "kind:key=val,key=val" ---

hcad::GeneratorSpec parse_generator_spec(const std::string& text) {
  hcad::GeneratorSpec spec;
  std::string kind = text;
  std::string opts;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    kind = text.substr(0, colon);
    opts = text.substr(colon + 1);
  }
  if (kind == "blobs")
    spec.kind = hcad::GeneratorSpec::Kind::blobs;
  else if (kind == "rings")
    spec.kind = hcad::GeneratorSpec::Kind::rings;
  else if (kind == "uniform")
    spec.kind = hcad::GeneratorSpec::Kind::uniform;
  else
    throw CLI::ValidationError("--generator", "unknown kind '" + kind + "'");

  std::size_t start = 0;
  while (start < opts.size()) {
    std::size_t end = opts.find(',', start);
    if (end == std::string::npos) end = opts.size();
    const std::string item = opts.substr(start, end - start);
    start = end + 1;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--generator", "expected key=value: " + item);
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    if (key == "d")
      spec.d = std::stoi(val);
    else if (key == "seed")
      spec.seed = std::stoull(val);
    else if (key == "blobs")
      spec.blob_count = std::stoi(val);
    else if (key == "sigma")
      spec.blob_sigma = std::stod(val);
    else if (key == "separation")
      spec.blob_separation = std::stod(val);
    else if (key == "thickness")
      spec.ring_thickness = std::stod(val);
    else if (key == "extent")
      spec.extent = std::stod(val);
    else
      throw CLI::ValidationError("--generator", "unknown key '" + key + "'");
  }
  return spec;
}

int cmd_cluster(const std::string& input, double epsilon,
                const std::string& algorithm, int minpts,
                const std::string& policy, int min_cluster_size,
                const std::string& comparator, const std::string& output,
                const std::string& report_path) {
  hcad::Dataset data = hcad::load_csv(input);
  const hcad::MergePolicy pol = policy == "exact"
                                    ? hcad::MergePolicy::exact
                                    : hcad::MergePolicy::representative;
  Timed t = run_algorithm(algorithm, data, epsilon, minpts, pol,
                          parse_comparator(comparator), min_cluster_size);
  hcad::write_labels(t.labeling, output);
  if (!report_path.empty()) {
    std::optional<int> mp;
    if (algorithm == "dbscan") mp = minpts;
    write_json(run_report(algorithm, policy, epsilon, mp, data, t),
               report_path);
  }
  return 0;
}

int cmd_compare(const std::string& input, double epsilon, int minpts,
                const std::string& policy, const std::string& baseline,
                const std::string& comparator, const std::string& report_path) {
  hcad::Dataset data = hcad::load_csv(input);
  const hcad::MergePolicy pol = policy == "exact"
                                    ? hcad::MergePolicy::exact
                                    : hcad::MergePolicy::representative;
  const hcad::Comparator cmp = parse_comparator(comparator);
  Timed base = run_algorithm(baseline, data, epsilon, minpts,
                             hcad::MergePolicy::representative, cmp, 0);
  Timed hca = run_algorithm("hca", data, epsilon, minpts, pol, cmp, 0);

  const hcad::AgreementReport agreement =
      hcad::compare_labelings(hca.labeling, base.labeling);
  const double ppi = 100.0 * (base.wall_ms - hca.wall_ms) / base.wall_ms;

  std::optional<int> mp;
  if (baseline == "dbscan") mp = minpts;
  json report{{"runs",
               {run_report(baseline, policy, epsilon, mp, data, base),
                run_report("hca", policy, epsilon, std::nullopt, data, hca)}},
              {"agreement", agreement_json(agreement)},
              {"ppi_percent", ppi}};
  write_json(report, report_path);
  return 0;
}

int cmd_bench(const std::string& generator, const std::vector<int>& sizes,
              double epsilon, int repeat, const std::string& report_path) {
  hcad::GeneratorSpec spec = parse_generator_spec(generator);
  json per_size = json::array();
  std::vector<double> hca_medians, oracle_medians;

  for (int n : sizes) {
    spec.n = n;
    hcad::Dataset data = hcad::generate(spec);
    std::vector<double> hca_times, oracle_times;
    json hca_counts;
    for (int r = 0; r < repeat; ++r) {
      Timed h = run_algorithm("hca", data, epsilon, 1,
                              hcad::MergePolicy::representative,
                              hcad::Comparator::lt, 0);
      Timed o = run_algorithm("components", data, epsilon, 1,
                              hcad::MergePolicy::representative,
                              hcad::Comparator::lt, 0);
      hca_times.push_back(h.wall_ms);
      oracle_times.push_back(o.wall_ms);
      if (r == 0) {
        hca_counts = {{"occupied_cells", *h.occupied_cells},
                      {"merge_tests", *h.merge_tests},
                      {"cluster_count", h.labeling.cluster_count}};
      }
    }
    auto median = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      return v[v.size() / 2];
    };
    const double hm = median(hca_times);
    const double om = median(oracle_times);
    hca_medians.push_back(hm);
    oracle_medians.push_back(om);
    per_size.push_back({{"n", n},
                        {"hca_median_ms", hm},
                        {"oracle_median_ms", om},
                        {"hca", hca_counts}});
  }

  json ratios = json::array();
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    ratios.push_back(
        {{"n_from", sizes[i - 1]},
         {"n_to", sizes[i]},
         {"size_factor", static_cast<double>(sizes[i]) / sizes[i - 1]},
         {"hca_ratio", hca_medians[i] / hca_medians[i - 1]},
         {"oracle_ratio", oracle_medians[i] / oracle_medians[i - 1]}});
  }
  json report{{"generator", generator},
              {"epsilon", epsilon},
              {"repeat", repeat},
              {"sizes", per_size},
              {"growth_ratios", ratios}};
  write_json(report, report_path);
  return 0;
}

int cmd_generate(const std::string& kind, int n, int dims, std::uint64_t seed,
                 const std::string& output, int blobs, double sigma,
                 double separation, double thickness, double extent) {
  hcad::GeneratorSpec spec = parse_generator_spec(kind);
  spec.n = n;
  spec.d = dims;
  spec.seed = seed;
  spec.blob_count = blobs;
  spec.blob_sigma = sigma;
  spec.blob_separation = separation;
  spec.ring_thickness = thickness;
  spec.extent = extent;
  hcad::write_csv(hcad::generate(spec), output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HyperCube Accelerated DBSCAN clustering and benchmarks"};
  app.require_subcommand(1);

  // cluster
  auto* cluster = app.add_subcommand("cluster", "cluster a CSV point set");
  std::string input, output, report, algorithm = "hca";
  std::string policy = "representative", comparator = "le";
  double epsilon = 0.0;
  int minpts = 1, min_cluster_size = 0;
  cluster->add_option("--input", input)->required();
  cluster->add_option("--epsilon", epsilon)
      ->required()
      ->check(CLI::PositiveNumber.description("epsilon must be positive"));
  cluster->add_option("--algorithm", algorithm)
      ->check(CLI::IsMember({"hca", "dbscan", "components"}));
  cluster->add_option("--minpts", minpts)->check(CLI::PositiveNumber);
  cluster->add_option("--policy", policy)
      ->check(CLI::IsMember({"representative", "exact"}));
  cluster->add_option("--min-cluster-size", min_cluster_size);
  cluster->add_option("--comparator", comparator)
      ->check(CLI::IsMember({"le", "lt"}));
  cluster->add_option("--output", output)->required();
  cluster->add_option("--report", report);

  // compare
  auto* compare = app.add_subcommand("compare", "run HCA and a baseline");
  std::string cmp_input, cmp_report, baseline = "components";
  std::string cmp_policy = "representative", cmp_comparator = "lt";
  double cmp_epsilon = 0.0;
  int cmp_minpts = 1;
  compare->add_option("--input", cmp_input)->required();
  compare->add_option("--epsilon", cmp_epsilon)
      ->required()
      ->check(CLI::PositiveNumber.description("epsilon must be positive"));
  compare->add_option("--minpts", cmp_minpts)->check(CLI::PositiveNumber);
  compare->add_option("--policy", cmp_policy)
      ->check(CLI::IsMember({"representative", "exact"}));
  compare->add_option("--baseline", baseline)
      ->check(CLI::IsMember({"dbscan", "components"}));
  compare->add_option("--comparator", cmp_comparator)
      ->check(CLI::IsMember({"le", "lt"}));
  compare->add_option("--report", cmp_report)->required();

  // bench
  auto* bench = app.add_subcommand("bench", "timed scaling runs");
  std::string generator = "uniform:d=2", bench_report;
  std::vector<int> sizes;
  double bench_epsilon = 0.0;
  int repeat = 5;
  bench->add_option("--generator", generator);
  bench->add_option("--sizes", sizes)->required()->delimiter(',');
  bench->add_option("--epsilon", bench_epsilon)
      ->required()
      ->check(CLI::PositiveNumber.description("epsilon must be positive"));
  bench->add_option("--repeat", repeat)->check(CLI::PositiveNumber);
  bench->add_option("--report", bench_report)->required();

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic dataset CSV");
  std::string gen_kind = "uniform", gen_output;
  int gen_n = 0, gen_dims = 2, gen_blobs = 3;
  std::uint64_t gen_seed = 0;
  double gen_sigma = 1.0, gen_separation = 16.0, gen_thickness = 0.1,
         gen_extent = 1.0;
  gen->add_option("--kind", gen_kind)
      ->required()
      ->check(CLI::IsMember({"blobs", "rings", "uniform"}));
  gen->add_option("--n", gen_n)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--dims", gen_dims)->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--blobs", gen_blobs)->check(CLI::PositiveNumber);
  gen->add_option("--sigma", gen_sigma)->check(CLI::PositiveNumber);
  gen->add_option("--separation", gen_separation);
  gen->add_option("--thickness", gen_thickness);
  gen->add_option("--extent", gen_extent);
  gen->add_option("--output", gen_output)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (*cluster)
      return cmd_cluster(input, epsilon, algorithm, minpts, policy,
                         min_cluster_size, comparator, output, report);
    if (*compare)
      return cmd_compare(cmp_input, cmp_epsilon, cmp_minpts, cmp_policy,
                         baseline, cmp_comparator, cmp_report);
    if (*bench)
      return cmd_bench(generator, sizes, bench_epsilon, repeat, bench_report);
    if (*gen)
      return cmd_generate(gen_kind, gen_n, gen_dims, gen_seed, gen_output,
                          gen_blobs, gen_sigma, gen_separation, gen_thickness,
                          gen_extent);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const hcad::InvalidEpsilon& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const hcad::UnsupportedDimension& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
