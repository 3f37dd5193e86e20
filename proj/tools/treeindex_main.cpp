// Batch front door: EEG feature extraction, reference clusterers, cluster
// evaluation (Tree Index plus the baseline indexes), the repeated-run bench
// protocol, and plot-data export.
//
// Exit codes: 0 success, 1 runtime failure (missing/corrupt files),
// 2 usage or contract violation.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeindex/baseline_indexes.hpp"
#include "treeindex/clusterers.hpp"
#include "treeindex/dataset.hpp"
#include "treeindex/eeg_features.hpp"
#include "treeindex/errors.hpp"
#include "treeindex/text.hpp"
#include "treeindex/tree_index.hpp"

namespace {

using namespace treeindex;

constexpr const char* kTreeIndexName = "tree_index";

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

struct DatasetOptions {
  std::string path;
  bool no_header = false;
  std::string class_column;  // empty: auto-detect a "class" header
  bool normalize = false;
};

void add_dataset_options(CLI::App* cmd, DatasetOptions& opt) {
  cmd->add_option("--dataset", opt.path, "dataset CSV")->required();
  cmd->add_flag("--no-header", opt.no_header, "dataset file has no header row");
  cmd->add_option("--class-column", opt.class_column,
                  "class column (header name or 0-based index); default: a column named 'class'");
  cmd->add_flag("--normalize", opt.normalize, "min-max normalize attributes to [0,1]");
}

Dataset load_dataset(const DatasetOptions& opt) {
  CsvOptions csv;
  csv.has_header = !opt.no_header;
  if (!opt.class_column.empty()) {
    csv.class_column = opt.class_column;
  } else if (csv.has_header) {
    // Peek at the header for a conventional "class" column.
    std::ifstream in(opt.path);
    std::string header;
    if (in && std::getline(in, header)) {
      if (!header.empty() && header.back() == '\r') header.pop_back();
      for (const auto& field : split_fields(header))
        if (field == "class") {
          csv.class_column = "class";
          break;
        }
    }
  }
  Dataset ds = load_csv(opt.path, csv);
  return opt.normalize ? min_max_normalize(ds) : ds;
}

const IndexInfo* find_baseline(const std::string& name) {
  for (const auto& info : baseline_index_catalog())
    if (info.name == name) return &info;
  return nullptr;
}

// Resolves the index list for evaluate/bench: either the user's explicit
// names (validated) or everything applicable to this dataset/assignment.
std::vector<std::string> resolve_indexes(const std::string& requested, const Dataset& ds,
                                         std::size_t declared_k) {
  std::vector<std::string> names;
  if (!requested.empty()) {
    names = split_list(requested);
    for (const auto& n : names)
      if (n != kTreeIndexName && !find_baseline(n))
        throw std::invalid_argument("unknown index: " + n);
    return names;
  }
  names.push_back(kTreeIndexName);
  for (const auto& info : baseline_index_catalog()) {
    if (info.needs_true_classes && !ds.has_true_classes()) continue;
    const bool needs_k2 =
        info.name == "silhouette" || info.name == "db" || info.name == "xb";
    if (needs_k2 && declared_k < 2) continue;
    names.push_back(info.name);
  }
  return names;
}

const char* direction_of(const std::string& name) {
  if (name == kTreeIndexName) return "lower";
  const IndexInfo* info = find_baseline(name);
  return info->direction == Direction::higher ? "higher" : "lower";
}

// ---------------------------------------------------------------- extract

int cmd_extract(const std::string& manifest_path, const std::string& out_path) {
  const EegManifest manifest = load_manifest(manifest_path);
  const Dataset ds = extract_from_manifest(manifest);
  write_csv(ds, out_path);
  std::size_t seizure = 0;
  for (const auto& c : ds.true_classes())
    if (c == kSeizureLabel) ++seizure;
  std::cout << "records=" << ds.n() << " attributes=" << ds.d() << " seizure=" << seizure
            << " non_seizure=" << (ds.n() - seizure) << " out=" << out_path << "\n";
  return 0;
}

// ---------------------------------------------------------------- cluster

struct ClustererSpec {
  std::string name = "kmeans";  // kmeans | kmeans++ | degenerate
  std::string k = "2";          // integer or "random"
  std::size_t isolate = 0;
  std::size_t max_iterations = 50;
  double movement_threshold = 0.005;
};

void add_clusterer_options(CLI::App* cmd, ClustererSpec& spec) {
  cmd->add_option("--clusterer", spec.name, "kmeans | kmeans++ | degenerate")
      ->check(CLI::IsMember({"kmeans", "kmeans++", "kmeans_pp", "degenerate"}));
  cmd->add_option("--k", spec.k, "cluster count, or 'random' for uniform in [2, floor(sqrt(n))]");
  cmd->add_option("--isolate", spec.isolate, "record isolated by the degenerate clusterer");
  cmd->add_option("--max-iters", spec.max_iterations, "k-means iteration cap");
  cmd->add_option("--threshold", spec.movement_threshold, "k-means center-shift convergence threshold");
}

struct ClusterRun {
  ClusterAssignment assignment;
  std::optional<KMeansTrace> trace;
  std::size_t k_used = 0;
};

ClusterRun run_clusterer(const Dataset& ds, const ClustererSpec& spec, std::uint64_t seed) {
  if (spec.name == "degenerate")
    return {degenerate_one_vs_rest(ds, spec.isolate), std::nullopt, 2};

  std::mt19937_64 rng(seed);
  std::size_t k;
  if (spec.k == "random") {
    k = random_k(ds.n(), rng);
  } else {
    try {
      k = std::stoul(spec.k);
    } catch (const std::exception&) {
      throw std::invalid_argument("--k must be an integer or 'random'");
    }
  }
  KMeansConfig cfg;
  cfg.k = k;
  cfg.max_iterations = spec.max_iterations;
  cfg.movement_threshold = spec.movement_threshold;
  cfg.seeding = spec.name == "kmeans" ? Seeding::uniform_random : Seeding::plus_plus;
  cfg.rng_seed = rng();  // decorrelated from the k draw
  auto result = kmeans(ds, cfg);
  return {std::move(result.assignment), std::move(result.trace), k};
}

int cmd_cluster(const DatasetOptions& data_opt, const ClustererSpec& spec,
                std::uint64_t seed, const std::string& out_path,
                const std::string& trace_path) {
  const Dataset ds = load_dataset(data_opt);
  const ClusterRun run = run_clusterer(ds, spec, seed);
  write_assignment_csv(run.assignment, out_path);
  if (!trace_path.empty() && run.trace) {
    std::ofstream f(trace_path);
    if (!f) throw DataError("cannot write file: " + trace_path);
    f << "iteration,sse,max_shift\n";
    for (std::size_t i = 0; i < run.trace->sse.size(); ++i)
      f << i + 1 << ',' << format_double(run.trace->sse[i]) << ','
        << format_double(run.trace->max_shift[i]) << '\n';
  }
  std::cout << "clusterer=" << spec.name << " k=" << run.k_used
            << " declared_k=" << run.assignment.declared_k()
            << " sse=" << format_fixed6(sse(ds, run.assignment));
  if (run.trace)
    std::cout << " iterations=" << run.trace->iterations_run
              << " converged=" << (run.trace->converged ? "yes" : "no");
  std::cout << " out=" << out_path << "\n";
  return 0;
}

// --------------------------------------------------------------- evaluate

int cmd_evaluate(const DatasetOptions& data_opt, const std::string& assignment_path,
                 const std::string& requested_indexes,
                 std::optional<std::size_t> min_leaf_override, bool per_leaf,
                 const std::string& out_path, const std::string& json_path) {
  const Dataset ds = load_dataset(data_opt);
  const ClusterAssignment ca = load_assignment_csv(assignment_path);
  if (ca.n() != ds.n())
    throw std::invalid_argument("assignment covers " + std::to_string(ca.n()) +
                                " records, dataset has " + std::to_string(ds.n()));

  const auto names = resolve_indexes(requested_indexes, ds, ca.declared_k());
  std::optional<TreeIndexReport> tree_report;
  std::vector<std::pair<std::string, double>> rows;
  for (const auto& name : names) {
    if (name == kTreeIndexName) {
      tree_report = evaluate_clustering(ds, ca, min_leaf_override);
      rows.emplace_back(name, tree_report->score.value());
    } else {
      rows.emplace_back(name, compute_baseline_index(name, ds, ca));
    }
  }

  for (const auto& [name, value] : rows) {
    if (name == kTreeIndexName)
      std::cout << render_summary(*tree_report);
    else
      std::cout << name << "=" << format_fixed6(value);
    std::cout << " direction=" << direction_of(name) << "\n";
  }
  if (per_leaf && tree_report)
    for (const auto& l : tree_report->per_leaf)
      std::cout << "leaf entropy=" << format_fixed6(l.entropy) << " depth=" << l.depth
                << " support=" << l.support << "\n";

  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw DataError("cannot write file: " + out_path);
    f << "index,value,direction\n";
    for (const auto& [name, value] : rows)
      f << name << ',' << format_double(value) << ',' << direction_of(name) << '\n';
  }
  if (!json_path.empty()) {
    nlohmann::json doc;
    doc["dataset"] = ds.name();
    doc["records"] = ds.n();
    doc["normalized"] = data_opt.normalize;
    doc["indexes"] = nlohmann::json::array();
    for (const auto& [name, value] : rows) {
      nlohmann::json row;
      row["name"] = name;
      row["direction"] = direction_of(name);
      if (std::isinf(value))
        row["value"] = "inf";
      else
        row["value"] = value;
      doc["indexes"].push_back(row);
    }
    if (tree_report) {
      nlohmann::json t;
      t["score"] = tree_report->score.is_finite()
                       ? nlohmann::json(tree_report->score.value())
                       : nlohmann::json("inf");
      t["leaves"] = tree_report->num_leaves;
      t["clusters"] = tree_report->num_clusters;
      t["min_leaf"] = tree_report->min_leaf_used;
      t["per_leaf"] = nlohmann::json::array();
      for (const auto& leaf : tree_report->per_leaf)
        t["per_leaf"].push_back({{"entropy", leaf.entropy},
                                 {"depth", leaf.depth},
                                 {"support", leaf.support}});
      doc["tree_index"] = t;
    }
    std::ofstream f(json_path);
    if (!f) throw DataError("cannot write file: " + json_path);
    f << doc.dump(2) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------ bench

struct BenchSpec {
  DatasetOptions data;
  ClustererSpec clusterer;
  std::uint64_t seed = 0;
  std::size_t reps = 20;
  std::string indexes;  // empty: tree_index only
  std::optional<std::size_t> min_leaf_override;
  std::size_t threads = 1;
  std::string out_path;
  bool audit = true;
};

struct BenchRow {
  std::uint64_t seed = 0;
  std::size_t declared_k = 0;
  std::vector<double> values;
};

void audit_bench_csv(const std::string& path, std::size_t reps, std::size_t num_indexes);

int cmd_bench(const BenchSpec& spec) {
  if (spec.reps < 1) throw std::invalid_argument("--reps must be >= 1");
  if (spec.threads < 1) throw std::invalid_argument("--threads must be >= 1");
  const Dataset ds = load_dataset(spec.data);

  std::vector<std::string> names =
      spec.indexes.empty() ? std::vector<std::string>{kTreeIndexName}
                           : resolve_indexes(spec.indexes, ds, 0);

  std::vector<BenchRow> rows(spec.reps);
  std::vector<std::exception_ptr> failures(spec.reps);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t rep = next.fetch_add(1); rep < spec.reps; rep = next.fetch_add(1)) {
      try {
        const std::uint64_t seed = spec.seed + rep;
        const ClusterRun run = run_clusterer(ds, spec.clusterer, seed);
        BenchRow row;
        row.seed = seed;
        row.declared_k = run.assignment.declared_k();
        for (const auto& name : names) {
          if (name == kTreeIndexName)
            row.values.push_back(
                evaluate_clustering(ds, run.assignment, spec.min_leaf_override).score.value());
          else
            row.values.push_back(compute_baseline_index(name, ds, run.assignment));
        }
        rows[rep] = std::move(row);
      } catch (...) {
        failures[rep] = std::current_exception();
      }
    }
  };
  if (spec.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < spec.threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t rep = 0; rep < spec.reps; ++rep) {
    if (!failures[rep]) continue;
    try {
      std::rethrow_exception(failures[rep]);
    } catch (const std::exception& e) {
      throw DataError("bench run " + std::to_string(rep) + " (seed " +
                      std::to_string(spec.seed + rep) + ") failed: " + e.what());
    }
  }

  // Averages in rep order; an infinite member makes the average infinite.
  std::vector<double> averages(names.size(), 0.0);
  for (std::size_t j = 0; j < names.size(); ++j) {
    double sum = 0.0;
    for (const auto& row : rows) sum += row.values[j];
    averages[j] = sum / static_cast<double>(spec.reps);
  }

  std::string out = "# clusterer=" + spec.clusterer.name + " k=" + spec.clusterer.k +
                    " base_seed=" + std::to_string(spec.seed) +
                    " reps=" + std::to_string(spec.reps) +
                    " normalize=" + (spec.data.normalize ? "1" : "0") + " min_leaf=" +
                    (spec.min_leaf_override ? std::to_string(*spec.min_leaf_override)
                                            : std::string("auto")) +
                    " dataset=" + spec.data.path + "\n";
  out += "run,seed,declared_k";
  for (const auto& name : names) out += "," + name;
  out += "\n";
  for (std::size_t rep = 0; rep < spec.reps; ++rep) {
    out += std::to_string(rep) + "," + std::to_string(rows[rep].seed) + "," +
           std::to_string(rows[rep].declared_k);
    for (double v : rows[rep].values) {
      out += ',';
      append_double(out, v);
    }
    out += "\n";
  }
  out += "average,,";
  for (double v : averages) {
    out += ',';
    append_double(out, v);
  }
  out += "\n";
  {
    std::ofstream f(spec.out_path);
    if (!f) throw DataError("cannot write file: " + spec.out_path);
    f << out;
  }

  if (spec.audit) audit_bench_csv(spec.out_path, spec.reps, names.size());

  std::cout << "bench reps=" << spec.reps << " clusterer=" << spec.clusterer.name
            << " k=" << spec.clusterer.k << " seed=" << spec.seed << "\n";
  for (std::size_t j = 0; j < names.size(); ++j)
    std::cout << "avg " << names[j] << "=" << format_fixed6(averages[j])
              << " direction=" << direction_of(names[j]) << "\n";
  if (spec.audit) std::cout << "audit=ok\n";
  std::cout << "out=" << spec.out_path << "\n";
  return 0;
}

// Re-reads a bench report and checks that every average is reproducible
// from its per-run rows.
void audit_bench_csv(const std::string& path, std::size_t reps, std::size_t num_indexes) {
  std::ifstream in(path);
  if (!in) throw DataError("audit: cannot reopen " + path);
  std::string line;
  std::vector<std::vector<double>> runs;
  std::vector<double> avg;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("run,", 0) == 0) continue;
    const auto fields = split_fields(line);
    std::vector<double> values;
    for (std::size_t j = 3; j < fields.size(); ++j) {
      double v;
      if (!parse_double(fields[j], v))
        throw DataError("audit: bad number '" + fields[j] + "' in " + path);
      values.push_back(v);
    }
    if (line.rfind("average,", 0) == 0)
      avg = values;
    else
      runs.push_back(values);
  }
  if (runs.size() != reps || avg.size() != num_indexes)
    throw DataError("audit: report shape mismatch in " + path);
  for (std::size_t j = 0; j < num_indexes; ++j) {
    double sum = 0.0;
    for (const auto& r : runs) sum += r.at(j);
    const double mean = sum / static_cast<double>(reps);
    const bool ok = std::isinf(mean) ? std::isinf(avg[j])
                                     : std::abs(mean - avg[j]) <=
                                           1e-9 * std::max(1.0, std::abs(mean));
    if (!ok) throw DataError("audit: average column " + std::to_string(j) +
                             " is not reproducible from the run rows");
  }
}

// ------------------------------------------------------------ plot-export

int cmd_plot_export(const DatasetOptions& data_opt, const std::string& assignment_path,
                    const std::string& attrs_csv, const std::string& out_path) {
  const auto attrs = split_list(attrs_csv);
  if (attrs.size() != 3)
    throw std::invalid_argument("--attrs needs exactly 3 attribute names, got " +
                                std::to_string(attrs.size()));
  const Dataset ds = load_dataset(data_opt);
  const ClusterAssignment ca = load_assignment_csv(assignment_path);
  if (ca.n() != ds.n())
    throw std::invalid_argument("assignment covers " + std::to_string(ca.n()) +
                                " records, dataset has " + std::to_string(ds.n()));
  std::array<std::size_t, 3> cols{};
  for (std::size_t j = 0; j < 3; ++j) cols[j] = ds.attribute_index(attrs[j]);

  std::string out = attrs[0] + "," + attrs[1] + "," + attrs[2] + ",cluster_id";
  if (ds.has_true_classes()) out += ",true_class";
  out += "\n";
  for (std::size_t i = 0; i < ds.n(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (j) out += ',';
      append_double(out, ds.at(i, cols[j]));
    }
    out += ',' + std::to_string(ca.label(i));
    if (ds.has_true_classes()) out += ',' + ds.true_classes()[i];
    out += '\n';
  }
  std::ofstream f(out_path);
  if (!f) throw DataError("cannot write file: " + out_path);
  f << out;
  std::cout << "rows=" << ds.n() << " out=" << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree Index cluster-validation toolkit"};
  app.require_subcommand(1);

  // extract
  auto* extract = app.add_subcommand("extract", "EEG manifest -> feature dataset CSV");
  std::string manifest_path, extract_out;
  extract->add_option("--manifest", manifest_path, "JSON manifest")->required();
  extract->add_option("--out", extract_out, "output dataset CSV")->required();

  // cluster
  auto* cluster = app.add_subcommand("cluster", "run a reference clusterer");
  DatasetOptions cluster_data;
  ClustererSpec cluster_spec;
  std::uint64_t cluster_seed = 0;
  std::string cluster_out, cluster_trace;
  add_dataset_options(cluster, cluster_data);
  add_clusterer_options(cluster, cluster_spec);
  cluster->add_option("--seed", cluster_seed, "RNG seed");
  cluster->add_option("--out", cluster_out, "assignment CSV")->required();
  cluster->add_option("--trace", cluster_trace, "per-iteration trace CSV (iteration,sse,max_shift)");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "score an assignment with the requested indexes");
  DatasetOptions eval_data;
  std::string eval_assignment, eval_indexes, eval_out, eval_json;
  std::size_t eval_min_leaf = 0;
  bool eval_per_leaf = false;
  add_dataset_options(evaluate, eval_data);
  evaluate->add_option("--assignment", eval_assignment, "assignment CSV")->required();
  evaluate->add_option("--indexes", eval_indexes,
                       "comma-separated index names (default: all applicable)");
  evaluate->add_option("--min-leaf-override", eval_min_leaf,
                       "tree min-leaf override (default: 1% of n clamped to [2,15])");
  evaluate->add_flag("--per-leaf", eval_per_leaf, "print the per-leaf entropy/depth table");
  evaluate->add_option("--out", eval_out, "report CSV");
  evaluate->add_option("--json", eval_json, "structured report JSON");

  // bench
  auto* bench = app.add_subcommand("bench", "repeated-run protocol with per-index averages");
  BenchSpec bench_spec;
  std::size_t bench_min_leaf = 0;
  add_dataset_options(bench, bench_spec.data);
  add_clusterer_options(bench, bench_spec.clusterer);
  bench->add_option("--seed", bench_spec.seed, "base seed; run r uses seed+r");
  bench->add_option("--reps", bench_spec.reps, "repetitions");
  bench->add_option("--indexes", bench_spec.indexes, "indexes per run (default: tree_index)");
  bench->add_option("--min-leaf-override", bench_min_leaf, "tree min-leaf override");
  bench->add_option("--threads", bench_spec.threads, "worker threads for repetitions");
  bench->add_option("--out", bench_spec.out_path, "report CSV")->required();
  bench->add_flag("--audit,!--no-audit", bench_spec.audit,
                  "verify averages are reproducible from the written report (default on)");

  // plot-export
  auto* plot = app.add_subcommand("plot-export", "3-attribute projection file for external plotting");
  DatasetOptions plot_data;
  std::string plot_assignment, plot_attrs, plot_out;
  add_dataset_options(plot, plot_data);
  plot->add_option("--assignment", plot_assignment, "assignment CSV")->required();
  plot->add_option("--attrs", plot_attrs, "exactly 3 attribute names, comma-separated")->required();
  plot->add_option("--out", plot_out, "projection CSV")->required();

  try {
    app.parse(argc, argv);
    if (extract->parsed()) return cmd_extract(manifest_path, extract_out);
    if (cluster->parsed())
      return cmd_cluster(cluster_data, cluster_spec, cluster_seed, cluster_out, cluster_trace);
    if (evaluate->parsed())
      return cmd_evaluate(eval_data, eval_assignment, eval_indexes,
                          eval_min_leaf > 0 ? std::optional(eval_min_leaf) : std::nullopt,
                          eval_per_leaf, eval_out, eval_json);
    if (bench->parsed()) {
      if (bench_min_leaf > 0) bench_spec.min_leaf_override = bench_min_leaf;
      return cmd_bench(bench_spec);
    }
    if (plot->parsed())
      return cmd_plot_export(plot_data, plot_assignment, plot_attrs, plot_out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
