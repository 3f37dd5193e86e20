#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "treeindex/baseline_indexes.hpp"
#include "treeindex/clusterers.hpp"
#include "treeindex/dataset.hpp"
#include "treeindex/eeg_features.hpp"
#include "treeindex/tree_index.hpp"

namespace {

using namespace treeindex;

Dataset random_dataset(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> values(n * d);
  for (auto& v : values) v = u(rng);
  std::vector<std::string> names;
  for (std::size_t j = 0; j < d; ++j) names.push_back("a" + std::to_string(j));
  return Dataset("bench", std::move(names), std::move(values));
}

ClusterAssignment random_assignment(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> labels(n);
  for (auto& l : labels) l = rng() % k;
  return ClusterAssignment::from_labels(labels);
}

void BM_BuildTree(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ds = random_dataset(n, 9, 1);
  const auto ca = random_assignment(n, 4, 2);
  const auto lds = label_with_clustering(ds, ca);
  for (auto _ : state) {
    auto tree = build_tree(lds, min_leaf_size(n));
    benchmark::DoNotOptimize(tree.num_leaves());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildTree)->Arg(500)->Arg(2000)->Arg(8000)->Complexity();

void BM_EvaluateClustering(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ds = random_dataset(n, 9, 3);
  const auto ca = random_assignment(n, 4, 4);
  for (auto _ : state) {
    const auto report = evaluate_clustering(ds, ca);
    benchmark::DoNotOptimize(report.score.value());
  }
}
BENCHMARK(BM_EvaluateClustering)->Arg(1000)->Arg(8280);

void BM_Silhouette(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ds = random_dataset(n, 9, 5);
  const auto ca = random_assignment(n, 4, 6);
  for (auto _ : state) benchmark::DoNotOptimize(silhouette(ds, ca));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Silhouette)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Complexity();

void BM_KMeans(benchmark::State& state) {
  const auto ds = random_dataset(2000, 9, 7);
  KMeansConfig cfg;
  cfg.k = static_cast<std::size_t>(state.range(0));
  cfg.seeding = Seeding::plus_plus;
  cfg.rng_seed = 8;
  for (auto _ : state) {
    const auto result = kmeans(ds, cfg);
    benchmark::DoNotOptimize(result.trace.final_sse);
  }
}
BENCHMARK(BM_KMeans)->Arg(2)->Arg(8)->Arg(32);

void BM_ExtractFeatures(benchmark::State& state) {
  std::mt19937_64 rng(9);
  ChannelSignal sig{"bench", std::vector<double>(921600), 256.0};
  for (auto& v : sig.samples)
    v = static_cast<double>(static_cast<std::int64_t>(rng() % 65536) - 32768);
  const std::vector<SeizureInterval> intervals = {{2996.0, 3036.0}};
  for (auto _ : state) {
    const auto ds = build_eeg_dataset(std::vector<ChannelSignal>{sig}, intervals);
    benchmark::DoNotOptimize(ds.n());
  }
}
BENCHMARK(BM_ExtractFeatures);

}  // namespace

BENCHMARK_MAIN();
