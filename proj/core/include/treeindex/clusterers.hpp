#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "treeindex/dataset.hpp"

namespace treeindex {

enum class Seeding { uniform_random, plus_plus };

struct KMeansConfig {
  std::size_t k = 2;
  std::size_t max_iterations = 50;
  double movement_threshold = 0.005;  // max Euclidean center shift
  Seeding seeding = Seeding::plus_plus;
  std::uint64_t rng_seed = 0;
};

/// Per-iteration observability for the Lloyd loop. sse[i] is measured after
/// the assignment step of iteration i (against the centers that produced
/// the assignment), max_shift[i] after the update step; the SSE sequence is
/// non-increasing.
struct KMeansTrace {
  std::vector<double> sse;
  std::vector<double> max_shift;
  std::vector<double> final_centers;  // k * dim, row-major
  std::size_t dim = 0;
  std::size_t iterations_run = 0;
  bool converged = false;
  double final_sse = 0.0;
};

struct KMeansResult {
  ClusterAssignment assignment;
  KMeansTrace trace;
};

/// Uniform cluster count in [2, floor(sqrt(n))]. Throws
/// std::invalid_argument for n < 4 (empty range).
std::size_t random_k(std::size_t n, std::mt19937_64& rng);

/// k-means++ seeding: first center uniform over records, each next center
/// drawn proportionally to the squared distance to the nearest chosen
/// center. When every remaining record has zero distance (duplicate-only
/// data) the draw falls back to uniform over unchosen records.
std::vector<double> kmeans_pp_seed(const Dataset& ds, std::size_t k,
                                   std::mt19937_64& rng);

/// Lloyd iterations until the max center shift drops to
/// movement_threshold or max_iterations is reached. Empty clusters are
/// re-seeded onto the record farthest from its current center. Output
/// labels are dense 0..k'-1 with k' <= cfg.k. Deterministic for a fixed
/// seed. Throws std::invalid_argument when cfg.k > n or cfg.k < 1.
KMeansResult kmeans(const Dataset& ds, const KMeansConfig& cfg);

/// Pathological fixture: record `isolate` alone in cluster 1, everything
/// else in cluster 0. Throws std::invalid_argument when the index is out of
/// range or n < 2.
ClusterAssignment degenerate_one_vs_rest(const Dataset& ds, std::size_t isolate);

}  // namespace treeindex
