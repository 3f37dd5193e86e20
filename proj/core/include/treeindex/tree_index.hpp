#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treeindex/dataset.hpp"
#include "treeindex/decision_tree.hpp"
#include "treeindex/extended_score.hpp"

namespace treeindex {

/// The Tree Index score M plus the per-leaf diagnostics it was computed
/// from. The score is recomputable from per_leaf and num_clusters.
struct TreeIndexReport {
  ExtendedScore score = ExtendedScore::infinity();
  std::vector<LeafSummary> per_leaf;
  std::size_t num_clusters = 0;
  std::size_t num_leaves = 0;
  std::size_t min_leaf_used = 0;
};

/// M = (sum_i E_i * k_i) / |c| with k_i = d_i for d_i > 0 and k_i = inf for
/// d_i = 0. A depth-0 leaf can only be the root, so a bare-root tree scores
/// infinity regardless of that leaf's entropy: no tree was built, there is
/// no pattern to score.
ExtendedScore score_from_leaves(std::span<const LeafSummary> leaves,
                                std::size_t num_clusters);

/// Scores an already-built tree. Throws std::invalid_argument when the tree
/// was built over a different class count.
TreeIndexReport tree_index_of_tree(const DecisionTree& tree, std::size_t num_clusters);

/// The full pipeline: label the records with their cluster IDs, induce a
/// tree with min_leaf_size(n) (or the override), and score it with
/// declared_k classes.
TreeIndexReport evaluate_clustering(const Dataset& ds, const ClusterAssignment& ca,
                                    std::optional<std::size_t> min_leaf_override = std::nullopt);

/// Arithmetic mean of repeated-run scores; any infinite member makes the
/// mean infinite. Throws std::invalid_argument on an empty list.
ExtendedScore average_runs(std::span<const ExtendedScore> scores);

/// "tree_index=<score> leaves=<l> clusters=<k> min_leaf=<m>"
std::string render_summary(const TreeIndexReport& report);

}  // namespace treeindex
