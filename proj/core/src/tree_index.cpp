#include "treeindex/tree_index.hpp"

#include <stdexcept>

namespace treeindex {

ExtendedScore ExtendedScore::finite(double v) {
  if (!std::isfinite(v) || v < 0.0)
    throw std::invalid_argument("finite scores must be non-negative reals");
  return ExtendedScore(v);
}

std::string ExtendedScore::to_string() const {
  if (!is_finite()) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value_);
  return buf;
}

ExtendedScore score_from_leaves(std::span<const LeafSummary> leaves,
                                std::size_t num_clusters) {
  if (leaves.empty()) throw std::invalid_argument("a tree has at least one leaf");
  if (num_clusters < 1) throw std::invalid_argument("cluster count must be >= 1");
  double sum = 0.0;
  for (const auto& leaf : leaves) {
    // k_i = inf when d_i = 0: the root itself is the only leaf, no tree was
    // built. The weight itself (not the product) is infinite, so a zero
    // entropy does not rescue the score.
    if (leaf.depth == 0) return ExtendedScore::infinity();
    sum += leaf.entropy * static_cast<double>(leaf.depth);
  }
  return ExtendedScore::finite(sum / static_cast<double>(num_clusters));
}

TreeIndexReport tree_index_of_tree(const DecisionTree& tree, std::size_t num_clusters) {
  if (tree.num_classes() != num_clusters)
    throw std::invalid_argument("tree was built over " +
                                std::to_string(tree.num_classes()) +
                                " classes, expected " + std::to_string(num_clusters));
  TreeIndexReport report;
  report.per_leaf = tree.leaves();
  report.score = score_from_leaves(report.per_leaf, num_clusters);
  report.num_clusters = num_clusters;
  report.num_leaves = report.per_leaf.size();
  report.min_leaf_used = tree.min_leaf();
  return report;
}

TreeIndexReport evaluate_clustering(const Dataset& ds, const ClusterAssignment& ca,
                                    std::optional<std::size_t> min_leaf_override) {
  const auto lds = label_with_clustering(ds, ca);
  const std::size_t min_leaf = min_leaf_override.value_or(min_leaf_size(ds.n()));
  const auto tree = build_tree(lds, min_leaf);
  return tree_index_of_tree(tree, ca.declared_k());
}

ExtendedScore average_runs(std::span<const ExtendedScore> scores) {
  if (scores.empty()) throw std::invalid_argument("cannot average zero runs");
  double sum = 0.0;
  for (ExtendedScore s : scores) {
    if (!s.is_finite()) return ExtendedScore::infinity();
    sum += s.value();
  }
  return ExtendedScore::finite(sum / static_cast<double>(scores.size()));
}

std::string render_summary(const TreeIndexReport& report) {
  return "tree_index=" + report.score.to_string() +
         " leaves=" + std::to_string(report.num_leaves) +
         " clusters=" + std::to_string(report.num_clusters) +
         " min_leaf=" + std::to_string(report.min_leaf_used);
}

}  // namespace treeindex
