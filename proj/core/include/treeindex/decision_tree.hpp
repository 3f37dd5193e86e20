#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "treeindex/dataset.hpp"

namespace treeindex {

/// Binary threshold-split node. Internal when attribute >= 0 (records with
/// value <= threshold go left), leaf otherwise. Thresholds are midpoints
/// between consecutive distinct observed values. Leaves carry the class
/// histogram of the records that reached them; depth counts edges from the
/// root.
struct TreeNode {
  int attribute = -1;
  double threshold = 0.0;
  std::unique_ptr<TreeNode> left;
  std::unique_ptr<TreeNode> right;
  std::vector<std::size_t> class_counts;  // leaves only
  int depth = 0;

  bool is_leaf() const noexcept { return attribute < 0; }
};

struct LeafSummary {
  double entropy = 0.0;     // bits
  int depth = 0;            // edges from root
  std::size_t support = 0;  // records in the leaf
};

class DecisionTree {
 public:
  // Takes ownership of a node structure; recomputes depths and the leaf
  // count, and validates that internal nodes have both children and that
  // every leaf histogram spans num_classes.
  DecisionTree(std::unique_ptr<TreeNode> root, std::size_t num_classes,
               std::size_t min_leaf);

  const TreeNode& root() const noexcept { return *root_; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  std::size_t min_leaf() const noexcept { return min_leaf_; }
  std::size_t num_leaves() const noexcept { return num_leaves_; }

  /// Per-leaf entropy/depth/support in left-to-right order.
  std::vector<LeafSummary> leaves() const;

  /// Indented text dump, stable for golden-file comparisons:
  ///   attr <= thr / attr > thr lines for internal nodes,
  ///   "class counts [..] depth=k" lines for leaves.
  std::string dump(std::span<const std::string> attribute_names) const;

 private:
  std::unique_ptr<TreeNode> root_;
  std::size_t num_classes_;
  std::size_t min_leaf_;
  std::size_t num_leaves_;
};

/// Shannon entropy in bits of a class-count histogram (0*log0 := 0).
/// Throws std::invalid_argument when the histogram is empty or sums to zero.
double split_entropy(std::span<const std::size_t> class_counts);

/// H(parent) - (nL/n)H(left) - (nR/n)H(right). Throws when left + right
/// does not equal parent elementwise.
double information_gain(std::span<const std::size_t> parent,
                        std::span<const std::size_t> left,
                        std::span<const std::size_t> right);

/// gain / split_info over the two-way partition sizes. Counts must be >= 1,
/// which keeps split_info positive.
double gain_ratio(double gain, std::size_t left_count, std::size_t right_count);

/// C4.5-style induction over cluster-ID labels, unpruned:
///   - candidates are midpoints between consecutive distinct values of each
///     attribute, restricted to splits leaving >= min_leaf records per side;
///   - each candidate's gain is charged the threshold-choice cost
///     log2(#distinct values - 1) / n before use (continuous-attribute
///     handling, Quinlan release 8), and only positive charged gains survive;
///   - the winner maximizes gain ratio among survivors whose charged gain is
///     at least the mean charged gain, ties broken by lower attribute index
///     then lower threshold;
///   - a node becomes a leaf when pure or when no candidate survives.
/// Deterministic: permuting record order yields an identical tree.
DecisionTree build_tree(const LabeledDataset& lds, std::size_t min_leaf);

}  // namespace treeindex
