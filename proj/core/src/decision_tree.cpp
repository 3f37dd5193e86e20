#include "treeindex/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "treeindex/text.hpp"

namespace treeindex {

double split_entropy(std::span<const std::size_t> class_counts) {
  if (class_counts.empty()) throw std::invalid_argument("empty histogram");
  std::size_t total = 0;
  for (std::size_t c : class_counts) total += c;
  if (total == 0) throw std::invalid_argument("histogram sums to zero");
  double h = 0.0;
  for (std::size_t c : class_counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

double information_gain(std::span<const std::size_t> parent,
                        std::span<const std::size_t> left,
                        std::span<const std::size_t> right) {
  if (parent.size() != left.size() || parent.size() != right.size())
    throw std::invalid_argument("histogram sizes differ");
  std::size_t n = 0, nl = 0, nr = 0;
  for (std::size_t j = 0; j < parent.size(); ++j) {
    if (left[j] + right[j] != parent[j])
      throw std::invalid_argument("left + right does not reproduce the parent histogram");
    n += parent[j];
    nl += left[j];
    nr += right[j];
  }
  const double dn = static_cast<double>(n);
  double gain = split_entropy(parent);
  if (nl > 0) gain -= static_cast<double>(nl) / dn * split_entropy(left);
  if (nr > 0) gain -= static_cast<double>(nr) / dn * split_entropy(right);
  return gain;
}

double gain_ratio(double gain, std::size_t left_count, std::size_t right_count) {
  if (left_count < 1 || right_count < 1)
    throw std::invalid_argument("both sides of a split need at least one record");
  const double n = static_cast<double>(left_count + right_count);
  const double pl = static_cast<double>(left_count) / n;
  const double pr = static_cast<double>(right_count) / n;
  const double split_info = -pl * std::log2(pl) - pr * std::log2(pr);
  return gain / split_info;
}

namespace {

struct Candidate {
  int attribute = -1;
  double threshold = 0.0;
  double charged_gain = 0.0;  // gain minus the threshold-choice cost
  double ratio = 0.0;
};

std::vector<std::size_t> histogram_of(const LabeledDataset& lds,
                                      std::span<const std::size_t> rows) {
  std::vector<std::size_t> hist(lds.num_classes, 0);
  for (std::size_t r : rows) ++hist[lds.class_of[r]];
  return hist;
}

bool is_pure(std::span<const std::size_t> hist) {
  int nonzero = 0;
  for (std::size_t c : hist)
    if (c > 0) ++nonzero;
  return nonzero <= 1;
}

// Enumerates every midpoint candidate of every attribute, in (attribute,
// threshold) order, keeping those that leave min_leaf records per side and
// whose charged gain is positive. The charge is the threshold-choice cost
// log2(#distinct - 1)/|D| of picking a cut on a continuous attribute.
std::vector<Candidate> enumerate_candidates(const LabeledDataset& lds,
                                            std::span<const std::size_t> rows,
                                            std::span<const std::size_t> parent_hist,
                                            std::size_t min_leaf) {
  const std::size_t n = rows.size();
  const std::size_t classes = lds.num_classes;
  std::vector<Candidate> out;
  std::vector<std::pair<double, std::size_t>> column(n);  // value, class

  for (std::size_t a = 0; a < lds.base.d(); ++a) {
    for (std::size_t i = 0; i < n; ++i)
      column[i] = {lds.base.at(rows[i], a), lds.class_of[rows[i]]};
    std::sort(column.begin(), column.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    std::size_t distinct = n > 0 ? 1 : 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (column[i].first < column[i + 1].first) ++distinct;
    if (distinct < 2) continue;
    const double charge =
        std::log2(static_cast<double>(distinct - 1)) / static_cast<double>(n);

    std::vector<std::size_t> left(classes, 0), right(classes, 0);
    for (std::size_t i = 0; i < n; ++i) ++right[column[i].second];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      ++left[column[i].second];
      --right[column[i].second];
      if (column[i].first == column[i + 1].first) continue;
      const std::size_t nl = i + 1, nr = n - nl;
      if (nl < min_leaf || nr < min_leaf) continue;
      const double gain = information_gain(parent_hist, left, right);
      const double charged = gain - charge;
      if (charged <= 0.0) continue;
      Candidate c;
      c.attribute = static_cast<int>(a);
      c.threshold = (column[i].first + column[i + 1].first) / 2.0;
      c.charged_gain = charged;
      c.ratio = gain_ratio(charged, nl, nr);
      out.push_back(c);
    }
  }
  return out;
}

std::unique_ptr<TreeNode> grow(const LabeledDataset& lds, std::vector<std::size_t>& rows,
                               int depth, std::size_t min_leaf) {
  auto hist = histogram_of(lds, rows);
  auto make_leaf = [&] {
    auto leaf = std::make_unique<TreeNode>();
    leaf->class_counts = std::move(hist);
    leaf->depth = depth;
    return leaf;
  };
  if (is_pure(hist)) return make_leaf();

  const auto candidates = enumerate_candidates(lds, rows, hist, min_leaf);
  if (candidates.empty()) return make_leaf();

  double mean_gain = 0.0;
  for (const auto& c : candidates) mean_gain += c.charged_gain;
  mean_gain /= static_cast<double>(candidates.size());

  // Max gain ratio among candidates at or above the mean charged gain;
  // enumeration order (lower attribute, lower threshold) breaks ties.
  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    if (c.charged_gain < mean_gain) continue;
    if (!best || c.ratio > best->ratio) best = &c;
  }
  if (!best) return make_leaf();  // unreachable: the max is never below the mean

  std::vector<std::size_t> left_rows, right_rows;
  for (std::size_t r : rows) {
    if (lds.base.at(r, static_cast<std::size_t>(best->attribute)) <= best->threshold)
      left_rows.push_back(r);
    else
      right_rows.push_back(r);
  }

  auto node = std::make_unique<TreeNode>();
  node->attribute = best->attribute;
  node->threshold = best->threshold;
  node->depth = depth;
  rows.clear();
  rows.shrink_to_fit();
  node->left = grow(lds, left_rows, depth + 1, min_leaf);
  node->right = grow(lds, right_rows, depth + 1, min_leaf);
  return node;
}

std::size_t validate_and_index(TreeNode& node, int depth, std::size_t num_classes) {
  node.depth = depth;
  if (node.is_leaf()) {
    if (node.class_counts.size() != num_classes)
      throw std::invalid_argument("leaf histogram does not span the class count");
    std::size_t total = 0;
    for (std::size_t c : node.class_counts) total += c;
    if (total == 0) throw std::invalid_argument("leaf with empty histogram");
    return 1;
  }
  if (!node.left || !node.right)
    throw std::invalid_argument("internal node is missing a child");
  return validate_and_index(*node.left, depth + 1, num_classes) +
         validate_and_index(*node.right, depth + 1, num_classes);
}

void collect_leaves(const TreeNode& node, std::vector<LeafSummary>& out) {
  if (node.is_leaf()) {
    std::size_t support = 0;
    for (std::size_t c : node.class_counts) support += c;
    out.push_back({split_entropy(node.class_counts), node.depth, support});
    return;
  }
  collect_leaves(*node.left, out);
  collect_leaves(*node.right, out);
}

void dump_node(const TreeNode& node, std::span<const std::string> names, int indent,
               std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (node.is_leaf()) {
    out += pad + "class counts [";
    for (std::size_t j = 0; j < node.class_counts.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(node.class_counts[j]);
    }
    out += "] depth=" + std::to_string(node.depth) + "\n";
    return;
  }
  const auto& name = names[static_cast<std::size_t>(node.attribute)];
  out += pad + name + " <= " + format_double(node.threshold) + "\n";
  dump_node(*node.left, names, indent + 1, out);
  out += pad + name + " > " + format_double(node.threshold) + "\n";
  dump_node(*node.right, names, indent + 1, out);
}

}  // namespace

DecisionTree::DecisionTree(std::unique_ptr<TreeNode> root, std::size_t num_classes,
                           std::size_t min_leaf)
    : root_(std::move(root)), num_classes_(num_classes), min_leaf_(min_leaf) {
  if (!root_) throw std::invalid_argument("tree needs a root");
  if (num_classes_ < 1) throw std::invalid_argument("tree needs at least one class");
  num_leaves_ = validate_and_index(*root_, 0, num_classes_);
}

std::vector<LeafSummary> DecisionTree::leaves() const {
  std::vector<LeafSummary> out;
  out.reserve(num_leaves_);
  collect_leaves(*root_, out);
  return out;
}

std::string DecisionTree::dump(std::span<const std::string> attribute_names) const {
  std::string out;
  dump_node(*root_, attribute_names, 0, out);
  return out;
}

DecisionTree build_tree(const LabeledDataset& lds, std::size_t min_leaf) {
  if (min_leaf < 1) throw std::invalid_argument("min_leaf must be >= 1");
  if (lds.class_of.size() != lds.base.n())
    throw std::invalid_argument("label vector does not match the dataset");
  std::vector<std::size_t> rows(lds.base.n());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  auto root = grow(lds, rows, 0, min_leaf);
  return DecisionTree(std::move(root), lds.num_classes, min_leaf);
}

}  // namespace treeindex
