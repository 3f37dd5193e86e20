#include "treeindex/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace treeindex {

Dataset::Dataset(std::string name, std::vector<std::string> attributes,
                 std::vector<double> values_row_major,
                 std::optional<std::vector<std::string>> true_classes,
                 std::string class_attribute)
    : name_(std::move(name)),
      attributes_(std::move(attributes)),
      values_(std::move(values_row_major)),
      true_classes_(std::move(true_classes)),
      class_attribute_(std::move(class_attribute)) {
  if (attributes_.empty()) throw std::invalid_argument("dataset needs at least one attribute");
  if (values_.size() % attributes_.size() != 0)
    throw std::invalid_argument("value count is not a multiple of the attribute count");
  n_ = values_.size() / attributes_.size();
  if (n_ == 0) throw std::invalid_argument("dataset needs at least one record");
  std::unordered_set<std::string> seen;
  for (const auto& a : attributes_)
    if (!seen.insert(a).second)
      throw std::invalid_argument("duplicate attribute name: " + a);
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("dataset values must be finite");
  if (true_classes_ && true_classes_->size() != n_)
    throw std::invalid_argument("true_classes length does not match record count");
}

std::size_t Dataset::attribute_index(const std::string& name) const {
  auto it = std::find(attributes_.begin(), attributes_.end(), name);
  if (it == attributes_.end())
    throw std::invalid_argument("unknown attribute: " + name);
  return static_cast<std::size_t>(it - attributes_.begin());
}

bool operator==(const Dataset& a, const Dataset& b) {
  return a.attributes_ == b.attributes_ && a.values_ == b.values_ &&
         a.true_classes_ == b.true_classes_ && a.class_attribute_ == b.class_attribute_;
}

ClusterAssignment::ClusterAssignment(std::vector<std::size_t> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("assignment must cover at least one record");
  std::size_t max_id = 0;
  for (std::size_t id : labels_) max_id = std::max(max_id, id);
  std::vector<bool> present(max_id + 1, false);
  for (std::size_t id : labels_) present[id] = true;
  for (std::size_t id = 0; id <= max_id; ++id)
    if (!present[id])
      throw std::invalid_argument("cluster IDs are not dense: id " +
                                  std::to_string(id) + " never occurs");
  declared_k_ = max_id + 1;
}

ClusterAssignment ClusterAssignment::from_labels(std::span<const std::size_t> raw) {
  std::unordered_map<std::size_t, std::size_t> remap;
  std::vector<std::size_t> dense;
  dense.reserve(raw.size());
  for (std::size_t id : raw) {
    auto [it, inserted] = remap.emplace(id, remap.size());
    dense.push_back(it->second);
    (void)inserted;
  }
  return ClusterAssignment(std::move(dense));
}

Dataset min_max_normalize(const Dataset& ds) {
  const std::size_t n = ds.n(), d = ds.d();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], ds.at(i, j));
      hi[j] = std::max(hi[j], ds.at(i, j));
    }
  std::vector<double> out;
  out.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double range = hi[j] - lo[j];
      out.push_back(range > 0 ? (ds.at(i, j) - lo[j]) / range : 0.0);
    }
  auto classes = ds.has_true_classes() ? std::optional(ds.true_classes()) : std::nullopt;
  return Dataset(ds.name(), ds.attributes(), std::move(out), std::move(classes),
                 ds.class_attribute());
}

LabeledDataset label_with_clustering(const Dataset& ds, const ClusterAssignment& ca) {
  if (ca.n() != ds.n())
    throw std::invalid_argument("assignment covers " + std::to_string(ca.n()) +
                                " records, dataset has " + std::to_string(ds.n()));
  return LabeledDataset{ds, ca.labels(), ca.declared_k()};
}

std::size_t min_leaf_size(std::size_t n) {
  if (n < 1) throw std::invalid_argument("record count must be >= 1");
  return std::clamp<std::size_t>(n / 100, 2, 15);
}

}  // namespace treeindex
