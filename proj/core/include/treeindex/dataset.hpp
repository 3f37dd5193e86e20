#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace treeindex {

/// Immutable numeric table: n records over d named attributes, plus an
/// optional categorical class column (e.g. seizure / non-seizure) used only
/// by the external indexes. All values are finite reals; attribute names
/// are unique.
class Dataset {
 public:
  Dataset(std::string name, std::vector<std::string> attributes,
          std::vector<double> values_row_major,
          std::optional<std::vector<std::string>> true_classes = std::nullopt,
          std::string class_attribute = "class");

  const std::string& name() const noexcept { return name_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return attributes_.size(); }
  const std::vector<std::string>& attributes() const noexcept { return attributes_; }

  std::span<const double> record(std::size_t i) const {
    return {values_.data() + i * d(), d()};
  }
  double at(std::size_t i, std::size_t j) const { return values_[i * d() + j]; }
  std::span<const double> values() const noexcept { return values_; }

  bool has_true_classes() const noexcept { return true_classes_.has_value(); }
  const std::vector<std::string>& true_classes() const { return *true_classes_; }
  const std::string& class_attribute() const noexcept { return class_attribute_; }

  // 0-based attribute index for a name; throws std::invalid_argument when
  // the name is unknown.
  std::size_t attribute_index(const std::string& name) const;

  // Content equality: attributes, values, class column. The dataset name is
  // a display label and does not participate.
  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  std::string name_;
  std::vector<std::string> attributes_;
  std::vector<double> values_;  // row-major, n * d
  std::size_t n_;
  std::optional<std::vector<std::string>> true_classes_;
  std::string class_attribute_;
};

/// Record-index -> cluster-ID mapping. IDs are dense: every id in
/// [0, declared_k) occurs at least once, so empty declared clusters are not
/// representable.
class ClusterAssignment {
 public:
  // Labels must already be dense; throws std::invalid_argument otherwise.
  explicit ClusterAssignment(std::vector<std::size_t> labels);

  // Canonicalizes arbitrary non-negative IDs to dense 0..k-1, ordered by
  // first occurrence.
  static ClusterAssignment from_labels(std::span<const std::size_t> raw);

  std::size_t n() const noexcept { return labels_.size(); }
  std::size_t declared_k() const noexcept { return declared_k_; }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }
  std::size_t label(std::size_t i) const { return labels_[i]; }

  friend bool operator==(const ClusterAssignment& a, const ClusterAssignment& b) = default;

 private:
  std::vector<std::size_t> labels_;
  std::size_t declared_k_;
};

/// Dataset joined with cluster IDs treated as class values for tree
/// induction. Immutable after construction.
struct LabeledDataset {
  Dataset base;
  std::vector<std::size_t> class_of;
  std::size_t num_classes;
};

struct CsvOptions {
  bool has_header = true;
  // Class column selected by header name or 0-based index (as decimal text).
  std::optional<std::string> class_column;
};

/// Parses a comma-separated numeric file. Throws DataError on a missing
/// file, an empty file, duplicate header names, or any cell that is not a
/// finite real (the message names the offending row and column).
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes header + records; numbers use shortest round-trip text, so
/// load_csv(write_csv(ds)) reproduces the values exactly.
void write_csv(const Dataset& ds, const std::filesystem::path& path);

/// Affinely maps each attribute onto [0,1]; a constant attribute maps to
/// all zeros. Idempotent.
Dataset min_max_normalize(const Dataset& ds);

/// Step 1 of the evaluation pipeline: adopt the cluster IDs as class labels.
/// Throws std::invalid_argument on length mismatch.
LabeledDataset label_with_clustering(const Dataset& ds, const ClusterAssignment& ca);

/// Minimum records per tree leaf: 1% of n, clamped to [2, 15].
std::size_t min_leaf_size(std::size_t n);

/// Two-column CSV (record_index, cluster_id); a header row is optional on
/// read and always written. Indices must cover 0..n-1 exactly once. IDs are
/// canonicalized on read.
ClusterAssignment load_assignment_csv(const std::filesystem::path& path);
void write_assignment_csv(const ClusterAssignment& ca, const std::filesystem::path& path);

}  // namespace treeindex
