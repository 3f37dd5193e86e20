#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "treeindex/dataset.hpp"

namespace treeindex {

/// Cluster-by-class record counts, the shared substrate of the external
/// indexes. Built from a dataset's true classes; class columns are indexed
/// in order of first appearance.
struct ContingencyTable {
  std::vector<std::vector<std::size_t>> counts;  // [cluster][class]
  std::vector<std::size_t> cluster_sizes;
  std::vector<std::size_t> class_sizes;
  std::vector<std::string> class_names;
  std::size_t total = 0;

  // Throws std::invalid_argument when the dataset has no true classes.
  static ContingencyTable from(const Dataset& ds, const ClusterAssignment& ca);
};

/// Per-cluster arithmetic-mean centers, the substrate of SSE/DB/XB.
struct CentroidModel {
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<double> centers;  // k * dim, row-major
  std::vector<std::size_t> counts;

  static CentroidModel from(const Dataset& ds, const ClusterAssignment& ca);
  std::span<const double> center(std::size_t i) const {
    return {centers.data() + i * dim, dim};
  }
};

// Several of these indexes have competing variants in the literature; the
// forms implemented here are fixed as follows:
//   f_measure      class-size-weighted max-F1: sum_class (n_class/n) *
//                  max_cluster F1(cluster, class), F1 the harmonic mean of
//                  the cluster's precision and recall for the class
//   purity         (1/n) sum_cluster max_class count
//   entropy_ext    sum_cluster (n_cluster/n) * H(classes | cluster), bits
//   sse            sum_records ||x - centroid(cluster(x))||^2
//   silhouette     mean of (b-a)/max(a,b); a record alone in its cluster
//                  contributes 0, as does a record with a = b = 0
//   db             (1/k) sum_i max_{j!=i} (S_i+S_j)/||c_i-c_j||
//   xb             SSE / (n * min_{i!=j} ||c_i-c_j||^2), crisp Xie-Beni
// Distances are Euclidean throughout. Degenerate denominators (coincident
// centroids) yield +inf rather than a fault, since random-k clusterers can
// produce them mid-benchmark.

double f_measure(const ContingencyTable& ct);
double purity(const ContingencyTable& ct);
double external_entropy(const ContingencyTable& ct);

double sse(const Dataset& ds, const ClusterAssignment& ca);
// The three below require k >= 2 (std::invalid_argument otherwise).
double silhouette(const Dataset& ds, const ClusterAssignment& ca);
double db_index(const Dataset& ds, const ClusterAssignment& ca);
double xb_index(const Dataset& ds, const ClusterAssignment& ca);

enum class Direction { higher, lower };

struct IndexInfo {
  std::string name;
  Direction direction;
  bool needs_true_classes;
};

/// The seven baseline indexes under their stable report names.
std::span<const IndexInfo> baseline_index_catalog();

/// Computes a catalog index by name. Throws std::invalid_argument for an
/// unknown name or when true classes are required but absent.
double compute_baseline_index(const std::string& name, const Dataset& ds,
                              const ClusterAssignment& ca);

}  // namespace treeindex
