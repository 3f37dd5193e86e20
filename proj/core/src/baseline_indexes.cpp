#include "treeindex/baseline_indexes.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace treeindex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(sq_distance(a, b));
}

void require_k2(const ClusterAssignment& ca, const char* index) {
  if (ca.declared_k() < 2)
    throw std::invalid_argument(std::string(index) + " requires at least 2 clusters");
}

}  // namespace

ContingencyTable ContingencyTable::from(const Dataset& ds, const ClusterAssignment& ca) {
  if (!ds.has_true_classes())
    throw std::invalid_argument("dataset '" + ds.name() +
                                "' has no class column; external indexes need one");
  if (ca.n() != ds.n()) throw std::invalid_argument("assignment/dataset length mismatch");

  ContingencyTable ct;
  std::unordered_map<std::string, std::size_t> class_id;
  std::vector<std::size_t> record_class(ds.n());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    auto [it, inserted] = class_id.emplace(ds.true_classes()[i], ct.class_names.size());
    if (inserted) ct.class_names.push_back(ds.true_classes()[i]);
    record_class[i] = it->second;
  }
  const std::size_t k = ca.declared_k(), c = ct.class_names.size();
  ct.counts.assign(k, std::vector<std::size_t>(c, 0));
  ct.cluster_sizes.assign(k, 0);
  ct.class_sizes.assign(c, 0);
  ct.total = ds.n();
  for (std::size_t i = 0; i < ds.n(); ++i) {
    ++ct.counts[ca.label(i)][record_class[i]];
    ++ct.cluster_sizes[ca.label(i)];
    ++ct.class_sizes[record_class[i]];
  }
  return ct;
}

CentroidModel CentroidModel::from(const Dataset& ds, const ClusterAssignment& ca) {
  if (ca.n() != ds.n()) throw std::invalid_argument("assignment/dataset length mismatch");
  CentroidModel m;
  m.k = ca.declared_k();
  m.dim = ds.d();
  m.centers.assign(m.k * m.dim, 0.0);
  m.counts.assign(m.k, 0);
  for (std::size_t i = 0; i < ds.n(); ++i) {
    const std::size_t c = ca.label(i);
    ++m.counts[c];
    for (std::size_t j = 0; j < m.dim; ++j) m.centers[c * m.dim + j] += ds.at(i, j);
  }
  for (std::size_t c = 0; c < m.k; ++c)
    for (std::size_t j = 0; j < m.dim; ++j)
      m.centers[c * m.dim + j] /= static_cast<double>(m.counts[c]);
  return m;
}

double f_measure(const ContingencyTable& ct) {
  double total = 0.0;
  for (std::size_t j = 0; j < ct.class_sizes.size(); ++j) {
    double best = 0.0;
    for (std::size_t i = 0; i < ct.cluster_sizes.size(); ++i) {
      const double nij = static_cast<double>(ct.counts[i][j]);
      if (nij == 0.0) continue;
      const double precision = nij / static_cast<double>(ct.cluster_sizes[i]);
      const double recall = nij / static_cast<double>(ct.class_sizes[j]);
      best = std::max(best, 2.0 * precision * recall / (precision + recall));
    }
    total += static_cast<double>(ct.class_sizes[j]) / static_cast<double>(ct.total) * best;
  }
  return total;
}

double purity(const ContingencyTable& ct) {
  std::size_t sum = 0;
  for (const auto& row : ct.counts) {
    std::size_t best = 0;
    for (std::size_t c : row) best = std::max(best, c);
    sum += best;
  }
  return static_cast<double>(sum) / static_cast<double>(ct.total);
}

double external_entropy(const ContingencyTable& ct) {
  double total = 0.0;
  for (std::size_t i = 0; i < ct.cluster_sizes.size(); ++i) {
    const double ni = static_cast<double>(ct.cluster_sizes[i]);
    double h = 0.0;
    for (std::size_t c : ct.counts[i]) {
      if (c == 0) continue;
      const double p = static_cast<double>(c) / ni;
      h -= p * std::log2(p);
    }
    total += ni / static_cast<double>(ct.total) * h;
  }
  return total;
}

double sse(const Dataset& ds, const ClusterAssignment& ca) {
  const auto model = CentroidModel::from(ds, ca);
  double total = 0.0;
  for (std::size_t i = 0; i < ds.n(); ++i)
    total += sq_distance(ds.record(i), model.center(ca.label(i)));
  return total;
}

double silhouette(const Dataset& ds, const ClusterAssignment& ca) {
  require_k2(ca, "silhouette");
  if (ca.n() != ds.n()) throw std::invalid_argument("assignment/dataset length mismatch");
  const std::size_t n = ds.n(), k = ca.declared_k();
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < n; ++i) ++sizes[ca.label(i)];

  double total = 0.0;
  std::vector<double> mean_to(k);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own = ca.label(i);
    if (sizes[own] == 1) continue;  // a lone record contributes 0
    std::fill(mean_to.begin(), mean_to.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      mean_to[ca.label(j)] += distance(ds.record(i), ds.record(j));
    }
    const double a = mean_to[own] / static_cast<double>(sizes[own] - 1);
    double b = kInf;
    for (std::size_t c = 0; c < k; ++c) {
      if (c == own) continue;
      b = std::min(b, mean_to[c] / static_cast<double>(sizes[c]));
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;  // a = b = 0 contributes 0
  }
  return total / static_cast<double>(n);
}

double db_index(const Dataset& ds, const ClusterAssignment& ca) {
  require_k2(ca, "db");
  const auto model = CentroidModel::from(ds, ca);
  const std::size_t k = model.k;

  std::vector<double> scatter(k, 0.0);  // mean member distance to centroid
  for (std::size_t i = 0; i < ds.n(); ++i)
    scatter[ca.label(i)] += distance(ds.record(i), model.center(ca.label(i)));
  for (std::size_t c = 0; c < k; ++c) scatter[c] /= static_cast<double>(model.counts[c]);

  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      const double gap = distance(model.center(i), model.center(j));
      if (gap == 0.0) return kInf;  // coincident centroids: degenerate
      worst = std::max(worst, (scatter[i] + scatter[j]) / gap);
    }
    total += worst;
  }
  return total / static_cast<double>(k);
}

double xb_index(const Dataset& ds, const ClusterAssignment& ca) {
  require_k2(ca, "xb");
  const auto model = CentroidModel::from(ds, ca);
  double min_gap_sq = kInf;
  for (std::size_t i = 0; i < model.k; ++i)
    for (std::size_t j = i + 1; j < model.k; ++j)
      min_gap_sq = std::min(min_gap_sq, sq_distance(model.center(i), model.center(j)));
  if (min_gap_sq == 0.0) return kInf;
  return sse(ds, ca) / (static_cast<double>(ds.n()) * min_gap_sq);
}

std::span<const IndexInfo> baseline_index_catalog() {
  static const std::array<IndexInfo, 7> catalog = {{
      {"f_measure", Direction::higher, true},
      {"purity", Direction::higher, true},
      {"entropy_ext", Direction::lower, true},
      {"silhouette", Direction::higher, false},
      {"db", Direction::lower, false},
      {"xb", Direction::lower, false},
      {"sse", Direction::lower, false},
  }};
  return catalog;
}

double compute_baseline_index(const std::string& name, const Dataset& ds,
                              const ClusterAssignment& ca) {
  if (name == "f_measure") return f_measure(ContingencyTable::from(ds, ca));
  if (name == "purity") return purity(ContingencyTable::from(ds, ca));
  if (name == "entropy_ext") return external_entropy(ContingencyTable::from(ds, ca));
  if (name == "silhouette") return silhouette(ds, ca);
  if (name == "db") return db_index(ds, ca);
  if (name == "xb") return xb_index(ds, ca);
  if (name == "sse") return sse(ds, ca);
  throw std::invalid_argument("unknown index: " + name);
}

}  // namespace treeindex
