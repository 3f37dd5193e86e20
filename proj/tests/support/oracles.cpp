#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace oracles {

double entropy_bits(const std::vector<std::size_t>& counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

std::optional<RootSplit> best_root_split(const std::vector<std::vector<double>>& rows,
                                         const std::vector<std::size_t>& classes,
                                         std::size_t num_classes, std::size_t min_leaf) {
  const std::size_t n = rows.size();
  const std::size_t d = rows.empty() ? 0 : rows[0].size();

  std::vector<std::size_t> parent(num_classes, 0);
  for (std::size_t c : classes) ++parent[c];
  const double parent_entropy = entropy_bits(parent);

  struct Cand {
    std::size_t attribute;
    double threshold;
    double charged;
    double ratio;
  };
  std::vector<Cand> cands;

  for (std::size_t a = 0; a < d; ++a) {
    std::set<double> distinct;
    for (const auto& r : rows) distinct.insert(r[a]);
    if (distinct.size() < 2) continue;
    const double charge = std::log2(static_cast<double>(distinct.size() - 1)) /
                          static_cast<double>(n);

    std::vector<double> sorted(distinct.begin(), distinct.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      const double threshold = (sorted[i] + sorted[i + 1]) / 2.0;
      std::vector<std::size_t> left(num_classes, 0), right(num_classes, 0);
      std::size_t nl = 0, nr = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (rows[r][a] <= threshold) {
          ++left[classes[r]];
          ++nl;
        } else {
          ++right[classes[r]];
          ++nr;
        }
      }
      if (nl < min_leaf || nr < min_leaf) continue;
      const double dn = static_cast<double>(n);
      double gain = parent_entropy;
      gain -= static_cast<double>(nl) / dn * entropy_bits(left);
      gain -= static_cast<double>(nr) / dn * entropy_bits(right);
      const double charged = gain - charge;
      if (charged <= 0.0) continue;
      const double pl = static_cast<double>(nl) / dn;
      const double pr = static_cast<double>(nr) / dn;
      const double split_info = -pl * std::log2(pl) - pr * std::log2(pr);
      cands.push_back({a, threshold, charged, charged / split_info});
    }
  }
  if (cands.empty()) return std::nullopt;

  double mean = 0.0;
  for (const auto& c : cands) mean += c.charged;
  mean /= static_cast<double>(cands.size());

  const Cand* best = nullptr;
  for (const auto& c : cands) {
    if (c.charged < mean) continue;
    if (!best || c.ratio > best->ratio) best = &c;
  }
  return RootSplit{best->attribute, best->threshold, best->ratio};
}

namespace {

std::size_t num_clusters_of(const std::vector<std::size_t>& cluster) {
  std::size_t k = 0;
  for (std::size_t c : cluster) k = std::max(k, c + 1);
  return k;
}

std::map<std::string, std::size_t> class_ids(const std::vector<std::string>& cls) {
  std::map<std::string, std::size_t> ids;
  for (const auto& c : cls)
    if (!ids.count(c)) {
      const std::size_t next = ids.size();
      ids[c] = next;
    }
  return ids;
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

std::vector<std::vector<double>> centroids(const std::vector<std::vector<double>>& x,
                                           const std::vector<std::size_t>& cluster) {
  const std::size_t k = num_clusters_of(cluster);
  const std::size_t d = x[0].size();
  std::vector<std::vector<double>> centers(k, std::vector<double>(d, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    ++counts[cluster[i]];
    for (std::size_t j = 0; j < d; ++j) centers[cluster[i]][j] += x[i][j];
  }
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < d; ++j) centers[c][j] /= static_cast<double>(counts[c]);
  return centers;
}

}  // namespace

double o_purity(const std::vector<std::size_t>& cluster,
                const std::vector<std::string>& cls) {
  const std::size_t k = num_clusters_of(cluster);
  double sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i < cluster.size(); ++i)
      if (cluster[i] == c) ++counts[cls[i]];
    std::size_t best = 0;
    for (const auto& [name, count] : counts) best = std::max(best, count);
    sum += static_cast<double>(best);
  }
  return sum / static_cast<double>(cluster.size());
}

double o_f_measure(const std::vector<std::size_t>& cluster,
                   const std::vector<std::string>& cls) {
  const std::size_t k = num_clusters_of(cluster);
  const auto ids = class_ids(cls);
  double total = 0.0;
  for (const auto& [name, id] : ids) {
    std::size_t class_size = 0;
    for (const auto& c : cls) class_size += (c == name) ? 1 : 0;
    double best = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t cluster_size = 0, hit = 0;
      for (std::size_t i = 0; i < cluster.size(); ++i) {
        if (cluster[i] != c) continue;
        ++cluster_size;
        hit += (cls[i] == name) ? 1 : 0;
      }
      if (hit == 0) continue;
      const double precision = static_cast<double>(hit) / static_cast<double>(cluster_size);
      const double recall = static_cast<double>(hit) / static_cast<double>(class_size);
      best = std::max(best, 2.0 * precision * recall / (precision + recall));
    }
    total += static_cast<double>(class_size) / static_cast<double>(cls.size()) * best;
  }
  return total;
}

double o_entropy_ext(const std::vector<std::size_t>& cluster,
                     const std::vector<std::string>& cls) {
  const std::size_t k = num_clusters_of(cluster);
  const auto ids = class_ids(cls);
  double total = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::size_t> counts(ids.size(), 0);
    std::size_t size = 0;
    for (std::size_t i = 0; i < cluster.size(); ++i)
      if (cluster[i] == c) {
        ++counts[ids.at(cls[i])];
        ++size;
      }
    total += static_cast<double>(size) / static_cast<double>(cluster.size()) *
             entropy_bits(counts);
  }
  return total;
}

double o_sse(const std::vector<std::vector<double>>& x,
             const std::vector<std::size_t>& cluster) {
  const auto centers = centroids(x, cluster);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = dist(x[i], centers[cluster[i]]);
    total += d * d;
  }
  return total;
}

double o_silhouette(const std::vector<std::vector<double>>& x,
                    const std::vector<std::size_t>& cluster) {
  const std::size_t n = x.size();
  const std::size_t k = num_clusters_of(cluster);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t c : cluster) ++sizes[c];

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[cluster[i]] == 1) continue;
    double a = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && cluster[j] == cluster[i]) a += dist(x[i], x[j]);
    a /= static_cast<double>(sizes[cluster[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c == cluster[i]) continue;
      double mean = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (cluster[j] == c) mean += dist(x[i], x[j]);
      b = std::min(b, mean / static_cast<double>(sizes[c]));
    }
    if (std::max(a, b) > 0.0) total += (b - a) / std::max(a, b);
  }
  return total / static_cast<double>(n);
}

double o_db(const std::vector<std::vector<double>>& x,
            const std::vector<std::size_t>& cluster) {
  const std::size_t k = num_clusters_of(cluster);
  const auto centers = centroids(x, cluster);
  std::vector<double> scatter(k, 0.0);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    scatter[cluster[i]] += dist(x[i], centers[cluster[i]]);
    ++sizes[cluster[i]];
  }
  for (std::size_t c = 0; c < k; ++c) scatter[c] /= static_cast<double>(sizes[c]);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const double gap = dist(centers[i], centers[j]);
      if (gap == 0.0) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, (scatter[i] + scatter[j]) / gap);
    }
    total += worst;
  }
  return total / static_cast<double>(k);
}

double o_xb(const std::vector<std::vector<double>>& x,
            const std::vector<std::size_t>& cluster) {
  const std::size_t k = num_clusters_of(cluster);
  const auto centers = centroids(x, cluster);
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      min_gap = std::min(min_gap, dist(centers[i], centers[j]));
  if (min_gap == 0.0) return std::numeric_limits<double>::infinity();
  return o_sse(x, cluster) / (static_cast<double>(x.size()) * min_gap * min_gap);
}

}  // namespace oracles
