#include "treeindex/clusterers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace treeindex {
namespace {

// Hand-rolled draws: the standard distributions are implementation-defined,
// and the reproducibility guarantees here are seed-exact.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t integer_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

double sq_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

}  // namespace

std::size_t random_k(std::size_t n, std::mt19937_64& rng) {
  if (n < 4) throw std::invalid_argument("random_k needs n >= 4");
  const std::uint64_t hi = integer_sqrt(n);  // >= 2
  return 2 + static_cast<std::size_t>(uniform_below(rng, hi - 1));
}

std::vector<double> kmeans_pp_seed(const Dataset& ds, std::size_t k,
                                   std::mt19937_64& rng) {
  const std::size_t n = ds.n(), d = ds.d();
  if (k < 1 || k > n) throw std::invalid_argument("k must be in [1, n]");

  std::vector<double> centers;
  centers.reserve(k * d);
  std::vector<bool> chosen(n, false);
  std::vector<double> dist_sq(n, 0.0);

  auto pick = [&](std::size_t record) {
    chosen[record] = true;
    const auto row = ds.record(record);
    centers.insert(centers.end(), row.begin(), row.end());
  };

  pick(static_cast<std::size_t>(uniform_below(rng, n)));
  for (std::size_t c = 1; c < k; ++c) {
    const std::span<const double> last{centers.data() + (c - 1) * d, d};
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double to_last = sq_distance(ds.record(i), last);
      if (c == 1 || to_last < dist_sq[i]) dist_sq[i] = to_last;
      total += dist_sq[i];
    }
    if (total > 0.0) {
      const double u = uniform_unit(rng) * total;
      double cum = 0.0;
      std::size_t selected = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (dist_sq[i] == 0.0) continue;  // never pick a zero-mass record
        cum += dist_sq[i];
        selected = i;
        if (cum > u) break;
      }
      pick(selected);
    } else {
      // Duplicate-only data: every remaining record coincides with a center.
      std::size_t remaining = 0;
      for (std::size_t i = 0; i < n; ++i) remaining += chosen[i] ? 0u : 1u;
      std::size_t skip = static_cast<std::size_t>(uniform_below(rng, remaining));
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i]) continue;
        if (skip == 0) {
          pick(i);
          break;
        }
        --skip;
      }
    }
  }
  return centers;
}

KMeansResult kmeans(const Dataset& ds, const KMeansConfig& cfg) {
  const std::size_t n = ds.n(), d = ds.d(), k = cfg.k;
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > n) throw std::invalid_argument("k exceeds the record count");
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");

  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<double> centers;
  if (cfg.seeding == Seeding::plus_plus) {
    centers = kmeans_pp_seed(ds, k, rng);
  } else {
    // k distinct records via a partial Fisher-Yates shuffle.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    centers.reserve(k * d);
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t pos = c + static_cast<std::size_t>(uniform_below(rng, n - c));
      std::swap(idx[c], idx[pos]);
      const auto row = ds.record(idx[c]);
      centers.insert(centers.end(), row.begin(), row.end());
    }
  }

  auto center_at = [&](std::vector<double>& v, std::size_t c) {
    return std::span<double>{v.data() + c * d, d};
  };

  KMeansTrace trace;
  trace.dim = d;
  std::vector<std::size_t> assign(n, 0);
  std::vector<double> next(k * d, 0.0);
  std::vector<std::size_t> counts(k, 0);

  for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
    // Assignment step; SSE is measured against the centers that produced it,
    // which keeps the recorded sequence non-increasing.
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double d2 = sq_distance(ds.record(i), center_at(centers, c));
        if (d2 < best) {
          best = d2;
          arg = c;
        }
      }
      assign[i] = arg;
      sse += best;
    }
    trace.sse.push_back(sse);

    // Update step.
    std::fill(next.begin(), next.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[assign[i]];
      const auto row = ds.record(i);
      for (std::size_t j = 0; j < d; ++j) next[assign[i] * d + j] += row[j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) next[c * d + j] /= static_cast<double>(counts[c]);
    }

    // Re-seed empty clusters onto the record farthest from its own (updated)
    // center; silent cluster loss would corrupt declared_k bookkeeping.
    std::vector<bool> used(n, false);
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      double far = -1.0;
      std::size_t pick = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        const double d2 = sq_distance(ds.record(i), center_at(next, assign[i]));
        if (d2 > far) {
          far = d2;
          pick = i;
        }
      }
      used[pick] = true;
      const auto row = ds.record(pick);
      for (std::size_t j = 0; j < d; ++j) next[c * d + j] = row[j];
    }

    double max_shift = 0.0;
    for (std::size_t c = 0; c < k; ++c)
      max_shift = std::max(max_shift, std::sqrt(sq_distance(center_at(centers, c),
                                                            center_at(next, c))));
    trace.max_shift.push_back(max_shift);
    centers = next;
    trace.iterations_run = iter;
    if (max_shift <= cfg.movement_threshold) {
      trace.converged = true;
      break;
    }
  }

  trace.final_centers = centers;
  trace.final_sse = trace.sse.back();
  auto assignment = ClusterAssignment::from_labels(assign);
  return {std::move(assignment), std::move(trace)};
}

ClusterAssignment degenerate_one_vs_rest(const Dataset& ds, std::size_t isolate) {
  if (ds.n() < 2) throw std::invalid_argument("one-vs-rest needs n >= 2");
  if (isolate >= ds.n())
    throw std::invalid_argument("isolate index " + std::to_string(isolate) +
                                " out of range for n=" + std::to_string(ds.n()));
  std::vector<std::size_t> labels(ds.n(), 0);
  labels[isolate] = 1;
  return ClusterAssignment(std::move(labels));
}

}  // namespace treeindex
