#pragma once

// Independent reference implementations used as test oracles. Everything
// here is written as plain brute-force loops over the raw data, on purpose:
// no sharing of code paths with the library under test.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace oracles {

// ------------------------------------------------------------- tree splits

struct RootSplit {
  std::size_t attribute = 0;
  double threshold = 0.0;
  double ratio = 0.0;
};

// Exhaustive search over every (attribute, midpoint) candidate: charged gain
// = gain - log2(#distinct - 1)/n, candidates need min_leaf records per side
// and positive charged gain, the winner maximizes charged_gain/split_info
// among candidates at or above the mean charged gain, first (lowest
// attribute, lowest threshold) wins ties. Returns nullopt when no candidate
// survives.
std::optional<RootSplit> best_root_split(const std::vector<std::vector<double>>& rows,
                                         const std::vector<std::size_t>& classes,
                                         std::size_t num_classes, std::size_t min_leaf);

double entropy_bits(const std::vector<std::size_t>& counts);

// --------------------------------------------------------- baseline indexes

double o_purity(const std::vector<std::size_t>& cluster,
                const std::vector<std::string>& cls);
double o_f_measure(const std::vector<std::size_t>& cluster,
                   const std::vector<std::string>& cls);
double o_entropy_ext(const std::vector<std::size_t>& cluster,
                     const std::vector<std::string>& cls);
double o_sse(const std::vector<std::vector<double>>& x,
             const std::vector<std::size_t>& cluster);
double o_silhouette(const std::vector<std::vector<double>>& x,
                    const std::vector<std::size_t>& cluster);
double o_db(const std::vector<std::vector<double>>& x,
            const std::vector<std::size_t>& cluster);
double o_xb(const std::vector<std::vector<double>>& x,
            const std::vector<std::size_t>& cluster);

}  // namespace oracles
