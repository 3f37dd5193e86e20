#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace treeindex {

// A non-negative quality score that may be infinite. Lower is better and
// infinity compares greater than every finite value. Infinity is absorbing
// under averaging (see average_runs in tree_index.hpp).
class ExtendedScore {
 public:
  static ExtendedScore finite(double v);
  static ExtendedScore infinity() noexcept {
    return ExtendedScore(std::numeric_limits<double>::infinity());
  }

  bool is_finite() const noexcept { return std::isfinite(value_); }
  // +inf when infinite; otherwise the finite score.
  double value() const noexcept { return value_; }

  friend bool operator==(ExtendedScore a, ExtendedScore b) noexcept {
    return a.value_ == b.value_;
  }
  friend bool operator<(ExtendedScore a, ExtendedScore b) noexcept {
    return a.value_ < b.value_;
  }
  friend bool operator>(ExtendedScore a, ExtendedScore b) noexcept { return b < a; }
  friend bool operator<=(ExtendedScore a, ExtendedScore b) noexcept { return !(b < a); }
  friend bool operator>=(ExtendedScore a, ExtendedScore b) noexcept { return !(a < b); }

  // "inf", or the score with six decimal places.
  std::string to_string() const;

 private:
  explicit ExtendedScore(double v) noexcept : value_(v) {}
  double value_;
};

}  // namespace treeindex
