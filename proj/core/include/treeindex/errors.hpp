#pragma once

#include <stdexcept>

namespace treeindex {

// File-level and data-content failures: missing files, malformed cells,
// corrupt reports. Contract violations (bad arguments, violated
// preconditions) use std::invalid_argument instead; the CLI maps the two
// to exit codes 1 and 2 respectively.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace treeindex
