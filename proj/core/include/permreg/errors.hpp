#pragma once

#include <stdexcept>
#include <string>

namespace permreg {

/// Design matrix is numerically rank-deficient (or an all-zero design vector),
/// so the least-squares objective does not identify a permutation.
class DegenerateDesignError : public std::runtime_error {
 public:
  explicit DegenerateDesignError(const std::string& what) : std::runtime_error(what) {}
};

/// An exhaustive routine was asked to enumerate beyond its configured cap.
class EnumerationLimitError : public std::runtime_error {
 public:
  explicit EnumerationLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace permreg
