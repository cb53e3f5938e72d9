#pragma once

#include <stdexcept>
#include <string>

namespace striso {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two objects of different degree were combined.
struct degree_mismatch : error {
  degree_mismatch(std::size_t a, std::size_t b)
      : error("degree mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

// A text input could not be parsed; carries a 1-based line number when known.
struct parse_error : error {
  explicit parse_error(const std::string& what, long line = -1)
      : error(line >= 0 ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
  long line;
};

// An enumeration or brute-force step exceeded the configured element budget.
struct budget_exhausted : error {
  explicit budget_exhausted(const std::string& what) : error(what) {}
};

// subgroup_by_test found more cosets than the caller promised.
struct index_bound_exceeded : error {
  explicit index_bound_exceeded(const std::string& what) : error(what) {}
};

// A documented precondition was violated (caller bug).
struct precondition_violation : error {
  explicit precondition_violation(const std::string& what) : error(what) {}
};

}  // namespace striso
