#ifndef CCUR_ERRORS_HPP
#define CCUR_ERRORS_HPP

#include <stdexcept>

namespace ccur {

/// Invalid shape or parameter: empty matrix, k out of range, length
/// mismatch between paired inputs, nonpositive epsilon, and the like.
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Non-finite data, a degenerate problem, or a failed factorization.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace ccur

#endif
