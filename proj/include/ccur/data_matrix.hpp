#ifndef CCUR_DATA_MATRIX_HPP
#define CCUR_DATA_MATRIX_HPP

#include <Eigen/Core>

#include <string>
#include <unordered_set>
#include <vector>

#include "ccur/errors.hpp"

namespace ccur {

/// Dense real matrix with optional row and column labels.
/// An empty label vector means "no labels on that axis".
struct DataMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

namespace detail {

inline void require_unique(const std::vector<std::string>& labels, const char* axis) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw dimension_error(std::string("duplicate ") + axis + " label '" + l + "'");
    }
  }
}

} // namespace detail

/// Check the DataMatrix invariants: nonempty, finite entries, and labels
/// (when present) matching their dimension with unique entries.
inline void validate(const DataMatrix& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw dimension_error("matrix must have at least one row and column");
  }
  if (!m.values.allFinite()) {
    throw numeric_error("matrix contains non-finite entries");
  }
  if (!m.row_labels.empty() &&
      static_cast<Eigen::Index>(m.row_labels.size()) != m.rows()) {
    throw dimension_error("row label count does not match row count");
  }
  if (!m.col_labels.empty() &&
      static_cast<Eigen::Index>(m.col_labels.size()) != m.cols()) {
    throw dimension_error("column label count does not match column count");
  }
  detail::require_unique(m.row_labels, "row");
  detail::require_unique(m.col_labels, "column");
}

} // namespace ccur

#endif
