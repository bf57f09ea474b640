#ifndef CCUR_CCUR_HPP
#define CCUR_CCUR_HPP

#include <string>
#include <utility>
#include <vector>

#include "ccur/scoring.hpp"

namespace ccur {

/// Hyperparameters of a full CCUR run. r has no meaningful universal
/// default and must be set by the caller.
struct CcurConfig {
  Eigen::Index k = 7;
  Eigen::Index c = 10;
  Eigen::Index r = 0;
  double epsilon = 1e-6;
};

/// Result of contrastive column selection followed by row selection on the
/// column-restricted foreground.
///
/// col_scores covers all p columns (contrastive); row_scores covers all n
/// rows (leverage of the foreground restricted to col_indices). The row
/// stage may run with fewer singular vectors than config.k when k exceeds
/// the restricted width; row_scores.k_used records the value actually used.
template <typename Scalar>
struct CcurSelection {
  std::vector<Eigen::Index> col_indices;
  ScoreVector<Scalar> col_scores;
  std::vector<Eigen::Index> row_indices;
  ScoreVector<Scalar> row_scores;
  CcurConfig config;
};

/// Contrastive column selection: rank columns by the ratio of foreground to
/// background leverage (both with the same k) and keep the top c.
template <typename DerivedX, typename DerivedY>
std::pair<std::vector<Eigen::Index>, ScoreVector<typename DerivedX::Scalar>>
select_columns(const Eigen::MatrixBase<DerivedX>& x_fg,
               const Eigen::MatrixBase<DerivedY>& y_bg, Eigen::Index k, Eigen::Index c,
               double epsilon) {
  auto scores = contrastive_column_scores(x_fg, y_bg, ContrastiveConfig{k, epsilon});
  auto indices = rank_top(scores, c);
  return {std::move(indices), std::move(scores)};
}

/// Row selection on the restricted foreground: plain leverage of the rows
/// of x_fg restricted to col_indices, keeping the top r. No contrast and no
/// epsilon in this stage.
template <typename Derived>
std::pair<std::vector<Eigen::Index>, ScoreVector<typename Derived::Scalar>>
select_rows(const Eigen::MatrixBase<Derived>& x_fg,
            const std::vector<Eigen::Index>& col_indices, Eigen::Index k, Eigen::Index r) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x_fg.rows();
  const Eigen::Index p = x_fg.cols();
  if (col_indices.empty()) {
    throw dimension_error("select_rows: column index list is empty");
  }
  std::vector<bool> seen(static_cast<std::size_t>(p), false);
  for (const auto idx : col_indices) {
    if (idx < 0 || idx >= p) {
      throw dimension_error("select_rows: column index " + std::to_string(idx) +
                            " out of range [0, " + std::to_string(p - 1) + "]");
    }
    if (seen[static_cast<std::size_t>(idx)]) {
      throw dimension_error("select_rows: duplicate column index " + std::to_string(idx));
    }
    seen[static_cast<std::size_t>(idx)] = true;
  }
  if (r < 1 || r > n) {
    throw dimension_error("select_rows: r = " + std::to_string(r) + " out of range [1, " +
                          std::to_string(n) + "]");
  }
  const Matrix<Scalar> restricted = x_fg.derived()(Eigen::all, col_indices);
  auto scores = row_leverage(restricted, k);
  auto indices = rank_top(scores, r);
  return {std::move(indices), std::move(scores)};
}

/// Full CCUR: contrastive column selection, then row selection on the
/// foreground restricted to the selected columns.
///
/// The row stage reuses config.k capped at min(k, c, n) so it stays valid on
/// the restricted matrix; the capped value is recorded in
/// row_scores.k_used. Errors name the stage that raised them.
template <typename DerivedX, typename DerivedY>
CcurSelection<typename DerivedX::Scalar> ccur(const Eigen::MatrixBase<DerivedX>& x_fg,
                                              const Eigen::MatrixBase<DerivedY>& y_bg,
                                              const CcurConfig& config) {
  using Scalar = typename DerivedX::Scalar;
  CcurSelection<Scalar> out;
  out.config = config;

  try {
    auto [cols, col_scores] =
        select_columns(x_fg, y_bg, config.k, config.c, config.epsilon);
    out.col_indices = std::move(cols);
    out.col_scores = std::move(col_scores);
  } catch (const dimension_error& e) {
    throw dimension_error(std::string("column selection: ") + e.what());
  } catch (const numeric_error& e) {
    throw numeric_error(std::string("column selection: ") + e.what());
  }

  const Eigen::Index row_k = std::min(
      config.k, std::min(static_cast<Eigen::Index>(out.col_indices.size()), x_fg.rows()));
  try {
    auto [rows, row_scores] = select_rows(x_fg, out.col_indices, row_k, config.r);
    out.row_indices = std::move(rows);
    out.row_scores = std::move(row_scores);
  } catch (const dimension_error& e) {
    throw dimension_error(std::string("row selection: ") + e.what());
  } catch (const numeric_error& e) {
    throw numeric_error(std::string("row selection: ") + e.what());
  }
  return out;
}

} // namespace ccur

#endif
