#ifndef CCUR_CPCA_HPP
#define CCUR_CPCA_HPP

#include <Eigen/Eigenvalues>

#include <string>
#include <vector>

#include "ccur/scoring.hpp"

namespace ccur {

/// Contrastive PCA settings: contrast strength alpha and how many features
/// to keep in the ranking.
struct CpcaConfig {
  double alpha = 1.0;
  Eigen::Index num_features = 0;
};

template <typename Scalar>
struct CpcaResult {
  /// Feature positions ordered by descending |loading|, ties by ascending
  /// index, truncated to num_features.
  std::vector<Eigen::Index> ranked;
  /// Full leading eigenvector of Cov_fg - alpha * Cov_bg, sign-fixed so its
  /// largest-|entry| coordinate is positive.
  Vector<Scalar> loadings;
  Scalar leading_eigenvalue = 0;
  /// True when the most positive eigenvalue is <= 0, i.e. the background
  /// term dominates every direction.
  bool leading_nonpositive = false;
};

namespace detail {

// Column-mean-centered covariance with divisor (rows - 1).
template <typename Scalar>
Matrix<Scalar> covariance(const Matrix<Scalar>& x) {
  const Matrix<Scalar> centered = x.rowwise() - x.colwise().mean();
  return centered.transpose() * centered / static_cast<Scalar>(x.rows() - 1);
}

} // namespace detail

/// CPCA feature ranking: eigen-analysis of Cov_fg - alpha * Cov_bg, with
/// features ranked by the absolute loadings of the leading (most positive
/// eigenvalue) component.
template <typename DerivedX, typename DerivedY>
CpcaResult<typename DerivedX::Scalar>
cpca_rank_features(const Eigen::MatrixBase<DerivedX>& x_fg,
                   const Eigen::MatrixBase<DerivedY>& y_bg, const CpcaConfig& config) {
  using Scalar = typename DerivedX::Scalar;
  if (x_fg.cols() != y_bg.cols()) {
    throw dimension_error("cpca: column counts differ (" + std::to_string(x_fg.cols()) +
                          " vs " + std::to_string(y_bg.cols()) + ")");
  }
  if (x_fg.rows() < 2 || y_bg.rows() < 2) {
    throw dimension_error("cpca: each group needs at least 2 rows");
  }
  if (!(config.alpha >= 0)) {
    throw dimension_error("cpca: alpha must be nonnegative");
  }
  const Eigen::Index p = x_fg.cols();
  if (config.num_features < 1 || config.num_features > p) {
    throw dimension_error("cpca: num_features = " + std::to_string(config.num_features) +
                          " out of range [1, " + std::to_string(p) + "]");
  }
  detail::require_finite(x_fg, "cpca");
  detail::require_finite(y_bg, "cpca");

  const Matrix<Scalar> contrast =
      detail::covariance<Scalar>(x_fg.derived()) -
      static_cast<Scalar>(config.alpha) * detail::covariance<Scalar>(y_bg.derived());
  if (contrast.cwiseAbs().maxCoeff() == Scalar(0)) {
    throw numeric_error("cpca: contrast covariance is identically zero; "
                        "the groups cancel and no direction is defined");
  }

  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(contrast);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("cpca: eigendecomposition failed to converge");
  }

  CpcaResult<Scalar> out;
  // Eigenvalues come back in increasing order; the leading one is last.
  out.leading_eigenvalue = solver.eigenvalues()(p - 1);
  out.leading_nonpositive = !(out.leading_eigenvalue > Scalar(0));
  out.loadings = solver.eigenvectors().col(p - 1);

  Eigen::Index arg = 0;
  Scalar best = std::abs(out.loadings(0));
  for (Eigen::Index i = 1; i < p; ++i) {
    const Scalar a = std::abs(out.loadings(i));
    if (a > best) {
      best = a;
      arg = i;
    }
  }
  if (out.loadings(arg) < Scalar(0)) out.loadings = -out.loadings;

  out.ranked = rank_top(out.loadings.cwiseAbs(), config.num_features);
  return out;
}

} // namespace ccur

#endif
