#ifndef CCUR_SCORING_HPP
#define CCUR_SCORING_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "ccur/linalg.hpp"

namespace ccur {

enum class Axis { columns, rows };
enum class ScoreKind { leverage, contrastive };

/// Per-column (or per-row) scores with the metadata needed to rank them.
///
/// For kind == leverage the scores sum to k_used, since they are squared
/// entries of k_used orthonormal singular vectors.
template <typename Scalar>
struct ScoreVector {
  Vector<Scalar> scores;
  Axis axis = Axis::columns;
  Eigen::Index k_used = 0;
  ScoreKind kind = ScoreKind::leverage;
};

/// Shared knobs of the contrastive ratio: the number of singular vectors
/// used for both groups and the denominator stabilizer.
struct ContrastiveConfig {
  Eigen::Index k = 7;
  double epsilon = 1e-6;
};

/// Leverage score of every column of x: the sum of squared entries of the
/// top-k right singular vectors, i.e. the diagonal of the projection onto
/// the dominant rank-k right singular subspace.
///
/// When sigma_k == sigma_{k+1} that subspace is not unique and neither is
/// the leverage vector; results are still deterministic, but they are only
/// meaningful for generic (distinct-sigma) spectra.
template <typename Derived>
ScoreVector<typename Derived::Scalar> column_leverage(const Eigen::MatrixBase<Derived>& x,
                                                      Eigen::Index k) {
  using Scalar = typename Derived::Scalar;
  const TruncatedSvd<Scalar> svd = truncated_svd(x, k);
  ScoreVector<Scalar> out;
  out.scores = svd.right_vectors.array().square().rowwise().sum().matrix();
  out.axis = Axis::columns;
  out.k_used = k;
  out.kind = ScoreKind::leverage;
  return out;
}

/// Leverage score of every row of x; column_leverage applied to x^T.
template <typename Derived>
ScoreVector<typename Derived::Scalar> row_leverage(const Eigen::MatrixBase<Derived>& x,
                                                   Eigen::Index k) {
  auto out = column_leverage(x.transpose(), k);
  out.axis = Axis::rows;
  return out;
}

/// Contrastive score: fg[d] / (bg[d] + epsilon), entrywise.
///
/// epsilon keeps near-zero background scores from inflating the ratio; it is
/// applied to the denominator only.
template <typename Scalar>
ScoreVector<Scalar> contrastive_scores(const ScoreVector<Scalar>& fg,
                                       const ScoreVector<Scalar>& bg, double epsilon) {
  if (fg.scores.size() != bg.scores.size()) {
    throw dimension_error("contrastive_scores: score lengths differ (" +
                          std::to_string(fg.scores.size()) + " vs " +
                          std::to_string(bg.scores.size()) + ")");
  }
  if (fg.axis != bg.axis) {
    throw dimension_error("contrastive_scores: inputs score different axes");
  }
  if (fg.kind != ScoreKind::leverage || bg.kind != ScoreKind::leverage) {
    throw dimension_error("contrastive_scores: inputs must be leverage scores");
  }
  if (!(epsilon > 0)) {
    throw dimension_error("contrastive_scores: epsilon must be positive");
  }
  ScoreVector<Scalar> out;
  out.scores = fg.scores.array() / (bg.scores.array() + static_cast<Scalar>(epsilon));
  out.axis = fg.axis;
  out.k_used = fg.k_used;
  out.kind = ScoreKind::contrastive;
  return out;
}

/// Leverage scores of both groups with a shared k, combined into the
/// contrastive ratio. Columns only; the row stage of CCUR never contrasts.
template <typename DerivedX, typename DerivedY>
ScoreVector<typename DerivedX::Scalar>
contrastive_column_scores(const Eigen::MatrixBase<DerivedX>& x_fg,
                          const Eigen::MatrixBase<DerivedY>& y_bg,
                          const ContrastiveConfig& config) {
  if (x_fg.cols() != y_bg.cols()) {
    throw dimension_error("contrastive_column_scores: column counts differ (" +
                          std::to_string(x_fg.cols()) + " vs " +
                          std::to_string(y_bg.cols()) + ")");
  }
  const auto fg = column_leverage(x_fg, config.k);
  const auto bg = column_leverage(y_bg, config.k);
  return contrastive_scores(fg, bg, config.epsilon);
}

/// Indices of the `count` largest entries, ordered by descending score.
/// Ties are broken by ascending index, so the result is deterministic.
template <typename Derived>
std::vector<Eigen::Index> rank_top(const Eigen::MatrixBase<Derived>& scores,
                                   Eigen::Index count) {
  const Eigen::Index n = scores.size();
  if (count < 1 || count > n) {
    throw dimension_error("rank_top: count = " + std::to_string(count) +
                          " out of range [1, " + std::to_string(n) + "]");
  }
  const Vector<typename Derived::Scalar> s = scores.derived();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::sort(order.begin(), order.end(), [&s](Eigen::Index a, Eigen::Index b) {
    if (s(a) != s(b)) return s(a) > s(b);
    return a < b;
  });
  order.resize(static_cast<std::size_t>(count));
  return order;
}

template <typename Scalar>
std::vector<Eigen::Index> rank_top(const ScoreVector<Scalar>& scores, Eigen::Index count) {
  return rank_top(scores.scores, count);
}

} // namespace ccur

#endif
