#ifndef CCUR_CUR_HPP
#define CCUR_CUR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ccur/random.hpp"
#include "ccur/scoring.hpp"

namespace ccur {

/// A CUR factorization: selected column/row positions, the corresponding
/// verbatim slices C and R of the input, the linking factor
/// U_mid = C^+ X R^+, and the relative Frobenius reconstruction error.
template <typename Scalar>
struct CurFactors {
  std::vector<Eigen::Index> col_indices;
  std::vector<Eigen::Index> row_indices;
  Matrix<Scalar> C;
  Matrix<Scalar> U_mid;
  Matrix<Scalar> R;
  Scalar recon_error = 0;
};

namespace detail {

template <typename Derived>
void check_cur_args(const Eigen::MatrixBase<Derived>& x, Eigen::Index k, Eigen::Index c,
                    Eigen::Index r) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (k < 1 || k > std::min(n, p)) {
    throw dimension_error("cur: k = " + std::to_string(k) + " out of range [1, " +
                          std::to_string(std::min(n, p)) + "]");
  }
  if (c < 1 || c > p) {
    throw dimension_error("cur: c = " + std::to_string(c) + " out of range [1, " +
                          std::to_string(p) + "]");
  }
  if (r < 1 || r > n) {
    throw dimension_error("cur: r = " + std::to_string(r) + " out of range [1, " +
                          std::to_string(n) + "]");
  }
}

// Gather C and R, form the middle factor against the full matrix, and
// measure the relative reconstruction error (0 for an all-zero input).
template <typename Scalar>
CurFactors<Scalar> assemble_cur(const Matrix<Scalar>& x,
                                std::vector<Eigen::Index> col_indices,
                                std::vector<Eigen::Index> row_indices) {
  CurFactors<Scalar> out;
  out.col_indices = std::move(col_indices);
  out.row_indices = std::move(row_indices);
  out.C = x(Eigen::all, out.col_indices);
  out.R = x(out.row_indices, Eigen::all);
  out.U_mid = pseudoinverse(out.C) * x * pseudoinverse(out.R);
  const Scalar x_norm = x.norm();
  out.recon_error =
      x_norm > Scalar(0) ? (x - out.C * out.U_mid * out.R).norm() / x_norm : Scalar(0);
  return out;
}

// Draw `count` distinct indices by sequential weighted sampling without
// replacement: each draw uses the remaining weights renormalized. If the
// remaining weight mass vanishes, later draws fall back to uniform over the
// not-yet-selected indices.
template <typename Scalar>
std::vector<Eigen::Index> sample_without_replacement(Vector<Scalar> weights,
                                                     Eigen::Index count, Rng& rng) {
  const Eigen::Index n = weights.size();
  std::vector<Eigen::Index> picked;
  picked.reserve(static_cast<std::size_t>(count));
  std::vector<bool> taken(static_cast<std::size_t>(n), false);

  for (Eigen::Index draw = 0; draw < count; ++draw) {
    const Scalar total = weights.sum();
    Eigen::Index chosen = -1;
    if (total > Scalar(0)) {
      const Scalar target = static_cast<Scalar>(rng.uniform()) * total;
      Scalar acc = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (taken[static_cast<std::size_t>(i)]) continue;
        acc += weights(i);
        if (target < acc) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0) {
        // Rounding pushed the target past the last positive weight.
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (!taken[static_cast<std::size_t>(i)] && weights(i) > Scalar(0)) {
            chosen = i;
            break;
          }
        }
      }
    }
    if (chosen < 0) {
      Eigen::Index remaining = n - draw;
      Eigen::Index skip = static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(remaining));
      if (skip >= remaining) skip = remaining - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (taken[static_cast<std::size_t>(i)]) continue;
        if (skip-- == 0) {
          chosen = i;
          break;
        }
      }
    }
    taken[static_cast<std::size_t>(chosen)] = true;
    weights(chosen) = Scalar(0);
    picked.push_back(chosen);
  }
  return picked;
}

} // namespace detail

/// Deterministic CUR: the c columns and r rows with the highest rank-k
/// leverage scores, with U_mid = C^+ X R^+ computed against the full input.
template <typename Derived>
CurFactors<typename Derived::Scalar> cur_decompose(const Eigen::MatrixBase<Derived>& x,
                                                   Eigen::Index k, Eigen::Index c,
                                                   Eigen::Index r) {
  using Scalar = typename Derived::Scalar;
  detail::check_cur_args(x, k, c, r);
  const Matrix<Scalar> dense = x.derived();
  auto cols = rank_top(column_leverage(dense, k), c);
  auto rows = rank_top(row_leverage(dense, k), r);
  return detail::assemble_cur(dense, std::move(cols), std::move(rows));
}

/// Randomized CUR variant: columns and rows drawn without replacement with
/// probabilities proportional to their leverage scores (leverage / k).
/// Indices appear in draw order. Deterministic for a fixed seed.
template <typename Derived>
CurFactors<typename Derived::Scalar> cur_sample(const Eigen::MatrixBase<Derived>& x,
                                                Eigen::Index k, Eigen::Index c,
                                                Eigen::Index r, std::uint64_t seed) {
  using Scalar = typename Derived::Scalar;
  detail::check_cur_args(x, k, c, r);
  const Matrix<Scalar> dense = x.derived();
  Rng rng(seed);
  auto cols =
      detail::sample_without_replacement<Scalar>(column_leverage(dense, k).scores, c, rng);
  auto rows =
      detail::sample_without_replacement<Scalar>(row_leverage(dense, k).scores, r, rng);
  return detail::assemble_cur(dense, std::move(cols), std::move(rows));
}

} // namespace ccur

#endif
