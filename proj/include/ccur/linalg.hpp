#ifndef CCUR_LINALG_HPP
#define CCUR_LINALG_HPP

#include <Eigen/Core>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ccur/errors.hpp"

namespace ccur {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Top-k singular triplets of a dense matrix.
///
/// singular_values is nonincreasing and nonnegative; left_vectors (n x k)
/// and right_vectors (p x k) have orthonormal columns. Signs follow a fixed
/// convention, see truncated_svd().
template <typename Scalar>
struct TruncatedSvd {
  Eigen::Index k = 0;
  Vector<Scalar> singular_values;
  Matrix<Scalar> left_vectors;
  Matrix<Scalar> right_vectors;
};

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& x, const char* op) {
  if (!x.derived().allFinite()) {
    throw numeric_error(std::string(op) + ": input contains non-finite entries");
  }
}

// Flip each singular-vector pair so that the entry of largest absolute
// value in the right vector is positive. Ties on equal absolute value go to
// the lowest index. Keeps factorizations reproducible; leverage scores are
// unaffected either way.
template <typename Scalar>
void fix_singular_vector_signs(Matrix<Scalar>& left, Matrix<Scalar>& right) {
  for (Eigen::Index j = 0; j < right.cols(); ++j) {
    Eigen::Index arg = 0;
    Scalar best = std::abs(right(0, j));
    for (Eigen::Index i = 1; i < right.rows(); ++i) {
      const Scalar a = std::abs(right(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (right(arg, j) < Scalar(0)) {
      right.col(j) = -right.col(j);
      left.col(j) = -left.col(j);
    }
  }
}

template <typename Scalar>
Eigen::BDCSVD<Matrix<Scalar>> thin_svd(const Matrix<Scalar>& x, const char* op) {
  Eigen::BDCSVD<Matrix<Scalar>> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw numeric_error(std::string(op) + ": SVD failed to converge");
  }
  return svd;
}

} // namespace detail

/// Deterministic truncated SVD: the top-k singular triplets of x.
///
/// Sign convention: within each right singular vector, the entry of largest
/// absolute value is made positive (ties broken by lowest index), and the
/// matching left vector is flipped with it. k may exceed rank(x); trailing
/// singular values are then numerically zero and their vectors are
/// orthonormal completions.
template <typename Derived>
TruncatedSvd<typename Derived::Scalar> truncated_svd(const Eigen::MatrixBase<Derived>& x,
                                                     Eigen::Index k) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (n < 1 || p < 1) {
    throw dimension_error("truncated_svd: matrix must have at least one row and column");
  }
  if (k < 1 || k > std::min(n, p)) {
    throw dimension_error("truncated_svd: k = " + std::to_string(k) +
                          " out of range [1, " + std::to_string(std::min(n, p)) + "]");
  }
  detail::require_finite(x, "truncated_svd");

  const Matrix<Scalar> dense = x.derived();
  const auto svd = detail::thin_svd<Scalar>(dense, "truncated_svd");

  TruncatedSvd<Scalar> out;
  out.k = k;
  out.singular_values = svd.singularValues().head(k);
  out.left_vectors = svd.matrixU().leftCols(k);
  out.right_vectors = svd.matrixV().leftCols(k);
  detail::fix_singular_vector_signs(out.left_vectors, out.right_vectors);
  return out;
}

/// Moore-Penrose pseudoinverse via SVD.
///
/// Singular values <= tol are treated as zero. When tol is not given it
/// defaults to max(n, p) * sigma_1 * machine epsilon.
template <typename Derived>
Matrix<typename Derived::Scalar>
pseudoinverse(const Eigen::MatrixBase<Derived>& a,
              std::optional<typename Derived::Scalar> tol = std::nullopt) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() < 1 || a.cols() < 1) {
    throw dimension_error("pseudoinverse: matrix must have at least one row and column");
  }
  if (tol && !(*tol >= Scalar(0))) {
    throw dimension_error("pseudoinverse: tol must be nonnegative");
  }
  detail::require_finite(a, "pseudoinverse");

  const Matrix<Scalar> dense = a.derived();
  const auto svd = detail::thin_svd<Scalar>(dense, "pseudoinverse");
  const auto& sv = svd.singularValues();

  const Scalar cutoff =
      tol ? *tol
          : static_cast<Scalar>(std::max(a.rows(), a.cols())) * sv(0) *
                std::numeric_limits<Scalar>::epsilon();

  Vector<Scalar> inv(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    inv(i) = sv(i) > cutoff ? Scalar(1) / sv(i) : Scalar(0);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

} // namespace ccur

#endif
