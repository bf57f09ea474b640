#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "ccur/scoring.hpp"
#include "test_util.hpp"

using ccur::Axis;
using ccur::Rng;
using ccur::ScoreKind;
using ccur::ScoreVector;
using ccur::column_leverage;
using ccur::contrastive_scores;
using ccur::rank_top;
using ccur::row_leverage;
using ccur_test::random_matrix;
using ccur_test::random_orthogonal;

namespace {

Eigen::MatrixXd diag3() {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(3, 3);
  x.diagonal() << 3.0, 2.0, 1.0;
  return x;
}

Eigen::MatrixXd rank1_2x2() {
  Eigen::MatrixXd x(2, 2);
  x << 1, 2, 2, 4;
  return x;
}

ScoreVector<double> leverage_of(std::initializer_list<double> values, Axis axis) {
  ScoreVector<double> s;
  s.scores = Eigen::Map<const Eigen::VectorXd>(values.begin(),
                                               static_cast<Eigen::Index>(values.size()));
  s.axis = axis;
  s.k_used = 1;
  s.kind = ScoreKind::leverage;
  return s;
}

// Independent route: build the projection matrix V_k V_k^T from a fresh
// Jacobi SVD and read its diagonal.
Eigen::VectorXd projection_diagonal(const Eigen::MatrixXd& x, Eigen::Index k) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinV);
  const Eigen::MatrixXd vk = svd.matrixV().leftCols(k);
  return (vk * vk.transpose()).diagonal();
}

} // namespace

TEST_CASE("column leverage of a diagonal matrix") {
  const auto lev = column_leverage(diag3(), 2);
  CHECK(lev.axis == Axis::columns);
  CHECK(lev.kind == ScoreKind::leverage);
  CHECK(lev.k_used == 2);
  CHECK(lev.scores(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lev.scores(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lev.scores(2) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("column leverage of the rank-1 example") {
  const auto lev = column_leverage(rank1_2x2(), 1);
  CHECK(lev.scores(0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(lev.scores(1) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("full-k leverage is all ones") {
  Rng rng(5);
  const auto x = random_matrix(rng, 9, 5);
  const auto lev = column_leverage(x, 5);
  for (Eigen::Index d = 0; d < 5; ++d) {
    CHECK(lev.scores(d) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("row leverage transposes the problem") {
  const auto d = row_leverage(diag3(), 1);
  CHECK(d.axis == Axis::rows);
  CHECK(d.scores(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.scores(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(d.scores(2) == doctest::Approx(0.0).epsilon(1e-12));

  const auto r = row_leverage(rank1_2x2(), 1);
  CHECK(r.scores(0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(r.scores(1) == doctest::Approx(0.8).epsilon(1e-12));

  Eigen::MatrixXd single(1, 4);
  single << 1, 2, 3, 4;
  const auto s = row_leverage(single, 1);
  CHECK(s.scores.size() == 1);
  CHECK(s.scores(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("contrastive scores are the stabilized ratio") {
  const auto fg = leverage_of({0.9, 0.1}, Axis::columns);
  const auto bg = leverage_of({0.1, 0.9}, Axis::columns);
  const auto ratio = contrastive_scores(fg, bg, 1e-6);
  CHECK(ratio.kind == ScoreKind::contrastive);
  CHECK(ratio.scores(0) == doctest::Approx(0.9 / (0.1 + 1e-6)).epsilon(1e-14));
  CHECK(ratio.scores(1) == doctest::Approx(0.1 / (0.9 + 1e-6)).epsilon(1e-14));
}

TEST_CASE("symmetric inputs give constant scores") {
  const auto fg = leverage_of({0.5, 0.5}, Axis::columns);
  const auto ratio = contrastive_scores(fg, fg, 0.5);
  CHECK(ratio.scores(0) == 0.5);
  CHECK(ratio.scores(1) == 0.5);
}

TEST_CASE("epsilon prevents 0/0 and zero numerators stay zero") {
  const auto fg = leverage_of({0.0, 0.3}, Axis::columns);
  const auto bg = leverage_of({0.0, 0.0}, Axis::columns);
  const auto ratio = contrastive_scores(fg, bg, 1e-6);
  CHECK(ratio.scores(0) == 0.0);
  CHECK(ratio.scores(1) == doctest::Approx(300000.0).epsilon(1e-12));
}

TEST_CASE("contrastive scores validate their inputs") {
  const auto fg = leverage_of({0.5, 0.5}, Axis::columns);
  const auto short_bg = leverage_of({1.0}, Axis::columns);
  CHECK_THROWS_AS(contrastive_scores(fg, short_bg, 1e-6), ccur::dimension_error);

  const auto rows = leverage_of({0.5, 0.5}, Axis::rows);
  CHECK_THROWS_AS(contrastive_scores(fg, rows, 1e-6), ccur::dimension_error);

  auto contrastive = fg;
  contrastive.kind = ScoreKind::contrastive;
  CHECK_THROWS_AS(contrastive_scores(fg, contrastive, 1e-6), ccur::dimension_error);

  CHECK_THROWS_AS(contrastive_scores(fg, fg, 0.0), ccur::dimension_error);
  CHECK_THROWS_AS(contrastive_scores(fg, fg, -1.0), ccur::dimension_error);
}

TEST_CASE("rank_top orders by score with index tie-breaks") {
  Eigen::VectorXd scores(3);
  scores << 0.2, 0.8, 0.5;
  CHECK(rank_top(scores, 2) == std::vector<Eigen::Index>{1, 2});

  Eigen::VectorXd tie(3);
  tie << 0.5, 0.5, 0.1;
  CHECK(rank_top(tie, 1) == std::vector<Eigen::Index>{0});

  Eigen::VectorXd ratio(2);
  ratio << 8.99991, 0.111111;
  CHECK(rank_top(ratio, 1) == std::vector<Eigen::Index>{0});

  CHECK_THROWS_AS(rank_top(scores, 0), ccur::dimension_error);
  CHECK_THROWS_AS(rank_top(scores, 4), ccur::dimension_error);
}

TEST_CASE("leverage equals the projection diagonal") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.uniform() * 37);
    const Eigen::Index p = 3 + static_cast<Eigen::Index>(rng.uniform() * 37);
    const auto x = random_matrix(rng, n, p);
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.uniform() *
                               static_cast<double>(std::min(n, p) - 1));
    const auto lev = column_leverage(x, k);
    const auto oracle = projection_diagonal(x, k);
    CHECK((lev.scores - oracle).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("leverage scores sum to k") {
  Rng rng(43);
  const auto x = random_matrix(rng, 20, 12);
  for (Eigen::Index k = 1; k <= 12; ++k) {
    const auto lev = column_leverage(x, k);
    CHECK(lev.scores.sum() == doctest::Approx(static_cast<double>(k)).epsilon(1e-8));
    CHECK(lev.scores.minCoeff() >= 0.0);
  }
}

TEST_CASE("leverage is invariant under orthogonal row transforms") {
  Rng rng(47);
  const auto x = random_matrix(rng, 14, 9);
  const auto q = random_orthogonal(rng, 14);
  const auto base = column_leverage(x, 4);
  const auto rotated = column_leverage(q * x, 4);
  CHECK((base.scores - rotated.scores).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("leverage is entrywise nondecreasing in k") {
  Rng rng(53);
  const auto x = random_matrix(rng, 16, 10);
  Eigen::VectorXd previous = Eigen::VectorXd::Zero(10);
  for (Eigen::Index k = 1; k <= 10; ++k) {
    const auto lev = column_leverage(x, k);
    CHECK((lev.scores - previous).minCoeff() >= -1e-12);
    previous = lev.scores;
  }
}

TEST_CASE("rank_top is invariant under positive scaling") {
  Rng rng(59);
  Eigen::VectorXd scores(15);
  for (Eigen::Index i = 0; i < scores.size(); ++i) scores(i) = rng.uniform();
  const auto base = rank_top(scores, 15);
  for (const double factor : {0.5, 2.0, 1e6}) {
    CHECK(rank_top((scores * factor).eval(), 15) == base);
  }
}
