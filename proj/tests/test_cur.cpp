#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>
#include <cstring>

#include "ccur/cur.hpp"
#include "test_util.hpp"

using ccur::Rng;
using ccur::cur_decompose;
using ccur::cur_sample;
using ccur_test::max_abs_diff;
using ccur_test::random_low_rank;
using ccur_test::random_matrix;

namespace {

Eigen::MatrixXd rank1_2x2() {
  Eigen::MatrixXd x(2, 2);
  x << 1, 2, 2, 4;
  return x;
}

} // namespace

TEST_CASE("hand-worked CUR of the rank-1 matrix") {
  // Leverage (k = 1) is [0.2, 0.8] on both axes, so column 1 and row 1 are
  // picked. C+ = [0.1, 0.2], R+ = [0.1; 0.2], and U_mid = C+ X R+ = 0.25
  // reconstructs X exactly.
  const auto factors = cur_decompose(rank1_2x2(), 1, 1, 1);
  CHECK(factors.col_indices == std::vector<Eigen::Index>{1});
  CHECK(factors.row_indices == std::vector<Eigen::Index>{1});
  CHECK(factors.C(0, 0) == 2.0);
  CHECK(factors.C(1, 0) == 4.0);
  CHECK(factors.R(0, 0) == 2.0);
  CHECK(factors.R(0, 1) == 4.0);
  CHECK(factors.U_mid(0, 0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(factors.recon_error < 1e-12);
}

TEST_CASE("full selection of the identity reconstructs exactly") {
  const auto factors = cur_decompose(Eigen::MatrixXd::Identity(3, 3), 3, 3, 3);
  CHECK(factors.recon_error < 1e-12);
}

TEST_CASE("C and R are verbatim slices of the input") {
  Rng rng(61);
  const auto x = random_matrix(rng, 12, 8);
  const auto factors = cur_decompose(x, 3, 4, 5);
  for (std::size_t j = 0; j < factors.col_indices.size(); ++j) {
    const Eigen::VectorXd expected = x.col(factors.col_indices[j]);
    CHECK(std::memcmp(factors.C.col(static_cast<Eigen::Index>(j)).eval().data(),
                      expected.data(), sizeof(double) * 12) == 0);
  }
  for (std::size_t i = 0; i < factors.row_indices.size(); ++i) {
    const Eigen::RowVectorXd expected = x.row(factors.row_indices[i]);
    const Eigen::RowVectorXd got = factors.R.row(static_cast<Eigen::Index>(i));
    CHECK(std::memcmp(got.data(), expected.data(), sizeof(double) * 8) == 0);
  }
}

TEST_CASE("exact recovery of generic low-rank matrices") {
  Rng rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index rank = 1 + trial % 5;
    const Eigen::Index n = rank + 5 + static_cast<Eigen::Index>(rng.uniform() * 20);
    const Eigen::Index p = rank + 5 + static_cast<Eigen::Index>(rng.uniform() * 15);
    const auto x = random_low_rank(rng, n, p, rank);
    const auto factors = cur_decompose(x, rank, rank, rank);
    CHECK(factors.recon_error <= 1e-8);
  }
}

TEST_CASE("reconstruction error never beats the best rank-min(c,r) truncation") {
  Rng rng(71);
  for (int trial = 0; trial < 8; ++trial) {
    const auto x = random_matrix(rng, 15, 10);
    const Eigen::Index c = 1 + static_cast<Eigen::Index>(rng.uniform() * 9);
    const Eigen::Index r = 1 + static_cast<Eigen::Index>(rng.uniform() * 14);
    const auto factors = cur_decompose(x, 3, c, r);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
    const Eigen::Index j = std::min(c, r);
    double tail_sq = 0;
    for (Eigen::Index i = j; i < svd.singularValues().size(); ++i) {
      tail_sq += svd.singularValues()(i) * svd.singularValues()(i);
    }
    const double best = std::sqrt(tail_sq) / x.norm();
    CHECK(factors.recon_error >= best - 1e-8);
  }
}

TEST_CASE("cur arguments are validated") {
  const auto x = rank1_2x2();
  CHECK_THROWS_AS(cur_decompose(x, 0, 1, 1), ccur::dimension_error);
  CHECK_THROWS_AS(cur_decompose(x, 1, 3, 1), ccur::dimension_error);
  CHECK_THROWS_AS(cur_decompose(x, 1, 1, 0), ccur::dimension_error);
  CHECK_THROWS_AS(cur_sample(x, 1, 1, 5, 0), ccur::dimension_error);
}

TEST_CASE("sampling everything reconstructs exactly") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(3, 3);
  x.diagonal() << 3.0, 2.0, 1.0;
  const auto factors = cur_sample(x, 3, 3, 3, 12345);
  CHECK(factors.col_indices.size() == 3);
  std::vector<bool> seen(3, false);
  for (const auto idx : factors.col_indices) seen[static_cast<std::size_t>(idx)] = true;
  CHECK(seen == std::vector<bool>{true, true, true});
  CHECK(factors.recon_error < 1e-12);
}

TEST_CASE("a degenerate distribution is sampled with probability one") {
  // Only column 0 carries mass: leverage (k = 1) is [1, 0, 0].
  Eigen::MatrixXd x(2, 3);
  x << 1, 0, 0, 2, 0, 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto factors = cur_sample(x, 1, 1, 1, seed);
    CHECK(factors.col_indices == std::vector<Eigen::Index>{0});
  }
}

TEST_CASE("cur_sample is deterministic per seed") {
  Rng rng(73);
  const auto x = random_matrix(rng, 10, 7);
  const auto a = cur_sample(x, 3, 4, 4, 99);
  const auto b = cur_sample(x, 3, 4, 4, 99);
  CHECK(a.col_indices == b.col_indices);
  CHECK(a.row_indices == b.row_indices);
  CHECK(std::memcmp(a.U_mid.data(), b.U_mid.data(),
                    sizeof(double) * static_cast<std::size_t>(a.U_mid.size())) == 0);
  bool any_differs = false;
  for (std::uint64_t seed = 100; seed < 120 && !any_differs; ++seed) {
    const auto c = cur_sample(x, 3, 4, 4, seed);
    any_differs = c.col_indices != a.col_indices || c.row_indices != a.row_indices;
  }
  CHECK(any_differs);
}

TEST_CASE("sampling frequency tracks the leverage distribution") {
  const auto x = rank1_2x2();
  int hits = 0;
  const int draws = 2000;
  for (int seed = 0; seed < draws; ++seed) {
    const auto factors = cur_sample(x, 1, 1, 1, static_cast<std::uint64_t>(seed));
    if (factors.col_indices[0] == 1) ++hits;
  }
  const double freq = static_cast<double>(hits) / draws;
  CHECK(freq == doctest::Approx(0.8).epsilon(0.06));
}
