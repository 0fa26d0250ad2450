/*
 * Copyright 2026 The simpor Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include "simpor/reduce.hpp"
#include "oracles.hpp"

namespace simpor::reduce {
namespace {

Dataset labeled(const Matrix& x) {
  std::vector<int> y(static_cast<std::size_t>(x.rows()));
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = i % 3 == 0 ? 1 : 0;
  return Dataset(x, y, {"a", "b"});
}

TEST(Jacobi, MatchesPowerIteration) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = testing_oracle::random_matrix(80, 5, rng) *
                     Eigen::VectorXd::LinSpaced(5, 3.0, 0.5).asDiagonal();
    const Matrix c = (x.rowwise() - x.colwise().mean()).transpose() * (x.rowwise() - x.colwise().mean()) / 79.0;
    const auto eig = symmetric_eigen(c);
    const auto ref = testing_oracle::power_eigenvectors(c, 2);
    for (std::size_t k = 0; k < 2; ++k) {
      const Vector got = eig.vectors.col(static_cast<Eigen::Index>(k));
      const double err = std::min((got - ref[k]).norm(), (got + ref[k]).norm());
      EXPECT_LT(err, 1e-8);
    }
    const auto p = pca_project(labeled(x), 2);
    for (std::size_t k = 0; k < 2; ++k) {
      const Vector axis = p.axes.row(static_cast<Eigen::Index>(k)).transpose();
      EXPECT_LT(std::min((axis - ref[k]).norm(), (axis + ref[k]).norm()), 1e-8);
    }
  }
}

TEST(Pca, LineIn3dIsRankOne) {
  Matrix x(10, 3);
  for (int i = 0; i < 10; ++i) x.row(i) << i, 2.0 * i + 1, -i;
  const auto p = pca_project(labeled(x), 1);
  EXPECT_NEAR(p.explained_variance[0] / p.total_variance, 1.0, 1e-9);
  EXPECT_GT(p.axes(0, 0), 0.0);
}

TEST(Pca, ReconstructsPlanarData) {
  Rng rng(4);
  const Matrix coeff = testing_oracle::random_matrix(30, 2, rng);
  const Matrix basis = testing_oracle::random_matrix(2, 4, rng);
  const Matrix x = coeff * basis;
  const auto p = pca_project(labeled(x), 2);
  const Matrix back = (p.projected * p.axes).rowwise() + p.mean.transpose();
  EXPECT_LT((back - x).norm(), 1e-9);
}

TEST(Pca, TranslationAndRotationInvariance) {
  Rng rng(6);
  const Matrix x = testing_oracle::random_matrix(40, 3, rng) * Eigen::Vector3d(3, 1, 0.2).asDiagonal();
  const auto base = pca_project(labeled(x), 2);
  const Matrix shifted = x.rowwise() + Eigen::RowVector3d(5, -2, 7);
  const auto s = pca_project(labeled(shifted), 2);
  EXPECT_LT((s.axes - base.axes).norm(), 1e-9);
  const Eigen::Matrix3d q = Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
  const auto r = pca_project(labeled(x * q), 2);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(r.explained_variance[k], base.explained_variance[k], 1e-9);
  for (Eigen::Index k = 0; k < 2; ++k) {
    const Vector want = q.transpose() * base.axes.row(k).transpose();
    const Vector got = r.axes.row(k).transpose();
    EXPECT_LT(std::min((got - want).norm(), (got + want).norm()), 1e-8);
  }
}

TEST(Pca, Errors) {
  EXPECT_THROW(pca_project(labeled(Matrix::Ones(5, 2)), 1), DataError);
  EXPECT_THROW(pca_project(labeled(Matrix::Random(5, 1)), 2), DataError);
}

TEST(Hdr, Disjoint) {
  const std::vector<double> x{0, 0.1, 0.2, 0.8, 0.9, 1.0};
  const std::vector<int> y{0, 0, 0, 1, 1, 1};
  EXPECT_DOUBLE_EQ(hdr(x, y, 1).hdr_percent, 0.0);
}

TEST(Hdr, IdenticalDistributions) {
  std::vector<double> x;
  std::vector<int> y;
  for (int i = 0; i < 50; ++i) {
    x.push_back(i / 49.0);
    y.push_back(0);
    x.push_back(i / 49.0);
    y.push_back(1);
  }
  EXPECT_DOUBLE_EQ(hdr(x, y, 1).hdr_percent, 100.0);
}

TEST(Hdr, CraftedFortyPoints) {
  // 20 bins of width 1 over [0, 20]. Majority: 27 points in bins 0..8.
  // Minority: 12 points, with bin 8 holding 2 minority vs 3 majority and
  // bin 7 holding 1 minority vs 3 majority; the rest sit in bins 12..19. One
  // extra majority point at 0 pins the range.
  std::vector<double> x;
  std::vector<int> y;
  for (int b = 0; b < 9; ++b)
    for (int k = 0; k < 3; ++k) {
      x.push_back(b + 0.2 + 0.2 * k);
      y.push_back(0);
    }
  for (double v : {8.5, 8.9, 7.5}) {
    x.push_back(v);
    y.push_back(1);
  }
  for (int k = 0; k < 8; ++k) {
    x.push_back(12.3 + 0.8 * k);
    y.push_back(1);
  }
  x.push_back(0.0);
  y.push_back(0);
  x.push_back(20.0);
  y.push_back(1);
  ASSERT_EQ(x.size(), 40u);
  const auto r = hdr(x, y, 1);
  EXPECT_EQ(r.intersection, 3u);
  EXPECT_EQ(r.minority_total, 12u);
  EXPECT_DOUBLE_EQ(r.hdr_percent, 300.0 / 12.0);
  std::size_t a = 0, b = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    a += r.majority_counts[i];
    b += r.minority_counts[i];
  }
  EXPECT_EQ(a, 28u);
  EXPECT_EQ(b, 12u);
}

TEST(Hdr, AffineInvariantAndZeroRange) {
  Rng rng(9);
  std::vector<double> x, z;
  std::vector<int> y;
  for (int i = 0; i < 200; ++i) {
    x.push_back(uniform01(rng));
    y.push_back(i % 4 == 0);
    z.push_back(3.0 * x.back() - 4.0);
  }
  EXPECT_DOUBLE_EQ(hdr(x, y, 1).hdr_percent, hdr(z, y, 1).hdr_percent);
  const std::vector<double> same(6, 2.0);
  const std::vector<int> lab{0, 0, 0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(hdr(same, lab, 1).hdr_percent, 100.0);
  EXPECT_THROW(hdr(same, std::vector<int>(6, 0), 1), DataError);
}

}  // namespace
}  // namespace simpor::reduce
