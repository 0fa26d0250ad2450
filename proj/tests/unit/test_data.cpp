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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "simpor/data.hpp"

namespace simpor {
namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

TEST(Dataset, ValidatesInput) {
  EXPECT_THROW(Dataset(Matrix::Zero(2, 1), {0}, {"a"}), DataError);
  EXPECT_THROW(Dataset(Matrix::Zero(1, 1), {2}, {"a", "b"}), DataError);
  Matrix bad(1, 1);
  bad << std::nan("");
  EXPECT_THROW(Dataset(bad, {0}, {"a"}), DataError);
}

TEST(Dataset, CanonicalizeSwapsMajority) {
  Matrix x(3, 1);
  x << 1, 2, 3;
  const auto ds = canonicalize_binary(Dataset(x, {0, 1, 1}, {"p", "q"}));
  EXPECT_EQ(ds.class_names()[kMajority], "q");
  EXPECT_EQ(ds.count(kMajority), 2u);
  EXPECT_EQ(ds.labels(), (std::vector<int>{1, 0, 0}));
  EXPECT_DOUBLE_EQ(imbalance_ratio(ds), 2.0);
}

TEST(Csv, RoundTrip) {
  Matrix x(3, 2);
  x << 0.1, 1e-300, -2.5, 1.0 / 3.0, 7, 8;
  Dataset ds(x, {0, 1, 0}, {"neg", "pos"}, {"f1", "f2"});
  const auto path = std::filesystem::temp_directory_path() / "simpor_rt.csv";
  save_csv(path, ds);
  const auto back = load_csv(path, {.label_column = "label"});
  EXPECT_EQ(back.dataset.features(), ds.features());
  EXPECT_EQ(back.dataset.class_names(), ds.class_names());
  EXPECT_EQ(back.dataset.labels(), ds.labels());
  EXPECT_EQ(to_csv(back.dataset), to_csv(ds));
}

TEST(Csv, DropsBadRowsAndOrdersNumericLabels) {
  const auto path = write_temp("simpor_bad.csv",
                               "a,b,cls\n1,2,10\nx,3,2\n4,,2\n5,6,2\n7,8,\n9,nan,10\n");
  const auto r = load_csv(path, {.label_column = "cls"});
  EXPECT_EQ(r.rows_read, 6u);
  EXPECT_EQ(r.rows_dropped, 4u);
  EXPECT_EQ(r.dataset.size(), 2u);
  EXPECT_EQ(r.dataset.class_names(), (std::vector<std::string>{"2", "10"}));
}

TEST(Csv, Errors) {
  EXPECT_THROW(load_csv("/nonexistent/file.csv"), DataError);
  EXPECT_THROW(load_csv(write_temp("simpor_empty.csv", "")), DataError);
  EXPECT_THROW(load_csv(write_temp("simpor_cols.csv", "a,b\n1,2,3\n")), DataError);
  EXPECT_THROW(load_csv(write_temp("simpor_lab.csv", "a,b\n1,2\n"), {.label_column = "z"}), DataError);
}

TEST(Csv, IgnoresColumns) {
  const auto r = load_csv(write_temp("simpor_ign.csv", "a,label,synthetic\n1,x,0\n2,y,1\n"),
                          {.label_column = "label", .ignore_columns = {"synthetic"}});
  EXPECT_EQ(r.dataset.dim(), 1u);
}

TEST(MinMax, FitsTrainAndHandlesConstant) {
  Matrix x(3, 2);
  x << 0, 5, 2, 5, 4, 5;
  const auto n = min_max_normalize(Dataset(x, {0, 0, 1}, {"a", "b"}));
  EXPECT_DOUBLE_EQ(n.dataset.features()(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(n.dataset.features()(2, 1), 0.0);
  Vector v(2);
  v << 8, 6;
  EXPECT_DOUBLE_EQ(n.transform.apply(v)[0], 2.0);
  const auto back = MinMaxTransform::from_json(n.transform.to_json());
  EXPECT_EQ(back.min, n.transform.min);
  EXPECT_EQ(back.max, n.transform.max);
}

TEST(Split, StratifiedAndDisjoint) {
  Matrix x = Matrix::Random(100, 2);
  std::vector<int> y(100, 0);
  for (int i = 0; i < 13; ++i) y[static_cast<std::size_t>(i * 7)] = 1;
  Dataset ds(x, y, {"a", "b"});
  const auto s = stratified_split(ds, 0.2, 3);
  EXPECT_EQ(s.test.count(1), 3u);
  EXPECT_EQ(s.test.count(0), 17u);
  EXPECT_EQ(s.train.size() + s.test.size(), 100u);
  std::vector<std::size_t> all = s.train_indices;
  all.insert(all.end(), s.test_indices.begin(), s.test_indices.end());
  std::sort(all.begin(), all.end());
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
  const auto again = stratified_split(ds, 0.2, 3);
  EXPECT_EQ(again.test_indices, s.test_indices);
}

TEST(Moon, CountsAndRange) {
  const auto ds = make_moon(3000, 7, 0.1, 1);
  EXPECT_EQ(ds.size(), 1715u);
  EXPECT_EQ(ds.count(kMajority), 1500u);
  EXPECT_EQ(ds.count(kMinority), 215u);
  EXPECT_DOUBLE_EQ(ds.features().minCoeff(), 0.0);
  EXPECT_DOUBLE_EQ(ds.features().maxCoeff(), 1.0);
  EXPECT_EQ(to_csv(make_moon(3000, 7, 0.1, 1)), to_csv(ds));
  EXPECT_THROW(make_moon(3, 7, 0.1, 1), ConfigError);
}

TEST(Balanced, SyntheticColumn) {
  Matrix x(2, 1);
  x << 0, 1;
  Dataset ds(x, {0, 1}, {"a", "b"});
  Matrix s(1, 1);
  s << 0.5;
  const auto b = append_synthetic(ds, s, 1, {1});
  EXPECT_EQ(b.n_synthetic(), 1u);
  EXPECT_EQ(b.to_csv(), "x0,label,synthetic\n0,a,0\n1,b,0\n0.5,b,1\n");
}

}  // namespace
}  // namespace simpor
