// Copyright 2026 The dasv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "dasv/datagen.h"
#include "dasv/errors.h"
#include "support/support.h"

namespace dasv {
namespace {

Table IntTable(std::string name, std::size_t rows, std::size_t columns = 1) {
  Table t;
  t.name = std::move(name);
  for (std::size_t c = 0; c < columns; ++c) {
    t.schema.push_back("c" + std::to_string(c));
    t.types.push_back(ValueType::kInteger);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    Row row;
    for (std::size_t c = 0; c < columns; ++c) {
      row.push_back(Value::Number(std::to_string(r * columns + c)));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

TEST(AssignOwnerCountsTest, UnequalOwnersFavourLargestTable) {
  Dataset d{{IntTable("a", 100), IntTable("b", 5000), IntTable("c", 40)}};
  AssignmentScenario s;
  s.owner_mode = OwnerMode::kUnequal;
  s.k = 10;
  EXPECT_EQ(AssignOwnerCounts(d, s), (std::vector<std::size_t>{2, 10, 2}));
}

TEST(AssignOwnerCountsTest, EqualOwnersWithKOne) {
  Dataset d{{IntTable("a", 100), IntTable("b", 500), IntTable("c", 3)}};
  AssignmentScenario s;
  s.k = 1;
  EXPECT_EQ(AssignOwnerCounts(d, s), (std::vector<std::size_t>{1, 1, 1}));
}

TEST(AssignOwnerCountsTest, SmallTableGetsOneOwner) {
  Dataset d{{IntTable("big", 400), IntTable("tiny", 5)}};
  AssignmentScenario s;
  s.k = 10;
  s.small_table_threshold = 100;
  EXPECT_EQ(AssignOwnerCounts(d, s), (std::vector<std::size_t>{10, 1}));
}

TEST(SampleCopyCountTest, SingleCopyCap) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(SampleCopyCount(4.0, 1, rng), 1u);
}

TEST(SampleCopyCountTest, TruncatedZipfFrequencies) {
  const double z = 1 + std::pow(2.0, -4) + std::pow(3.0, -4);
  const double expected[] = {1 / z, std::pow(2.0, -4) / z, std::pow(3.0, -4) / z};
  const TruncatedZipf zipf(4.0, 3);
  std::mt19937_64 rng(2);
  std::vector<double> freq(3, 0);
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) {
    const std::size_t c = zipf(rng);
    ASSERT_GE(c, 1u);
    ASSERT_LE(c, 3u);
    freq[c - 1] += 1.0 / draws;
  }
  for (int c = 0; c < 3; ++c) {
    EXPECT_NEAR(freq[c], expected[c], 0.01);
    EXPECT_NEAR(zipf.Probability(c + 1), expected[c], 1e-12);
  }
}

TEST(SampleCopyCountTest, LargeExponentAlmostAlwaysOne) {
  std::mt19937_64 rng(3);
  int ones = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ones += SampleCopyCount(50.0, 3, rng) == 1;
  EXPECT_GT(static_cast<double>(ones) / draws, 0.999);
}

TEST(AssignRecordsTest, SingleOwnerGetsEveryRow) {
  const Table t = IntTable("t", 50);
  std::mt19937_64 rng(4);
  const std::vector<std::size_t> copies(50, 3);
  const std::vector<OwnedTable> out =
      AssignRecords(t, OwnerId(7), 1, copies, AssignMode::kEqual, 3.0, rng);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].owner, OwnerId(7));
  EXPECT_EQ(out[0].rows, t.rows);
}

TEST(AssignRecordsTest, CopiesEqualToOwnersReachEveryone) {
  const Table t = IntTable("t", 20);
  std::mt19937_64 rng(5);
  const std::vector<std::size_t> copies(20, 5);
  const std::vector<OwnedTable> out =
      AssignRecords(t, OwnerId(0), 5, copies, AssignMode::kEqual, 3.0, rng);
  ASSERT_EQ(out.size(), 5u);
  for (const OwnedTable& o : out) EXPECT_EQ(o.rows.size(), 20u);
}

TEST(AssignRecordsTest, UnequalAssignmentFollowsRankWeights) {
  const std::size_t rows = 1000000;
  const Table t = IntTable("t", rows);
  std::mt19937_64 rng(6);
  const std::vector<std::size_t> copies(rows, 1);
  const std::vector<OwnedTable> out =
      AssignRecords(t, OwnerId(0), 5, copies, AssignMode::kUnequal, 3.0, rng);
  double z = 0;
  for (int r = 1; r <= 5; ++r) z += std::pow(r, -3.0);
  EXPECT_NEAR(static_cast<double>(out[0].rows.size()) / rows, 1 / z, 0.01);
  EXPECT_NEAR(static_cast<double>(out[1].rows.size()) / rows, std::pow(2, -3.0) / z,
              0.01);
}

TEST(AssignRecordsTest, EqualAssignmentIsUniform) {
  const std::size_t rows = 200000;
  const Table t = IntTable("t", rows);
  std::mt19937_64 rng(7);
  const std::vector<std::size_t> copies(rows, 2);
  const std::vector<OwnedTable> out =
      AssignRecords(t, OwnerId(0), 4, copies, AssignMode::kEqual, 3.0, rng);
  for (const OwnedTable& o : out) {
    EXPECT_NEAR(static_cast<double>(o.rows.size()) / rows, 0.5, 0.01);
  }
}

TEST(AssignmentScenarioTest, Validation) {
  AssignmentScenario s;
  EXPECT_NO_THROW(s.Validate());
  EXPECT_EQ(s.Label(), "EO-EA");
  s.k = 0;
  EXPECT_THROW(s.Validate(), ConfigError);
  s = AssignmentScenario{};
  s.alpha = 0;
  EXPECT_THROW(s.Validate(), ConfigError);
  s = AssignmentScenario{};
  s.beta = -1;
  EXPECT_THROW(s.Validate(), ConfigError);
  s = AssignmentScenario{};
  s.max_copies = 0;
  EXPECT_THROW(s.Validate(), ConfigError);
  EXPECT_EQ(ParseOwnerMode("uo"), OwnerMode::kUnequal);
  EXPECT_EQ(ParseAssignMode("UA"), AssignMode::kUnequal);
  EXPECT_THROW(ParseOwnerMode("XO"), ConfigError);
}

TEST(GenerateAssignmentTest, OwnerNamesAndIds) {
  Dataset d{{IntTable("country", 30), IntTable("city", 300)}};
  AssignmentScenario s;
  s.k = 3;
  const OwnerAssignment a = GenerateAssignment(d, s);
  ASSERT_EQ(a.owner_universe(), 4u);
  EXPECT_EQ(a.owners[0].name, "country.o0");
  EXPECT_EQ(a.owners[3].name, "city.o2");
  for (std::size_t i = 0; i < a.owners.size(); ++i) {
    EXPECT_EQ(a.owners[i].id, OwnerId(static_cast<std::uint32_t>(i)));
    EXPECT_EQ(a.tables[i].owner, a.owners[i].id);
    EXPECT_EQ(a.tables[i].table, a.owners[i].table);
  }
}

TEST(GenerateAssignmentTest, OwnerCapIsConfigError) {
  Dataset d{{IntTable("a", 300), IntTable("b", 300)}};
  AssignmentScenario s;
  s.k = 6;
  EXPECT_THROW(GenerateAssignment(d, s, 11), ConfigError);
  EXPECT_NO_THROW(GenerateAssignment(d, s, 12));
}

AssignmentScenario RandomScenario(std::mt19937_64& rng) {
  AssignmentScenario s;
  s.owner_mode = testing::Uniform(rng, 0, 1) ? OwnerMode::kEqual : OwnerMode::kUnequal;
  s.assign_mode = testing::Uniform(rng, 0, 1) ? AssignMode::kEqual : AssignMode::kUnequal;
  s.k = testing::Uniform(rng, 1, 8);
  s.max_copies = testing::Uniform(rng, 1, 5);
  s.alpha = 0.5 + static_cast<double>(testing::Uniform(rng, 0, 40)) / 10;
  s.beta = 0.5 + static_cast<double>(testing::Uniform(rng, 0, 40)) / 10;
  s.small_table_threshold = testing::Uniform(rng, 0, 60);
  s.seed = rng();
  return s;
}

Dataset RandomDataset(std::mt19937_64& rng) {
  Dataset d;
  const std::size_t tables = testing::Uniform(rng, 1, 3);
  for (std::size_t t = 0; t < tables; ++t) {
    d.tables.push_back(IntTable("t" + std::to_string(t), testing::Uniform(rng, 0, 80),
                                testing::Uniform(rng, 1, 2)));
  }
  return d;
}

TEST(DatagenProperty, CopyBoundAndNoDataLoss) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 600; ++i) {
    const Dataset d = RandomDataset(rng);
    const AssignmentScenario s = RandomScenario(rng);
    const OwnerAssignment a = GenerateAssignment(d, s);
    for (const Table& t : d.tables) {
      std::map<Row, std::size_t> holders;
      for (const OwnedTable& o : a.tables) {
        if (o.table != t.name) continue;
        ASSERT_EQ(o.schema, t.schema);
        std::set<Row> distinct(o.rows.begin(), o.rows.end());
        ASSERT_EQ(distinct.size(), o.rows.size()) << "owner holds a row twice";
        for (const Row& r : o.rows) ++holders[r];
      }
      const std::set<Row> original(t.rows.begin(), t.rows.end());
      ASSERT_EQ(holders.size(), original.size());
      for (const auto& [row, count] : holders) {
        ASSERT_TRUE(original.count(row));
        ASSERT_GE(count, 1u);
        ASSERT_LE(count, s.max_copies);
      }
    }
  }
}

TEST(DatagenProperty, DeterministicGivenSeed) {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 500; ++i) {
    const Dataset d = RandomDataset(rng);
    const AssignmentScenario s = RandomScenario(rng);
    const OwnerAssignment a = GenerateAssignment(d, s);
    const OwnerAssignment b = GenerateAssignment(d, s);
    ASSERT_EQ(a.tables.size(), b.tables.size());
    for (std::size_t o = 0; o < a.tables.size(); ++o) {
      ASSERT_EQ(a.tables[o].rows, b.tables[o].rows);
      ASSERT_EQ(a.owners[o].name, b.owners[o].name);
    }
  }
}

}  // namespace
}  // namespace dasv
