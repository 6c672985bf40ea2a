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
#include <random>

#include <gtest/gtest.h>

#include "dasv/baselines.h"
#include "dasv/errors.h"
#include "dasv/iusv.h"
#include "support/support.h"

namespace dasv {
namespace {

using P = CoalitionPlan;
using testing::Q;
using testing::ShareOf;
using testing::Syn;

Row Strings(std::initializer_list<const char*> values) {
  Row row;
  for (const char* v : values) row.push_back(Value::String(v));
  return row;
}

// u1 = (a,b); u2 = u3 = (b,c); plan R ⋈ S.
struct SharedJoin {
  CoalitionPlan plan{P::NaturalJoin(P::Scan("R"), P::Scan("S"))};
  std::vector<OwnedTable> tables{
      MakeOwnedTable(OwnerId(0), "R", {"A", "B"}, {Strings({"a", "b"})}),
      MakeOwnedTable(OwnerId(1), "S", {"B", "C"}, {Strings({"b", "c"})}),
      MakeOwnedTable(OwnerId(2), "S", {"B", "C"}, {Strings({"b", "c"})}),
  };
};

TEST(TradShapleyTest, SharedJoinInstance) {
  SharedJoin inst;
  UtilityEvaluator ev(inst.plan, inst.tables);
  const Allocation a = TradShapley(ev, OwnerSet::Full(3));
  EXPECT_EQ(a[OwnerId(0)], Utility(Q("2/3")));
  EXPECT_EQ(a[OwnerId(1)], Utility(Q("1/6")));
  EXPECT_EQ(a[OwnerId(2)], Utility(Q("1/6")));
}

TEST(TradShapleyTest, SingleOwnerGetsEverything) {
  const std::vector<OwnedTable> tables = {MakeOwnedTable(
      OwnerId(0), "R", {"A"}, {testing::IntRow({1}), testing::IntRow({2})})};
  UtilityEvaluator ev(P(P::Scan("R")), tables);
  EXPECT_EQ(TradShapley(ev, OwnerSet::Full(1))[OwnerId(0)], Utility(2));
}

TEST(TradShapleyTest, EqualsIusvOnSmallInstances) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 150; ++i) {
    const testing::MiniInstance inst = testing::RandomMiniInstance(rng, 6);
    const EngineOptions eo = testing::MiniEngineOptions(inst);
    UtilityEvaluator ev(inst.plan, inst.tables, inst.utility, eo);
    const Allocation trad = TradShapley(ev, OwnerSet::Full(inst.owners));
    const IusvResult iusv =
        IusvAll(EvaluatePlan(inst.plan, inst.tables, inst.utility, eo));
    ASSERT_EQ(trad, iusv.allocation) << "shape " << inst.shape;
  }
}

TEST(TradShapleyTest, RefusesAboveOwnerCap) {
  std::vector<OwnedTable> tables;
  for (std::uint32_t o = 0; o < 21; ++o) {
    tables.push_back(MakeOwnedTable(OwnerId(o), "R", {"A"}, {testing::IntRow({1})}));
  }
  UtilityEvaluator ev(P(P::Scan("R")), tables);
  EXPECT_THROW(TradShapley(ev, OwnerSet::Full(21)), CostError);
  TradOptions small;
  small.owner_cap = 3;
  SharedJoin inst;
  UtilityEvaluator ev3(inst.plan, inst.tables);
  EXPECT_NO_THROW(TradShapley(ev3, OwnerSet::Full(3), small));
  small.owner_cap = 2;
  EXPECT_THROW(TradShapley(ev3, OwnerSet::Full(3), small), CostError);
}

TEST(TradShapleyTest, ParallelMatchesSerial) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 30; ++i) {
    const testing::MiniInstance inst = testing::RandomMiniInstance(rng, 8);
    UtilityEvaluator ev(inst.plan, inst.tables, inst.utility,
                        testing::MiniEngineOptions(inst));
    TradOptions serial;
    serial.parallel = false;
    ASSERT_EQ(TradShapley(ev, OwnerSet::Full(inst.owners)),
              TradShapley(ev, OwnerSet::Full(inst.owners), serial));
  }
}

TEST(PermShapleyTest, SingleOwnerIsExact) {
  const std::vector<OwnedTable> tables = {
      MakeOwnedTable(OwnerId(0), "R", {"A"}, {testing::IntRow({1})})};
  UtilityEvaluator ev(P(P::Scan("R")), tables);
  for (std::size_t samples : {1u, 7u}) {
    PermOptions o;
    o.samples = samples;
    EXPECT_EQ(PermShapley(ev, OwnerSet::Full(1), o)[OwnerId(0)], Utility(1));
  }
}

TEST(PermShapleyTest, ExhaustiveWalkEqualsTrad) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 60; ++i) {
    const testing::MiniInstance inst = testing::RandomMiniInstance(rng, 6);
    UtilityEvaluator ev(inst.plan, inst.tables, inst.utility,
                        testing::MiniEngineOptions(inst));
    const OwnerSet all = OwnerSet::Full(inst.owners);
    ASSERT_EQ(PermShapleyExhaustive(ev, all), TradShapley(ev, all));
  }
}

TEST(PermShapleyTest, ManySamplesConcentrate) {
  SharedJoin inst;
  UtilityEvaluator ev(inst.plan, inst.tables);
  PermOptions o;
  o.samples = 10000;
  o.seed = 2024;
  const Allocation a = PermShapley(ev, OwnerSet::Full(3), o);
  EXPECT_NEAR(a[OwnerId(0)].ToDouble(), 2.0 / 3, 0.05);
  EXPECT_NEAR(a[OwnerId(1)].ToDouble(), 1.0 / 6, 0.05);
  EXPECT_NEAR(a[OwnerId(2)].ToDouble(), 1.0 / 6, 0.05);
  EXPECT_EQ(a.Total(), Utility(1));
}

TEST(PermShapleyTest, DeterministicGivenSeed) {
  std::mt19937_64 rng(54);
  const testing::MiniInstance inst = testing::RandomMiniInstance(rng, 8);
  UtilityEvaluator ev(inst.plan, inst.tables, inst.utility,
                      testing::MiniEngineOptions(inst));
  PermOptions o;
  o.samples = 40;
  o.seed = 9;
  const Allocation a = PermShapley(ev, OwnerSet::Full(inst.owners), o);
  PermOptions serial = o;
  serial.parallel = false;
  EXPECT_EQ(a, PermShapley(ev, OwnerSet::Full(inst.owners), serial));
  EXPECT_EQ(a, PermShapley(ev, OwnerSet::Full(inst.owners), o));
  EXPECT_EQ(kPermutationPrng, "mt19937_64");
}

TEST(PermShapleyTest, ZeroSamplesIsUsageError) {
  SharedJoin inst;
  UtilityEvaluator ev(inst.plan, inst.tables);
  PermOptions o;
  o.samples = 0;
  EXPECT_THROW(PermShapley(ev, OwnerSet::Full(3), o), UsageError);
}

TEST(BruteForceOracleTest, Examples) {
  TupleAllocation a = BruteForceTupleOracle(Syn(3, {{0, 1}, {0, 2}}), Utility(1));
  EXPECT_EQ(ShareOf(a, 0), Q("2/3"));
  EXPECT_EQ(ShareOf(a, 1), Q("1/6"));
  EXPECT_EQ(ShareOf(a, 2), Q("1/6"));

  a = BruteForceTupleOracle(Syn(1, {{0}}), Utility(Q("5/2")));
  EXPECT_EQ(ShareOf(a, 0), Q("5/2"));

  a = BruteForceTupleOracle(Syn(3, {{0, 1}, {2}}), Utility(1));
  EXPECT_EQ(ShareOf(a, 2), Q("2/3"));
  EXPECT_EQ(ShareOf(a, 0), Q("1/6"));
  EXPECT_EQ(ShareOf(a, 1), Q("1/6"));
}

TEST(BruteForceOracleTest, RefusesAboveCap) {
  std::vector<std::vector<std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < 22; i += 2) pairs.push_back({i, i + 1});
  EXPECT_THROW(BruteForceTupleOracle(Syn(22, pairs), Utility(1)), CostError);
}

TEST(UtilityEvaluatorTest, EmptyCoalitionAndMemo) {
  SharedJoin inst;
  UtilityEvaluator ev(inst.plan, inst.tables);
  EXPECT_EQ(ev.Evaluate(OwnerSet(3)), Utility(0));
  EXPECT_EQ(ev.Evaluate(testing::Set(3, {0, 1})), Utility(1));
  const std::uint64_t before = ev.executions();
  EXPECT_EQ(ev.Evaluate(testing::Set(3, {0, 1})), Utility(1));
  EXPECT_EQ(ev.executions(), before);
  EXPECT_EQ(ev.EvaluateUncached(testing::Set(3, {1, 2})), Utility(0));
}

TEST(BaselinesProperty, EvaluatorMonotoneAndTradBalanced) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 500; ++i) {
    const testing::MiniInstance inst = testing::RandomMiniInstance(rng, 7);
    UtilityEvaluator ev(inst.plan, inst.tables, inst.utility,
                        testing::MiniEngineOptions(inst));
    const OwnerSet small = testing::RandomOwnerSet(rng, inst.owners);
    const OwnerSet large = small | testing::RandomOwnerSet(rng, inst.owners);
    ASSERT_LE(ev.Evaluate(small), ev.Evaluate(large));
    if (i % 5 == 0) {
      const OwnerSet all = OwnerSet::Full(inst.owners);
      ASSERT_EQ(TradShapley(ev, all).Total(), ev.Evaluate(all));
    }
  }
}

}  // namespace
}  // namespace dasv
