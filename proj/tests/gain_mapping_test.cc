/*
 * Copyright 2026 The gradeval Authors.
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

#include "gradeval/gain_mapping.h"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gradeval/errors.h"
#include "gtest/gtest.h"

namespace gradeval {
namespace {

using ::testing::ElementsAre;

TEST(GainSchemeTest, Linear) {
  EXPECT_THAT(GainScheme::Linear(2).gains(), ElementsAre(0, 1, 2));
  EXPECT_THAT(GainScheme::Linear(1).gains(), ElementsAre(0, 1));
  const GainScheme nine = GainScheme::Linear(9);
  for (int x = 0; x <= 9; ++x) EXPECT_EQ(nine.gain(x), x);
}

TEST(GainSchemeTest, Quadratic) {
  EXPECT_THAT(GainScheme::Quadratic(2).gains(), ElementsAre(0, 1, 3));
  EXPECT_THAT(GainScheme::Quadratic(1).gains(), ElementsAre(0, 1));
  EXPECT_THAT(GainScheme::Quadratic(4).gains(), ElementsAre(0, 1, 3, 7, 15));
}

TEST(GainSchemeTest, TableValidation) {
  EXPECT_THROW(GainScheme::FromTable("t", {1, 2}), ValidationError);
  EXPECT_THROW(GainScheme::FromTable("t", {0, 2, 1}), ValidationError);
  EXPECT_THROW(GainScheme::FromTable("t", {}), ValidationError);
  EXPECT_NO_THROW(GainScheme::FromTable("t", {0, 0, 1}));
  EXPECT_THROW(GainScheme::Linear(2).gain(3), ValidationError);
}

TEST(GainSchemeTest, ParseSpec) {
  EXPECT_THAT(ParseGainScheme("quadratic", 2).gains(), ElementsAre(0, 1, 3));
  EXPECT_THAT(ParseGainScheme("linear", 2).gains(), ElementsAre(0, 1, 2));
  EXPECT_THAT(ParseGainScheme("0:0,1:1.5,2:4", 2).gains(),
              ElementsAre(0, 1.5, 4));
  EXPECT_THROW(ParseGainScheme("cubic", 2), ValidationError);
  EXPECT_THROW(ParseGainScheme("0:0,2:1", 2), ValidationError);
}

TEST(AggregateSumTest, LabelPatterns) {
  const LabelWeights w = ParseLabelWeights("A:2,B:1,C:0");
  const std::vector<std::string> aaaa = {"A", "A", "A", "A"};
  const std::vector<std::string> aaab = {"A", "A", "A", "B"};
  const std::vector<std::string> cccc = {"C", "C", "C", "C"};
  EXPECT_EQ(AggregateSum(aaaa, w), 8);
  EXPECT_EQ(AggregateSum(aaab, w), 7);
  EXPECT_EQ(AggregateSum(cccc, w), 0);
  const std::vector<std::string> unknown = {"A", "Z"};
  EXPECT_THROW(AggregateSum(unknown, w), ValidationError);
}

TEST(AggregateAverageTest, Examples) {
  const std::vector<double> third = {1.0, 2.0 / 3.0, 1.0 / 3.0};
  EXPECT_EQ(AggregateAverage(third), 2.0 / 3.0);
  const std::vector<double> taskmine = {3, 2};
  EXPECT_EQ(AggregateAverage(taskmine), 2.5);
  const std::vector<double> zeros = {0, 0, 0, 0};
  EXPECT_EQ(AggregateAverage(zeros), 0.0);
}

TEST(AggregateMajorityTest, StrictMajorityWithFallback) {
  EXPECT_EQ(AggregateMajority(std::vector<int>{2, 2, 1}), 2);
  EXPECT_EQ(AggregateMajority(std::vector<int>{2, 1, 0}), 0);
  EXPECT_EQ(AggregateMajority(std::vector<int>{1, 1, 1}), 1);
  EXPECT_EQ(AggregateMajority(std::vector<int>{2, 2, 1, 1}), 0);
  EXPECT_EQ(AggregateMajority(std::vector<int>{2, 2, 1, 1}, 1), 1);
}

TEST(UnanimityTest, WorkedNumbers) {
  const std::vector<double> mixed = {2, 1, 1};
  const std::vector<double> split = {2, 2, 0};
  EXPECT_EQ(UnanimityUpgradeFromScores(mixed, 0.2, 2.0), 4.6);
  EXPECT_EQ(UnanimityUpgradeFromScores(split, 0.2, 2.0), 4.0);
  EXPECT_EQ(UnanimityUpgrade(4.0, 1.0, {0.2, 3, 2.0}), 4.6);
}

TEST(UnanimityTest, DisabledAndInvalid) {
  for (double d : {0.0, 0.5, 2.0}) {
    EXPECT_EQ(UnanimityUpgrade(5.0, d, {0.0, 3, 2.0}), 5.0);
  }
  EXPECT_THROW(UnanimityUpgrade(4.0, 3.0, {0.2, 3, 2.0}), ValidationError);
  EXPECT_THROW(UnanimityUpgrade(4.0, 1.0, {-0.1, 3, 2.0}), ValidationError);
}

// The upgrade is affine in p for fixed (gv, D).
TEST(UnanimityTest, LinearInStrength) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double gv = 10 * u(rng), dmax = 1 + 3 * u(rng), d = dmax * u(rng);
    const double p = u(rng);
    const double base = UnanimityUpgrade(gv, d, {0.0, 3, dmax});
    const double unit = UnanimityUpgrade(gv, d, {1.0, 3, dmax}) - base;
    EXPECT_NEAR(UnanimityUpgrade(gv, d, {p, 3, dmax}), base + p * unit, 1e-12);
  }
}

// Sum and average ignore assessor order.
TEST(AggregationProperty, PermutationInvariant) {
  const LabelWeights w = ParseLabelWeights("A:2,B:1,C:0");
  std::mt19937_64 rng(3);
  const std::vector<std::string> alphabet = {"A", "B", "C"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> labels(1 + trial % 6);
    for (auto& l : labels) l = alphabet[rng() % 3];
    const int sum = AggregateSum(labels, w);
    const double avg = AggregateAverage(labels, w);
    std::vector<int> levels;
    for (const auto& l : labels) levels.push_back(static_cast<int>(w.at(l)));
    const int majority = AggregateMajority(levels);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(labels.begin(), labels.end(), rng);
      std::shuffle(levels.begin(), levels.end(), rng);
      ASSERT_EQ(AggregateSum(labels, w), sum);
      ASSERT_DOUBLE_EQ(AggregateAverage(labels, w), avg);
      ASSERT_EQ(AggregateMajority(levels), majority);
    }
  }
}

TEST(AssessorLabelsTest, ParseAndArity) {
  std::istringstream ok("t1 d1 A A B\nt1 d2 C C C");
  AssessorLabels labels = ParseAssessorLabels(ok);
  EXPECT_THAT(labels.topics().at("t1").at("d1"), ElementsAre("A", "A", "B"));
  std::istringstream bad("t1 d1 A A B\nt1 d2 C C");
  EXPECT_THROW(ParseAssessorLabels(bad), ValidationError);
}

TEST(ScoringRulesTest, Gates) {
  EXPECT_EQ(ScoreFluentCoherentSubstantial(true, true, true, true), 2);
  EXPECT_EQ(ScoreFluentCoherentSubstantial(true, true, false, true), 1);
  EXPECT_EQ(ScoreFluentCoherentSubstantial(false, true, true, true), 0);
  EXPECT_EQ(ScoreContextInformativeScheme1(true, true, 2, 2), 2);
  EXPECT_EQ(ScoreContextInformativeScheme1(true, true, 0, 1), 1);
  EXPECT_EQ(ScoreContextInformativeScheme2(true, true, 0, 1), 0);
  EXPECT_EQ(ScoreContextInformativeScheme2(true, true, 1, 1), 1);
  EXPECT_EQ(ScoreEmotionConsistency(true, true, false), 1);
  EXPECT_EQ(ScoreEmotionConsistency(true, false, true), 0);
}

TEST(DedupTest, FirstOccurrenceKeepsGain) {
  TopicClasses classes;
  classes.class_of = {{"d1", "c"}, {"d5", "c"}};
  const std::vector<std::string> fwd = {"d1", "d5"};
  std::vector<DocGain> gains = {{2, 2, true}, {1, 1, true}};
  DedupEquivalence(fwd, classes, gains);
  EXPECT_EQ(gains[0].gain, 2);
  EXPECT_EQ(gains[1].gain, 0);
  EXPECT_FALSE(gains[1].relevant);

  const std::vector<std::string> rev = {"d5", "d1"};
  gains = {{1, 1, true}, {2, 2, true}};
  DedupEquivalence(rev, classes, gains);
  EXPECT_EQ(gains[0].gain, 1);
  EXPECT_EQ(gains[1].gain, 0);

  gains = {{1, 1, true}, {2, 2, true}};
  DedupEquivalence(rev, TopicClasses{}, gains);
  EXPECT_EQ(gains[1].gain, 2);
}

TEST(DedupTest, Idempotent) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 12;
    std::vector<std::string> ranking;
    std::vector<DocGain> gains;
    TopicClasses classes;
    for (int i = 0; i < n; ++i) {
      ranking.push_back("d" + std::to_string(i));
      const double g = static_cast<double>(rng() % 4);
      gains.push_back({g, g, g > 0});
      if (rng() % 2) classes.class_of[ranking.back()] = "c" + std::to_string(rng() % 3);
    }
    DedupEquivalence(ranking, classes, gains);
    std::vector<DocGain> again = gains;
    DedupEquivalence(ranking, classes, again);
    for (int i = 0; i < n; ++i) {
      ASSERT_EQ(again[i].gain, gains[i].gain);
      ASSERT_EQ(again[i].relevant, gains[i].relevant);
    }
  }
}

}  // namespace
}  // namespace gradeval
