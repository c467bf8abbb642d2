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

// Gain construction: relevance level -> gain tables, and the procedures
// that turn several assessors' labels into one level or gain.

#ifndef GRADEVAL_GAIN_MAPPING_H_
#define GRADEVAL_GAIN_MAPPING_H_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gradeval/corpus_io.h"

namespace gradeval {

// Maps relevance level x to gain gv_x. Always gv_0 = 0 and gains are
// non-negative and non-decreasing in level.
class GainScheme {
 public:
  // gv_x = x.
  static GainScheme Linear(int max_level);
  // gv_x = 2^x - 1.
  static GainScheme Quadratic(int max_level);
  // gains[x] = gv_x. Throws ValidationError on any invariant violation.
  static GainScheme FromTable(std::string name, std::vector<double> gains);

  // Throws ValidationError for a level outside [0, max_level()].
  double gain(int level) const;
  int max_level() const { return static_cast<int>(gains_.size()) - 1; }
  const std::string& name() const { return name_; }
  const std::vector<double>& gains() const { return gains_; }

 private:
  GainScheme(std::string name, std::vector<double> gains)
      : name_(std::move(name)), gains_(std::move(gains)) {}

  std::string name_;
  std::vector<double> gains_;
};

// Parses a scheme spec: "linear", "quadratic", or an explicit
// "level:gain,level:gain,..." list covering every level 0..max. Presets
// are sized to `max_level` (at least 1).
GainScheme ParseGainScheme(std::string_view spec, int max_level);

// What a measure needs to know about one judged document.
struct DocGain {
  double gain = 0.0;
  // Relevance grade: the integer level, or the real-valued aggregate when
  // gains come straight from averaged assessor scores. Drives ERR and the
  // "most relevant" test of P+.
  double grade = 0.0;
  bool relevant = false;
};

using DocGainTable = std::map<std::string, DocGain, std::less<>>;

// Judged documents under a scheme; relevance means level > 0.
DocGainTable GainsFromLevels(const DocLevels& levels, const GainScheme& scheme);

// Real-valued gains used verbatim (e.g. assessor averages); a document is
// relevant when its gain is positive.
DocGainTable GainsFromValues(
    const std::map<std::string, double, std::less<>>& gains);

// ---------------------------------------------------------------------------
// Multi-assessor aggregation

using LabelWeights = std::map<std::string, double, std::less<>>;

// Raw per-assessor labels keyed by (topic, document). Every item of one
// topic carries the same number of labels.
class AssessorLabels {
 public:
  void Add(std::string_view topic, std::string doc,
           std::vector<std::string> labels, std::size_t line = 0);

  const std::map<std::string,
                 std::map<std::string, std::vector<std::string>, std::less<>>,
                 std::less<>>&
  topics() const {
    return topics_;
  }

 private:
  std::map<std::string,
           std::map<std::string, std::vector<std::string>, std::less<>>,
           std::less<>>
      topics_;
};

// Lines: "topic doc label label ...".
AssessorLabels ParseAssessorLabels(std::istream& in);
AssessorLabels LoadAssessorLabels(const std::filesystem::path& path);

// "A:2,B:1,C:0".
LabelWeights ParseLabelWeights(std::string_view spec);

// Converts raw labels to per-assessor scores. Without weights every label
// must itself be a number. Throws ValidationError for an unknown label.
std::vector<double> LabelScores(std::span<const std::string> labels,
                                const LabelWeights& weights);

// Sum of per-assessor points, as a relevance level (AAAB -> 7 with A=2,
// B=1). Throws ValidationError if a label has no weight or the sum is not
// a non-negative integer.
int AggregateSum(std::span<const std::string> labels,
                 const LabelWeights& weights);

// Arithmetic mean of per-assessor scores.
double AggregateAverage(std::span<const double> scores);
double AggregateAverage(std::span<const std::string> labels,
                        const LabelWeights& weights);

// Strict-majority level; `fallback` when no level has more than half of
// the votes (all labels distinct, or an even split).
int AggregateMajority(std::span<const int> levels, int fallback = 0);

struct UnanimityParams {
  double strength = 0.2;   // p
  int assessors = 1;       // N
  double max_score = 2.0;  // D_max
};

// ugv = gv + p * N * (D_max - D), where D is the spread between the highest
// and lowest assessor score. Throws ValidationError unless
// 0 <= D <= D_max and p >= 0.
double UnanimityUpgrade(double gain, double spread,
                        const UnanimityParams& params);

// Raw gain is the score sum; spread and N are read off the scores.
double UnanimityUpgradeFromScores(std::span<const double> scores,
                                  double strength, double max_score);

// Per-assessor scoring rules from short-text-conversation style tasks.
// Each maps binary/ternary criteria to an assessor score in {0,1,2}.
int ScoreFluentCoherentSubstantial(bool fluent, bool coherent,
                                   bool self_sufficient, bool substantial);
int ScoreContextInformativeScheme1(bool fluent, bool coherent,
                                   int context_dependent, int informative);
int ScoreContextInformativeScheme2(bool fluent, bool coherent,
                                   int context_dependent, int informative);
int ScoreEmotionConsistency(bool fluent, bool coherent,
                            bool emotion_consistent);

// ---------------------------------------------------------------------------
// Equivalence classes

// Within each class only the highest-ranked member keeps its gain; later
// members become nonrelevant with zero gain. `per_rank[r]` belongs to
// `ranking[r]`. Idempotent.
void DedupEquivalence(std::span<const std::string> ranking,
                      const TopicClasses& classes, std::span<DocGain> per_rank);

}  // namespace gradeval

#endif  // GRADEVAL_GAIN_MAPPING_H_
