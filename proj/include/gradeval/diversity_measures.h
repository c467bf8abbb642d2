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

// Measures for diversified rankings over a topic with several intents.
//
// A document's global gain is the intent-probability-weighted sum of its
// intentwise gains; D-measures score the ranking with global gains against
// a single global ideal list. The variants here change how the ranking's
// global gains are computed (navigational redundancy, vertical weighting)
// while keeping the same ideal list.

#ifndef GRADEVAL_DIVERSITY_MEASURES_H_
#define GRADEVAL_DIVERSITY_MEASURES_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gradeval/adhoc_measures.h"
#include "gradeval/corpus_io.h"
#include "gradeval/gain_mapping.h"

namespace gradeval {

struct GlobalGainList {
  std::vector<std::string> docs;
  std::vector<std::string> intent_ids;
  // [rank][intent]: intentwise gain g_i(r) and whether the item counts as
  // relevant to the intent.
  std::vector<std::vector<double>> intent_gain;
  std::vector<std::vector<char>> covers;
  std::vector<double> global_gain;  // GG(r)

  std::vector<std::string> ideal_docs;
  std::vector<double> ideal_global_gain;  // GG*(r), descending

  std::size_t size() const { return docs.size(); }
  std::size_t num_intents() const { return intent_ids.size(); }
};

// Plain global gains. Throws ValidationError when the qrels judge an
// intent that has no probability in `intents`.
GlobalGainList BuildGlobalGainList(std::span<const std::string> ranking,
                                   const TopicQrels& qrels,
                                   const TopicIntents& intents,
                                   const GainScheme& scheme);

// Global gains where a navigational intent only rewards its first relevant
// document in the ranking.
GlobalGainList BuildDinGlobalGainList(std::span<const std::string> ranking,
                                      const TopicQrels& qrels,
                                      const TopicIntents& intents,
                                      const GainScheme& scheme);

// Global gains with each intentwise gain weighted by Pr(v(r)|i). An entry
// whose document id equals its vertical id is an embedded vertical and
// gets `vertical_gain` for every intent. Entries without a vertical tag
// are treated as "Web". Unlisted (vertical, intent) pairs weigh 0.
inline constexpr double kDefaultVerticalGain = 2.0;
inline constexpr std::string_view kDefaultVertical = "Web";
GlobalGainList BuildViGlobalGainList(const TopicRun& run,
                                     const TopicQrels& qrels,
                                     const TopicIntents& intents,
                                     const GainScheme& scheme,
                                     double vertical_gain =
                                         kDefaultVerticalGain);

// Global gains as an adhoc scored list: an item is relevant when its
// global gain is positive.
ScoredList ToScoredList(const GlobalGainList& ggl);

// Fraction of the topic's intents with a relevant item in the top cutoff.
double IntentRecallAt(const GlobalGainList& ggl, std::size_t cutoff);

enum class DiversityBase { kMsNdcg, kQ };

// D-nDCG@l or D-Q@l (cutoff Q with patience `beta`). nullopt when the
// global ideal is empty.
MeasureValue DMeasureAt(const GlobalGainList& ggl, std::size_t cutoff,
                        DiversityBase base, double beta = 1.0);

// gamma * I-rec + (1 - gamma) * D-measure.
double DSharp(double intent_recall, double d_measure, double gamma = 0.5);

// Intentwise Q@l for informational intents and intentwise P+ for
// navigational ones, weighted by intent probability.
double PPlusQAt(std::span<const std::string> ranking, const TopicQrels& qrels,
                const TopicIntents& intents, const GainScheme& scheme,
                std::size_t cutoff, double beta = 1.0);

using Hierarchy = std::map<std::string, std::string, std::less<>>;

// Fraction of `system` child -> parent assignments that agree with `gold`.
double HScore(const Hierarchy& system, const Hierarchy& gold);

// hscore * (alpha * D1# + (1 - alpha) * D2#).
double HMeasure(double hscore, double d1_sharp, double d2_sharp,
                double alpha = 0.5);

// Mean over ranks 1..cutoff of Pr(v(r)|i(r)) / max_v Pr(v|i(r)). Ranks past
// the end of the run, and subtopics mapped to no intent, contribute 0.
double VScoreAt(const TopicRun& run, const SubtopicMap& subtopics,
                const TopicIntents& intents, std::size_t cutoff);

// lambda * D#-nDCG@l + (1 - lambda) * V-score@l.
double QuScoreAt(double d_sharp_ndcg, double v_score, double lambda = 0.5);

}  // namespace gradeval

#endif  // GRADEVAL_DIVERSITY_MEASURES_H_
