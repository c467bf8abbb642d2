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

// Single-intent ranked retrieval measures over a gained, judged ranking.
//
// Ranks are 1-based throughout the API. Measures normalised by the ideal
// list return std::nullopt for a topic without relevant documents (R = 0);
// callers decide whether such topics score 0 or are dropped.

#ifndef GRADEVAL_ADHOC_MEASURES_H_
#define GRADEVAL_ADHOC_MEASURES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gradeval/corpus_io.h"
#include "gradeval/gain_mapping.h"

namespace gradeval {

using MeasureValue = std::optional<double>;

// Per-rank quantities of a ranking aligned with its ideal list. Vectors
// are 0-based storage for ranks 1..n; use the accessors for rank lookups,
// which saturate past the end of either list.
struct ScoredList {
  std::vector<std::string> docs;
  std::vector<double> gain;      // g(r)
  std::vector<double> grade;     // relevance grade at r
  std::vector<int> relevant;     // I(r)
  std::vector<int> count;        // C(r)
  std::vector<double> cum_gain;  // cg(r)

  // All relevant documents of the topic in decreasing gain order.
  std::vector<double> ideal_gain;      // g*(r)
  std::vector<double> ideal_grade;
  std::vector<double> ideal_cum_gain;  // cg*(r)

  int num_relevant = 0;    // R
  double max_grade = 0.0;  // top grade of the collection, for ERR

  std::size_t size() const { return docs.size(); }
  int C(std::size_t r) const;
  double cg(std::size_t r) const;
  double ideal_cg(std::size_t r) const;
};

// Cumulates `per_rank` and `ideal`. `ideal` must be sorted by decreasing
// gain and hold exactly the relevant documents. A non-positive `max_grade`
// means "highest grade in the ideal list".
ScoredList MakeScoredList(std::vector<std::string> docs,
                          std::vector<DocGain> per_rank,
                          std::vector<DocGain> ideal, double max_grade = 0.0);

struct ScoredListOptions {
  // Drop unjudged documents before ranks are assigned.
  bool condensed = false;
  // When set, duplicates within a class earn nothing and the ideal list
  // keeps one best member per class.
  const TopicClasses* classes = nullptr;
  double max_grade = 0.0;
};

// Ideal ordering of the relevant documents in `judged`: decreasing gain,
// then decreasing grade, then ascending document id.
std::vector<std::string> IdealRanking(const DocGainTable& judged,
                                      const TopicClasses* classes = nullptr);

ScoredList BuildScoredList(std::span<const std::string> ranking,
                           const DocGainTable& judged,
                           const ScoredListOptions& options = {});

// Topic-level convenience. Throws ValidationError if the topic has no
// judgments.
ScoredList BuildScoredList(const TopicRun& run, const GradedQrels& qrels,
                           const GainScheme& scheme,
                           const ScoredListOptions& options = {});

double PrecisionAt(const ScoredList& sl, std::size_t cutoff);
MeasureValue RPrecision(const ScoredList& sl);
MeasureValue AveragePrecision(const ScoredList& sl);
// 1/r of the first relevant document at or above the cutoff, else 0.
double ReciprocalRank(const ScoredList& sl, std::size_t cutoff);
double ReciprocalRank(const ScoredList& sl);
int HitAt1(const ScoredList& sl);
MeasureValue NgAt1(const ScoredList& sl);
MeasureValue NcgAt(const ScoredList& sl, std::size_t cutoff);

// DCG with no discount up to rank `log_base`: sum g(r) / max(1, log_b r).
double DcgOriginal(const ScoredList& sl, std::size_t cutoff, double log_base);
MeasureValue NdcgOriginal(const ScoredList& sl, std::size_t cutoff,
                          double log_base);

// nDCG discounting every rank by 1/log(1+r). The value does not depend on
// `log_base`; it is a parameter only so that can be checked.
MeasureValue MsNdcg(const ScoredList& sl, std::size_t cutoff,
                    double log_base = 2.0);

// BR(r) = (C(r) + beta cg(r)) / (r + beta cg*(r)).
double BlendedRatio(const ScoredList& sl, std::size_t r, double beta);
MeasureValue QMeasure(const ScoredList& sl, double beta = 1.0);
MeasureValue QAt(const ScoredList& sl, std::size_t cutoff, double beta = 1.0);

// Highest rank holding a top-graded relevant document within the cutoff;
// 0 if there is none.
std::size_t PreferredRank(const ScoredList& sl, std::size_t cutoff);
double PPlus(const ScoredList& sl, std::size_t cutoff, double beta = 1.0);

// Stop probability at rank r is (base^grade - 1) / base^max_grade.
double ErrAt(const ScoredList& sl, std::size_t cutoff, double level_base = 2.0);
MeasureValue NerrAt(const ScoredList& sl, std::size_t cutoff,
                    double level_base = 2.0);

// Normalised cumulative utility: expected utility over a stopping-rank
// distribution.
enum class StopDistribution {
  kUniformOverRelevant,
  kUniformOverRelevantAbovePreferred,
  kStopAtCutoff,
  kStopAtFirstRelevant,
};

enum class Utility {
  kBlendedRatio,
  kPrecision,
  kReciprocalRank,
};

struct NcuParams {
  // 0 means the whole ranking. Required for kStopAtCutoff.
  std::size_t cutoff = 0;
  double beta = 1.0;
};

double Ncu(const ScoredList& sl, StopDistribution stop, Utility utility,
           const NcuParams& params = {});

}  // namespace gradeval

#endif  // GRADEVAL_ADHOC_MEASURES_H_
