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

// Batch evaluation: wires parsed collections to the measure kernels and
// renders a stable tab-separated report.
//
// Report lines are "<topic>\t<MEASURE>[@cutoff]\t<value>" with four
// decimals. Topics are sorted byte-wise, measures keep request order, and
// mean rows (topic "all") follow the per-topic rows, then three count rows:
// num_topics, num_undefined and num_missing.

#ifndef GRADEVAL_EVALUATE_H_
#define GRADEVAL_EVALUATE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gradeval/corpus_io.h"
#include "gradeval/diversity_measures.h"
#include "gradeval/gain_mapping.h"

namespace gradeval {

enum class MeasureKind {
  kAp,
  kQ,
  kPrecision,
  kRPrecision,
  kRr,
  kHit1,
  kNg1,
  kNcg,
  kDcg,
  kNdcg,
  kMsNdcg,
  kPPlus,
  kErr,
  kNerr,
  kIntentRecall,
  kDNdcg,
  kDQ,
  kDSharpNdcg,
  kDSharpQ,
  kDinNdcg,
  kDinQ,
  kPPlusQ,
  kVScore,
  kQuScore,
  kViDNdcg,
  kViDSharpNdcg,
};

struct MeasureSpec {
  MeasureKind kind;
  std::optional<std::size_t> cutoff;

  // Report name, e.g. "Q@10" or "AP".
  std::string label() const;
};

// Parses a comma/space separated list such as "ap q@10 ms-ndcg@5". Names
// are case-insensitive. A measure that needs a cutoff and has none is
// expanded once per `default_cutoffs` entry. Throws ValidationError on an
// unknown name or a zero cutoff.
std::vector<MeasureSpec> ParseMeasureList(
    std::string_view spec, std::span<const std::size_t> default_cutoffs);

enum class UndefinedPolicy {
  kZero,     // undefined values print and average as 0
  kExclude,  // undefined values are omitted from output and means
};

struct EvalSettings {
  std::string gains = "linear";
  std::vector<MeasureSpec> measures;
  double beta = 1.0;
  double gamma = 0.5;
  double lambda = 0.5;
  double log_base = 2.0;
  double err_base = 2.0;
  double vertical_gain = kDefaultVerticalGain;
  bool condensed = false;
  UndefinedPolicy undefined_policy = UndefinedPolicy::kZero;
  // Score qrels topics that the run does not mention (as empty rankings).
  bool score_missing_topics = true;
  unsigned threads = 1;
};

struct EvalInputs {
  const GradedQrels* qrels = nullptr;
  const RankedRun* run = nullptr;
  const IntentSet* intents = nullptr;
  const EquivalenceClasses* classes = nullptr;
  const SubtopicMap* subtopics = nullptr;
};

struct ReportRow {
  std::string topic;
  std::string measure;
  double value = 0.0;
};

struct EvaluationReport {
  std::vector<ReportRow> rows;   // per-topic rows, then mean rows
  std::size_t num_topics = 0;
  std::size_t num_undefined = 0;  // (topic, measure) pairs with no value
  std::size_t num_missing = 0;    // qrels topics absent from the run
  std::vector<std::string> warnings;

  std::string ToText() const;
};

// Throws ValidationError when no measure is requested, when a measure's
// inputs (intents, subtopic map) are absent, or when data and gain scheme
// disagree.
EvaluationReport Evaluate(const EvalInputs& inputs,
                          const EvalSettings& settings);

// Drops unjudged documents from every topic, keeping order. A document is
// judged when the qrels hold any judgment for it, topic-level or per
// intent. Topics left empty stay in the run and produce a warning.
RankedRun Condense(const RankedRun& run, const GradedQrels& qrels,
                   std::vector<Warning>* warnings = nullptr);

struct GainReportOptions {
  const AssessorLabels* labels = nullptr;
  LabelWeights weights;
  double upgrade_strength = 0.2;
  // Highest possible assessor score; when unset, the largest score seen.
  std::optional<double> max_score;
};

// Level -> gain table, followed (with labels) by one line per item:
// topic, doc, summed score, mean score, unanimity-upgraded score.
std::string ShowGains(const GainScheme& scheme,
                      const GainReportOptions& options = {});

// "%.4f".
std::string FormatFixed4(double value);

}  // namespace gradeval

#endif  // GRADEVAL_EVALUATE_H_
