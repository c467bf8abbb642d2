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

// gradeval: batch evaluation of ranked runs against graded judgments.
//
//   gradeval eval     --qrels Q --run R --measures "ap q@10 nerr@10" [...]
//   gradeval condense --qrels Q --run R            > condensed.run
//   gradeval gains    --gains quadratic --max-level 2 [--labels L]
//
// Exit status: 0 success, 1 invalid input or usage, 2 I/O failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gradeval/corpus_io.h"
#include "gradeval/errors.h"
#include "gradeval/evaluate.h"
#include "gradeval/gain_mapping.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

void PrintWarnings(const std::vector<gradeval::Warning>& warnings,
                   const std::string& source) {
  for (const auto& w : warnings) {
    std::cerr << "warning: " << source;
    if (w.line > 0) std::cerr << ": line " << w.line;
    std::cerr << ": " << w.message << '\n';
  }
}

struct EvalArgs {
  std::string qrels;
  std::string run;
  std::string intents;
  std::string verticals;
  std::string submap;
  std::string classes;
  std::string gains = "linear";
  std::string measures;
  std::vector<std::size_t> cutoffs = {10};
  double beta = 1.0;
  double gamma = 0.5;
  double alpha = 0.5;
  double lambda = 0.5;
  double log_base = 2.0;
  double err_base = 2.0;
  double vertical_gain = gradeval::kDefaultVerticalGain;
  bool condensed = false;
  std::string r0_policy = "zero";
  bool skip_missing = false;
  unsigned threads = 1;
};

struct CondenseArgs {
  std::string qrels;
  std::string run;
};

struct GainsArgs {
  std::string gains = "linear";
  int max_level = 0;
  std::string qrels;
  std::string labels;
  std::string label_weights;
  double unanimity_p = 0.2;
  std::optional<double> dmax;
};

int RunEval(const EvalArgs& args) {
  using namespace gradeval;
  std::vector<Warning> run_warnings;
  GradedQrels qrels = LoadQrels(args.qrels);
  RankedRun run = LoadRun(args.run, &run_warnings);
  PrintWarnings(run_warnings, args.run);

  std::optional<IntentSet> intents;
  if (!args.intents.empty()) {
    intents = LoadIntents(args.intents);
    if (!args.verticals.empty()) LoadVerticals(args.verticals, *intents);
  } else if (!args.verticals.empty()) {
    throw ValidationError("--verticals requires --intents");
  }
  std::optional<EquivalenceClasses> classes;
  if (!args.classes.empty()) classes = LoadClasses(args.classes);
  std::optional<SubtopicMap> submap;
  if (!args.submap.empty()) submap = LoadSubtopicMap(args.submap);

  EvalSettings settings;
  settings.gains = args.gains;
  settings.measures = ParseMeasureList(args.measures, args.cutoffs);
  settings.beta = args.beta;
  settings.gamma = args.gamma;
  settings.lambda = args.lambda;
  settings.log_base = args.log_base;
  settings.err_base = args.err_base;
  settings.vertical_gain = args.vertical_gain;
  settings.condensed = args.condensed;
  settings.undefined_policy = args.r0_policy == "exclude"
                                  ? UndefinedPolicy::kExclude
                                  : UndefinedPolicy::kZero;
  settings.score_missing_topics = !args.skip_missing;
  settings.threads = args.threads;

  EvalInputs inputs;
  inputs.qrels = &qrels;
  inputs.run = &run;
  inputs.intents = intents ? &*intents : nullptr;
  inputs.classes = classes ? &*classes : nullptr;
  inputs.subtopics = submap ? &*submap : nullptr;

  EvaluationReport report = Evaluate(inputs, settings);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << report.ToText();
  return kExitOk;
}

int RunCondense(const CondenseArgs& args) {
  using namespace gradeval;
  std::vector<Warning> warnings;
  GradedQrels qrels = LoadQrels(args.qrels);
  RankedRun run = LoadRun(args.run, &warnings);
  PrintWarnings(warnings, args.run);
  warnings.clear();
  RankedRun condensed = Condense(run, qrels, &warnings);
  PrintWarnings(warnings, args.run);
  WriteRun(std::cout, condensed);
  return kExitOk;
}

int RunGains(const GainsArgs& args) {
  using namespace gradeval;
  int max_level = args.max_level;
  if (max_level == 0 && !args.qrels.empty()) {
    max_level = LoadQrels(args.qrels).max_level();
  }
  const bool preset = args.gains == "linear" || args.gains == "quadratic";
  if (preset && max_level == 0) {
    throw ValidationError("preset gain scheme needs --max-level or --qrels");
  }
  GainScheme scheme = ParseGainScheme(args.gains, max_level);

  GainReportOptions options;
  std::optional<AssessorLabels> labels;
  if (!args.labels.empty()) {
    labels = LoadAssessorLabels(args.labels);
    options.labels = &*labels;
  }
  if (!args.label_weights.empty()) {
    options.weights = ParseLabelWeights(args.label_weights);
  }
  options.upgrade_strength = args.unanimity_p;
  options.max_score = args.dmax;
  std::cout << ShowGains(scheme, options);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded-relevance evaluation of ranked retrieval runs"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a run against qrels");
  eval_cmd->add_option("--qrels", eval.qrels, "Graded qrels file")->required();
  eval_cmd->add_option("--run", eval.run, "Run file ('-' for stdin)")
      ->required();
  eval_cmd->add_option("--intents", eval.intents, "Intent probability file");
  eval_cmd->add_option("--verticals", eval.verticals,
                       "Vertical probability file");
  eval_cmd->add_option("--submap", eval.submap, "Subtopic-to-intent map");
  eval_cmd->add_option("--classes", eval.classes, "Equivalence-class file");
  eval_cmd->add_option("--gains", eval.gains,
                       "linear, quadratic, or level:gain list")
      ->capture_default_str();
  eval_cmd
      ->add_option("--measures", eval.measures,
                   "Measures, e.g. \"ap q@10 ms-ndcg@10 d#-ndcg@10\"")
      ->required();
  eval_cmd
      ->add_option("--cutoffs", eval.cutoffs,
                   "Cutoffs for measures given without one")
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_option("--beta", eval.beta, "Q / P+ patience")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  eval_cmd->add_option("--gamma", eval.gamma, "I-rec weight in D#")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  eval_cmd
      ->add_option("--alpha", eval.alpha,
                   "H-measure weight (library/Python API; no eval measure)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  eval_cmd->add_option("--lambda", eval.lambda, "D#-nDCG weight in QU-score")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  eval_cmd->add_option("--log-base", eval.log_base,
                       "Logarithm base of original DCG")
      ->check(CLI::Range(2.0, 1e9))
      ->capture_default_str();
  eval_cmd->add_option("--err-base", eval.err_base,
                       "Base of the ERR grade-to-probability map")
      ->check(CLI::Range(2.0, 1e9))
      ->capture_default_str();
  eval_cmd->add_option("--vertical-gain", eval.vertical_gain,
                       "Gain of embedded vertical entries (VI measures)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  eval_cmd->add_flag("--condensed", eval.condensed,
                     "Remove unjudged documents before scoring");
  eval_cmd->add_option("--r0-policy", eval.r0_policy,
                       "Undefined values: zero or exclude")
      ->check(CLI::IsMember({"zero", "exclude"}))
      ->capture_default_str();
  eval_cmd->add_flag("--skip-missing-topics", eval.skip_missing,
                     "Do not score qrels topics absent from the run");
  eval_cmd->add_option("--threads", eval.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CondenseArgs condense;
  auto* condense_cmd = app.add_subcommand(
      "condense", "Drop unjudged documents from a run; writes to stdout");
  condense_cmd->add_option("--qrels", condense.qrels, "Graded qrels file")
      ->required();
  condense_cmd->add_option("--run", condense.run, "Run file ('-' for stdin)")
      ->required();

  GainsArgs gains;
  auto* gains_cmd = app.add_subcommand(
      "gains", "Show a gain table and aggregated assessor gains");
  gains_cmd->add_option("--gains", gains.gains,
                        "linear, quadratic, or level:gain list")
      ->capture_default_str();
  gains_cmd->add_option("--max-level", gains.max_level,
                        "Top relevance level for preset schemes")
      ->check(CLI::PositiveNumber);
  gains_cmd->add_option("--qrels", gains.qrels,
                        "Take the top level from these qrels");
  gains_cmd->add_option("--labels", gains.labels,
                        "Per-assessor labels: topic doc label...");
  gains_cmd->add_option("--label-weights", gains.label_weights,
                        "Label points, e.g. A:2,B:1,C:0");
  gains_cmd->add_option("--unanimity-p", gains.unanimity_p,
                        "Unanimity upgrade strength")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gains_cmd->add_option("--dmax", gains.dmax,
                        "Highest possible assessor score");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*eval_cmd) return RunEval(eval);
    if (*condense_cmd) return RunCondense(condense);
    if (*gains_cmd) return RunGains(gains);
  } catch (const gradeval::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const gradeval::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
