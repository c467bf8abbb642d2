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

// Python bindings: judgments and rankings cross as plain dicts and lists;
// ScoredList and GlobalGainList are opaque read-only handles.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gradeval/adhoc_measures.h"
#include "gradeval/corpus_io.h"
#include "gradeval/diversity_measures.h"
#include "gradeval/errors.h"
#include "gradeval/evaluate.h"
#include "gradeval/gain_mapping.h"

namespace py = pybind11;

namespace gradeval {
namespace {

using Levels = std::map<std::string, int>;
using IntentLevels = std::map<std::string, Levels>;
// A scheme name ("linear", "quadratic", "0:0,1:1,...") or an explicit
// gain per level.
using GainsArg = std::variant<std::string, std::vector<double>>;

DocLevels ToDocLevels(const Levels& levels) {
  return DocLevels(levels.begin(), levels.end());
}

int TopLevel(const Levels& levels) {
  int top = 0;
  for (const auto& [doc, level] : levels) top = std::max(top, level);
  return top;
}

GainScheme MakeScheme(const GainsArg& gains, int max_level) {
  if (const auto* table = std::get_if<std::vector<double>>(&gains)) {
    return GainScheme::FromTable("table", *table);
  }
  return ParseGainScheme(std::get<std::string>(gains), std::max(1, max_level));
}

ScoredList ScoredListFromLevels(const std::vector<std::string>& ranking,
                          const Levels& levels, const GainsArg& gains,
                          bool condensed,
                          const std::map<std::string, std::string>& classes,
                          std::optional<int> max_level) {
  const int top = max_level.value_or(TopLevel(levels));
  const GainScheme scheme = MakeScheme(gains, top);
  TopicClasses topic_classes;
  topic_classes.class_of.insert(classes.begin(), classes.end());
  ScoredListOptions options;
  options.condensed = condensed;
  options.max_grade = top;
  options.classes = classes.empty() ? nullptr : &topic_classes;
  return BuildScoredList(ranking, GainsFromLevels(ToDocLevels(levels), scheme),
                         options);
}

TopicQrels MakeQrels(const IntentLevels& intent_levels) {
  TopicQrels qrels;
  for (const auto& [intent, levels] : intent_levels) {
    qrels.by_intent[intent] = ToDocLevels(levels);
  }
  return qrels;
}

TopicIntents MakeIntents(const std::map<std::string, double>& probabilities,
                         const std::set<std::string>& navigational) {
  TopicIntents intents;
  for (const auto& [id, p] : probabilities) {
    Intent intent;
    intent.id = id;
    intent.probability = p;
    intent.kind = navigational.count(id) ? IntentKind::kNavigational
                                         : IntentKind::kInformational;
    intents.intents.push_back(intent);
  }
  return intents;
}

int IntentTopLevel(const IntentLevels& intent_levels) {
  int top = 0;
  for (const auto& [intent, levels] : intent_levels) {
    top = std::max(top, TopLevel(levels));
  }
  return top;
}

StopDistribution ParseStop(const std::string& name) {
  if (name == "relevant") return StopDistribution::kUniformOverRelevant;
  if (name == "relevant-above-preferred") {
    return StopDistribution::kUniformOverRelevantAbovePreferred;
  }
  if (name == "cutoff") return StopDistribution::kStopAtCutoff;
  if (name == "first-relevant") return StopDistribution::kStopAtFirstRelevant;
  throw ValidationError("unknown stopping distribution '" + name + "'");
}

Utility ParseUtility(const std::string& name) {
  if (name == "blended-ratio") return Utility::kBlendedRatio;
  if (name == "precision") return Utility::kPrecision;
  if (name == "reciprocal-rank") return Utility::kReciprocalRank;
  throw ValidationError("unknown utility '" + name + "'");
}

DiversityBase ParseBase(const std::string& name) {
  if (name == "ms-ndcg") return DiversityBase::kMsNdcg;
  if (name == "q") return DiversityBase::kQ;
  throw ValidationError("unknown D-measure base '" + name + "'");
}

std::string EvaluateFiles(const std::string& qrels_path,
                          const std::string& run_path,
                          const std::string& measures,
                          const std::vector<std::size_t>& cutoffs,
                          const std::string& intents_path,
                          const std::string& verticals_path,
                          const std::string& submap_path,
                          const std::string& classes_path,
                          const EvalSettings& base) {
  const GradedQrels qrels = LoadQrels(qrels_path);
  const RankedRun run = LoadRun(run_path);
  std::optional<IntentSet> intents;
  if (!intents_path.empty()) {
    intents = LoadIntents(intents_path);
    if (!verticals_path.empty()) LoadVerticals(verticals_path, *intents);
  }
  std::optional<EquivalenceClasses> classes;
  if (!classes_path.empty()) classes = LoadClasses(classes_path);
  std::optional<SubtopicMap> submap;
  if (!submap_path.empty()) submap = LoadSubtopicMap(submap_path);

  EvalSettings settings = base;
  settings.measures = ParseMeasureList(measures, cutoffs);
  EvalInputs inputs;
  inputs.qrels = &qrels;
  inputs.run = &run;
  inputs.intents = intents ? &*intents : nullptr;
  inputs.classes = classes ? &*classes : nullptr;
  inputs.subtopics = submap ? &*submap : nullptr;
  return Evaluate(inputs, settings).ToText();
}

}  // namespace
}  // namespace gradeval

PYBIND11_MODULE(_core, m) {
  using namespace gradeval;
  m.doc() = "Graded-relevance evaluation measures";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());

  // Gains and assessor aggregation.
  m.def(
      "gain_table",
      [](const std::string& spec, int max_level) {
        return ParseGainScheme(spec, max_level).gains();
      },
      py::arg("spec"), py::arg("max_level"),
      "Gain per level 0..max_level for 'linear', 'quadratic' or "
      "'0:0,1:1,...'.");
  m.def("aggregate_sum",
        [](const std::vector<std::string>& labels,
           const std::map<std::string, double>& weights) {
          return AggregateSum(labels,
                              LabelWeights(weights.begin(), weights.end()));
        },
        py::arg("labels"), py::arg("weights"));
  m.def("aggregate_average",
        [](const std::vector<double>& scores) {
          return AggregateAverage(scores);
        },
        py::arg("scores"));
  m.def("aggregate_majority",
        [](const std::vector<int>& levels, int fallback) {
          return AggregateMajority(levels, fallback);
        },
        py::arg("levels"), py::arg("fallback") = 0);
  m.def("unanimity_upgrade",
        [](double gain, double spread, double strength, int assessors,
           double max_score) {
          return UnanimityUpgrade(gain, spread,
                                  {strength, assessors, max_score});
        },
        py::arg("gain"), py::arg("spread"), py::arg("strength") = 0.2,
        py::arg("assessors") = 1, py::arg("max_score") = 2.0);
  m.def("unanimity_upgrade_from_scores",
        [](const std::vector<double>& scores, double strength,
           double max_score) {
          return UnanimityUpgradeFromScores(scores, strength, max_score);
        },
        py::arg("scores"), py::arg("strength") = 0.2,
        py::arg("max_score") = 2.0);

  // Adhoc measures.
  py::class_<ScoredList>(m, "ScoredList")
      .def_readonly("docs", &ScoredList::docs)
      .def_readonly("gain", &ScoredList::gain)
      .def_readonly("relevant", &ScoredList::relevant)
      .def_readonly("count", &ScoredList::count)
      .def_readonly("cum_gain", &ScoredList::cum_gain)
      .def_readonly("ideal_gain", &ScoredList::ideal_gain)
      .def_readonly("num_relevant", &ScoredList::num_relevant)
      .def("__len__", &ScoredList::size);

  m.def("scored_list", &ScoredListFromLevels, py::arg("ranking"),
        py::arg("levels"),
        py::arg("gains") = GainsArg(std::string("linear")),
        py::arg("condensed") = false,
        py::arg("classes") = std::map<std::string, std::string>{},
        py::arg("max_level") = std::nullopt,
        "Scores a ranking against {doc: level} judgments.");

  m.def("average_precision", &AveragePrecision, py::arg("sl"));
  m.def("r_precision", &RPrecision, py::arg("sl"));
  m.def("precision_at", &PrecisionAt, py::arg("sl"), py::arg("cutoff"));
  m.def(
      "reciprocal_rank",
      [](const ScoredList& sl, std::optional<std::size_t> cutoff) {
        return cutoff ? ReciprocalRank(sl, *cutoff) : ReciprocalRank(sl);
      },
      py::arg("sl"), py::arg("cutoff") = std::nullopt);
  m.def("hit_at_1", &HitAt1, py::arg("sl"));
  m.def("ng_at_1", &NgAt1, py::arg("sl"));
  m.def("ncg_at", &NcgAt, py::arg("sl"), py::arg("cutoff"));
  m.def("dcg", &DcgOriginal, py::arg("sl"), py::arg("cutoff"),
        py::arg("log_base") = 2.0);
  m.def("ndcg", &NdcgOriginal, py::arg("sl"), py::arg("cutoff"),
        py::arg("log_base") = 2.0);
  m.def("ms_ndcg", &MsNdcg, py::arg("sl"), py::arg("cutoff"),
        py::arg("log_base") = 2.0);
  m.def("q_measure", &QMeasure, py::arg("sl"), py::arg("beta") = 1.0);
  m.def("q_at", &QAt, py::arg("sl"), py::arg("cutoff"),
        py::arg("beta") = 1.0);
  m.def("p_plus", &PPlus, py::arg("sl"), py::arg("cutoff"),
        py::arg("beta") = 1.0);
  m.def("err_at", &ErrAt, py::arg("sl"), py::arg("cutoff"),
        py::arg("base") = 2.0);
  m.def("nerr_at", &NerrAt, py::arg("sl"), py::arg("cutoff"),
        py::arg("base") = 2.0);
  m.def(
      "ncu",
      [](const ScoredList& sl, const std::string& stop,
         const std::string& utility, std::size_t cutoff, double beta) {
        return Ncu(sl, ParseStop(stop), ParseUtility(utility),
                   {cutoff, beta});
      },
      py::arg("sl"), py::arg("stop") = "relevant",
      py::arg("utility") = "blended-ratio", py::arg("cutoff") = 0,
      py::arg("beta") = 1.0,
      "stop: relevant | relevant-above-preferred | cutoff | first-relevant; "
      "utility: blended-ratio | precision | reciprocal-rank.");

  // Diversity measures.
  py::class_<GlobalGainList>(m, "GlobalGainList")
      .def_readonly("docs", &GlobalGainList::docs)
      .def_readonly("intent_ids", &GlobalGainList::intent_ids)
      .def_readonly("global_gain", &GlobalGainList::global_gain)
      .def_readonly("ideal_docs", &GlobalGainList::ideal_docs)
      .def_readonly("ideal_global_gain", &GlobalGainList::ideal_global_gain)
      .def("__len__", &GlobalGainList::size);

  m.def(
      "global_gain_list",
      [](const std::vector<std::string>& ranking,
         const IntentLevels& intent_levels,
         const std::map<std::string, double>& probabilities,
         const std::set<std::string>& navigational, const GainsArg& gains,
         bool din) {
        const GainScheme scheme =
            MakeScheme(gains, IntentTopLevel(intent_levels));
        const TopicQrels qrels = MakeQrels(intent_levels);
        const TopicIntents intents = MakeIntents(probabilities, navigational);
        return din ? BuildDinGlobalGainList(ranking, qrels, intents, scheme)
                   : BuildGlobalGainList(ranking, qrels, intents, scheme);
      },
      py::arg("ranking"), py::arg("intent_levels"), py::arg("probabilities"),
      py::arg("navigational") = std::set<std::string>{},
      py::arg("gains") = GainsArg(std::string("linear")),
      py::arg("din") = false,
      "Global gains from {intent: {doc: level}} and {intent: Pr(i|q)}.");
  m.def("intent_recall", &IntentRecallAt, py::arg("ggl"), py::arg("cutoff"));
  m.def(
      "d_measure",
      [](const GlobalGainList& ggl, std::size_t cutoff,
         const std::string& base, double beta) {
        return DMeasureAt(ggl, cutoff, ParseBase(base), beta);
      },
      py::arg("ggl"), py::arg("cutoff"), py::arg("base") = "ms-ndcg",
      py::arg("beta") = 1.0);
  m.def("d_sharp", &DSharp, py::arg("intent_recall"), py::arg("d_measure"),
        py::arg("gamma") = 0.5);
  m.def(
      "p_plus_q",
      [](const std::vector<std::string>& ranking,
         const IntentLevels& intent_levels,
         const std::map<std::string, double>& probabilities,
         const std::set<std::string>& navigational, std::size_t cutoff,
         const GainsArg& gains, double beta) {
        return PPlusQAt(ranking, MakeQrels(intent_levels),
                        MakeIntents(probabilities, navigational),
                        MakeScheme(gains, IntentTopLevel(intent_levels)),
                        cutoff, beta);
      },
      py::arg("ranking"), py::arg("intent_levels"), py::arg("probabilities"),
      py::arg("navigational"), py::arg("cutoff"),
      py::arg("gains") = GainsArg(std::string("linear")),
      py::arg("beta") = 1.0);
  m.def(
      "h_score",
      [](const std::map<std::string, std::string>& system,
         const std::map<std::string, std::string>& gold) {
        return HScore(Hierarchy(system.begin(), system.end()),
                      Hierarchy(gold.begin(), gold.end()));
      },
      py::arg("system"), py::arg("gold"));
  m.def("h_measure", &HMeasure, py::arg("hscore"), py::arg("d1_sharp"),
        py::arg("d2_sharp"), py::arg("alpha") = 0.5);
  m.def(
      "v_score",
      [](const std::vector<std::pair<std::string, std::string>>& returned,
         const std::map<std::string, std::string>& subtopic_intent,
         const std::map<std::string, std::map<std::string, double>>&
             vertical_probabilities,
         std::size_t cutoff) {
        TopicRun run;
        run.topic = "q";
        for (const auto& [subtopic, vertical] : returned) {
          run.entries.push_back({subtopic, vertical, 0.0, 0});
        }
        SubtopicMap map;
        for (const auto& [subtopic, intent] : subtopic_intent) {
          map.Add("q", subtopic, intent);
        }
        TopicIntents intents;
        for (const auto& [id, verticals] : vertical_probabilities) {
          Intent intent;
          intent.id = id;
          intent.verticals.insert(verticals.begin(), verticals.end());
          intents.intents.push_back(intent);
        }
        return VScoreAt(run, map, intents, cutoff);
      },
      py::arg("returned"), py::arg("subtopic_intent"),
      py::arg("vertical_probabilities"), py::arg("cutoff"),
      "returned: [(subtopic, vertical)]; vertical_probabilities: "
      "{intent: {vertical: Pr(v|i)}}.");
  m.def("qu_score", &QuScoreAt, py::arg("d_sharp_ndcg"), py::arg("v_score"),
        py::arg("lambda_") = 0.5);

  // File-level driver, mirroring the command-line tool.
  m.def(
      "evaluate",
      [](const std::string& qrels, const std::string& run,
         const std::string& measures, const std::vector<std::size_t>& cutoffs,
         const std::string& intents, const std::string& verticals,
         const std::string& submap, const std::string& classes,
         const std::string& gains, double beta, double gamma, double lambda,
         double log_base, double err_base, double vertical_gain,
         bool condensed,
         const std::string& r0_policy, bool skip_missing_topics,
         unsigned threads) {
        EvalSettings s;
        s.gains = gains;
        s.beta = beta;
        s.gamma = gamma;
        s.lambda = lambda;
        s.log_base = log_base;
        s.err_base = err_base;
        s.vertical_gain = vertical_gain;
        s.condensed = condensed;
        if (r0_policy != "zero" && r0_policy != "exclude") {
          throw ValidationError("r0_policy must be 'zero' or 'exclude'");
        }
        s.undefined_policy = r0_policy == "exclude" ? UndefinedPolicy::kExclude
                                                    : UndefinedPolicy::kZero;
        s.score_missing_topics = !skip_missing_topics;
        s.threads = threads;
        py::gil_scoped_release release;
        return EvaluateFiles(qrels, run, measures, cutoffs, intents,
                             verticals, submap, classes, s);
      },
      py::arg("qrels"), py::arg("run"), py::arg("measures"),
      py::arg("cutoffs") = std::vector<std::size_t>{10},
      py::arg("intents") = "", py::arg("verticals") = "",
      py::arg("submap") = "", py::arg("classes") = "",
      py::arg("gains") = "linear", py::arg("beta") = 1.0,
      py::arg("gamma") = 0.5, py::arg("lambda_") = 0.5,
      py::arg("log_base") = 2.0, py::arg("err_base") = 2.0,
      py::arg("vertical_gain") = kDefaultVerticalGain,
      py::arg("condensed") = false, py::arg("r0_policy") = "zero",
      py::arg("skip_missing_topics") = false, py::arg("threads") = 1,
      "Evaluates a run file; returns the tab-separated report.");
  m.def(
      "condense",
      [](const std::string& qrels, const std::string& run) {
        std::ostringstream out;
        WriteRun(out, Condense(LoadRun(run), LoadQrels(qrels)));
        return out.str();
      },
      py::arg("qrels"), py::arg("run"),
      "Run file text with unjudged documents removed.");
}
