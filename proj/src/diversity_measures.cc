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

#include "gradeval/diversity_measures.h"

#include <algorithm>
#include <set>
#include <utility>

#include "gradeval/errors.h"

namespace gradeval {
namespace {

void CheckUnit(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in [0,1]");
  }
}

// Intentwise level of `doc`, 0 when unjudged for the intent.
int LevelFor(const TopicQrels& qrels, const Intent& intent,
             std::string_view doc) {
  const DocLevels* levels = qrels.intent(intent.id);
  if (levels == nullptr) return 0;
  auto it = levels->find(doc);
  return it == levels->end() ? 0 : it->second;
}

void CheckIntentCoverage(const TopicQrels& qrels, const TopicIntents& intents) {
  if (intents.intents.empty()) {
    throw ValidationError("topic has no intents");
  }
  for (const auto& [intent_id, docs] : qrels.by_intent) {
    if (intent_id == kTopicLevelIntent) continue;
    if (intents.find(intent_id) == nullptr) {
      throw ValidationError("intent " + intent_id +
                            " is judged but has no probability");
    }
  }
}

double PlainGlobalGain(const TopicQrels& qrels, const TopicIntents& intents,
                       const GainScheme& scheme, std::string_view doc) {
  double gg = 0.0;
  for (const Intent& intent : intents.intents) {
    gg += intent.probability * scheme.gain(LevelFor(qrels, intent, doc));
  }
  return gg;
}

// Fills ranking-independent parts: intent ids and the global ideal list.
GlobalGainList Skeleton(std::span<const std::string> ranking,
                        const TopicQrels& qrels, const TopicIntents& intents,
                        const GainScheme& scheme) {
  CheckIntentCoverage(qrels, intents);
  GlobalGainList ggl;
  ggl.docs.assign(ranking.begin(), ranking.end());
  for (const Intent& intent : intents.intents) {
    ggl.intent_ids.push_back(intent.id);
  }

  std::set<std::string_view> judged;
  for (const auto& [intent_id, docs] : qrels.by_intent) {
    if (intent_id == kTopicLevelIntent) continue;
    for (const auto& [doc, level] : docs) judged.insert(doc);
  }
  std::vector<std::pair<double, std::string_view>> ideal;
  for (std::string_view doc : judged) {
    double gg = PlainGlobalGain(qrels, intents, scheme, doc);
    if (gg > 0.0) ideal.emplace_back(gg, doc);
  }
  std::sort(ideal.begin(), ideal.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (const auto& [gg, doc] : ideal) {
    ggl.ideal_docs.emplace_back(doc);
    ggl.ideal_global_gain.push_back(gg);
  }
  return ggl;
}

// Intentwise gains and coverage straight from the qrels.
void FillIntentwise(GlobalGainList& ggl, const TopicQrels& qrels,
                    const TopicIntents& intents, const GainScheme& scheme) {
  const std::size_t k = intents.intents.size();
  ggl.intent_gain.assign(ggl.size(), std::vector<double>(k, 0.0));
  ggl.covers.assign(ggl.size(), std::vector<char>(k, 0));
  for (std::size_t r = 0; r < ggl.size(); ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      int level = LevelFor(qrels, intents.intents[i], ggl.docs[r]);
      ggl.intent_gain[r][i] = scheme.gain(level);
      ggl.covers[r][i] = level > 0 ? 1 : 0;
    }
  }
}

}  // namespace

GlobalGainList BuildGlobalGainList(std::span<const std::string> ranking,
                                   const TopicQrels& qrels,
                                   const TopicIntents& intents,
                                   const GainScheme& scheme) {
  GlobalGainList ggl = Skeleton(ranking, qrels, intents, scheme);
  FillIntentwise(ggl, qrels, intents, scheme);
  for (std::size_t r = 0; r < ggl.size(); ++r) {
    double gg = 0.0;
    for (std::size_t i = 0; i < ggl.num_intents(); ++i) {
      gg += intents.intents[i].probability * ggl.intent_gain[r][i];
    }
    ggl.global_gain.push_back(gg);
  }
  return ggl;
}

GlobalGainList BuildDinGlobalGainList(std::span<const std::string> ranking,
                                      const TopicQrels& qrels,
                                      const TopicIntents& intents,
                                      const GainScheme& scheme) {
  GlobalGainList ggl = Skeleton(ranking, qrels, intents, scheme);
  FillIntentwise(ggl, qrels, intents, scheme);
  std::vector<char> seen(ggl.num_intents(), 0);
  for (std::size_t r = 0; r < ggl.size(); ++r) {
    double informational = 0.0;
    double navigational = 0.0;
    for (std::size_t i = 0; i < ggl.num_intents(); ++i) {
      const Intent& intent = intents.intents[i];
      double term = intent.probability * ggl.intent_gain[r][i];
      if (intent.kind == IntentKind::kInformational) {
        informational += term;
      } else if (!seen[i]) {
        navigational += term;
      }
    }
    for (std::size_t i = 0; i < ggl.num_intents(); ++i) {
      if (ggl.covers[r][i]) seen[i] = 1;
    }
    ggl.global_gain.push_back(informational + navigational);
  }
  return ggl;
}

GlobalGainList BuildViGlobalGainList(const TopicRun& run,
                                     const TopicQrels& qrels,
                                     const TopicIntents& intents,
                                     const GainScheme& scheme,
                                     double vertical_gain) {
  if (!(vertical_gain >= 0.0)) {
    throw ValidationError("vertical gain must be non-negative");
  }
  auto ranking = run.ranking();
  GlobalGainList ggl = Skeleton(ranking, qrels, intents, scheme);
  FillIntentwise(ggl, qrels, intents, scheme);
  for (std::size_t r = 0; r < ggl.size(); ++r) {
    const RunEntry& entry = run.entries[r];
    std::string_view vertical =
        entry.vertical ? std::string_view(*entry.vertical) : kDefaultVertical;
    const bool embedded = entry.vertical && *entry.vertical == entry.doc;
    double gg = 0.0;
    for (std::size_t i = 0; i < ggl.num_intents(); ++i) {
      const Intent& intent = intents.intents[i];
      double weight = intent.vertical_probability(vertical);
      if (embedded) {
        ggl.intent_gain[r][i] = vertical_gain;
        ggl.covers[r][i] = weight > 0.0 && vertical_gain > 0.0 ? 1 : 0;
      }
      gg += intent.probability * (weight * ggl.intent_gain[r][i]);
    }
    ggl.global_gain.push_back(gg);
  }
  return ggl;
}

ScoredList ToScoredList(const GlobalGainList& ggl) {
  std::vector<DocGain> per_rank;
  per_rank.reserve(ggl.size());
  for (double gg : ggl.global_gain) {
    per_rank.push_back(DocGain{gg, gg, gg > 0.0});
  }
  std::vector<DocGain> ideal;
  ideal.reserve(ggl.ideal_global_gain.size());
  for (double gg : ggl.ideal_global_gain) {
    ideal.push_back(DocGain{gg, gg, true});
  }
  return MakeScoredList(ggl.docs, std::move(per_rank), std::move(ideal));
}

double IntentRecallAt(const GlobalGainList& ggl, std::size_t cutoff) {
  if (cutoff < 1) throw ValidationError("cutoff must be at least 1");
  if (ggl.num_intents() == 0) throw ValidationError("topic has no intents");
  std::size_t covered = 0;
  for (std::size_t i = 0; i < ggl.num_intents(); ++i) {
    for (std::size_t r = 0; r < std::min(cutoff, ggl.size()); ++r) {
      if (ggl.covers[r][i]) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) /
         static_cast<double>(ggl.num_intents());
}

MeasureValue DMeasureAt(const GlobalGainList& ggl, std::size_t cutoff,
                        DiversityBase base, double beta) {
  ScoredList sl = ToScoredList(ggl);
  switch (base) {
    case DiversityBase::kMsNdcg:
      return MsNdcg(sl, cutoff);
    case DiversityBase::kQ:
      return QAt(sl, cutoff, beta);
  }
  return std::nullopt;
}

double DSharp(double intent_recall, double d_measure, double gamma) {
  CheckUnit(gamma, "gamma");
  return gamma * intent_recall + (1.0 - gamma) * d_measure;
}

double PPlusQAt(std::span<const std::string> ranking, const TopicQrels& qrels,
                const TopicIntents& intents, const GainScheme& scheme,
                std::size_t cutoff, double beta) {
  CheckIntentCoverage(qrels, intents);
  double total = 0.0;
  static const DocLevels kNoJudgments;
  for (const Intent& intent : intents.intents) {
    const DocLevels* levels = qrels.intent(intent.id);
    auto judged = GainsFromLevels(levels ? *levels : kNoJudgments, scheme);
    ScoredList sl = BuildScoredList(ranking, judged);
    double score = 0.0;
    if (intent.kind == IntentKind::kInformational) {
      score = QAt(sl, cutoff, beta).value_or(0.0);
    } else {
      score = PPlus(sl, cutoff, beta);
    }
    total += intent.probability * score;
  }
  return total;
}

double HScore(const Hierarchy& system, const Hierarchy& gold) {
  if (system.empty()) throw ValidationError("no subtopic assignments");
  std::size_t correct = 0;
  for (const auto& [child, parent] : system) {
    auto it = gold.find(child);
    if (it == gold.end()) {
      throw ValidationError("subtopic " + child + " has no gold parent");
    }
    if (it->second == parent) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(system.size());
}

double HMeasure(double hscore, double d1_sharp, double d2_sharp,
                double alpha) {
  CheckUnit(alpha, "alpha");
  return hscore * (alpha * d1_sharp + (1.0 - alpha) * d2_sharp);
}

double VScoreAt(const TopicRun& run, const SubtopicMap& subtopics,
                const TopicIntents& intents, std::size_t cutoff) {
  if (cutoff < 1) throw ValidationError("cutoff must be at least 1");
  double sum = 0.0;
  for (std::size_t r = 0; r < std::min(cutoff, run.entries.size()); ++r) {
    const RunEntry& entry = run.entries[r];
    auto intent_id = subtopics.intent_of(run.topic, entry.doc);
    if (!intent_id) continue;
    const Intent* intent = intents.find(*intent_id);
    if (intent == nullptr) {
      throw ValidationError("subtopic " + entry.doc + " maps to unknown intent " +
                            std::string(*intent_id));
    }
    if (!entry.vertical) {
      throw ValidationError("subtopic " + entry.doc + " carries no vertical");
    }
    double best = 0.0;
    for (const auto& [vertical, p] : intent->verticals) {
      best = std::max(best, p);
    }
    if (best <= 0.0) {
      throw ValidationError("intent " + intent->id +
                            " has no vertical with positive probability");
    }
    sum += intent->vertical_probability(*entry.vertical) / best;
  }
  return sum / static_cast<double>(cutoff);
}

double QuScoreAt(double d_sharp_ndcg, double v_score, double lambda) {
  CheckUnit(lambda, "lambda");
  return lambda * d_sharp_ndcg + (1.0 - lambda) * v_score;
}

}  // namespace gradeval
