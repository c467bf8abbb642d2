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

#include "gradeval/adhoc_measures.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "gradeval/errors.h"

namespace gradeval {
namespace {

void CheckCutoff(std::size_t cutoff) {
  if (cutoff < 1) throw ValidationError("cutoff must be at least 1");
}

void CheckBeta(double beta) {
  if (!(beta >= 0.0)) throw ValidationError("beta must be non-negative");
}

// Ranks actually scored under a cutoff.
std::size_t Depth(const ScoredList& sl, std::size_t cutoff) {
  return std::min(cutoff, sl.size());
}

double StopProbability(double grade, double max_grade, double base) {
  if (grade <= 0.0) return 0.0;
  return (std::pow(base, grade) - 1.0) / std::pow(base, max_grade);
}

double ErrOver(std::span<const double> grades, std::size_t depth,
               double max_grade, double base) {
  double err = 0.0;
  double not_stopped = 1.0;
  for (std::size_t i = 0; i < depth && i < grades.size(); ++i) {
    double stop = StopProbability(grades[i], max_grade, base);
    err += not_stopped * stop / static_cast<double>(i + 1);
    not_stopped *= 1.0 - stop;
  }
  return err;
}

}  // namespace

int ScoredList::C(std::size_t r) const {
  if (r == 0 || count.empty()) return 0;
  return count[std::min(r, count.size()) - 1];
}

double ScoredList::cg(std::size_t r) const {
  if (r == 0 || cum_gain.empty()) return 0.0;
  return cum_gain[std::min(r, cum_gain.size()) - 1];
}

double ScoredList::ideal_cg(std::size_t r) const {
  if (r == 0 || ideal_cum_gain.empty()) return 0.0;
  return ideal_cum_gain[std::min(r, ideal_cum_gain.size()) - 1];
}

ScoredList MakeScoredList(std::vector<std::string> docs,
                          std::vector<DocGain> per_rank,
                          std::vector<DocGain> ideal, double max_grade) {
  if (docs.size() != per_rank.size()) {
    throw ValidationError("ranking and gains differ in length");
  }
  ScoredList sl;
  sl.docs = std::move(docs);
  const std::size_t n = per_rank.size();
  sl.gain.reserve(n);
  sl.grade.reserve(n);
  sl.relevant.reserve(n);
  sl.count.reserve(n);
  sl.cum_gain.reserve(n);
  int count = 0;
  double cum = 0.0;
  for (const DocGain& g : per_rank) {
    count += g.relevant ? 1 : 0;
    cum += g.gain;
    sl.gain.push_back(g.gain);
    sl.grade.push_back(g.grade);
    sl.relevant.push_back(g.relevant ? 1 : 0);
    sl.count.push_back(count);
    sl.cum_gain.push_back(cum);
  }

  double ideal_cum = 0.0;
  double top_grade = 0.0;
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    if (!ideal[i].relevant) {
      throw ValidationError("ideal list holds a nonrelevant document");
    }
    if (i > 0 && ideal[i].gain > ideal[i - 1].gain) {
      throw ValidationError("ideal list is not sorted by gain");
    }
    ideal_cum += ideal[i].gain;
    top_grade = std::max(top_grade, ideal[i].grade);
    sl.ideal_gain.push_back(ideal[i].gain);
    sl.ideal_grade.push_back(ideal[i].grade);
    sl.ideal_cum_gain.push_back(ideal_cum);
  }
  sl.num_relevant = static_cast<int>(ideal.size());
  sl.max_grade = max_grade > 0.0 ? max_grade : top_grade;
  return sl;
}

std::vector<std::string> IdealRanking(const DocGainTable& judged,
                                      const TopicClasses* classes) {
  // Best member per class; documents outside any class stand alone.
  std::map<std::string_view, std::string_view> best_of_class;
  std::vector<std::string_view> candidates;
  auto better = [&](std::string_view a, std::string_view b) {
    const DocGain& ga = judged.find(a)->second;
    const DocGain& gb = judged.find(b)->second;
    if (ga.gain != gb.gain) return ga.gain > gb.gain;
    if (ga.grade != gb.grade) return ga.grade > gb.grade;
    return a < b;
  };
  for (const auto& [doc, g] : judged) {
    if (!g.relevant) continue;
    if (classes != nullptr) {
      auto it = classes->class_of.find(doc);
      if (it != classes->class_of.end()) {
        auto [slot, inserted] = best_of_class.emplace(it->second, doc);
        if (!inserted && better(doc, slot->second)) slot->second = doc;
        continue;
      }
    }
    candidates.push_back(doc);
  }
  for (const auto& [cls, doc] : best_of_class) candidates.push_back(doc);
  std::sort(candidates.begin(), candidates.end(), better);
  return {candidates.begin(), candidates.end()};
}

ScoredList BuildScoredList(std::span<const std::string> ranking,
                           const DocGainTable& judged,
                           const ScoredListOptions& options) {
  std::vector<std::string> docs;
  std::vector<DocGain> per_rank;
  docs.reserve(ranking.size());
  per_rank.reserve(ranking.size());
  for (const std::string& doc : ranking) {
    auto it = judged.find(doc);
    if (it == judged.end()) {
      if (options.condensed) continue;
      per_rank.push_back(DocGain{});
    } else {
      per_rank.push_back(it->second);
    }
    docs.push_back(doc);
  }
  if (options.classes != nullptr) {
    DedupEquivalence(docs, *options.classes, per_rank);
  }

  std::vector<DocGain> ideal;
  for (const std::string& doc : IdealRanking(judged, options.classes)) {
    ideal.push_back(judged.find(doc)->second);
  }
  return MakeScoredList(std::move(docs), std::move(per_rank), std::move(ideal),
                        options.max_grade);
}

ScoredList BuildScoredList(const TopicRun& run, const GradedQrels& qrels,
                           const GainScheme& scheme,
                           const ScoredListOptions& options) {
  const TopicQrels* topic = qrels.topic(run.topic);
  if (topic == nullptr) {
    throw ValidationError("topic " + run.topic + " has no judgments");
  }
  auto judged = GainsFromLevels(topic->topic_level(), scheme);
  auto ranking = run.ranking();
  ScoredListOptions opts = options;
  if (opts.max_grade <= 0.0) opts.max_grade = qrels.max_level();
  return BuildScoredList(ranking, judged, opts);
}

// ---------------------------------------------------------------------------

double PrecisionAt(const ScoredList& sl, std::size_t cutoff) {
  CheckCutoff(cutoff);
  return static_cast<double>(sl.C(cutoff)) / static_cast<double>(cutoff);
}

MeasureValue RPrecision(const ScoredList& sl) {
  if (sl.num_relevant == 0) return std::nullopt;
  return static_cast<double>(sl.C(sl.num_relevant)) / sl.num_relevant;
}

MeasureValue AveragePrecision(const ScoredList& sl) {
  if (sl.num_relevant == 0) return std::nullopt;
  double sum = 0.0;
  for (std::size_t r = 1; r <= sl.size(); ++r) {
    if (sl.relevant[r - 1]) sum += static_cast<double>(sl.C(r)) / r;
  }
  return sum / sl.num_relevant;
}

double ReciprocalRank(const ScoredList& sl, std::size_t cutoff) {
  CheckCutoff(cutoff);
  for (std::size_t r = 1; r <= Depth(sl, cutoff); ++r) {
    if (sl.relevant[r - 1]) return 1.0 / static_cast<double>(r);
  }
  return 0.0;
}

double ReciprocalRank(const ScoredList& sl) {
  return sl.size() == 0 ? 0.0 : ReciprocalRank(sl, sl.size());
}

int HitAt1(const ScoredList& sl) {
  return sl.size() == 0 ? 0 : sl.relevant[0];
}

MeasureValue NgAt1(const ScoredList& sl) {
  if (sl.num_relevant == 0 || sl.ideal_gain[0] <= 0.0) return std::nullopt;
  double g1 = sl.size() == 0 ? 0.0 : sl.gain[0];
  return g1 / sl.ideal_gain[0];
}

MeasureValue NcgAt(const ScoredList& sl, std::size_t cutoff) {
  CheckCutoff(cutoff);
  double ideal = sl.ideal_cg(cutoff);
  if (sl.num_relevant == 0 || ideal <= 0.0) return std::nullopt;
  return sl.cg(cutoff) / ideal;
}

namespace {

double OriginalDiscountedSum(std::span<const double> gains, std::size_t depth,
                             double log_base) {
  const double log_b = std::log(log_base);
  double dcg = 0.0;
  for (std::size_t r = 1; r <= depth && r <= gains.size(); ++r) {
    double discount = std::max(1.0, std::log(static_cast<double>(r)) / log_b);
    dcg += gains[r - 1] / discount;
  }
  return dcg;
}

double MsDiscountedSum(std::span<const double> gains, std::size_t depth,
                       double log_base) {
  const double log_b = std::log(log_base);
  double dcg = 0.0;
  for (std::size_t r = 1; r <= depth && r <= gains.size(); ++r) {
    dcg += gains[r - 1] / (std::log(static_cast<double>(r + 1)) / log_b);
  }
  return dcg;
}

void CheckPatienceBase(double log_base) {
  if (!(log_base >= 2.0)) {
    throw ValidationError("logarithm base must be at least 2");
  }
}

}  // namespace

double DcgOriginal(const ScoredList& sl, std::size_t cutoff,
                   double log_base) {
  CheckCutoff(cutoff);
  CheckPatienceBase(log_base);
  return OriginalDiscountedSum(sl.gain, cutoff, log_base);
}

MeasureValue NdcgOriginal(const ScoredList& sl, std::size_t cutoff,
                          double log_base) {
  double dcg = DcgOriginal(sl, cutoff, log_base);
  double ideal = OriginalDiscountedSum(sl.ideal_gain, cutoff, log_base);
  if (sl.num_relevant == 0 || ideal <= 0.0) return std::nullopt;
  return dcg / ideal;
}

MeasureValue MsNdcg(const ScoredList& sl, std::size_t cutoff,
                    double log_base) {
  CheckCutoff(cutoff);
  if (!(log_base > 1.0)) {
    throw ValidationError("logarithm base must exceed 1");
  }
  double ideal = MsDiscountedSum(sl.ideal_gain, cutoff, log_base);
  if (sl.num_relevant == 0 || ideal <= 0.0) return std::nullopt;
  return MsDiscountedSum(sl.gain, cutoff, log_base) / ideal;
}

double BlendedRatio(const ScoredList& sl, std::size_t r, double beta) {
  return (sl.C(r) + beta * sl.cg(r)) /
         (static_cast<double>(r) + beta * sl.ideal_cg(r));
}

MeasureValue QMeasure(const ScoredList& sl, double beta) {
  CheckBeta(beta);
  if (sl.num_relevant == 0) return std::nullopt;
  double sum = 0.0;
  for (std::size_t r = 1; r <= sl.size(); ++r) {
    if (sl.relevant[r - 1]) sum += BlendedRatio(sl, r, beta);
  }
  return sum / sl.num_relevant;
}

MeasureValue QAt(const ScoredList& sl, std::size_t cutoff, double beta) {
  CheckCutoff(cutoff);
  CheckBeta(beta);
  if (sl.num_relevant == 0) return std::nullopt;
  double sum = 0.0;
  for (std::size_t r = 1; r <= Depth(sl, cutoff); ++r) {
    if (sl.relevant[r - 1]) sum += BlendedRatio(sl, r, beta);
  }
  return sum /
         static_cast<double>(
             std::min(cutoff, static_cast<std::size_t>(sl.num_relevant)));
}

std::size_t PreferredRank(const ScoredList& sl, std::size_t cutoff) {
  CheckCutoff(cutoff);
  std::size_t preferred = 0;
  double best = 0.0;
  for (std::size_t r = 1; r <= Depth(sl, cutoff); ++r) {
    if (!sl.relevant[r - 1]) continue;
    if (preferred == 0 || sl.grade[r - 1] > best) {
      preferred = r;
      best = sl.grade[r - 1];
    }
  }
  return preferred;
}

double PPlus(const ScoredList& sl, std::size_t cutoff, double beta) {
  CheckBeta(beta);
  std::size_t rp = PreferredRank(sl, cutoff);
  if (rp == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t r = 1; r <= rp; ++r) {
    if (sl.relevant[r - 1]) sum += BlendedRatio(sl, r, beta);
  }
  return sum / sl.C(rp);
}

double ErrAt(const ScoredList& sl, std::size_t cutoff, double level_base) {
  CheckCutoff(cutoff);
  if (!(level_base >= 2.0)) throw ValidationError("ERR base must be at least 2");
  return ErrOver(sl.grade, cutoff, sl.max_grade, level_base);
}

MeasureValue NerrAt(const ScoredList& sl, std::size_t cutoff,
                    double level_base) {
  double err = ErrAt(sl, cutoff, level_base);
  double ideal = ErrOver(sl.ideal_grade, cutoff, sl.max_grade, level_base);
  if (sl.num_relevant == 0 || ideal <= 0.0) return std::nullopt;
  return err / ideal;
}

// ---------------------------------------------------------------------------

double Ncu(const ScoredList& sl, StopDistribution stop, Utility utility,
           const NcuParams& params) {
  CheckBeta(params.beta);
  const std::size_t depth =
      params.cutoff == 0 ? sl.size() : std::min(params.cutoff, sl.size());

  // Stopping distribution as (rank, weight) pairs over one normaliser, so
  // the uniform cases sum in the same order as the direct kernels.
  std::vector<std::pair<std::size_t, double>> stops;
  double normaliser = 1.0;
  switch (stop) {
    case StopDistribution::kUniformOverRelevant:
      for (std::size_t r = 1; r <= sl.size(); ++r) {
        if (sl.relevant[r - 1]) stops.emplace_back(r, 1.0);
      }
      normaliser = sl.num_relevant;
      break;
    case StopDistribution::kUniformOverRelevantAbovePreferred: {
      if (depth == 0) break;
      std::size_t rp = PreferredRank(sl, depth);
      if (rp == 0) break;
      for (std::size_t r = 1; r <= rp; ++r) {
        if (sl.relevant[r - 1]) stops.emplace_back(r, 1.0);
      }
      normaliser = sl.C(rp);
      break;
    }
    case StopDistribution::kStopAtCutoff:
      if (params.cutoff == 0) {
        throw ValidationError("stop-at-cutoff needs a cutoff");
      }
      stops.emplace_back(params.cutoff, 1.0);
      break;
    case StopDistribution::kStopAtFirstRelevant:
      for (std::size_t r = 1; r <= depth; ++r) {
        if (sl.relevant[r - 1]) {
          stops.emplace_back(r, 1.0);
          break;
        }
      }
      break;
  }
  if (stops.empty()) return 0.0;

  double ncu = 0.0;
  for (const auto& [r, p] : stops) {
    double nu = 0.0;
    switch (utility) {
      case Utility::kBlendedRatio:
        nu = BlendedRatio(sl, r, params.beta);
        break;
      case Utility::kPrecision:
        nu = static_cast<double>(sl.C(r)) / static_cast<double>(r);
        break;
      case Utility::kReciprocalRank:
        nu = 1.0 / static_cast<double>(r);
        break;
    }
    ncu += p * nu;
  }
  return ncu / normaliser;
}

}  // namespace gradeval
