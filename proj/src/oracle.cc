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

#include "gradeval/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace gradeval::oracle {
namespace {

using Ranking = std::vector<std::string>;
using Value = std::optional<double>;

// One set of judgments plus its gain table.
struct Judged {
  const std::map<std::string, int>* levels;
  const std::vector<double>* gains;

  int Level(const std::string& doc) const {
    auto it = levels->find(doc);
    return it == levels->end() ? 0 : it->second;
  }
  double Gain(const std::string& doc) const { return (*gains)[Level(doc)]; }
  bool Relevant(const std::string& doc) const { return Level(doc) > 0; }

  int NumRelevant() const {
    int n = 0;
    for (const auto& [doc, level] : *levels) n += level > 0 ? 1 : 0;
    return n;
  }

  std::vector<double> IdealGains() const {
    std::vector<double> out;
    for (const auto& [doc, level] : *levels) {
      if (level > 0) out.push_back((*gains)[level]);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
  }

  std::vector<int> IdealLevels() const {
    std::vector<int> out;
    for (const auto& [doc, level] : *levels) {
      if (level > 0) out.push_back(level);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
  }
};

// Relevant documents among ranks 1..r.
int CountRelevant(const Judged& j, const Ranking& ranking, std::size_t r) {
  int c = 0;
  for (std::size_t i = 0; i < r && i < ranking.size(); ++i) {
    if (j.Relevant(ranking[i])) ++c;
  }
  return c;
}

double CumulativeGain(const Judged& j, const Ranking& ranking, std::size_t r) {
  double cg = 0.0;
  for (std::size_t i = 0; i < r && i < ranking.size(); ++i) {
    cg += j.Gain(ranking[i]);
  }
  return cg;
}

double IdealCumulativeGain(const Judged& j, std::size_t r) {
  auto ideal = j.IdealGains();
  double cg = 0.0;
  for (std::size_t i = 0; i < r && i < ideal.size(); ++i) cg += ideal[i];
  return cg;
}

double Blended(const Judged& j, const Ranking& ranking, std::size_t r,
               double beta) {
  double numerator = CountRelevant(j, ranking, r) +
                     beta * CumulativeGain(j, ranking, r);
  double denominator =
      static_cast<double>(r) + beta * IdealCumulativeGain(j, r);
  return numerator / denominator;
}

Value Q(const Judged& j, const Ranking& ranking, double beta) {
  int big_r = j.NumRelevant();
  if (big_r == 0) return std::nullopt;
  double sum = 0.0;
  for (std::size_t r = 1; r <= ranking.size(); ++r) {
    if (j.Relevant(ranking[r - 1])) sum += Blended(j, ranking, r, beta);
  }
  return sum / big_r;
}

Value QCut(const Judged& j, const Ranking& ranking, std::size_t l,
           double beta) {
  int big_r = j.NumRelevant();
  if (big_r == 0) return std::nullopt;
  double sum = 0.0;
  for (std::size_t r = 1; r <= l && r <= ranking.size(); ++r) {
    if (j.Relevant(ranking[r - 1])) sum += Blended(j, ranking, r, beta);
  }
  return sum / static_cast<double>(std::min<std::size_t>(l, big_r));
}

Value AP(const Judged& j, const Ranking& ranking) {
  int big_r = j.NumRelevant();
  if (big_r == 0) return std::nullopt;
  double sum = 0.0;
  for (std::size_t r = 1; r <= ranking.size(); ++r) {
    if (j.Relevant(ranking[r - 1])) {
      sum += static_cast<double>(CountRelevant(j, ranking, r)) / r;
    }
  }
  return sum / big_r;
}

double PPlus(const Judged& j, const Ranking& ranking, std::size_t l,
             double beta) {
  int top = 0;
  for (std::size_t i = 0; i < l && i < ranking.size(); ++i) {
    top = std::max(top, j.Level(ranking[i]));
  }
  if (top == 0) return 0.0;
  std::size_t rp = 0;
  for (std::size_t i = 0; i < l && i < ranking.size(); ++i) {
    if (j.Level(ranking[i]) == top) {
      rp = i + 1;
      break;
    }
  }
  double sum = 0.0;
  for (std::size_t r = 1; r <= rp; ++r) {
    if (j.Relevant(ranking[r - 1])) sum += Blended(j, ranking, r, beta);
  }
  return sum / CountRelevant(j, ranking, rp);
}

double MsDcg(const std::vector<double>& gains, std::size_t l) {
  double dcg = 0.0;
  for (std::size_t r = 1; r <= l && r <= gains.size(); ++r) {
    dcg += gains[r - 1] / std::log2(static_cast<double>(r) + 1.0);
  }
  return dcg;
}

double OriginalDcg(const std::vector<double>& gains, std::size_t l,
                   double base) {
  double dcg = 0.0;
  for (std::size_t r = 1; r <= l && r <= gains.size(); ++r) {
    double lg = std::log2(static_cast<double>(r)) / std::log2(base);
    dcg += lg < 1.0 ? gains[r - 1] : gains[r - 1] / lg;
  }
  return dcg;
}

std::vector<double> RankGains(const Judged& j, const Ranking& ranking) {
  std::vector<double> out;
  for (const auto& doc : ranking) out.push_back(j.Gain(doc));
  return out;
}

Value Ratio(double numerator, double denominator, bool defined) {
  if (!defined || denominator <= 0.0) return std::nullopt;
  return numerator / denominator;
}

double Err(const std::vector<int>& levels, std::size_t l, int max_level,
           double base) {
  auto stop = [&](int x) {
    return (std::pow(base, x) - 1.0) / std::pow(base, max_level);
  };
  double err = 0.0;
  for (std::size_t r = 1; r <= l && r <= levels.size(); ++r) {
    double reach = 1.0;
    for (std::size_t i = 1; i < r; ++i) reach *= 1.0 - stop(levels[i - 1]);
    err += reach * stop(levels[r - 1]) / static_cast<double>(r);
  }
  return err;
}

int TopLevel(const SmallInstance& instance) {
  if (instance.max_level > 0) return instance.max_level;
  int top = 0;
  for (const auto& [doc, level] : instance.levels) top = std::max(top, level);
  return top;
}

// --- diversity -------------------------------------------------------------

int IntentLevel(const SmallIntent& intent, const std::string& doc) {
  auto it = intent.levels.find(doc);
  return it == intent.levels.end() ? 0 : it->second;
}

double GlobalGain(const SmallInstance& in, const std::string& doc) {
  double gg = 0.0;
  for (const auto& intent : in.intents) {
    gg += intent.probability * in.gains[IntentLevel(intent, doc)];
  }
  return gg;
}

std::vector<double> GlobalIdeal(const SmallInstance& in) {
  std::set<std::string> universe;
  for (const auto& intent : in.intents) {
    for (const auto& [doc, level] : intent.levels) universe.insert(doc);
  }
  std::vector<double> out;
  for (const auto& doc : universe) {
    double gg = GlobalGain(in, doc);
    if (gg > 0.0) out.push_back(gg);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

double IntentRecall(const SmallInstance& in, const Ranking& ranking,
                    std::size_t l) {
  if (in.intents.empty()) throw std::invalid_argument("no intents");
  int covered = 0;
  for (const auto& intent : in.intents) {
    bool hit = false;
    for (std::size_t i = 0; i < l && i < ranking.size(); ++i) {
      hit = hit || IntentLevel(intent, ranking[i]) > 0;
    }
    covered += hit ? 1 : 0;
  }
  return static_cast<double>(covered) / in.intents.size();
}

Value DNdcgFrom(const std::vector<double>& run_gg,
                const std::vector<double>& ideal, std::size_t l) {
  return Ratio(MsDcg(run_gg, l), MsDcg(ideal, l), !ideal.empty());
}

Value DQ(const SmallInstance& in, const Ranking& ranking, std::size_t l,
         double beta) {
  auto ideal = GlobalIdeal(in);
  if (ideal.empty()) return std::nullopt;
  double sum = 0.0;
  for (std::size_t r = 1; r <= l && r <= ranking.size(); ++r) {
    if (!(GlobalGain(in, ranking[r - 1]) > 0.0)) continue;
    int c = 0;
    double cg = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      double gg = GlobalGain(in, ranking[i]);
      c += gg > 0.0 ? 1 : 0;
      cg += gg;
    }
    double icg = 0.0;
    for (std::size_t i = 0; i < r && i < ideal.size(); ++i) icg += ideal[i];
    sum += (c + beta * cg) / (static_cast<double>(r) + beta * icg);
  }
  return sum / static_cast<double>(std::min(l, ideal.size()));
}

std::vector<double> DinGains(const SmallInstance& in, const Ranking& ranking) {
  std::vector<double> out;
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    double gg = 0.0;
    for (const auto& intent : in.intents) {
      double term = intent.probability *
                    in.gains[IntentLevel(intent, ranking[r])];
      if (!intent.navigational) {
        gg += term;
        continue;
      }
      bool is_new = true;
      for (std::size_t i = 0; i < r; ++i) {
        if (IntentLevel(intent, ranking[i]) > 0) is_new = false;
      }
      if (is_new) gg += term;
    }
    out.push_back(gg);
  }
  return out;
}

}  // namespace

std::vector<std::string> JudgedDocs(const SmallInstance& instance) {
  std::set<std::string> docs;
  for (const auto& [doc, level] : instance.levels) docs.insert(doc);
  for (const auto& intent : instance.intents) {
    for (const auto& [doc, level] : intent.levels) docs.insert(doc);
  }
  return {docs.begin(), docs.end()};
}

std::optional<double> NaiveMeasure(const SmallInstance& in,
                                   const std::vector<std::string>& ranking,
                                   std::string_view id,
                                   const NaiveParams& p) {
  const Judged j{&in.levels, &in.gains};
  const std::size_t l = p.cutoff;
  const int big_r = j.NumRelevant();

  if (id == "ap") return AP(j, ranking);
  if (id == "q") return Q(j, ranking, p.beta);
  if (id == "q-cut") return QCut(j, ranking, l, p.beta);
  if (id == "precision") {
    return static_cast<double>(CountRelevant(j, ranking, l)) / l;
  }
  if (id == "r-prec") {
    if (big_r == 0) return std::nullopt;
    return static_cast<double>(CountRelevant(j, ranking, big_r)) / big_r;
  }
  if (id == "rr") {
    for (std::size_t r = 1; r <= l && r <= ranking.size(); ++r) {
      if (j.Relevant(ranking[r - 1])) return 1.0 / r;
    }
    return 0.0;
  }
  if (id == "hit1") {
    return !ranking.empty() && j.Relevant(ranking[0]) ? 1.0 : 0.0;
  }
  if (id == "ng1") {
    auto ideal = j.IdealGains();
    double g1 = ranking.empty() ? 0.0 : j.Gain(ranking[0]);
    return Ratio(g1, ideal.empty() ? 0.0 : ideal[0], big_r > 0);
  }
  if (id == "ncg") {
    return Ratio(CumulativeGain(j, ranking, l), IdealCumulativeGain(j, l),
                 big_r > 0);
  }
  if (id == "dcg") return OriginalDcg(RankGains(j, ranking), l, p.log_base);
  if (id == "ndcg") {
    return Ratio(OriginalDcg(RankGains(j, ranking), l, p.log_base),
                 OriginalDcg(j.IdealGains(), l, p.log_base), big_r > 0);
  }
  if (id == "ms-ndcg") {
    return Ratio(MsDcg(RankGains(j, ranking), l), MsDcg(j.IdealGains(), l),
                 big_r > 0);
  }
  if (id == "p-plus") return PPlus(j, ranking, l, p.beta);
  if (id == "err" || id == "nerr") {
    std::vector<int> levels;
    for (const auto& doc : ranking) levels.push_back(j.Level(doc));
    double err = Err(levels, l, TopLevel(in), p.err_base);
    if (id == "err") return err;
    return Ratio(err, Err(j.IdealLevels(), l, TopLevel(in), p.err_base),
                 big_r > 0);
  }

  if (id == "i-rec") return IntentRecall(in, ranking, l);
  if (id == "d-ndcg" || id == "dsharp-ndcg") {
    std::vector<double> gg;
    for (const auto& doc : ranking) gg.push_back(GlobalGain(in, doc));
    Value d = DNdcgFrom(gg, GlobalIdeal(in), l);
    if (id == "d-ndcg" || !d) return d;
    return p.gamma * IntentRecall(in, ranking, l) + (1.0 - p.gamma) * *d;
  }
  if (id == "d-q" || id == "dsharp-q") {
    Value d = DQ(in, ranking, l, p.beta);
    if (id == "d-q" || !d) return d;
    return p.gamma * IntentRecall(in, ranking, l) + (1.0 - p.gamma) * *d;
  }
  if (id == "din-ndcg") {
    return DNdcgFrom(DinGains(in, ranking), GlobalIdeal(in), l);
  }
  if (id == "p-plus-q") {
    double total = 0.0;
    for (const auto& intent : in.intents) {
      const Judged ji{&intent.levels, &in.gains};
      double score = intent.navigational
                         ? PPlus(ji, ranking, l, p.beta)
                         : QCut(ji, ranking, l, p.beta).value_or(0.0);
      total += intent.probability * score;
    }
    return total;
  }
  throw std::invalid_argument("unknown measure id: " + std::string(id));
}

ExhaustiveResult ExhaustiveMax(const SmallInstance& instance,
                               std::string_view measure_id,
                               const NaiveParams& params) {
  auto docs = JudgedDocs(instance);
  if (docs.size() > kMaxExhaustiveDocs) {
    throw std::invalid_argument("too many documents for exhaustive search");
  }
  ExhaustiveResult result;
  do {
    auto value = NaiveMeasure(instance, docs, measure_id, params);
    if (value && (!result.best || *value > *result.best)) {
      result.best = value;
      result.ranking = docs;
    }
  } while (std::next_permutation(docs.begin(), docs.end()));
  return result;
}

}  // namespace gradeval::oracle
