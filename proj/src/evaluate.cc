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

#include "gradeval/evaluate.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "gradeval/adhoc_measures.h"
#include "gradeval/diversity_measures.h"
#include "gradeval/errors.h"

namespace gradeval {
namespace {

enum class CutoffRule { kNone, kOptional, kRequired, kOne };

struct MeasureInfo {
  std::string_view name;  // lower-case input token
  MeasureKind kind;
  std::string_view label;
  CutoffRule cutoff;
};

constexpr MeasureInfo kMeasures[] = {
    {"ap", MeasureKind::kAp, "AP", CutoffRule::kNone},
    {"q", MeasureKind::kQ, "Q", CutoffRule::kOptional},
    {"p", MeasureKind::kPrecision, "P", CutoffRule::kRequired},
    {"rprec", MeasureKind::kRPrecision, "RPrec", CutoffRule::kNone},
    {"r-prec", MeasureKind::kRPrecision, "RPrec", CutoffRule::kNone},
    {"rr", MeasureKind::kRr, "RR", CutoffRule::kOptional},
    {"hit", MeasureKind::kHit1, "Hit", CutoffRule::kOne},
    {"ng", MeasureKind::kNg1, "nG", CutoffRule::kOne},
    {"ncg", MeasureKind::kNcg, "nCG", CutoffRule::kRequired},
    {"dcg", MeasureKind::kDcg, "DCG", CutoffRule::kRequired},
    {"ndcg", MeasureKind::kNdcg, "nDCG", CutoffRule::kRequired},
    {"ms-ndcg", MeasureKind::kMsNdcg, "MSnDCG", CutoffRule::kRequired},
    {"msndcg", MeasureKind::kMsNdcg, "MSnDCG", CutoffRule::kRequired},
    {"p+", MeasureKind::kPPlus, "P+", CutoffRule::kOptional},
    {"err", MeasureKind::kErr, "ERR", CutoffRule::kRequired},
    {"nerr", MeasureKind::kNerr, "nERR", CutoffRule::kRequired},
    {"i-rec", MeasureKind::kIntentRecall, "I-rec", CutoffRule::kRequired},
    {"d-ndcg", MeasureKind::kDNdcg, "D-nDCG", CutoffRule::kRequired},
    {"d-q", MeasureKind::kDQ, "D-Q", CutoffRule::kRequired},
    {"d#-ndcg", MeasureKind::kDSharpNdcg, "D#-nDCG", CutoffRule::kRequired},
    {"d#-q", MeasureKind::kDSharpQ, "D#-Q", CutoffRule::kRequired},
    {"din-ndcg", MeasureKind::kDinNdcg, "DIN-nDCG", CutoffRule::kRequired},
    {"din-q", MeasureKind::kDinQ, "DIN-Q", CutoffRule::kRequired},
    {"p+q", MeasureKind::kPPlusQ, "P+Q", CutoffRule::kRequired},
    {"v-score", MeasureKind::kVScore, "V-score", CutoffRule::kRequired},
    {"qu-score", MeasureKind::kQuScore, "QU-score", CutoffRule::kRequired},
    {"vi-d-ndcg", MeasureKind::kViDNdcg, "VI-D-nDCG", CutoffRule::kRequired},
    {"vi-d#-ndcg", MeasureKind::kViDSharpNdcg, "VI-D#-nDCG",
     CutoffRule::kRequired},
};

const MeasureInfo& InfoFor(MeasureKind kind) {
  for (const MeasureInfo& info : kMeasures) {
    if (info.kind == kind) return info;
  }
  throw ValidationError("unknown measure kind");
}

bool NeedsIntents(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kIntentRecall:
    case MeasureKind::kDNdcg:
    case MeasureKind::kDQ:
    case MeasureKind::kDSharpNdcg:
    case MeasureKind::kDSharpQ:
    case MeasureKind::kDinNdcg:
    case MeasureKind::kDinQ:
    case MeasureKind::kPPlusQ:
    case MeasureKind::kVScore:
    case MeasureKind::kQuScore:
    case MeasureKind::kViDNdcg:
    case MeasureKind::kViDSharpNdcg:
      return true;
    default:
      return false;
  }
}

double Round4(double value) {
  return std::stod(FormatFixed4(value));
}

// Lazily built per-topic inputs shared by the requested measures.
class TopicScorer {
 public:
  TopicScorer(const EvalInputs& inputs, const EvalSettings& settings,
              const GainScheme& scheme, const TopicRun& run,
              const TopicQrels& qrels)
      : inputs_(inputs),
        settings_(settings),
        scheme_(scheme),
        run_(run),
        qrels_(qrels),
        ranking_(run.ranking()) {}

  MeasureValue Score(const MeasureSpec& spec) {
    const std::size_t l = spec.cutoff.value_or(0);
    const double beta = settings_.beta;
    switch (spec.kind) {
      case MeasureKind::kAp:
        return AveragePrecision(Adhoc());
      case MeasureKind::kQ:
        return spec.cutoff ? QAt(Adhoc(), l, beta) : QMeasure(Adhoc(), beta);
      case MeasureKind::kPrecision:
        return PrecisionAt(Adhoc(), l);
      case MeasureKind::kRPrecision:
        return RPrecision(Adhoc());
      case MeasureKind::kRr:
        return spec.cutoff ? ReciprocalRank(Adhoc(), l)
                           : ReciprocalRank(Adhoc());
      case MeasureKind::kHit1:
        return HitAt1(Adhoc());
      case MeasureKind::kNg1:
        return NgAt1(Adhoc());
      case MeasureKind::kNcg:
        return NcgAt(Adhoc(), l);
      case MeasureKind::kDcg:
        return DcgOriginal(Adhoc(), l, settings_.log_base);
      case MeasureKind::kNdcg:
        return NdcgOriginal(Adhoc(), l, settings_.log_base);
      case MeasureKind::kMsNdcg:
        return MsNdcg(Adhoc(), l);
      case MeasureKind::kPPlus: {
        const ScoredList& sl = Adhoc();
        std::size_t depth = spec.cutoff ? l : std::max<std::size_t>(1, sl.size());
        return PPlus(sl, depth, beta);
      }
      case MeasureKind::kErr:
        return ErrAt(Adhoc(), l, settings_.err_base);
      case MeasureKind::kNerr:
        return NerrAt(Adhoc(), l, settings_.err_base);
      case MeasureKind::kIntentRecall:
        return IntentRecallAt(Global(), l);
      case MeasureKind::kDNdcg:
        return DMeasureAt(Global(), l, DiversityBase::kMsNdcg);
      case MeasureKind::kDQ:
        return DMeasureAt(Global(), l, DiversityBase::kQ, beta);
      case MeasureKind::kDSharpNdcg:
        return Sharp(Global(), l, DiversityBase::kMsNdcg);
      case MeasureKind::kDSharpQ:
        return Sharp(Global(), l, DiversityBase::kQ);
      case MeasureKind::kDinNdcg:
        return DMeasureAt(Din(), l, DiversityBase::kMsNdcg);
      case MeasureKind::kDinQ:
        return DMeasureAt(Din(), l, DiversityBase::kQ, beta);
      case MeasureKind::kPPlusQ:
        return PPlusQAt(ranking_, qrels_, Intents(), scheme_, l, beta);
      case MeasureKind::kVScore:
        return VScore(l);
      case MeasureKind::kQuScore: {
        MeasureValue sharp = Sharp(Global(), l, DiversityBase::kMsNdcg);
        if (!sharp) return std::nullopt;
        return QuScoreAt(*sharp, VScore(l), settings_.lambda);
      }
      case MeasureKind::kViDNdcg:
        return DMeasureAt(Vi(), l, DiversityBase::kMsNdcg);
      case MeasureKind::kViDSharpNdcg:
        return Sharp(Vi(), l, DiversityBase::kMsNdcg);
    }
    return std::nullopt;
  }

 private:
  const ScoredList& Adhoc() {
    if (!adhoc_) {
      ScoredListOptions options;
      options.max_grade = inputs_.qrels->max_level();
      if (inputs_.classes != nullptr) {
        options.classes = inputs_.classes->topic(run_.topic);
      }
      adhoc_ = BuildScoredList(
          ranking_, GainsFromLevels(qrels_.topic_level(), scheme_), options);
    }
    return *adhoc_;
  }

  const TopicIntents& Intents() {
    const TopicIntents* intents = inputs_.intents == nullptr
                                      ? nullptr
                                      : inputs_.intents->topic(run_.topic);
    if (intents == nullptr) {
      throw ValidationError("topic " + run_.topic +
                            " has no intent probabilities");
    }
    return *intents;
  }

  const GlobalGainList& Global() {
    if (!global_) {
      global_ = BuildGlobalGainList(ranking_, qrels_, Intents(), scheme_);
    }
    return *global_;
  }

  const GlobalGainList& Din() {
    if (!din_) {
      din_ = BuildDinGlobalGainList(ranking_, qrels_, Intents(), scheme_);
    }
    return *din_;
  }

  const GlobalGainList& Vi() {
    if (!vi_) {
      vi_ = BuildViGlobalGainList(run_, qrels_, Intents(), scheme_,
                                  settings_.vertical_gain);
    }
    return *vi_;
  }

  MeasureValue Sharp(const GlobalGainList& ggl, std::size_t l,
                     DiversityBase base) {
    MeasureValue d = DMeasureAt(ggl, l, base, settings_.beta);
    if (!d) return std::nullopt;
    return DSharp(IntentRecallAt(ggl, l), *d, settings_.gamma);
  }

  double VScore(std::size_t l) {
    if (inputs_.subtopics == nullptr) {
      throw ValidationError("V-score needs a subtopic-to-intent map");
    }
    return VScoreAt(run_, *inputs_.subtopics, Intents(), l);
  }

  const EvalInputs& inputs_;
  const EvalSettings& settings_;
  const GainScheme& scheme_;
  const TopicRun& run_;
  const TopicQrels& qrels_;
  std::vector<std::string> ranking_;
  std::optional<ScoredList> adhoc_;
  std::optional<GlobalGainList> global_;
  std::optional<GlobalGainList> din_;
  std::optional<GlobalGainList> vi_;
};

std::set<std::string, std::less<>> JudgedDocsOf(const TopicQrels& qrels) {
  std::set<std::string, std::less<>> docs;
  for (const auto& [intent, levels] : qrels.by_intent) {
    for (const auto& [doc, level] : levels) docs.insert(doc);
  }
  return docs;
}

}  // namespace

std::string FormatFixed4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

std::string MeasureSpec::label() const {
  std::string out(InfoFor(kind).label);
  if (cutoff) out += "@" + std::to_string(*cutoff);
  return out;
}

std::vector<MeasureSpec> ParseMeasureList(
    std::string_view spec, std::span<const std::size_t> default_cutoffs) {
  std::vector<MeasureSpec> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::string lower = token;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    std::string name = lower;
    std::optional<std::size_t> cutoff;
    if (auto at = lower.rfind('@'); at != std::string::npos) {
      name = lower.substr(0, at);
      std::string_view digits = std::string_view(lower).substr(at + 1);
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(digits.data(),
                                       digits.data() + digits.size(), value);
      if (ec != std::errc() || ptr != digits.data() + digits.size() ||
          value < 1) {
        throw ValidationError("bad cutoff in measure '" + token + "'");
      }
      cutoff = value;
    }
    const MeasureInfo* info = nullptr;
    for (const MeasureInfo& candidate : kMeasures) {
      if (candidate.name == name) info = &candidate;
    }
    if (info == nullptr) {
      throw ValidationError("unknown measure '" + token + "'");
    }
    switch (info->cutoff) {
      case CutoffRule::kNone:
        if (cutoff) {
          throw ValidationError("measure '" + token + "' takes no cutoff");
        }
        out.push_back({info->kind, std::nullopt});
        break;
      case CutoffRule::kOne:
        if (cutoff && *cutoff != 1) {
          throw ValidationError("measure '" + token + "' is defined at 1 only");
        }
        out.push_back({info->kind, 1});
        break;
      case CutoffRule::kOptional:
        out.push_back({info->kind, cutoff});
        break;
      case CutoffRule::kRequired:
        if (cutoff) {
          out.push_back({info->kind, cutoff});
        } else {
          if (default_cutoffs.empty()) {
            throw ValidationError("measure '" + token + "' needs a cutoff");
          }
          for (std::size_t c : default_cutoffs) {
            if (c < 1) throw ValidationError("cutoffs must be at least 1");
            out.push_back({info->kind, c});
          }
        }
        break;
    }
    token.clear();
  };
  for (char c : spec) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

RankedRun Condense(const RankedRun& run, const GradedQrels& qrels,
                   std::vector<Warning>* warnings) {
  RankedRun out;
  out.tag = run.tag;
  for (const TopicRun& topic : run.topics()) {
    out.AddTopic(topic.topic);
    const TopicQrels* judged_topic = qrels.topic(topic.topic);
    std::set<std::string, std::less<>> judged;
    if (judged_topic != nullptr) judged = JudgedDocsOf(*judged_topic);
    std::size_t kept = 0;
    for (const RunEntry& entry : topic.entries) {
      if (judged.count(entry.doc) == 0) continue;
      out.Add(topic.topic, entry);
      ++kept;
    }
    if (kept == 0 && warnings != nullptr) {
      warnings->push_back(
          {0, "topic " + topic.topic + " has no judged documents left"});
    }
  }
  return out;
}

EvaluationReport Evaluate(const EvalInputs& inputs,
                          const EvalSettings& settings) {
  if (inputs.qrels == nullptr || inputs.run == nullptr) {
    throw ValidationError("evaluation needs qrels and a run");
  }
  if (settings.measures.empty()) {
    throw ValidationError("no measures requested");
  }
  for (const MeasureSpec& spec : settings.measures) {
    if (NeedsIntents(spec.kind) && inputs.intents == nullptr) {
      throw ValidationError(spec.label() + " needs an intent file");
    }
    if ((spec.kind == MeasureKind::kVScore ||
         spec.kind == MeasureKind::kQuScore) &&
        inputs.subtopics == nullptr) {
      throw ValidationError(spec.label() + " needs a subtopic map");
    }
  }
  const GradedQrels& qrels = *inputs.qrels;
  const GainScheme scheme = ParseGainScheme(settings.gains, qrels.max_level());

  EvaluationReport report;
  std::vector<Warning> condense_warnings;
  RankedRun condensed;
  const RankedRun* run = inputs.run;
  if (settings.condensed) {
    condensed = Condense(*inputs.run, qrels, &condense_warnings);
    run = &condensed;
    for (const Warning& w : condense_warnings) {
      report.warnings.push_back(w.message);
    }
  }

  // A topic whose ranking is empty counts as absent from the run.
  std::map<std::string, const TopicRun*> topics;
  for (const TopicRun& topic : run->topics()) {
    if (!topic.entries.empty()) topics.emplace(topic.topic, &topic);
  }
  if (topics.empty()) {
    report.warnings.push_back("run has no ranked documents; nothing scored");
  }

  std::map<std::string, TopicRun> placeholders;
  if (settings.score_missing_topics && !topics.empty()) {
    for (const auto& [topic_id, topic] : qrels.topics()) {
      if (topics.count(topic_id)) continue;
      TopicRun& empty = placeholders[topic_id];
      empty.topic = topic_id;
      ++report.num_missing;
    }
    for (const auto& [topic_id, topic] : placeholders) {
      topics.emplace(topic_id, &topic);
    }
  }

  std::vector<std::pair<std::string, const TopicRun*>> work(topics.begin(),
                                                            topics.end());
  std::vector<std::vector<MeasureValue>> values(work.size());
  std::vector<std::exception_ptr> failures(work.size());

  auto score_topic = [&](std::size_t index) {
    const auto& [topic_id, topic_run] = work[index];
    auto& row = values[index];
    row.assign(settings.measures.size(), std::nullopt);
    const TopicQrels* topic_qrels = qrels.topic(topic_id);
    if (topic_qrels == nullptr) return;
    TopicScorer scorer(inputs, settings, scheme, *topic_run, *topic_qrels);
    for (std::size_t m = 0; m < settings.measures.size(); ++m) {
      row[m] = scorer.Score(settings.measures[m]);
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(settings.threads,
                                      static_cast<unsigned>(work.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < work.size(); ++i) score_topic(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < work.size(); i = next++) {
          try {
            score_topic(i);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  std::vector<double> sums(settings.measures.size(), 0.0);
  std::vector<std::size_t> counts(settings.measures.size(), 0);
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::size_t m = 0; m < settings.measures.size(); ++m) {
      MeasureValue v = values[i][m];
      if (!v) {
        ++report.num_undefined;
        if (settings.undefined_policy == UndefinedPolicy::kExclude) continue;
        v = 0.0;
      }
      report.rows.push_back(
          {work[i].first, settings.measures[m].label(), *v});
      // Means average the printed (rounded) values.
      sums[m] += Round4(*v);
      ++counts[m];
    }
  }
  report.num_topics = work.size();
  for (std::size_t m = 0; m < settings.measures.size(); ++m) {
    if (counts[m] == 0) continue;
    report.rows.push_back({"all", settings.measures[m].label(),
                           sums[m] / static_cast<double>(counts[m])});
  }
  return report;
}

std::string EvaluationReport::ToText() const {
  std::string out;
  for (const ReportRow& row : rows) {
    out += row.topic;
    out += '\t';
    out += row.measure;
    out += '\t';
    out += FormatFixed4(row.value);
    out += '\n';
  }
  out += "all\tnum_topics\t" + std::to_string(num_topics) + "\n";
  out += "all\tnum_undefined\t" + std::to_string(num_undefined) + "\n";
  out += "all\tnum_missing\t" + std::to_string(num_missing) + "\n";
  return out;
}

std::string ShowGains(const GainScheme& scheme,
                      const GainReportOptions& options) {
  std::ostringstream out;
  out << "level\tgain\n";
  for (int level = scheme.max_level(); level >= 0; --level) {
    out << 'L' << level << '\t' << FormatReal(scheme.gain(level)) << '\n';
  }
  if (options.labels == nullptr) return out.str();

  double max_score = 0.0;
  if (options.max_score) {
    max_score = *options.max_score;
  } else {
    for (const auto& [topic, items] : options.labels->topics()) {
      for (const auto& [doc, labels] : items) {
        for (double s : LabelScores(labels, options.weights)) {
          max_score = std::max(max_score, s);
        }
      }
    }
  }
  out << "topic\tdoc\tsum\tmean\tupgraded\n";
  for (const auto& [topic, items] : options.labels->topics()) {
    for (const auto& [doc, labels] : items) {
      auto scores = LabelScores(labels, options.weights);
      double sum = 0.0;
      for (double s : scores) sum += s;
      out << topic << '\t' << doc << '\t' << FormatFixed4(sum) << '\t'
          << FormatFixed4(AggregateAverage(scores)) << '\t'
          << FormatFixed4(UnanimityUpgradeFromScores(
                 scores, options.upgrade_strength, max_score))
          << '\n';
    }
  }
  return out.str();
}

}  // namespace gradeval
