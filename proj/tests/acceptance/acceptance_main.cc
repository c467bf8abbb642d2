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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
//
//   gradeval_acceptance <path-to-gradeval-cli> <fixtures-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "gradeval/adhoc_measures.h"
#include "gradeval/corpus_io.h"
#include "gradeval/diversity_measures.h"
#include "gradeval/evaluate.h"
#include "gradeval/gain_mapping.h"
#include "gradeval/oracle.h"
#include "../test_support.h"

namespace gradeval::acceptance {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), format, a);
  return buf;
}

// Tracks the worst absolute disagreement seen and any definedness
// mismatch.
struct Diff {
  double worst = 0.0;
  int mismatches = 0;
  int compared = 0;

  void Add(const std::optional<double>& a, const std::optional<double>& b) {
    ++compared;
    if (a.has_value() != b.has_value()) {
      ++mismatches;
      return;
    }
    if (a) {
      const double d = std::fabs(*a - *b);
      if (!(d <= worst)) worst = std::isnan(d) ? 1e300 : d;
    }
  }
  bool Within(double tol) const { return mismatches == 0 && worst <= tol; }
  std::string Summary() const {
    return std::to_string(compared) + " comparisons, max |diff| " +
           Fmt("%.3g", worst) +
           (mismatches ? ", " + std::to_string(mismatches) +
                             " definedness mismatches"
                       : "");
  }
};

// ---------------------------------------------------------------------------

Outcome QReducesToAp() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  Diff diff;
  for (int i = 0; i < 1000; ++i) {
    const auto c = testing::RandomAdhocCase(rng, 20, 4);
    const ScoredList sl = testing::ScoredOf(c.instance, c.ranking);
    diff.Add(QMeasure(sl, 0.0), AveragePrecision(sl));
  }
  const double secs = Seconds(start);
  return {diff.Within(kTol) && secs < 5.0,
          diff.Summary() + "; runtime " + Fmt("%.3f s", secs) + " (< 5 s)"};
}

Outcome OriginalNdcgReducesToNcg() {
  std::mt19937_64 rng(101);
  Diff diff;
  for (int i = 0; i < 1000; ++i) {
    const auto c = testing::RandomAdhocCase(rng, 20, 4);
    const ScoredList sl = testing::ScoredOf(c.instance, c.ranking);
    for (std::size_t l = 1; l <= 20; ++l) {
      for (double b : {std::max(2.0, double(l)), double(l) + 3.0, 25.0}) {
        diff.Add(NdcgOriginal(sl, l, b), NcgAt(sl, l));
      }
    }
  }
  return {diff.Within(kTol), diff.Summary() + " (b >= l)"};
}

Outcome NcuSpecialisations() {
  std::mt19937_64 rng(101);
  int exact = 0, total = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto c = testing::RandomAdhocCase(rng, 20, 4);
    const ScoredList sl = testing::ScoredOf(c.instance, c.ranking);
    if (sl.num_relevant == 0) continue;
    const double ap = *AveragePrecision(sl);
    const double q = *QMeasure(sl, 1.0);
    const double rr = ReciprocalRank(sl);
    total += 3;
    exact += Ncu(sl, StopDistribution::kUniformOverRelevant,
                 Utility::kPrecision, {}) == ap;
    exact += Ncu(sl, StopDistribution::kStopAtFirstRelevant,
                 Utility::kReciprocalRank, {}) == rr;
    exact += Ncu(sl, StopDistribution::kUniformOverRelevant,
                 Utility::kBlendedRatio, {0, 1.0}) == q;
  }
  return {exact == total, std::to_string(exact) + "/" + std::to_string(total) +
                              " bit-identical (AP, RR, Q)"};
}

Outcome WorkedNumbers() {
  std::vector<std::string> failed;
  auto check = [&](bool ok, const char* what) {
    if (!ok) failed.push_back(what);
  };
  const std::vector<double> s211 = {2, 1, 1}, s220 = {2, 2, 0};
  check(UnanimityUpgradeFromScores(s211, 0.2, 2.0) == 4.6, "(2,1,1)->4.6");
  check(UnanimityUpgradeFromScores(s220, 0.2, 2.0) == 4.0, "(2,2,0)->4.0");
  const std::vector<double> thirds = {1.0, 2.0 / 3.0, 1.0 / 3.0};
  check(AggregateAverage(thirds) == 2.0 / 3.0, "average->2/3");
  const LabelWeights w = ParseLabelWeights("A:2,B:1");
  const std::vector<std::string> aaab = {"A", "A", "A", "B"};
  const std::vector<std::string> aaaa = {"A", "A", "A", "A"};
  check(AggregateSum(aaab, w) == 7, "AAAB->L7");
  check(AggregateSum(aaaa, w) == 8, "AAAA->L8");
  check(GainScheme::Quadratic(2).gains() == std::vector<double>{0, 1, 3},
        "quadratic {3,1,0}");
  std::string detail = "6 exact checks";
  for (const auto& f : failed) detail += "; FAILED " + f;
  return {failed.empty(), detail};
}

// A topic whose intents all share one judgment set, so a single ranking
// is ideal for every intent at once.
oracle::SmallInstance SharedJudgments(const oracle::SmallInstance& in) {
  oracle::SmallInstance out = in;
  for (auto& intent : out.intents) intent.levels = in.intents[0].levels;
  out.levels = in.intents[0].levels;
  return out;
}

struct VCase {
  TopicIntents intents;
  SubtopicMap subtopics;
  TopicRun run;
  TopicRun ideal;
};

VCase RandomVerticalCase(std::mt19937_64& rng) {
  static const char* kVerticals[] = {"Web", "Image", "News", "Video"};
  VCase v;
  v.run.topic = v.ideal.topic = "t";
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int k = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < k; ++i) {
    Intent intent{"i" + std::to_string(i), 1.0 / k,
                  IntentKind::kInformational, {}};
    for (const char* vert : kVerticals) {
      if (rng() % 3) intent.verticals[vert] = u(rng);
    }
    intent.verticals["Web"] += 0.05;  // at least one positive weight
    v.intents.intents.push_back(intent);
    v.subtopics.Add("t", "s" + std::to_string(i), intent.id);
  }
  const int n = 1 + static_cast<int>(rng() % 8);
  for (int r = 0; r < n; ++r) {
    const int i = static_cast<int>(rng() % k);
    const std::string sub = "s" + std::to_string(i);
    v.run.entries.push_back(
        {sub, std::string(kVerticals[rng() % 4]), 0.0, r + 1});
    const auto& verts = v.intents.intents[i].verticals;
    const auto best = std::max_element(
        verts.begin(), verts.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    v.ideal.entries.push_back({sub, best->first, 0.0, r + 1});
  }
  return v;
}

Outcome NormalisationSuite() {
  std::mt19937_64 rng(505);
  int range_violations = 0, ideal_failures = 0, values = 0;
  auto in_range = [&](double x) {
    ++values;
    if (!(x >= -kTol && x <= 1.0 + kTol)) ++range_violations;
  };
  auto is_one = [&](double x) {
    if (!(std::fabs(x - 1.0) <= kTol)) ++ideal_failures;
  };
  for (int i = 0; i < 500; ++i) {
    const std::size_t l = 1 + i % 12;
    // Adhoc measures.
    const auto c = testing::RandomAdhocCase(rng, 20, 4);
    const ScoredList sl = testing::ScoredOf(c.instance, c.ranking);
    if (sl.num_relevant > 0) {
      const ScoredList ideal =
          testing::ScoredOf(c.instance, testing::IdealOf(c.instance));
      for (const ScoredList* s : {&sl, &ideal}) {
        in_range(*QMeasure(*s));
        in_range(*QAt(*s, l));
        in_range(*MsNdcg(*s, l));
        in_range(*NdcgOriginal(*s, l, 2.0));
        in_range(*NerrAt(*s, l));
        in_range(*NgAt1(*s));
      }
      is_one(*QMeasure(ideal));
      is_one(*QAt(ideal, l));
      is_one(*MsNdcg(ideal, l));
      is_one(*NdcgOriginal(ideal, l, 2.0));
      is_one(*NerrAt(ideal, l));
      is_one(*NgAt1(ideal));
    }

    // Diversity measures on a random ranking.
    const auto d = testing::RandomDiversityCase(rng, 8, 3);
    const auto qrels = testing::IntentQrelsOf(d.instance);
    const auto intents = testing::IntentsOf(d.instance);
    const auto scheme = testing::SchemeOf(d.instance);
    const GlobalGainList ggl =
        BuildGlobalGainList(d.ranking, qrels, intents, scheme);
    if (const auto dn = DMeasureAt(ggl, l, DiversityBase::kMsNdcg)) {
      in_range(*dn);
      in_range(DSharp(IntentRecallAt(ggl, l), *dn));
      const GlobalGainList best =
          BuildGlobalGainList(ggl.ideal_docs, qrels, intents, scheme);
      is_one(*DMeasureAt(best, l, DiversityBase::kMsNdcg));
    }
    in_range(PPlusQAt(d.ranking, qrels, intents, scheme, l));

    // Shared-judgment topic: the global ideal is ideal for every intent.
    const auto shared = SharedJudgments(d.instance);
    const auto sq = testing::IntentQrelsOf(shared);
    const auto si = testing::IntentsOf(shared);
    const auto ideal_docs = testing::IdealOf(shared);
    if (!ideal_docs.empty()) {
      const GlobalGainList sg = BuildGlobalGainList(ideal_docs, sq, si, scheme);
      const double dn = *DMeasureAt(sg, l, DiversityBase::kMsNdcg);
      const double sharp = DSharp(IntentRecallAt(sg, l), dn);
      const double ppq = PPlusQAt(ideal_docs, sq, si, scheme, l);
      in_range(sharp);
      in_range(ppq);
      is_one(dn);
      is_one(sharp);
      is_one(ppq);
    }

    // V-score and QU-score.
    const VCase v = RandomVerticalCase(rng);
    const std::size_t vl = v.run.entries.size();
    const double vs = VScoreAt(v.run, v.subtopics, v.intents, vl);
    const double vi = VScoreAt(v.ideal, v.subtopics, v.intents, vl);
    in_range(vs);
    in_range(vi);
    is_one(vi);
    in_range(QuScoreAt(0.5 + 0.5 * (i % 2), vs));
    is_one(QuScoreAt(1.0, vi));
  }
  return {range_violations == 0 && ideal_failures == 0,
          std::to_string(values) + " values checked, " +
              std::to_string(range_violations) + " outside [0,1], " +
              std::to_string(ideal_failures) + " ideal inputs != 1"};
}

Outcome OracleEquivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(606);
  Diff diff;
  for (int i = 0; i < 2000; ++i) {
    const bool diversity = i % 3 == 0;
    const auto c = diversity ? testing::RandomDiversityCase(rng, 8, 3)
                             : testing::RandomAdhocCase(rng, 20, 4);
    const std::string_view id =
        diversity ? testing::kDiversityMeasureIds
                        [rng() % testing::kDiversityMeasureIds.size()]
                  : testing::kAdhocMeasureIds
                        [rng() % testing::kAdhocMeasureIds.size()];
    oracle::NaiveParams p;
    p.cutoff = 1 + rng() % 15;
    p.beta = (rng() % 5) * 0.5;
    p.log_base = 2.0 + rng() % 5;
    p.err_base = 2.0 + rng() % 2;
    p.gamma = (rng() % 5) * 0.25;
    diff.Add(oracle::NaiveMeasure(c.instance, c.ranking, id, p),
             testing::ProductionMeasure(c.instance, c.ranking, id, p));
  }

  // Exhaustive search over every ordering of small instances.
  int exhaustive = 0, short_of_max = 0;
  Diff gap;
  for (int i = 0; i < 400; ++i) {
    const bool diversity = i % 2 == 1;
    const auto c = diversity ? testing::RandomDiversityCase(rng, 6, 3)
                             : testing::RandomAdhocCase(rng, 6, 4);
    if (oracle::JudgedDocs(c.instance).size() > 6) continue;
    const oracle::NaiveParams p{.cutoff = 1 + static_cast<std::size_t>(i % 6)};
    std::vector<std::string> ideal;
    std::vector<const char*> ids;
    if (diversity) {
      ideal = BuildGlobalGainList({}, testing::IntentQrelsOf(c.instance),
                                  testing::IntentsOf(c.instance),
                                  testing::SchemeOf(c.instance))
                  .ideal_docs;
      ids = {"d-ndcg"};
    } else {
      ideal = testing::IdealOf(c.instance);
      ids = {"q", "ms-ndcg", "nerr"};
    }
    for (const char* id : ids) {
      const auto best = oracle::ExhaustiveMax(c.instance, id, p);
      const auto at_ideal =
          testing::ProductionMeasure(c.instance, ideal, id, p);
      gap.Add(best.best, at_ideal);
      if (best.best && at_ideal && *at_ideal < *best.best - kTol) {
        ++short_of_max;
      }
      ++exhaustive;
    }
  }
  const double secs = Seconds(start);
  return {diff.Within(kTol) && gap.Within(kTol) && short_of_max == 0 &&
              secs < 120.0,
          "random triples: " + diff.Summary() + "; exhaustive: " +
              std::to_string(exhaustive) + " searches, " +
              std::to_string(short_of_max) + " ideal below max; runtime " +
              Fmt("%.2f s", secs) + " (< 120 s)"};
}

Outcome DiversityReductions() {
  std::mt19937_64 rng(707);
  int single_exact = 0, din_exact = 0, cases = 0;
  Diff binary;
  for (int i = 0; i < 500; ++i) {
    auto c = testing::RandomDiversityCase(rng, 10, 4);
    ++cases;

    // Single intent with probability 1.
    auto single = c.instance;
    single.intents.resize(1);
    single.intents[0].probability = 1.0;
    single.levels = single.intents[0].levels;
    const GlobalGainList sg = BuildGlobalGainList(
        c.ranking, testing::IntentQrelsOf(single), testing::IntentsOf(single),
        testing::SchemeOf(single));
    const ScoredList adhoc = testing::ScoredOf(single, c.ranking);
    const std::size_t l = 1 + i % 10;
    single_exact += DMeasureAt(sg, l, DiversityBase::kMsNdcg) ==
                    MsNdcg(adhoc, l);

    // No navigational intents.
    auto informational = c.instance;
    for (auto& intent : informational.intents) intent.navigational = false;
    const auto qrels = testing::IntentQrelsOf(informational);
    const auto intents = testing::IntentsOf(informational);
    const auto scheme = testing::SchemeOf(informational);
    din_exact += BuildDinGlobalGainList(c.ranking, qrels, intents, scheme)
                     .global_gain ==
                 BuildGlobalGainList(c.ranking, qrels, intents, scheme)
                     .global_gain;

    // Binary intentwise gains.
    auto binary_case = c.instance;
    for (auto& intent : binary_case.intents) {
      for (auto& [doc, level] : intent.levels) level = level > 0 ? 1 : 0;
    }
    binary_case.gains = {0.0, 1.0};
    const GlobalGainList bg = BuildGlobalGainList(
        c.ranking, testing::IntentQrelsOf(binary_case),
        testing::IntentsOf(binary_case), testing::SchemeOf(binary_case));
    for (std::size_t r = 0; r < c.ranking.size(); ++r) {
      double sum = 0.0;
      for (const auto& intent : binary_case.intents) {
        auto it = intent.levels.find(c.ranking[r]);
        if (it != intent.levels.end() && it->second > 0) {
          sum += intent.probability;
        }
      }
      binary.Add(bg.global_gain[r], sum);
    }
  }
  return {single_exact == cases && din_exact == cases && binary.Within(kTol),
          "single intent exact " + std::to_string(single_exact) + "/" +
              std::to_string(cases) + "; DIN==GG exact " +
              std::to_string(din_exact) + "/" + std::to_string(cases) +
              "; binary GG " + binary.Summary()};
}

Outcome FixtureRegression() {
  struct Row {
    const char* name;
    std::optional<double> production;
    std::optional<double> naive;
    const char* expected;
  };
  const auto f1 = testing::FixtureF1();
  const auto a = testing::ScoredOf(f1, testing::kRunA);
  auto naive = [&](const char* id, std::size_t l) {
    return oracle::NaiveMeasure(f1, testing::kRunA, id, {.cutoff = l});
  };
  const auto f2 = testing::FixtureF2();
  const std::vector<std::string> run = {"d3", "d2", "d1"};
  const auto qrels = testing::IntentQrelsOf(f2);
  const auto intents = testing::IntentsOf(f2);
  const auto scheme = testing::SchemeOf(f2);
  const GlobalGainList ggl = BuildGlobalGainList(run, qrels, intents, scheme);
  const std::vector<Row> rows = {
      {"AP", AveragePrecision(a), naive("ap", 3), "0.8333"},
      {"Q", QMeasure(a), naive("q", 3), "0.7500"},
      {"MSnDCG@3", MsNdcg(a, 3), naive("ms-ndcg", 3), "0.7602"},
      {"nERR@3", NerrAt(a, 3), naive("nerr", 3), "0.5600"},
      {"P+", PPlus(a, 3), naive("p-plus", 3), "0.7500"},
      {"nCG@2", NcgAt(a, 2), naive("ncg", 2), "0.3333"},
      {"D#-nDCG@3",
       DSharp(IntentRecallAt(ggl, 3),
              *DMeasureAt(ggl, 3, DiversityBase::kMsNdcg)),
       oracle::NaiveMeasure(f2, run, "dsharp-ndcg", {.cutoff = 3}), "0.9917"},
      {"P+Q@3", PPlusQAt(run, qrels, intents, scheme, 3),
       oracle::NaiveMeasure(f2, run, "p-plus-q", {.cutoff = 3}), "0.9400"},
  };
  std::string detail;
  bool pass = true;
  for (const Row& row : rows) {
    const std::string got = row.production ? FormatFixed4(*row.production)
                                           : "undef";
    const std::string gold = row.naive ? FormatFixed4(*row.naive) : "undef";
    const bool ok = got == row.expected && gold == row.expected;
    pass = pass && ok;
    detail += std::string(detail.empty() ? "" : ", ") + row.name + "=" + got +
              (ok ? "" : " (expected " + std::string(row.expected) +
                             ", oracle " + gold + ")");
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// CLI checks.

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out += ch;
    }
  }
  return out + "'";
}

struct Command {
  std::string output;
  int status = -1;
};

Command Shell(const std::string& command) {
  Command result;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return result;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.output.append(buf, n);
  }
  result.status = pclose(pipe);
  return result;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct CliContext {
  std::string cli;
  fs::path fixtures;
};

Outcome CliGolden(const CliContext& ctx) {
  struct Case {
    const char* golden;
    std::string args;
  };
  const fs::path& f = ctx.fixtures;
  const std::vector<Case> cases = {
      {"adhoc.golden",
       "--qrels " + Quote((f / "adhoc.qrels").string()) + " --run " +
           Quote((f / "adhoc.run").string()) +
           " --measures 'ap q@10 ms-ndcg@3 nerr@3 p+@3 ncg@2'"},
      {"diversity.golden",
       "--qrels " + Quote((f / "diversity.qrels").string()) + " --run " +
           Quote((f / "diversity.run").string()) + " --intents " +
           Quote((f / "diversity.intents").string()) +
           " --measures 'i-rec@3 d-ndcg@3 d#-ndcg@3 din-ndcg@3 p+q@3'"},
  };
  int runs = 0, identical = 0;
  for (const Case& c : cases) {
    const std::string golden = ReadFile(f / c.golden);
    if (golden.empty()) return {false, std::string("missing ") + c.golden};
    for (int rep = 0; rep < 10; ++rep) {
      const Command out = Shell(Quote(ctx.cli) + " eval " + c.args +
                                " --threads " + std::to_string(1 + rep % 4));
      ++runs;
      identical += out.status == 0 && out.output == golden;
    }
  }
  return {identical == runs, std::to_string(identical) + "/" +
                                 std::to_string(runs) +
                                 " runs byte-identical to golden "
                                 "(threads 1-4, 10 repeats per fixture)"};
}

Outcome CondensedIdentity(const CliContext& ctx) {
  const fs::path dir =
      fs::temp_directory_path() /
      ("gradeval_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::mt19937_64 rng(1010);
  std::ofstream qrels(dir / "c.qrels"), run(dir / "c.run");
  int retrieved = 0, unjudged = 0;
  std::uniform_int_distribution<int> level(0, 3);
  std::bernoulli_distribution pick_unjudged(0.3);
  for (int t = 0; t < 25; ++t) {
    const std::string topic = "q" + std::to_string(100 + t);
    for (int d = 0; d < 30; ++d) {
      qrels << topic << " 0 j" << d << ' ' << level(rng) << '\n';
    }
    std::vector<std::string> pool;
    for (int d = 0; d < 30; ++d) pool.push_back("j" + std::to_string(d));
    std::shuffle(pool.begin(), pool.end(), rng);
    int next_judged = 0;
    for (int r = 1; r <= 40; ++r) {
      std::string doc;
      if (pick_unjudged(rng) || next_judged == 30) {
        doc = "x" + std::to_string(r);
        ++unjudged;
      } else {
        doc = pool[next_judged++];
      }
      ++retrieved;
      run << topic << " Q0 " << doc << ' ' << r << ' ' << (100.0 - r)
          << " sys\n";
    }
  }
  qrels.close();
  run.close();

  const std::string q = Quote((dir / "c.qrels").string());
  const std::string r = Quote((dir / "c.run").string());
  const std::string cli = Quote(ctx.cli);
  const std::string measures =
      " --measures 'ap q q@10 p@10 rprec rr ncg@10 ndcg@10 ms-ndcg@10 p+@10 "
      "err@10 nerr@10 hit ng'";
  const Command flag = Shell(cli + " eval --qrels " + q + " --run " + r +
                             measures + " --condensed");
  const Command piped = Shell(cli + " condense --qrels " + q + " --run " + r +
                              " | " + cli + " eval --qrels " + q +
                              " --run -" + measures);
  fs::remove_all(dir);
  const double share = static_cast<double>(unjudged) / retrieved;
  const bool same = flag.status == 0 && piped.status == 0 &&
                    !flag.output.empty() && flag.output == piped.output;
  return {same && share > 0.25 && share < 0.35,
          std::string(same ? "byte-identical" : "DIFFERENT") + " reports (" +
              std::to_string(flag.output.size()) + " bytes); unjudged share " +
              Fmt("%.1f%%", 100.0 * share)};
}

}  // namespace
}  // namespace gradeval::acceptance

int main(int argc, char** argv) {
  using namespace gradeval::acceptance;
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " <gradeval-cli> <fixtures-dir>\n";
    return 2;
  }
  const CliContext ctx{argv[1], argv[2]};
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks = {
      {"1 Q(beta=0) = AP", QReducesToAp},
      {"2 original nDCG (b >= l) = nCG", OriginalNdcgReducesToNcg},
      {"3 NCU specialisations exact", NcuSpecialisations},
      {"4 worked numbers exact", WorkedNumbers},
      {"5 normalisation and ideal lists", NormalisationSuite},
      {"6 oracle equivalence", OracleEquivalence},
      {"7 diversity reductions", DiversityReductions},
      {"8 fixture regression", FixtureRegression},
      {"9 CLI golden report", [&] { return CliGolden(ctx); }},
      {"10 condensed-list identity", [&] { return CondensedIdentity(ctx); }},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << name
              << " -- " << outcome.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
