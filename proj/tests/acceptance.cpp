// Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//
//   acceptance --cli <debatenet executable> --config <bundled config> --work <scratch dir>
//
// Criterion 9 runs only when DEBATENET_REAL_CORPUS names the real corpus file(s)
// (comma-separated line-delimited JSON).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corpus/corpus.hpp"
#include "did/did.hpp"
#include "json.hpp"
#include "learn/evaluation.hpp"
#include "network/centrality.hpp"
#include "network/graph.hpp"
#include "oracles.hpp"
#include "pipeline/config.hpp"
#include "pipeline/stages.hpp"
#include "synth/synth.hpp"
#include "text/features.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

using namespace debatenet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  enum Kind { Pass, Fail, Skip } kind = Fail;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<double> at_nodes(const ReplyGraph& g, const std::vector<double>& v,
                             const std::vector<std::string>& names) {
  std::vector<double> out;
  for (const auto& n : names) out.push_back(v[*g.index_of(n)]);
  return out;
}

// 1. Brandes against exhaustive path enumeration.
Outcome betweenness_oracle() {
  const auto start = Clock::now();
  Rng rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(6);
    const auto rg = oracle::random_digraph(rng, n, 0.2 + 0.6 * rng.uniform(), 3);
    const auto g = ReplyGraph::from_edges(rg.nodes, rg.edges);
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) adj[i][j] = rg.w(i, j) > 0.0;
    }
    const auto expected = oracle::betweenness_by_enumeration(n, adj);
    const auto got = at_nodes(g, betweenness(g), rg.nodes);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(expected[i] - got[i]));
  }
  const double secs = seconds_since(start);
  const bool ok = worst <= 1e-9 && secs < 10.0;
  return {ok ? Outcome::Pass : Outcome::Fail,
          fmt2("200 graphs, max |error| %.3g, %.2f s", worst, secs)};
}

// 2. HITS fixed point and dense eigen oracle.
Outcome hits_fixed_point() {
  Rng rng(202);
  double worst_residual = 0.0;
  double worst_cosine = 0.0;
  int graphs = 0;
  while (graphs < 100) {
    const std::size_t n = 2 + rng.index(49);
    const auto rg = oracle::random_digraph(rng, n, 0.02 + 0.3 * rng.uniform(), 5);
    if (rg.edges.empty()) continue;
    ++graphs;
    const auto g = ReplyGraph::from_edges(rg.nodes, rg.edges);
    const auto r = hits(g);
    const auto n_idx = static_cast<Eigen::Index>(n);
    Eigen::VectorXd a(n_idx), h(n_idx);
    for (std::size_t i = 0; i < n; ++i) {
      a(i) = r.authority[*g.index_of(rg.nodes[i])];
      h(i) = r.hub[*g.index_of(rg.nodes[i])];
    }
    Eigen::VectorXd a_next = rg.w.transpose() * h;
    a_next.normalize();
    Eigen::VectorXd h_next = rg.w * a;
    h_next.normalize();
    worst_residual = std::max({worst_residual, (a_next - a).norm(), (h_next - h).norm()});
    worst_cosine = std::max(worst_cosine, oracle::cosine_distance(a, oracle::hits_authority_dense(rg.w)));
  }
  const bool ok = worst_residual < 1e-8 && worst_cosine < 1e-6;
  return {ok ? Outcome::Pass : Outcome::Fail,
          fmt2("100 graphs, max residual %.3g, max cosine distance %.3g", worst_residual, worst_cosine)};
}

// 3. DID exactness, recovery and coverage.
Outcome did_exactness() {
  const auto start = Clock::now();
  double worst_dd = 0.0;
  double worst_recovery = 0.0;
  int covered = 0;
  const int reps = 500;
  for (int rep = 0; rep < reps; ++rep) {
    DidPanelParams p;
    p.n_pairs = 250;
    p.seed = static_cast<std::uint64_t>(rep + 1);
    for (double noise : {0.0, 1.0}) {
      p.noise_sd = noise;
      const auto panel = gen_did_panel({{"in_degree", 2.219}}, p).at(0);
      const auto r = did_estimate(panel.observations);
      std::vector<double> y;
      std::vector<int> g, t;
      for (const auto& o : panel.observations) {
        y.push_back(o.y);
        g.push_back(o.g);
        t.push_back(o.t);
      }
      worst_dd = std::max(worst_dd, std::abs(r.beta[3] - oracle::double_difference(y, g, t)));
      if (noise == 0.0) {
        for (int j = 0; j < 4; ++j) worst_recovery = std::max(worst_recovery, std::abs(r.beta[j] - panel.true_beta[j]));
      } else if (std::abs(r.beta[3] - 2.219) < 3.0 * r.se[3]) {
        ++covered;
      }
    }
  }
  const double secs = seconds_since(start);
  const double coverage = static_cast<double>(covered) / reps;
  const bool ok = worst_dd <= 1e-10 && worst_recovery <= 1e-10 && coverage >= 0.99 && secs < 60.0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "max |b3 - dd| %.3g, max recovery error %.3g, coverage %.3f, %.2f s", worst_dd,
                worst_recovery, coverage, secs);
  return {ok ? Outcome::Pass : Outcome::Fail, buf};
}

// 4. Mann-Whitney AUC against the pairwise oracle.
Outcome auc_oracle() {
  Rng rng(404);
  int cases = 0;
  int mismatches = 0;
  while (cases < 10000) {
    const std::size_t n = 2 + rng.index(7);
    std::vector<double> s(n);
    std::vector<int> y(n);
    const std::size_t levels = 1 + rng.index(8);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.index(levels)) / static_cast<double>(levels);
      y[i] = rng.bernoulli(0.5) ? 1 : 0;
    }
    if (std::count(y.begin(), y.end(), 1) == 0 || std::count(y.begin(), y.end(), 0) == 0) continue;
    ++cases;
    if (auc(s, y) != oracle::auc_pairs(s, y)) ++mismatches;
  }
  return {mismatches == 0 ? Outcome::Pass : Outcome::Fail,
          std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches"};
}

double cv_mean(Family f, const LabeledDataset& data, std::uint64_t seed) {
  return cross_validate(default_spec(f, seed), data, 5, seed).mean;
}

// 5. Classifier sanity on separable and label-permuted data.
Outcome classifier_sanity() {
  LabeledPairsParams p;
  p.n_pairs = 500;
  p.mode = LabelMode::Separable;
  const auto separable = gen_labeled_pairs(p);
  const double rf = cv_mean(Family::RandomForest, separable, 1);
  const double lr = cv_mean(Family::LogisticRegression, separable, 1);
  double rf_null = 0.0;
  double lr_null = 0.0;
  const int seeds = 20;
  for (int s = 1; s <= seeds; ++s) {
    p.mode = LabelMode::Permuted;
    p.seed = static_cast<std::uint64_t>(s);
    const auto permuted = gen_labeled_pairs(p);
    rf_null += cv_mean(Family::RandomForest, permuted, p.seed) / seeds;
    lr_null += cv_mean(Family::LogisticRegression, permuted, p.seed) / seeds;
  }
  const auto in_band = [](double v) { return v >= 0.45 && v <= 0.55; };
  const bool ok = rf >= 0.99 && lr >= 0.99 && in_band(rf_null) && in_band(lr_null);
  char buf[200];
  std::snprintf(buf, sizeof buf, "separable AUC rf %.4f lr %.4f; permuted mean AUC rf %.4f lr %.4f", rf, lr,
                rf_null, lr_null);
  return {ok ? Outcome::Pass : Outcome::Fail, buf};
}

// 6. Adding the degree ratio to language features lifts CV AUC.
Outcome feature_lift() {
  const RunConfig cfg;
  const auto lang_cols = feature_set_columns(cfg, "language");
  const auto all_cols = feature_set_columns(cfg, "all");
  const auto lex = LexiconSet::defaults();
  int wins = 0;
  double lift = 0.0;
  const int seeds = 20;
  for (int s = 1; s <= seeds; ++s) {
    SynthParams sp;
    sp.seed = static_cast<std::uint64_t>(s);
    sp.n_discussions = 150;
    sp.delta_probability = 0.9;
    sp.network_signal = 2.0;
    const auto synth = gen_corpus(sp, 1);
    const auto matched = match_corpus(synth.corpus, DeltaRules{}, MatchOptions{}, 1);
    const auto table = build_feature_table(synth.corpus, matched.pairs, lex, GraphOptions{}, CentralityOptions{}, 1);
    const auto spec = default_spec(Family::RandomForest, sp.seed);
    const double lang = cross_validate(spec, table.with_features(lang_cols), 5, sp.seed).mean;
    const double all = cross_validate(spec, table.with_features(all_cols), 5, sp.seed).mean;
    if (all > lang) ++wins;
    lift += (all - lang) / seeds;
  }
  return {wins >= 18 ? Outcome::Pass : Outcome::Fail,
          std::to_string(wins) + "/20 seeds improved, mean random forest lift " + fmt("%.4f", lift)};
}

// 7. Text-feature unit fixtures.
Outcome text_units() {
  std::vector<std::string> failures;
  Rng rng(707);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> items(1 + rng.index(50));
    const std::size_t alphabet = 1 + rng.index(20);
    for (auto& s : items) s = std::to_string(rng.index(alphabet));
    const double h = shannon_entropy(items);
    const std::set<std::string> distinct(items.begin(), items.end());
    if (h < 0.0 || h > std::log2(static_cast<double>(distinct.size())) + 1e-12) {
      failures.push_back("entropy bounds");
      break;
    }
  }
  if (shannon_entropy({"a", "a", "a"}) != 0.0) failures.push_back("entropy of a constant");
  if (std::abs(shannon_entropy({"a", "b", "c", "d"}) - 2.0) > 1e-15) failures.push_back("uniform entropy");

  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> a(rng.index(12)), o(rng.index(12));
    for (auto& s : a) s = std::to_string(rng.index(15));
    for (auto& s : o) s = std::to_string(rng.index(15));
    const std::set<std::string> sa(a.begin(), a.end()), so(o.begin(), o.end());
    std::size_t common = 0;
    for (const auto& w : sa) common += so.count(w);
    const double uni = static_cast<double>(sa.size() + so.size() - common);
    const auto ao = interplay_features(a, o);
    const auto oa = interplay_features(o, a);
    const double reply = sa.empty() ? 0.0 : static_cast<double>(common) / static_cast<double>(sa.size());
    const double opf = so.empty() ? 0.0 : static_cast<double>(common) / static_cast<double>(so.size());
    const double jac = uni == 0.0 ? 0.0 : static_cast<double>(common) / uni;
    if (ao.n_common != common || ao.reply_fraction != reply || ao.op_fraction != opf || ao.jaccard != jac ||
        oa.jaccard != ao.jaccard || oa.reply_fraction != ao.op_fraction) {
      failures.push_back("interplay identities");
      break;
    }
  }

  const auto fk = flesch_kincaid("The cat sat on the mat.");
  if (!fk || std::abs(fk->grade - (-1.45)) > 1e-12 || std::abs(fk->ease - 116.145) > 1e-12) {
    failures.push_back("flesch-kincaid fixture");
  }
  if (flesch_kincaid("").has_value()) failures.push_back("flesch-kincaid on empty text");

  std::string detail = "entropy bounds, interplay identities, grade " + (fk ? fmt("%.12g", fk->grade) : "none");
  for (const auto& f : failures) detail += "; failed: " + f;
  return {failures.empty() ? Outcome::Pass : Outcome::Fail, detail};
}

int run_cli(const std::string& cli, const std::vector<std::string>& args, const fs::path& log) {
  std::string cmd = "\"" + cli + "\"";
  for (const auto& a : args) cmd += " \"" + a + "\"";
  cmd += " > \"" + log.string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc;
}

std::map<std::string, std::string> directory_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = read_file(e.path().string());
  return out;
}

// 8. Byte-identical pipeline output across runs and thread counts.
Outcome determinism(const std::string& cli, const std::string& config, const fs::path& work) {
  const auto start = Clock::now();
  const std::vector<std::pair<std::string, std::string>> runs{{"run1", "1"}, {"run2", "1"}, {"run8", "8"}};
  for (const auto& [name, threads] : runs) {
    fs::remove_all(work / name);
    const int rc = run_cli(cli, {"run", "--config", config, "--out", (work / name).string(), "--threads", threads},
                           work / (name + ".log"));
    if (rc != 0) return {Outcome::Fail, name + " exited with status " + std::to_string(rc)};
  }
  const double secs = seconds_since(start);
  const auto base = directory_bytes(work / "run1");
  std::vector<std::string> differing;
  for (const auto& other : {"run2", "run8"}) {
    const auto cmp = directory_bytes(work / other);
    if (cmp.size() != base.size()) differing.push_back(std::string(other) + ": file set");
    for (const auto& [file, bytes] : base) {
      const auto it = cmp.find(file);
      if (it == cmp.end() || it->second != bytes) differing.push_back(std::string(other) + "/" + file);
    }
  }
  std::string detail = std::to_string(base.size()) + " artifacts per run, 3 runs in " + fmt("%.2f s", secs);
  for (const auto& d : differing) detail += "; differs: " + d;
  return {differing.empty() && secs < 60.0 && !base.empty() ? Outcome::Pass : Outcome::Fail, detail};
}

std::string cell(const CsvTable& t, const std::vector<std::string>& row, const char* col) {
  return row[t.column(col)];
}

// 9. Reproduction on the real corpus.
Outcome real_corpus(const std::string& cli, const fs::path& work) {
  const char* env = std::getenv("DEBATENET_REAL_CORPUS");
  if (!env || !*env) return {Outcome::Skip, "DEBATENET_REAL_CORPUS not set"};
  const fs::path out = work / "real";
  fs::remove_all(out);
  std::vector<std::string> args{"run", "--out", out.string(), "--input", env, "--set", "network_features=all",
                                "--set", "did_variants=main,exclude_winning_replies"};
  const int rc = run_cli(cli, args, work / "real.log");
  if (rc != 0) return {Outcome::Fail, "pipeline exited with status " + std::to_string(rc)};
  std::vector<std::string> failures;

  const auto stats = nlohmann::json::parse(read_file((out / "corpus_stats.json").string()));
  if (stats["posts"] != 3051) failures.push_back("posts " + stats["posts"].dump());
  if (stats["posts_with_op_delta"] != 1741) failures.push_back("posts with delta " + stats["posts_with_op_delta"].dump());

  struct Row {
    const char* centrality;
    double main;
    const char* main_stars;
    double robust;
    const char* robust_stars;
  };
  const Row table[] = {{"in_degree", 2.219, "***", 2.165, "***"},
                       {"out_degree", 0.889, "***", 0.588, "***"},
                       {"authority", 0.035, "***", 0.040, "***"},
                       {"hub", 0.065, "***", 0.006, ""},
                       {"betweenness", 112.061, "***", 106.034, "***"}};
  const auto did = parse_csv(read_file((out / "did.csv").string()));
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> by_key;
  for (const auto& r : did.rows) by_key[{cell(did, r, "centrality"), cell(did, r, "variant")}] = r;
  for (const auto& row : table) {
    for (int v = 0; v < 2; ++v) {
      const std::string variant = v == 0 ? "main" : "exclude_winning_replies";
      const auto it = by_key.find({row.centrality, variant});
      if (it == by_key.end()) {
        failures.push_back(std::string("no DID row ") + row.centrality + "/" + variant);
        continue;
      }
      const double beta = std::stod(cell(did, it->second, "beta3"));
      const double ref = v == 0 ? row.main : row.robust;
      const std::string stars = cell(did, it->second, "stars");
      if ((beta > 0) != (ref > 0) || stars != (v == 0 ? row.main_stars : row.robust_stars)) {
        failures.push_back(std::string(row.centrality) + "/" + variant + " b3 " + fmt("%.4g", beta) + stars);
      }
      const std::size_t n_obs = std::stoul(cell(did, it->second, "n_obs"));
      const std::size_t expected_obs = v == 0 ? 7940 : 7786;
      if (n_obs != expected_obs) failures.push_back(variant + " observations " + std::to_string(n_obs));
    }
  }

  const auto cv = nlohmann::json::parse(read_file((out / "cv_reports.json").string()));
  double rf_all = -1.0;
  for (const auto& r : cv["reports"]) {
    if (r["family"] == "random_forest" && r["feature_set"] == "all") rf_all = r["mean"].get<double>();
  }
  if (std::abs(rf_all - 0.706) > 0.05) failures.push_back("random forest all-features AUC " + fmt("%.4f", rf_all));

  const auto features = parse_csv(read_file((out / "features.csv").string()));
  const auto mean_by_label = [&](const char* col, int label) {
    double sum = 0.0;
    double n = 0.0;
    for (const auto& r : features.rows) {
      if (std::stoi(cell(features, r, "label")) != label || cell(features, r, col) == "nan") continue;
      sum += std::stod(cell(features, r, col));
      n += 1.0;
    }
    return sum / n;
  };
  for (const char* higher : {"n_words", "n_urls", "degree_ratio"}) {
    if (!(mean_by_label(higher, 1) > mean_by_label(higher, 0))) failures.push_back(std::string(higher) + " direction");
  }
  for (const char* lower : {"in_degree", "authority"}) {
    if (!(mean_by_label(lower, 1) < mean_by_label(lower, 0))) failures.push_back(std::string(lower) + " direction");
  }

  std::string detail = "random forest all-features AUC " + fmt("%.4f", rf_all);
  for (const auto& f : failures) detail += "; mismatch: " + f;
  return {failures.empty() ? Outcome::Pass : Outcome::Fail, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string cli;
  std::string config;
  std::string work = "acceptance_work";
  std::vector<int> only;
  app.add_option("--cli", cli, "debatenet executable")->required();
  app.add_option("--config", config, "Bundled synthetic config")->required();
  app.add_option("--work", work, "Scratch directory");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"centrality oracle equivalence", betweenness_oracle},
      {"HITS fixed point", hits_fixed_point},
      {"DID exactness", did_exactness},
      {"AUC correctness", auc_oracle},
      {"classifier sanity", classifier_sanity},
      {"feature-lift property", feature_lift},
      {"text-feature units", text_units},
      {"determinism", [&] { return determinism(cli, config, work); }},
      {"real-data reproduction", [&] { return real_corpus(cli, work); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.kind == Outcome::Pass ? "PASS" : o.kind == Outcome::Skip ? "SKIP" : "FAIL";
    if (o.kind == Outcome::Fail) ++failed;
    std::printf("[%s] %d. %s: %s\n", tag, number, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
