#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "debatenet/debatenet.h"

namespace {

struct Flags {
  std::string config;
  std::vector<std::string> sets;
  std::string seed;
  std::string threads;
  std::string variant;
  std::string feature_set;
  std::vector<std::string> input;
  std::string out;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "Config file (key = value lines)");
  sub->add_option("--set", f.sets, "Override a config entry, KEY=VALUE (repeatable)");
  sub->add_option("--seed", f.seed, "Master seed");
  sub->add_option("--threads", f.threads, "Worker threads, 0 for all cores");
  sub->add_option("--variant", f.variant, "DID panel variant")
      ->check(CLI::IsMember({"main", "unweighted", "exclude-winning", "exclude_winning_replies"}));
  sub->add_option("--feature-set", f.feature_set, "Feature set(s) to train on: language, network, all");
  sub->add_option("--input", f.input, "Corpus file(s) in line-delimited JSON");
  sub->add_option("--out", f.out, "Output directory");
}

int report_failure(dn_status s) {
  std::fprintf(stderr, "error: %s\n", dn_last_error());
  return s == DN_ERR_CONFIG || s == DN_ERR_DATA ? static_cast<int>(s) : 4;
}

dn_status apply(dn_config* cfg, const char* key, const std::string& value) {
  return dn_config_set(cfg, key, value.c_str());
}

int build_config(const Flags& f, dn_config** out) {
  dn_status s = f.config.empty() ? dn_config_new(out) : dn_config_load(f.config.c_str(), out);
  if (s != DN_OK) return report_failure(s);
  dn_config* cfg = *out;
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects KEY=VALUE, got '%s'\n", kv.c_str());
      return 2;
    }
    if ((s = apply(cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1))) != DN_OK) return report_failure(s);
  }
  if (!f.seed.empty() && (s = apply(cfg, "seed", f.seed)) != DN_OK) return report_failure(s);
  if (!f.threads.empty() && (s = apply(cfg, "threads", f.threads)) != DN_OK) return report_failure(s);
  if (!f.variant.empty()) {
    const std::string v = f.variant == "exclude-winning" ? "exclude_winning_replies" : f.variant;
    if ((s = apply(cfg, "did_variants", v)) != DN_OK) return report_failure(s);
  }
  if (!f.feature_set.empty() && (s = apply(cfg, "feature_sets", f.feature_set)) != DN_OK) return report_failure(s);
  if (!f.input.empty()) {
    std::string joined;
    for (const auto& p : f.input) joined += (joined.empty() ? "" : ",") + p;
    if ((s = apply(cfg, "input", joined)) != DN_OK) return report_failure(s);
  }
  if (!f.out.empty() && (s = apply(cfg, "output_dir", f.out)) != DN_OK) return report_failure(s);
  return 0;
}

int run(const dn_config* cfg, const std::string& stage) {
  size_t needed = 0;
  std::vector<char> buf(512);
  dn_status s = dn_run_stage(cfg, stage.c_str(), buf.data(), buf.size(), &needed);
  if (s == DN_ERR_BUFFER) {
    // The stage already ran; only the summary was cut off.
    std::printf("%s: done\n", stage.c_str());
    return 0;
  }
  if (s != DN_OK) return report_failure(s);
  std::printf("%s: %s\n", stage.c_str(), buf.data());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reply-network persuasion analysis pipeline"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> stages{
      {"synth", "Generate a synthetic corpus with ground truth"},
      {"ingest", "Parse the corpus, detect awards, and match pairs"},
      {"stats", "Corpus summary statistics"},
      {"pairs", "Re-run challenger matching on the ingested corpus"},
      {"features", "Language and network features per matched user"},
      {"train", "Cross-validated AUC per model family and feature set"},
      {"importance", "Permutation importance of the network features"},
      {"did", "Difference-in-differences panels and estimates"},
      {"report", "Aggregate tables from the stage artifacts"},
      {"run", "Every stage in order (synth only when no input is configured)"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : stages) {
    auto* sub = app.add_subcommand(name, help);
    add_flags(sub, flags);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string chosen;
  for (auto* sub : subs) {
    if (sub->parsed()) chosen = sub->get_name();
  }

  dn_config* cfg = nullptr;
  if (int rc = build_config(flags, &cfg); rc != 0) {
    dn_config_free(cfg);
    return rc;
  }

  int rc = 0;
  if (chosen == "run") {
    size_t needed = 0;
    char input[8] = {0};
    dn_config_get(cfg, "input", input, sizeof input, &needed);
    std::vector<std::string> order;
    if (needed <= 1) order.push_back("synth");
    for (const char* s : {"ingest", "stats", "features", "train", "importance", "did", "report"}) order.push_back(s);
    for (const auto& s : order) {
      if ((rc = run(cfg, s)) != 0) break;
    }
  } else {
    rc = run(cfg, chosen);
  }
  dn_config_free(cfg);
  return rc;
}
