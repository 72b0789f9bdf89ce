#pragma once

#include <string>
#include <vector>

#include "corpus/deltas.hpp"
#include "corpus/matching.hpp"
#include "learn/dataset.hpp"
#include "learn/evaluation.hpp"
#include "network/centrality.hpp"
#include "pipeline/config.hpp"
#include "synth/synth.hpp"
#include "text/lexicon.hpp"
#include "util/text_io.hpp"

namespace debatenet {

struct StageResult {
  std::vector<std::string> artifacts;  // paths written
  std::string summary;                 // one human-readable line
};

// Runs one stage, reading upstream artifacts from and writing into the output
// directory. Missing or stale upstream artifacts raise DataError naming the
// stage to run.
StageResult run_stage(Stage stage, const RunConfig& cfg);

// Config-to-domain conversions shared with tests and the C API.
DeltaRules delta_rules(const RunConfig& cfg);
MatchOptions match_options(const RunConfig& cfg);
LexiconSet lexicons(const RunConfig& cfg);
CentralityOptions centrality_options(const RunConfig& cfg);
SynthParams synth_params(const RunConfig& cfg);
ModelSpec model_spec(const RunConfig& cfg, Family family);

// Feature columns of a named set ("language", "network", "all").
std::vector<std::string> feature_set_columns(const RunConfig& cfg, const std::string& set);

// Pairs for every discussion of the corpus, in corpus order.
MatchResult match_corpus(const Corpus& corpus, const DeltaRules& rules, const MatchOptions& opts,
                         unsigned threads);

// Treated row then control row per pair: language features then the six
// centralities before the cutoff.
LabeledDataset build_feature_table(const Corpus& corpus, const std::vector<MatchedPair>& pairs,
                                   const LexiconSet& lex, const GraphOptions& gopts,
                                   const CentralityOptions& copts, unsigned threads);

std::string pairs_csv(const std::vector<MatchedPair>& pairs);
std::vector<MatchedPair> parse_pairs_csv(const CsvTable& table);

}  // namespace debatenet
