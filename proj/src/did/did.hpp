#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "corpus/corpus.hpp"
#include "corpus/deltas.hpp"
#include "corpus/matching.hpp"
#include "network/centrality.hpp"

namespace debatenet {

enum class PanelVariant { Main, ExcludeWinningReplies, Unweighted };

std::string_view variant_name(PanelVariant v);
PanelVariant parse_variant(std::string_view name);  // accepts "exclude-winning" too

struct PanelObservation {
  std::string pair_id;
  std::string user;
  int g = 0;  // 1 = treated
  int t = 0;  // 1 = after the award
  double y = 0.0;
  std::string centrality;
  PanelVariant variant = PanelVariant::Main;
  bool carried_zero = false;  // user missing from the graph; isolated-node zeros used
};

// Before (strictly before cutoff) and after (end of conversation) centralities
// of both members of a pair. Index 0 is the control, 1 the treated user.
struct PairSnapshots {
  std::string pair_id;
  std::array<std::string, 2> user;
  std::array<CentralityVector, 2> before;
  std::array<CentralityVector, 2> after;
};

struct PanelOptions {
  DeltaRules rules;
  CentralityOptions centrality;
  unsigned threads = 1;
};

std::vector<PairSnapshots> snapshot_pairs(const std::vector<MatchedPair>& pairs, const Corpus& corpus,
                                          PanelVariant variant, const PanelOptions& opts = {});

std::vector<PanelObservation> panel_from_snapshots(const std::vector<PairSnapshots>& snaps,
                                                   std::string_view centrality, PanelVariant variant);

// Four observations per pair; throws DataError when pairs is empty or a pair
// references a missing discussion.
std::vector<PanelObservation> build_panel(const std::vector<MatchedPair>& pairs, const Corpus& corpus,
                                          std::string_view centrality, PanelVariant variant,
                                          const PanelOptions& opts = {});

struct DidResult {
  std::array<double, 4> beta{};  // intercept, T, G, T*G
  std::array<double, 4> se{};
  std::array<double, 4> t_stats{};
  std::array<double, 4> p_values{};
  std::size_t n_obs = 0;
  std::string centrality;
  PanelVariant variant = PanelVariant::Main;

  double effect() const { return beta[3]; }
  std::string stars() const;
};

std::string significance_stars(double p);

struct DidOptions {
  bool cluster_by_pair = false;
};

// Fits y = b0 + b1 T + b2 G + b3 T*G on a balanced panel.
DidResult did_estimate(const std::vector<PanelObservation>& panel, const DidOptions& opts = {});

std::string did_csv(const std::vector<DidResult>& results);
// Coefficient with stars over the SE in parentheses, one column per variant.
std::string did_table(const std::vector<DidResult>& results);

}  // namespace debatenet
