#pragma once

#include <string>

#include "corpus/corpus.hpp"
#include "corpus/deltas.hpp"

namespace debatenet {

struct CorpusSummary {
  std::size_t posts = 0;
  std::size_t comments = 0;
  std::size_t challengers = 0;  // distinct non-OP comment authors across the corpus
  std::size_t posts_with_op_delta = 0;
  double fraction_posts_with_op_delta = 0.0;
  std::size_t op_awarded_comments = 0;
  std::size_t op_award_recipients = 0;
  std::size_t peer_awarded_comments = 0;
  std::size_t peer_award_recipients = 0;
  // Over posts with an OP award: comments strictly before / after the first one.
  double mean_replies_before_first_delta = 0.0;
  double sd_replies_before_first_delta = 0.0;
  double mean_replies_after_first_delta = 0.0;
  double sd_replies_after_first_delta = 0.0;

  std::string to_json() const;
};

CorpusSummary corpus_stats(const Corpus& c, const DeltaRules& rules = {});

}  // namespace debatenet
