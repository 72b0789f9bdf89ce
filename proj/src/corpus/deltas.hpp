#pragma once

#include <string>
#include <vector>

#include "corpus/corpus.hpp"

namespace debatenet {

struct DeltaRules {
  // Substring markers; ASCII markers match case-insensitively.
  std::vector<std::string> markers{"∆", "Δ", "!delta"};
  // Drop lines quoting another comment ('>' or HTML-escaped '&gt;') before matching.
  bool strip_quoted_lines = true;
  // Accounts whose replies never count as awards (bot confirmations).
  std::vector<std::string> ignore_authors{"DeltaBot"};
};

struct DeltaAward {
  std::string discussion_id;
  std::string awarder;
  std::string recipient;
  std::string awarded_comment_id;
  std::string award_comment_id;
  Timestamp award_time = 0;
  bool from_op = false;

  bool operator==(const DeltaAward&) const = default;
};

bool contains_delta_marker(std::string_view body, const DeltaRules& rules);

// One award per reply that carries a marker and replies to a comment by a
// different user. Order follows the discussion's comment order.
std::vector<DeltaAward> detect_deltas(const Discussion& d, const DeltaRules& rules = {});

}  // namespace debatenet
