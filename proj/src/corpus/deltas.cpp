#include "corpus/deltas.hpp"

#include <algorithm>

namespace debatenet {

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string strip_quotes(std::string_view body) {
  std::string out;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t end = body.find('\n', start);
    if (end == std::string_view::npos) end = body.size();
    std::string_view line = body.substr(start, end - start);
    const std::size_t first = line.find_first_not_of(" \t");
    const bool quoted = first != std::string_view::npos &&
                        (line.substr(first, 1) == ">" || line.substr(first, 4) == "&gt;");
    if (!quoted) {
      out.append(line);
      out.push_back('\n');
    }
    start = end + 1;
  }
  return out;
}

}  // namespace

bool contains_delta_marker(std::string_view body, const DeltaRules& rules) {
  const std::string text = rules.strip_quoted_lines ? strip_quotes(body) : std::string(body);
  const std::string lowered = ascii_lower(text);
  for (const auto& m : rules.markers) {
    if (m.empty()) continue;
    if (lowered.find(ascii_lower(m)) != std::string::npos) return true;
  }
  return false;
}

std::vector<DeltaAward> detect_deltas(const Discussion& d, const DeltaRules& rules) {
  std::vector<DeltaAward> awards;
  for (const auto& c : d.comments) {
    if (c.orphan || c.parent_id == d.post.id) continue;
    if (std::find(rules.ignore_authors.begin(), rules.ignore_authors.end(), c.author) !=
        rules.ignore_authors.end()) {
      continue;
    }
    const Comment* parent = d.find(c.parent_id);
    if (!parent || parent->author == c.author) continue;
    // A clock-skewed reply that predates its parent cannot award it.
    if (c.created_at < parent->created_at) continue;
    if (!contains_delta_marker(c.body, rules)) continue;
    awards.push_back(DeltaAward{d.post.id, c.author, parent->author, parent->id, c.id,
                                c.created_at, c.author == d.op_author});
  }
  return awards;
}

}  // namespace debatenet
