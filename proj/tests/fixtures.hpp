#pragma once

#include <string>

#include "corpus/corpus.hpp"
#include "json.hpp"

namespace fixtures {

inline std::string post(const std::string& id, const std::string& author, long t, const std::string& text = "",
                        const std::string& title = "CMV: a view") {
  return nlohmann::json{{"kind", "post"}, {"id", id}, {"author", author}, {"created_utc", t},
                        {"title", title}, {"selftext", text}}
             .dump() +
         "\n";
}

inline std::string comment(const std::string& id, const std::string& author, const std::string& parent,
                           const std::string& post_id, long t, const std::string& body) {
  return nlohmann::json{{"kind", "comment"}, {"id", id},          {"author", author}, {"parent_id", parent},
                        {"post_id", post_id}, {"created_utc", t}, {"body", body}}
             .dump() +
         "\n";
}

inline debatenet::Discussion single(const std::string& lines) {
  auto c = debatenet::parse_corpus_text(lines);
  return c.discussions.at(0);
}

}  // namespace fixtures
