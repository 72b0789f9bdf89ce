#include "text/lexicon.hpp"

#include <filesystem>

#include "util/error.hpp"
#include "util/text_io.hpp"

namespace debatenet {

Lexicon::Lexicon(std::string_view file_text) {
  for (const auto& raw : split(file_text, '\n')) {
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    add_entry(line);
  }
}

void Lexicon::add_entry(std::string_view entry) {
  // Entries go through the same tokenizer as the text they are matched against.
  std::vector<std::string> toks = tokenize(entry).tokens;
  if (toks.empty()) return;
  if (toks.size() == 1) {
    singles_.insert(std::move(toks[0]));
  } else {
    phrases_.push_back(std::move(toks));
  }
}

std::size_t Lexicon::count(const std::vector<std::string>& tokens) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (singles_.count(tokens[i])) ++n;
    for (const auto& p : phrases_) {
      if (i + p.size() > tokens.size()) continue;
      bool hit = true;
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (tokens[i + k] != p[k]) {
          hit = false;
          break;
        }
      }
      if (hit) ++n;
    }
  }
  return n;
}

const std::vector<std::string>& LexiconSet::names() {
  static const std::vector<std::string> n{"positive",          "negative",
                                          "hedges",            "examples",
                                          "first_person",      "first_person_plural",
                                          "definite_articles", "indefinite_articles"};
  return n;
}

Lexicon& LexiconSet::by_name(std::string_view name) {
  if (name == "positive") return positive;
  if (name == "negative") return negative;
  if (name == "hedges") return hedges;
  if (name == "examples") return examples;
  if (name == "first_person") return first_person;
  if (name == "first_person_plural") return first_person_plural;
  if (name == "definite_articles") return definite_articles;
  if (name == "indefinite_articles") return indefinite_articles;
  throw ConfigError("unknown lexicon '" + std::string(name) + "'");
}

const LexiconSet& LexiconSet::defaults() {
  static const LexiconSet set = [] {
    LexiconSet s;
    for (const auto& [name, text] : default_lexicon_sources()) s.by_name(name) = Lexicon(text);
    return s;
  }();
  return set;
}

LexiconSet LexiconSet::from_directory(const std::string& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("lexicon directory '" + dir + "' does not exist");
  }
  LexiconSet s = defaults();
  for (const auto& name : names()) {
    const std::string path = (std::filesystem::path(dir) / (name + ".txt")).string();
    if (file_exists(path)) s.by_name(name) = Lexicon(read_file(path));
  }
  return s;
}

}  // namespace debatenet
