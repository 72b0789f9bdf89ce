#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "text/tokenize.hpp"

namespace debatenet {

// A word list whose entries may span several tokens ("for example").
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::string_view file_text);

  void add_entry(std::string_view entry);
  std::size_t size() const { return singles_.size() + phrases_.size(); }

  // Occurrences of any entry in a token stream; each (entry, position) counts once.
  std::size_t count(const std::vector<std::string>& tokens) const;

 private:
  std::unordered_set<std::string> singles_;
  std::vector<std::vector<std::string>> phrases_;
};

struct LexiconSet {
  Lexicon positive;
  Lexicon negative;
  Lexicon hedges;
  Lexicon examples;
  Lexicon first_person;
  Lexicon first_person_plural;
  Lexicon definite_articles;
  Lexicon indefinite_articles;

  // Bundled lists compiled into the library.
  static const LexiconSet& defaults();
  // Reads <dir>/<name>.txt for every list; missing files fall back to the
  // bundled list.
  static LexiconSet from_directory(const std::string& dir);

  static const std::vector<std::string>& names();
  Lexicon& by_name(std::string_view name);
};

const std::map<std::string, std::string>& default_lexicon_sources();

}  // namespace debatenet
