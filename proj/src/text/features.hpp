#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpus/corpus.hpp"
#include "text/lexicon.hpp"
#include "text/tokenize.hpp"

namespace debatenet {

// Entropy in bits of the empirical label distribution.
double shannon_entropy(const std::vector<std::string>& items);

enum class PosTag { Pron, Det, Prep, Conj, Aux, Num, Punct, Url, Adv, Verb, Adj, Noun };

std::string_view pos_tag_name(PosTag t);

PosTag tag_word(std::string_view token);

// Tags every token in order, then one PUNCT per punctuation mark.
std::vector<PosTag> coarse_pos_tags(const TokenSeq& seq);

int count_syllables(std::string_view word);

struct Readability {
  double grade = 0.0;
  double ease = 0.0;
};

// nullopt when there are no words.
std::optional<Readability> flesch_kincaid(std::size_t words, std::size_t sentences,
                                          std::size_t syllables);
std::optional<Readability> flesch_kincaid(const TokenSeq& seq);
std::optional<Readability> flesch_kincaid(std::string_view text);

struct Interplay {
  std::size_t n_common = 0;
  double reply_fraction = 0.0;
  double op_fraction = 0.0;
  double jaccard = 0.0;
};

Interplay interplay_features(const std::vector<std::string>& argument,
                             const std::vector<std::string>& original_post);

struct LanguageFeatureVector {
  double n_words = 0;
  double n_sentences = 0;
  double n_positive = 0;
  double n_negative = 0;
  double n_examples = 0;
  double n_hedges = 0;
  double n_definite_articles = 0;
  double n_indefinite_articles = 0;
  double n_first_person = 0;
  double n_first_person_plural = 0;
  double n_question_marks = 0;
  double n_quotation_marks = 0;
  double n_urls = 0;
  double word_entropy = 0;
  double token_type_entropy = 0;
  double fk_grade = 0;  // NaN when the text has no words
  double fk_ease = 0;
  double n_common_words = 0;
  double reply_fraction = 0;
  double op_fraction = 0;
  double jaccard = 0;

  static constexpr std::size_t kSize = 21;
  static const std::array<std::string_view, kSize>& names();
  std::array<double, kSize> values() const;
};

// Features of one document already split into per-comment token streams.
LanguageFeatureVector language_features(const std::vector<TokenSeq>& comments,
                                        const std::vector<std::string>& op_words,
                                        const LexiconSet& lexicons);

// Throws IneligibleError when the user has no comment strictly before cutoff.
LanguageFeatureVector extract_language_features(const std::string& user, const Discussion& d,
                                                Timestamp cutoff, const LexiconSet& lexicons);

}  // namespace debatenet
