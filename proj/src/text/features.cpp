#include "text/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "util/error.hpp"

namespace debatenet {

double shannon_entropy(const std::vector<std::string>& items) {
  if (items.empty()) return 0.0;
  std::map<std::string_view, std::size_t> freq;
  for (const auto& s : items) ++freq[s];
  if (freq.size() == 1) return 0.0;
  const double n = static_cast<double>(items.size());
  double h = 0.0;
  for (const auto& [_, c] : freq) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

std::string_view pos_tag_name(PosTag t) {
  switch (t) {
    case PosTag::Pron: return "PRON";
    case PosTag::Det: return "DET";
    case PosTag::Prep: return "PREP";
    case PosTag::Conj: return "CONJ";
    case PosTag::Aux: return "AUX";
    case PosTag::Num: return "NUM";
    case PosTag::Punct: return "PUNCT";
    case PosTag::Url: return "URL";
    case PosTag::Adv: return "ADV";
    case PosTag::Verb: return "VERB";
    case PosTag::Adj: return "ADJ";
    case PosTag::Noun: return "NOUN";
  }
  return "NOUN";
}

namespace {

using WordSet = std::unordered_set<std::string_view>;

const WordSet& pronouns() {
  static const WordSet s{"i", "me", "my", "mine", "myself", "you", "your", "yours", "yourself",
                         "yourselves", "he", "him", "his", "himself", "she", "her", "hers",
                         "herself", "it", "its", "itself", "we", "us", "our", "ours",
                         "ourselves", "they", "them", "their", "theirs", "themselves", "who",
                         "whom", "whose", "which", "what", "someone", "somebody", "anyone",
                         "anybody", "everyone", "everybody", "nobody", "something", "anything",
                         "everything", "nothing", "i'm", "i've", "i'd", "i'll", "you're",
                         "you've", "you'd", "you'll", "he's", "she's", "it's", "we're", "we've",
                         "we'd", "we'll", "they're", "they've", "they'd", "they'll"};
  return s;
}

const WordSet& determiners() {
  static const WordSet s{"the", "a", "an", "this", "that", "these", "those", "some", "any",
                         "every", "each", "either", "neither", "no", "all", "both", "few",
                         "many", "much", "several", "such", "another", "other", "most", "more",
                         "less", "fewer"};
  return s;
}

const WordSet& prepositions() {
  static const WordSet s{"of", "in", "on", "at", "by", "for", "with", "about", "against",
                         "between", "into", "through", "during", "before", "after", "above",
                         "below", "to", "from", "up", "down", "over", "under", "upon", "within",
                         "without", "across", "along", "among", "around", "behind", "beyond",
                         "near", "off", "onto", "out", "toward", "towards", "via", "since",
                         "until", "per", "despite", "than", "like", "throughout", "inside",
                         "outside", "beside", "besides", "unlike"};
  return s;
}

const WordSet& conjunctions() {
  static const WordSet s{"and", "or", "but", "nor", "so", "yet", "because", "although",
                         "though", "while", "whereas", "if", "unless", "whether", "as",
                         "once", "whenever", "wherever", "therefore", "however", "thus",
                         "hence", "otherwise"};
  return s;
}

const WordSet& auxiliaries() {
  static const WordSet s{"be", "am", "is", "are", "was", "were", "been", "being", "have",
                         "has", "had", "having", "do", "does", "did", "will", "would", "shall",
                         "should", "can", "could", "may", "might", "must", "ought", "don't",
                         "doesn't", "didn't", "isn't", "aren't", "wasn't", "weren't", "can't",
                         "couldn't", "won't", "wouldn't", "shouldn't", "haven't", "hasn't",
                         "hadn't", "mustn't", "cannot"};
  return s;
}

const WordSet& number_words() {
  static const WordSet s{"zero", "one", "two", "three", "four", "five", "six", "seven",
                         "eight", "nine", "ten", "eleven", "twelve", "twenty", "thirty",
                         "forty", "fifty", "hundred", "thousand", "million", "billion",
                         "first", "second", "third"};
  return s;
}

const WordSet& adverbs() {
  static const WordSet s{"not", "very", "also", "just", "only", "too", "then", "there",
                         "here", "now", "never", "always", "often", "even", "still", "quite",
                         "again", "already", "soon", "almost", "rather", "perhaps", "maybe",
                         "why", "how", "when", "where", "ever", "else", "instead", "anyway",
                         "well", "away", "back", "down", "enough", "much", "sometimes"};
  return s;
}

// Frequent base forms and irregular inflections that suffix rules miss.
const WordSet& verbs() {
  static const WordSet s{
      "go", "goes", "went", "gone", "get", "gets", "got", "gotten", "make", "makes", "made",
      "say", "says", "said", "see", "sees", "saw", "seen", "know", "knows", "knew", "known",
      "take", "takes", "took", "taken", "think", "thinks", "thought", "come", "comes", "came",
      "give", "gives", "gave", "given", "find", "finds", "found", "tell", "tells", "told",
      "feel", "feels", "felt", "become", "becomes", "became", "leave", "leaves", "left", "put",
      "puts", "mean", "means", "meant", "keep", "keeps", "kept", "let", "lets", "begin",
      "begins", "began", "begun", "seem", "seems", "run", "runs", "ran", "hold", "holds",
      "held", "bring", "brings", "brought", "write", "writes", "wrote", "written", "sit",
      "sits", "sat", "stand", "stands", "stood", "lose", "loses", "lost", "pay", "pays", "paid",
      "meet", "meets", "met", "lead", "leads", "led", "understand", "understands",
      "understood", "speak", "speaks", "spoke", "spoken", "read", "reads", "spend", "spends",
      "spent", "grow", "grows", "grew", "grown", "win", "wins", "won", "buy", "buys", "bought",
      "send", "sends", "sent", "build", "builds", "built", "fall", "falls", "fell", "fallen",
      "cut", "cuts", "sell", "sells", "sold", "want", "wants", "need", "needs", "use", "uses",
      "believe", "believes", "agree", "agrees", "argue", "argues", "change", "changes", "try",
      "tries", "look", "looks", "work", "works", "call", "calls", "ask", "asks", "show",
      "shows", "shown", "help", "helps", "live", "lives", "happen", "happens", "like", "likes"};
  return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_number(std::string_view t) {
  if (t.empty()) return false;
  bool digit = false;
  for (char c : t) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != ',') {
      return false;
    }
  }
  return digit;
}

}  // namespace

PosTag tag_word(std::string_view t) {
  if (is_url_token(t)) return PosTag::Url;
  if (is_number(t) || number_words().count(t)) return PosTag::Num;
  if (pronouns().count(t)) return PosTag::Pron;
  if (determiners().count(t)) return PosTag::Det;
  if (auxiliaries().count(t)) return PosTag::Aux;
  if (conjunctions().count(t)) return PosTag::Conj;
  if (prepositions().count(t)) return PosTag::Prep;
  if (adverbs().count(t)) return PosTag::Adv;
  if (verbs().count(t)) return PosTag::Verb;
  if (t.size() > 3 && ends_with(t, "ly")) return PosTag::Adv;
  if ((t.size() > 4 && ends_with(t, "ing")) || (t.size() > 3 && ends_with(t, "ed"))) {
    return PosTag::Verb;
  }
  for (std::string_view suf : {"ous", "ful", "ive", "able", "ible", "less", "ical", "ish"}) {
    if (t.size() > suf.size() + 2 && ends_with(t, suf)) return PosTag::Adj;
  }
  return PosTag::Noun;
}

std::vector<PosTag> coarse_pos_tags(const TokenSeq& seq) {
  std::vector<PosTag> tags;
  tags.reserve(seq.tokens.size() + seq.punctuation_total());
  for (const auto& t : seq.tokens) tags.push_back(tag_word(t));
  tags.insert(tags.end(), seq.punctuation_total(), PosTag::Punct);
  return tags;
}

int count_syllables(std::string_view word) {
  auto vowel = [](char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
  };
  std::string letters;
  for (char c : word) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c >= 'a' && c <= 'z') letters.push_back(c);
  }
  int groups = 0;
  bool prev_vowel = false;
  for (char c : letters) {
    const bool v = vowel(c);
    if (v && !prev_vowel) ++groups;
    prev_vowel = v;
  }
  // Silent final 'e' ("make"), but not a consonant + "le" ending ("table").
  const std::size_t n = letters.size();
  if (groups > 1 && n >= 2 && letters[n - 1] == 'e' && !vowel(letters[n - 2])) {
    const bool consonant_le = n >= 3 && letters[n - 2] == 'l' && !vowel(letters[n - 3]);
    if (!consonant_le) --groups;
  }
  return std::max(groups, 1);
}

std::optional<Readability> flesch_kincaid(std::size_t words, std::size_t sentences,
                                          std::size_t syllables) {
  if (words == 0) return std::nullopt;
  const double w = static_cast<double>(words);
  const double s = static_cast<double>(std::max<std::size_t>(sentences, 1));
  const double wps = w / s;
  const double spw = static_cast<double>(syllables) / w;
  return Readability{0.39 * wps + 11.8 * spw - 15.59, 206.835 - 1.015 * wps - 84.6 * spw};
}

std::optional<Readability> flesch_kincaid(const TokenSeq& seq) {
  std::size_t words = 0;
  std::size_t syllables = 0;
  for (const auto& t : seq.tokens) {
    if (is_url_token(t)) continue;
    ++words;
    syllables += static_cast<std::size_t>(count_syllables(t));
  }
  return flesch_kincaid(words, seq.sentence_count, syllables);
}

std::optional<Readability> flesch_kincaid(std::string_view text) {
  return flesch_kincaid(tokenize(text));
}

Interplay interplay_features(const std::vector<std::string>& argument,
                             const std::vector<std::string>& original_post) {
  const std::set<std::string> a(argument.begin(), argument.end());
  const std::set<std::string> o(original_post.begin(), original_post.end());
  std::size_t common = 0;
  for (const auto& w : a) common += o.count(w);
  Interplay r;
  r.n_common = common;
  const double c = static_cast<double>(common);
  r.reply_fraction = a.empty() ? 0.0 : c / static_cast<double>(a.size());
  r.op_fraction = o.empty() ? 0.0 : c / static_cast<double>(o.size());
  const std::size_t uni = a.size() + o.size() - common;
  r.jaccard = uni == 0 ? 0.0 : c / static_cast<double>(uni);
  return r;
}

const std::array<std::string_view, LanguageFeatureVector::kSize>& LanguageFeatureVector::names() {
  static const std::array<std::string_view, kSize> n{
      "n_words",           "n_sentences",         "n_positive",
      "n_negative",        "n_examples",          "n_hedges",
      "n_definite_articles", "n_indefinite_articles", "n_first_person",
      "n_first_person_plural", "n_question_marks", "n_quotation_marks",
      "n_urls",            "word_entropy",        "token_type_entropy",
      "fk_grade",          "fk_ease",             "n_common_words",
      "reply_fraction",    "op_fraction",         "jaccard"};
  return n;
}

std::array<double, LanguageFeatureVector::kSize> LanguageFeatureVector::values() const {
  return {n_words,          n_sentences,        n_positive,     n_negative,
          n_examples,       n_hedges,           n_definite_articles,
          n_indefinite_articles, n_first_person, n_first_person_plural,
          n_question_marks, n_quotation_marks,  n_urls,         word_entropy,
          token_type_entropy, fk_grade,         fk_ease,        n_common_words,
          reply_fraction,   op_fraction,        jaccard};
}

LanguageFeatureVector language_features(const std::vector<TokenSeq>& comments,
                                        const std::vector<std::string>& op_words,
                                        const LexiconSet& lex) {
  LanguageFeatureVector f;
  TokenSeq all;
  auto add_count = [&](double& field, const Lexicon& l) {
    for (const auto& c : comments) field += static_cast<double>(l.count(c.tokens));
  };
  for (const auto& c : comments) all.append(c);

  const std::vector<std::string> words = all.words();
  f.n_words = static_cast<double>(words.size());
  f.n_sentences = static_cast<double>(all.sentence_count);
  add_count(f.n_positive, lex.positive);
  add_count(f.n_negative, lex.negative);
  add_count(f.n_examples, lex.examples);
  add_count(f.n_hedges, lex.hedges);
  add_count(f.n_definite_articles, lex.definite_articles);
  add_count(f.n_indefinite_articles, lex.indefinite_articles);
  add_count(f.n_first_person, lex.first_person);
  add_count(f.n_first_person_plural, lex.first_person_plural);
  f.n_question_marks = static_cast<double>(all.question_marks());
  f.n_quotation_marks = static_cast<double>(all.quotation_marks());
  f.n_urls = static_cast<double>(all.url_count);
  f.word_entropy = shannon_entropy(words);

  std::vector<std::string> tags;
  for (PosTag t : coarse_pos_tags(all)) tags.emplace_back(pos_tag_name(t));
  f.token_type_entropy = shannon_entropy(tags);

  if (auto fk = flesch_kincaid(all)) {
    f.fk_grade = fk->grade;
    f.fk_ease = fk->ease;
  } else {
    f.fk_grade = std::numeric_limits<double>::quiet_NaN();
    f.fk_ease = std::numeric_limits<double>::quiet_NaN();
  }
  const Interplay ip = interplay_features(words, op_words);
  f.n_common_words = static_cast<double>(ip.n_common);
  f.reply_fraction = ip.reply_fraction;
  f.op_fraction = ip.op_fraction;
  f.jaccard = ip.jaccard;
  return f;
}

LanguageFeatureVector extract_language_features(const std::string& user, const Discussion& d,
                                                Timestamp cutoff, const LexiconSet& lexicons) {
  std::vector<TokenSeq> parts;
  for (const auto& c : d.comments) {
    if (c.author == user && c.created_at < cutoff) parts.push_back(tokenize(c.body));
  }
  if (parts.empty()) {
    throw IneligibleError("user '" + user + "' has no comment before the cutoff in discussion '" +
                          d.post.id + "'");
  }
  return language_features(parts, word_tokens(d.op_text()), lexicons);
}

}  // namespace debatenet
