#include "honeytext/corpus.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "honeytext/errors.hpp"

namespace honeytext {

namespace {

bool is_letter(unsigned char c) { return std::isalpha(c) != 0; }

bool is_joiner(unsigned char c) { return c == '\'' || c == '-'; }

constexpr std::size_t kMinTokenLength = 2;

bool has_vowel(const std::string& s) {
  for (char c : s) {
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y')
      return true;
  }
  return false;
}

// Suffix-stripping rule: replace `suffix` by `replacement` when the remaining
// stem keeps at least `min_stem` characters and (optionally) a vowel. Rules
// are tried in order; the first match wins for one pass.
struct StemRule {
  const char* suffix;
  const char* replacement;
  std::size_t min_stem;
  bool stem_needs_vowel;
};

constexpr std::array<StemRule, 16> kStemRules{{
    {"ational", "ate", 2, true},  // relational -> relate
    {"ization", "ize", 2, true},  // normalization -> normalize
    {"fulness", "ful", 2, true},  // hopefulness -> hopeful
    {"ousness", "ous", 2, true},  // nervousness -> nervous
    {"iveness", "ive", 2, true},  // decisiveness -> decisive
    {"tional", "tion", 2, true},  // conditional -> condition
    {"ement", "e", 3, true},      // replacement -> replace
    {"ments", "ment", 3, true},   // governments -> government
    {"ness", "", 3, true},        // darkness -> dark
    {"sses", "ss", 2, false},     // glasses -> glass
    {"ies", "y", 2, false},       // ponies -> pony
    {"ied", "y", 2, false},       // studied -> study
    {"ing", "", 3, true},         // running -> runn (undoubled below)
    {"ed", "", 3, true},          // stopped -> stopp (undoubled below)
    {"ly", "", 3, true},          // quickly -> quick
    {"s", "", 3, false},          // runs -> run ("ss" protected below)
}};

bool ends_with(const std::string& s, const char* suffix) {
  std::size_t n = std::char_traits<char>::length(suffix);
  return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

bool is_vowel_char(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// One rewrite pass. Returns true when something changed. Every rule's
// replacement is shorter than its suffix, so iteration terminates.
bool stem_pass(std::string& word) {
  for (const auto& rule : kStemRules) {
    std::size_t n = std::char_traits<char>::length(rule.suffix);
    if (word.size() < n || !ends_with(word, rule.suffix)) continue;
    if (n == 1 && rule.suffix[0] == 's' && ends_with(word, "ss")) {
      continue;  // keep "-ss" (glass, class)
    }
    std::string stem_part = word.substr(0, word.size() - n);
    if (stem_part.size() < rule.min_stem) continue;
    if (rule.stem_needs_vowel && !has_vowel(stem_part)) continue;
    word = stem_part + rule.replacement;
    // Undouble a trailing consonant pair left by -ing/-ed removal
    // (running -> runn -> run), but keep -ll/-ss.
    if (rule.replacement[0] == '\0' && word.size() >= 2) {
      char last = word[word.size() - 1];
      if (last == word[word.size() - 2] && !is_vowel_char(last) &&
          last != 'l' && last != 's') {
        word.pop_back();
      }
    }
    return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& raw, bool lowercase) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&]() {
    // Joiners are only kept between letters; strip any left dangling.
    while (!current.empty() && is_joiner(current.back())) current.pop_back();
    if (current.size() >= kMinTokenLength) tokens.push_back(current);
    current.clear();
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    unsigned char c = raw[i];
    if (is_letter(c)) {
      current.push_back(lowercase ? static_cast<char>(std::tolower(c))
                                  : static_cast<char>(c));
    } else if (is_joiner(c) && !current.empty() && i + 1 < raw.size() &&
               is_letter(static_cast<unsigned char>(raw[i + 1]))) {
      current.push_back(static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::string stem(const std::string& token) {
  std::string word = token;
  // Iterating to fixed point makes stem(stem(x)) == stem(x) by construction.
  while (stem_pass(word)) {
  }
  return word;
}

TokenBag preprocess(const std::vector<std::string>& tokens,
                    const std::set<std::string>& stopwords, bool apply_stem) {
  TokenBag bag;
  for (const auto& token : tokens) {
    if (stopwords.count(token)) continue;
    std::string word = apply_stem ? stem(token) : token;
    if (stopwords.count(word)) continue;
    ++bag.counts[word];
    ++bag.total;
  }
  return bag;
}

std::set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open stopword file: " + path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string word;
    std::istringstream(line) >> word;
    if (!word.empty()) words.insert(word);
  }
  return words;
}

CategorizedCorpus load_corpus(const std::string& path,
                              const std::set<std::string>& stopwords,
                              bool apply_stem) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file: " + path);

  CategorizedCorpus corpus;
  corpus.stopwords = stopwords;

  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() ||
        !record.contains("category") || !record.contains("doc_id") ||
        !record.contains("text") || !record["category"].is_string() ||
        !record["doc_id"].is_string() || !record["text"].is_string()) {
      throw ParseError("malformed corpus record in " + path, line_no);
    }
    Document doc;
    doc.category = record["category"].get<std::string>();
    doc.doc_id = record["doc_id"].get<std::string>();
    if (doc.category.empty()) {
      throw ParseError("empty category in " + path, line_no);
    }
    doc.tokens = tokenize(record["text"].get<std::string>(), true);
    doc.bag = preprocess(doc.tokens, stopwords, apply_stem);
    if (doc.bag.empty()) {
      ++corpus.dropped_empty;
      continue;
    }
    corpus.categories.insert(doc.category);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

std::vector<const Document*> CategorizedCorpus::documents_in(
    const std::string& category) const {
  std::vector<const Document*> out;
  for (const auto& doc : documents) {
    if (doc.category == category) out.push_back(&doc);
  }
  return out;
}

std::vector<TokenBag> CategorizedCorpus::bags_in(
    const std::string& category) const {
  std::vector<TokenBag> out;
  for (const auto& doc : documents) {
    if (doc.category == category) out.push_back(doc.bag);
  }
  return out;
}

TokenBag CategorizedCorpus::category_bag(const std::string& category) const {
  TokenBag bag;
  for (const auto& doc : documents) {
    if (doc.category != category) continue;
    for (const auto& [token, count] : doc.bag.counts) {
      bag.counts[token] += count;
      bag.total += count;
    }
  }
  return bag;
}

}  // namespace honeytext
