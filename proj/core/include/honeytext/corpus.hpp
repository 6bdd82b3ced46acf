#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace honeytext {

/// Bag-of-words: token -> positive count. Stopword-free by construction.
struct TokenBag {
  std::map<std::string, long> counts;
  long total = 0;

  long count(const std::string& token) const {
    auto it = counts.find(token);
    return it == counts.end() ? 0 : it->second;
  }
  bool empty() const { return total == 0; }
};

struct Document {
  std::string category;
  std::string doc_id;
  /// Ordered lowercase tokens as tokenized, before stopword removal or
  /// stemming. Sequence models train on these.
  std::vector<std::string> tokens;
  /// Preprocessed bag (stopwords removed, optionally stemmed).
  TokenBag bag;
};

struct CategorizedCorpus {
  std::set<std::string> categories;
  std::vector<Document> documents;
  std::set<std::string> stopwords;
  /// Records dropped during load because preprocessing emptied them.
  std::size_t dropped_empty = 0;

  std::vector<const Document*> documents_in(const std::string& category) const;
  /// Per-document bags for one category, in load order.
  std::vector<TokenBag> bags_in(const std::string& category) const;
  /// Aggregate bag over every document of one category.
  TokenBag category_bag(const std::string& category) const;
};

/// Split raw text into tokens: maximal runs of ASCII letters, keeping
/// apostrophes and hyphens that sit between letters. Digits and punctuation
/// separate tokens, and single-letter fragments are discarded (they are
/// either noise from split-up alphanumerics or bare articles).
std::vector<std::string> tokenize(const std::string& raw, bool lowercase = true);

/// Rule-based suffix stripper applied to fixed point. The rule table lives in
/// corpus.cpp; see stem() for the order of application.
std::string stem(const std::string& token);

/// Drop stopwords, optionally stem, and aggregate counts. Stemming can
/// surface a stopword ("doing" -> "do"), so the filter runs again on stems.
TokenBag preprocess(const std::vector<std::string>& tokens,
                    const std::set<std::string>& stopwords, bool apply_stem);

/// One token per line, '#' starts a comment, blanks ignored.
std::set<std::string> load_stopwords(const std::string& path);

/// JSON-lines corpus: one {"category","doc_id","text"} object per line.
/// Documents emptied by preprocessing are dropped and counted.
CategorizedCorpus load_corpus(const std::string& path,
                              const std::set<std::string>& stopwords,
                              bool apply_stem = true);

}  // namespace honeytext
