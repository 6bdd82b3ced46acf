#include "honeytext/keywords.hpp"

#include <algorithm>
#include <cmath>

#include "honeytext/errors.hpp"

namespace honeytext {

double IdfTable::lookup(const std::string& token) const {
  if (doc_count == 0) throw LookupError("idf table is empty");
  auto it = values.find(token);
  if (it != values.end()) return it->second;
  return std::log(static_cast<double>(doc_count)) + 1.0;
}

double tf(const TokenBag& bag, const std::string& token) {
  if (bag.total == 0) throw InputError("term frequency of an empty bag");
  return static_cast<double>(bag.count(token)) /
         static_cast<double>(bag.total);
}

IdfTable build_idf(const std::vector<TokenBag>& docs) {
  IdfTable table;
  table.doc_count = docs.size();
  if (table.doc_count == 0) {
    throw InputError("idf requires at least one document");
  }
  std::map<std::string, std::size_t> doc_freq;
  for (const auto& bag : docs) {
    for (const auto& [token, count] : bag.counts) {
      (void)count;
      ++doc_freq[token];
    }
  }
  const double n = static_cast<double>(table.doc_count);
  for (const auto& [token, freq] : doc_freq) {
    table.values[token] = std::log(n / static_cast<double>(freq));
  }
  return table;
}

IdfTable build_idf(const CategorizedCorpus& corpus) {
  std::vector<TokenBag> docs;
  docs.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) docs.push_back(doc.bag);
  return build_idf(docs);
}

std::vector<Keyword> extract_keywords(const TokenBag& bag,
                                      const IdfTable& idf, std::size_t k) {
  if (bag.total == 0) throw InputError("cannot extract keywords of an empty message");
  std::vector<Keyword> scored;
  scored.reserve(bag.counts.size());
  for (const auto& [token, count] : bag.counts) {
    (void)count;
    scored.push_back({token, tf(bag, token) * idf.lookup(token)});
  }
  std::sort(scored.begin(), scored.end(),
            [](const Keyword& a, const Keyword& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.token < b.token;
            });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace honeytext
