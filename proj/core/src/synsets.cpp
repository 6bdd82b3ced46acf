#include "honeytext/synsets.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace honeytext {

namespace {

Pos parse_pos(const std::string& field, std::size_t line) {
  if (field == "n") return Pos::noun;
  if (field == "a") return Pos::adjective;
  if (field == "v") return Pos::verb;
  if (field == "r") return Pos::adverb;
  throw ParseError("unknown part of speech '" + field + "'", line);
}

std::vector<std::string> split_list(const std::string& field) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream stream(field);
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Depth-first three-color walk along hypernym edges.
void check_acyclic(const SynsetGraph& graph) {
  enum class Color { white, gray, black };
  std::map<std::string, Color> color;
  for (const auto& [id, synset] : graph.synsets) {
    (void)synset;
    color[id] = Color::white;
  }
  std::vector<std::pair<std::string, std::size_t>> stack;
  for (const auto& [id, synset] : graph.synsets) {
    (void)synset;
    if (color[id] != Color::white) continue;
    stack.emplace_back(id, 0);
    color[id] = Color::gray;
    while (!stack.empty()) {
      auto& [current, next_edge] = stack.back();
      const auto& parents = graph.synsets.at(current).hypernyms;
      if (next_edge == parents.size()) {
        color[current] = Color::black;
        stack.pop_back();
        continue;
      }
      const std::string& parent = parents[next_edge++];
      if (color[parent] == Color::gray) {
        throw GraphError("hypernym cycle through synset '" + parent + "'");
      }
      if (color[parent] == Color::white) {
        color[parent] = Color::gray;
        stack.emplace_back(parent, 0);
      }
    }
  }
}

}  // namespace

const Synset& SynsetGraph::at(const std::string& id) const {
  auto it = synsets.find(id);
  if (it == synsets.end()) throw LookupError("unknown synset id: " + id);
  return it->second;
}

SynsetGraph parse_synset_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open synset file: " + path);

  SynsetGraph graph;
  std::map<std::string, std::size_t> line_of;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, '\t')) fields.push_back(field);
    if (fields.size() < 3 || fields.size() > 4) {
      throw ParseError("expected 4 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    Synset synset;
    synset.id = fields[0];
    if (synset.id.empty()) throw ParseError("empty synset id", line_no);
    synset.pos = parse_pos(fields[1], line_no);
    synset.lemmas = split_list(fields[2]);
    if (synset.lemmas.empty()) {
      throw ParseError("synset '" + synset.id + "' has no lemmas", line_no);
    }
    if (fields.size() == 4) synset.hypernyms = split_list(fields[3]);
    for (const auto& parent : synset.hypernyms) {
      if (parent == synset.id) {
        throw GraphError("hypernym cycle through synset '" + synset.id + "'");
      }
    }
    if (graph.synsets.count(synset.id)) {
      throw ParseError("duplicate synset id '" + synset.id + "'", line_no);
    }
    line_of[synset.id] = line_no;
    graph.synsets.emplace(synset.id, std::move(synset));
  }

  for (const auto& [id, synset] : graph.synsets) {
    for (const auto& parent : synset.hypernyms) {
      if (!graph.synsets.count(parent)) {
        throw ParseError("synset '" + id + "' points to missing hypernym '" +
                             parent + "'",
                         line_of[id]);
      }
      graph.hyponyms[parent].push_back(id);
    }
    for (const auto& lemma : synset.lemmas) {
      graph.lemma_index[lemma].push_back(id);
    }
  }
  for (auto& [lemma, ids] : graph.lemma_index) {
    (void)lemma;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  for (auto& [id, children] : graph.hyponyms) {
    (void)id;
    std::sort(children.begin(), children.end());
  }

  check_acyclic(graph);
  return graph;
}

std::string hypernym_ascent(const SynsetGraph& graph, const std::string& start,
                            double p_halt, Rng& rng) {
  if (p_halt <= 0.0 || p_halt > 1.0) {
    throw InputError("halt probability must be in (0, 1]");
  }
  const Synset* current = &graph.at(start);
  for (;;) {
    const auto& parents = current->hypernyms;
    if (parents.empty()) return current->id;  // forced halt at a root
    if (rng.bernoulli(p_halt)) return current->id;
    std::size_t pick =
        parents.size() == 1
            ? 0
            : static_cast<std::size_t>(rng.uniform_index(parents.size()));
    current = &graph.at(parents[pick]);
  }
}

std::vector<std::string> collect_hyponym_subtree(
    const SynsetGraph& graph, const std::string& root,
    const std::set<Pos>& pos_filter) {
  if (!graph.contains(root)) throw LookupError("unknown synset id: " + root);

  std::set<std::string> reachable;
  std::vector<std::string> frontier{root};
  reachable.insert(root);
  while (!frontier.empty()) {
    std::string id = std::move(frontier.back());
    frontier.pop_back();
    auto it = graph.hyponyms.find(id);
    if (it == graph.hyponyms.end()) continue;
    for (const auto& child : it->second) {
      if (reachable.insert(child).second) frontier.push_back(child);
    }
  }

  std::vector<std::string> lemmas;
  std::set<std::string> emitted;
  for (const auto& id : reachable) {  // std::set iterates id-sorted
    const Synset& synset = graph.synsets.at(id);
    if (!pos_filter.count(synset.pos)) continue;
    for (const auto& lemma : synset.lemmas) {
      if (emitted.insert(lemma).second) lemmas.push_back(lemma);
    }
  }
  return lemmas;
}

std::vector<std::string> perturb_keywords(const SynsetGraph& graph,
                                          const std::vector<Keyword>& keywords,
                                          double p_halt,
                                          std::size_t per_keyword, Rng& rng,
                                          const std::set<Pos>& pos_filter) {
  if (per_keyword == 0) throw InputError("per_keyword must be at least 1");
  std::vector<std::string> out;
  for (const auto& keyword : keywords) {
    auto it = graph.lemma_index.find(keyword.token);
    if (it == graph.lemma_index.end()) {
      out.push_back(keyword.token);  // not in the graph: pass through
      continue;
    }
    const std::string& start = it->second.front();
    std::string top = hypernym_ascent(graph, start, p_halt, rng);
    std::vector<std::string> pool =
        collect_hyponym_subtree(graph, top, pos_filter);
    std::erase(pool, keyword.token);
    if (pool.empty()) {
      out.push_back(keyword.token);
      continue;
    }
    auto sampled = reservoir_sample(pool.begin(), pool.end(), per_keyword, rng);
    out.insert(out.end(), sampled.begin(), sampled.end());
  }
  return out;
}

}  // namespace honeytext
