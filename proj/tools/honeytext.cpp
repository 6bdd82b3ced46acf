// Batch front end for the decoy-encryption toolkit. Every subcommand is
// deterministic under --seed; paths and pipeline knobs come from flags or
// a key=value config file (--config).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "honeytext/adversary.hpp"
#include "honeytext/classifier.hpp"
#include "honeytext/corpus.hpp"
#include "honeytext/dte.hpp"
#include "honeytext/embeddings.hpp"
#include "honeytext/errors.hpp"
#include "honeytext/generator.hpp"
#include "honeytext/he.hpp"
#include "honeytext/keywords.hpp"
#include "honeytext/pipeline.hpp"
#include "honeytext/privacy.hpp"
#include "honeytext/synsets.hpp"
#include "honeytext/transport.hpp"

namespace {

using namespace honeytext;

struct Settings {
  std::string corpus_path;
  std::string stopword_path;
  std::string synset_path;
  std::string vector_path;
  std::string category_mode = "classify";
  std::size_t top_keywords = 8;
  double p_halt = 0.5;
  std::size_t per_keyword = 2;
  double epsilon = 1.0;
  std::string mechanism = "discrete";
  int ngram_order = 2;
  double keyword_boost = 5.0;
  std::size_t table_size = 256;
  std::uint32_t kdf_iterations = 10000;
  std::uint64_t seed = 0;
};

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open input file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (!text.empty() && text.back() == '\n') text.pop_back();
  if (!text.empty() && text.back() == '\r') text.pop_back();
  return text;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open input file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

const std::string& require(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw InputError(std::string("missing required setting: ") + flag);
  }
  return value;
}

CategorizedCorpus load_corpus_from(const Settings& s) {
  auto stopwords = load_stopwords(require(s.stopword_path, "--stopwords"));
  return load_corpus(require(s.corpus_path, "--corpus"), stopwords);
}

MechanismConfig mechanism_from(const Settings& s) {
  MechanismConfig cfg;
  cfg.epsilon = s.epsilon;
  if (s.mechanism == "discrete") {
    cfg.mode = MechanismMode::discrete_exponential;
  } else if (s.mechanism == "continuous") {
    cfg.mode = MechanismMode::continuous_laplace;
  } else {
    throw InputError("mechanism must be 'discrete' or 'continuous'");
  }
  return cfg;
}

PipelineConfig pipeline_config_from(const Settings& s) {
  PipelineConfig cfg;
  if (s.category_mode == "classify") {
    cfg.category_mode = CategoryMode::classify;
  } else if (s.category_mode == "fixed_random") {
    cfg.category_mode = CategoryMode::fixed_random;
  } else if (s.category_mode == "per_seed_random") {
    cfg.category_mode = CategoryMode::per_seed_random;
  } else {
    throw InputError(
        "category-mode must be classify, fixed_random, or per_seed_random");
  }
  cfg.top_keywords = s.top_keywords;
  cfg.p_halt = s.p_halt;
  cfg.per_keyword = s.per_keyword;
  cfg.mechanism = mechanism_from(s);
  cfg.ngram_order = s.ngram_order;
  cfg.keyword_boost = s.keyword_boost;
  return cfg;
}

struct LoadedPipeline {
  CategorizedCorpus corpus;
  SynsetGraph graph;
  VectorStore store;
  std::optional<DecoyPipeline> pipeline;
};

LoadedPipeline load_pipeline(const Settings& s, Rng& rng) {
  LoadedPipeline loaded;
  loaded.corpus = load_corpus_from(s);
  loaded.graph = parse_synset_graph(require(s.synset_path, "--synsets"));
  loaded.store = load_vectors(require(s.vector_path, "--vectors"));
  loaded.pipeline.emplace(loaded.corpus, loaded.graph, loaded.store,
                          pipeline_config_from(s), rng);
  return loaded;
}

std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void warn_on_load(const VectorStore& store) {
  if (store.duplicate_count) {
    std::cerr << "warning: " << store.duplicate_count
              << " duplicate vector entries, last definition kept\n";
  }
  if (store.count_mismatch) {
    std::cerr << "warning: header count " << store.declared_count
              << " disagrees with actual entries, actual count used\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decoy-table honey encryption toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Key=value configuration file");

  Settings s;
  app.add_option("--corpus", s.corpus_path, "Categorized JSONL corpus");
  app.add_option("--stopwords", s.stopword_path, "Stopword list, one per line");
  app.add_option("--synsets", s.synset_path, "Synset graph TSV");
  app.add_option("--vectors", s.vector_path, "Word vector text file");
  app.add_option("--category-mode", s.category_mode,
                 "classify | fixed_random | per_seed_random");
  app.add_option("--top-keywords", s.top_keywords, "Keywords per message");
  app.add_option("--p-halt", s.p_halt, "Halt probability of the synset walk");
  app.add_option("--per-keyword", s.per_keyword,
                 "Replacement lemmas sampled per keyword");
  app.add_option("--epsilon", s.epsilon, "Privacy parameter");
  app.add_option("--mechanism", s.mechanism, "discrete | continuous");
  app.add_option("--ngram-order", s.ngram_order, "Generator n-gram order");
  app.add_option("--keyword-boost", s.keyword_boost,
                 "Generator keyword weight multiplier");
  app.add_option("--table-size", s.table_size,
                 "Decoy table size (power of two)");
  app.add_option("--kdf-iterations", s.kdf_iterations,
                 "Password strengthening rounds");
  app.add_option("--seed", s.seed, "Master random seed");

  // classify
  std::string in_path;
  auto* cmd_classify =
      app.add_subcommand("classify", "Print the category of a message");
  cmd_classify->add_option("--in", in_path, "Message file")->required();
  cmd_classify->callback([&] {
    auto corpus = load_corpus_from(s);
    NBModel model = train_nb(corpus);
    TokenBag bag =
        preprocess(tokenize(read_text_file(in_path)), corpus.stopwords, true);
    std::cout << classify(model, bag) << '\n';
  });

  // keywords
  auto* cmd_keywords =
      app.add_subcommand("keywords", "Print the top keywords of a message");
  cmd_keywords->add_option("--in", in_path, "Message file")->required();
  cmd_keywords->callback([&] {
    auto corpus = load_corpus_from(s);
    NBModel model = train_nb(corpus);
    TokenBag bag =
        preprocess(tokenize(read_text_file(in_path)), corpus.stopwords, true);
    IdfTable idf = build_idf(corpus.bags_in(classify(model, bag)));
    for (const auto& keyword : extract_keywords(bag, idf, s.top_keywords)) {
      std::cout << keyword.token << '\t' << std::setprecision(12)
                << keyword.score << '\n';
    }
  });

  // perturb
  auto* cmd_perturb = app.add_subcommand(
      "perturb", "Print the synset-perturbed keyword bag of a message");
  cmd_perturb->add_option("--in", in_path, "Message file")->required();
  cmd_perturb->callback([&] {
    auto corpus = load_corpus_from(s);
    auto graph = parse_synset_graph(require(s.synset_path, "--synsets"));
    NBModel model = train_nb(corpus);
    TokenBag bag =
        preprocess(tokenize(read_text_file(in_path)), corpus.stopwords, true);
    IdfTable idf = build_idf(corpus.bags_in(classify(model, bag)));
    auto keywords = extract_keywords(bag, idf, s.top_keywords);
    Rng rng(s.seed);
    auto swapped =
        perturb_keywords(graph, keywords, s.p_halt, s.per_keyword, rng);
    for (std::size_t i = 0; i < swapped.size(); ++i) {
      if (i) std::cout << ' ';
      std::cout << swapped[i];
    }
    std::cout << '\n';
  });

  // gen-decoy
  std::size_t decoy_count = 1;
  auto* cmd_gen =
      app.add_subcommand("gen-decoy", "Generate decoy messages for a message");
  cmd_gen->add_option("--in", in_path, "Message file")->required();
  cmd_gen->add_option("--count", decoy_count, "Number of decoys");
  cmd_gen->callback([&] {
    Rng rng(s.seed);
    auto loaded = load_pipeline(s, rng);
    warn_on_load(loaded.store);
    std::string message = read_text_file(in_path);
    std::uint64_t base = rng.next_u64();
    for (std::size_t i = 0; i < decoy_count; ++i) {
      Rng child = Rng::split(base, i);
      std::cout << loaded.pipeline->make_decoy(message, child) << '\n';
    }
  });

  // encrypt
  std::string password, out_path;
  auto* cmd_encrypt =
      app.add_subcommand("encrypt", "Encrypt a message into a decoy package");
  cmd_encrypt->add_option("--password", password, "Password")->required();
  cmd_encrypt->add_option("--in", in_path, "Plaintext file")->required();
  cmd_encrypt->add_option("--out", out_path, "Package file")->required();
  cmd_encrypt->callback([&] {
    Rng rng(s.seed);
    auto loaded = load_pipeline(s, rng);
    warn_on_load(loaded.store);
    KdfParams kdf{s.kdf_iterations};
    auto package = he_encrypt(password, read_text_file(in_path),
                              *loaded.pipeline, s.table_size, kdf, rng);
    write_package(package, out_path);
  });

  // decrypt
  auto* cmd_decrypt =
      app.add_subcommand("decrypt", "Decrypt a package (never fails: wrong "
                                    "passwords yield a decoy)");
  cmd_decrypt->add_option("--password", password, "Password")->required();
  cmd_decrypt->add_option("--in", in_path, "Package file")->required();
  cmd_decrypt->add_option("--out", out_path, "Write the message here instead "
                                             "of standard output");
  cmd_decrypt->callback([&] {
    auto package = read_package(in_path);
    std::string message = he_decrypt(password, package);
    if (out_path.empty()) {
      std::cout << message << '\n';
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw ResourceError("cannot write output file: " + out_path);
      out << message;
    }
  });

  // verify-privacy
  std::string bag_m, bag_m_prime;
  auto* cmd_verify = app.add_subcommand(
      "verify-privacy",
      "Exactly check the substitution mechanism's privacy bound");
  cmd_verify->add_option("--m", bag_m, "First bag, comma-separated words")
      ->required();
  cmd_verify
      ->add_option("--m-prime", bag_m_prime, "Second bag, comma-separated")
      ->required();
  cmd_verify->callback([&] {
    auto store = load_vectors(require(s.vector_path, "--vectors"));
    warn_on_load(store);
    MechanismConfig cfg = mechanism_from(s);
    auto report = verify_privacy_bound(store, cfg, split_csv_list(bag_m),
                                       split_csv_list(bag_m_prime));
    std::cout << to_json(report) << '\n';
  });

  // dte-advantage
  std::size_t trials = 10000;
  std::string builder_kind = "honest";
  std::string distinguisher_kind = "coin";
  auto* cmd_adv = app.add_subcommand(
      "dte-advantage", "Estimate a distinguisher's advantage over the encoder");
  cmd_adv->add_option("--trials", trials, "Game trials per side");
  cmd_adv->add_option("--builder", builder_kind, "honest | rigged");
  cmd_adv->add_option("--distinguisher", distinguisher_kind,
                      "coin | constant | seed-zero");
  cmd_adv->callback([&] {
    Rng rng(s.seed);
    auto loaded = load_pipeline(s, rng);
    warn_on_load(loaded.store);

    std::vector<std::string> pool;
    for (const auto& doc : loaded.corpus.documents) {
      std::string text;
      for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
        if (i) text += ' ';
        text += doc.tokens[i];
      }
      pool.push_back(std::move(text));
    }
    if (pool.empty()) throw InputError("corpus has no documents");

    const DecoyPipeline& pipeline = *loaded.pipeline;
    bool rig = builder_kind == "rigged";
    if (!rig && builder_kind != "honest") {
      throw InputError("builder must be 'honest' or 'rigged'");
    }
    std::size_t table_size = s.table_size;
    TableBuilder builder = [&pool, &pipeline, table_size,
                            rig](Rng& game_rng) {
      const std::string& message =
          pool[game_rng.uniform_index(pool.size())];
      auto built = encode(message, pipeline, table_size, game_rng);
      if (rig && built.second.value != 0) {
        std::swap(built.first.entries[0],
                  built.first.entries[built.second.value]);
        built.first.true_seed = 0;
        built.second.value = 0;
      }
      return built;
    };

    Distinguisher distinguisher;
    if (distinguisher_kind == "coin") {
      distinguisher = [&rng](const std::string&, const Seed&) {
        return static_cast<int>(rng.uniform_index(2));
      };
    } else if (distinguisher_kind == "constant") {
      distinguisher = [](const std::string&, const Seed&) { return 1; };
    } else if (distinguisher_kind == "seed-zero") {
      distinguisher = [](const std::string&, const Seed& seed) {
        return seed.value == 0 ? 1 : 0;
      };
    } else {
      throw InputError("distinguisher must be coin, constant, or seed-zero");
    }

    double advantage = estimate_dte_advantage(builder, distinguisher, trials, rng);
    std::cout << std::setprecision(6) << advantage << '\n';
  });

  // experiment
  std::string epsilons_flag = "10,15,20,25,30";
  std::string counts_flag = "25";
  std::string samples_path, out_prefix;
  double coeff = 0.03;
  auto* cmd_exp = app.add_subcommand(
      "experiment", "Sweep epsilon and count distinguished decoys");
  cmd_exp->add_option("--epsilons", epsilons_flag,
                      "Comma-separated ascending epsilons");
  cmd_exp->add_option("--counts", counts_flag, "Comma-separated decoy counts");
  cmd_exp->add_option("--samples", samples_path,
                      "Author sample messages, one per line")
      ->required();
  cmd_exp->add_option("--coeff", coeff, "Threshold coefficient");
  cmd_exp->add_option("--out-prefix", out_prefix,
                      "Write <prefix>-author.csv and <prefix>-context.csv");
  cmd_exp->callback([&] {
    Rng rng(s.seed);
    auto loaded = load_pipeline(s, rng);
    warn_on_load(loaded.store);

    ExperimentConfig cfg;
    for (const auto& e : split_csv_list(epsilons_flag)) {
      cfg.epsilons.push_back(std::stod(e));
    }
    for (const auto& c : split_csv_list(counts_flag)) {
      cfg.decoy_counts.push_back(static_cast<std::size_t>(std::stoul(c)));
    }
    cfg.threshold_coefficient = coeff;
    cfg.rng_seed = s.seed;

    auto samples = read_lines(samples_path);
    auto result = run_distinguisher_experiment(cfg, *loaded.pipeline,
                                               loaded.store, samples,
                                               loaded.corpus);
    std::cout << to_text(result);
    if (!out_prefix.empty()) {
      for (auto kind : {ProfileKind::author, ProfileKind::context}) {
        std::string path = out_prefix +
                           (kind == ProfileKind::author ? "-author.csv"
                                                        : "-context.csv");
        std::ofstream out(path);
        if (!out) throw ResourceError("cannot write " + path);
        out << to_csv(result, kind);
      }
    }
  });

  // emd
  std::string bags_path;
  auto* cmd_emd = app.add_subcommand(
      "emd", "Earth mover's distance between two word bags");
  cmd_emd->add_option("--bags", bags_path,
                      "JSON file {\"x\":{\"items\":[...],\"weights\":[...]},"
                      "\"y\":{...}}; weights default to uniform")
      ->required();
  cmd_emd->callback([&] {
    auto store = load_vectors(require(s.vector_path, "--vectors"));
    warn_on_load(store);
    std::ifstream in(bags_path);
    if (!in) throw ResourceError("cannot open bags file: " + bags_path);
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ParseError("bags file is not valid JSON");
    auto parse_bag = [&doc](const char* key) {
      if (!doc.contains(key)) {
        throw ParseError(std::string("bags file missing '") + key + "'");
      }
      const auto& node = doc.at(key);
      auto items = node.at("items").get<std::vector<std::string>>();
      if (!node.contains("weights")) return WeightedBag::uniform(items);
      WeightedBag bag;
      bag.items = std::move(items);
      bag.weights = node.at("weights").get<std::vector<double>>();
      return bag;
    };
    WeightedBag x = parse_bag("x");
    WeightedBag y = parse_bag("y");
    Metric metric = [&store](const std::string& a, const std::string& b) {
      return embedding_distance(store, a, b);
    };
    auto plan = emd(x, y, metric);
    std::cout << std::fixed << std::setprecision(6) << plan.cost << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
