#include <benchmark/benchmark.h>

#include <array>
#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "honeytext/corpus.hpp"
#include "honeytext/dte.hpp"
#include "honeytext/embeddings.hpp"
#include "honeytext/pipeline.hpp"
#include "honeytext/rng.hpp"
#include "honeytext/synsets.hpp"
#include "honeytext/transport.hpp"

namespace {

std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(HONEYTEXT_DATA_DIR) / name;
}

const honeytext::DecoyPipeline& demo_pipeline() {
  static auto stopwords =
      honeytext::load_stopwords(data_path("stopwords.txt").string());
  static auto corpus =
      honeytext::load_corpus(data_path("corpus_demo.jsonl").string(),
                             stopwords);
  static auto graph =
      honeytext::parse_synset_graph(data_path("synsets_sample.tsv").string());
  static auto store =
      honeytext::load_vectors(data_path("vectors_demo.txt").string());
  static honeytext::Rng rng(7);
  static honeytext::DecoyPipeline pipeline(corpus, graph, store, {}, rng);
  return pipeline;
}

// Uniform bags over random points in R^4, Euclidean ground distance.
void bm_emd_uniform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  honeytext::Rng rng(11);
  std::vector<std::string> xs, ys;
  std::map<std::string, std::array<double, 4>> points;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back("x" + std::to_string(i));
    ys.push_back("y" + std::to_string(i));
    for (const auto& name : {xs.back(), ys.back()}) {
      for (auto& coordinate : points[name]) coordinate = rng.normal();
    }
  }
  honeytext::Metric metric = [&points](const std::string& a,
                                       const std::string& b) {
    double sum = 0.0;
    const auto& pa = points.at(a);
    const auto& pb = points.at(b);
    for (std::size_t d = 0; d < pa.size(); ++d) {
      sum += (pa[d] - pb[d]) * (pa[d] - pb[d]);
    }
    return std::sqrt(sum);
  };
  auto a = honeytext::WeightedBag::uniform(xs);
  auto b = honeytext::WeightedBag::uniform(ys);
  for (auto _ : state) {
    benchmark::DoNotOptimize(honeytext::emd(a, b, metric));
  }
}
BENCHMARK(bm_emd_uniform)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void bm_make_decoy(benchmark::State& state) {
  const auto& pipeline = demo_pipeline();
  honeytext::Rng rng(13);
  const std::string message =
      "the storm brought rain and thunder over the valley";
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline.make_decoy(message, rng));
  }
}
BENCHMARK(bm_make_decoy);

void bm_encode(benchmark::State& state) {
  const auto& pipeline = demo_pipeline();
  const auto table_size = static_cast<std::size_t>(state.range(0));
  honeytext::Rng rng(17);
  const std::string message =
      "the bank raised our credit rate before the market closed";
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        honeytext::encode(message, pipeline, table_size, rng));
  }
}
BENCHMARK(bm_encode)->Arg(2)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
