#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "semrank/train.hpp"

namespace {

semrank::Corpus news_corpus() {
  const auto profile = semrank::builtin_profile("en");
  std::vector<semrank::TrainingDocument> docs;
  std::size_t n = 0;
  for (const auto& d : bench::news_documents(profile)) {
    for (auto& p : semrank::paragraph_documents(d, std::to_string(n++))) docs.push_back(std::move(p));
  }
  return semrank::Corpus::build(docs, 1);
}

void BM_TrainEpoch(benchmark::State& state) {
  const auto corpus = news_corpus();
  semrank::TrainConfig cfg;
  cfg.dimension = static_cast<std::size_t>(state.range(0));
  cfg.epochs = 1;
  cfg.min_count = 1;
  for (auto _ : state) benchmark::DoNotOptimize(semrank::train(corpus, cfg));
}
BENCHMARK(BM_TrainEpoch)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_InferDocVector(benchmark::State& state) {
  const auto corpus = news_corpus();
  semrank::TrainConfig cfg;
  cfg.dimension = 50;
  cfg.epochs = 5;
  cfg.min_count = 1;
  const auto model = semrank::train(corpus, cfg);
  cfg.epochs = 20;
  const auto& tokens = corpus.documents().front().tokens;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(semrank::infer_doc_vector(tokens, model.doc_model, cfg, ++seed));
}
BENCHMARK(BM_InferDocVector);

}  // namespace
