#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "semrank/keywords.hpp"
#include "semrank/summarize.hpp"

namespace {

void BM_SegmentArticle(benchmark::State& state) {
  const auto profile = semrank::builtin_profile("en");
  const auto docs = bench::news_documents(profile);
  for (auto _ : state) benchmark::DoNotOptimize(semrank::segment(docs.front().raw_text, profile));
}
BENCHMARK(BM_SegmentArticle);

void BM_BaselineSummary(benchmark::State& state) {
  const auto profile = semrank::builtin_profile("en");
  const auto docs = bench::news_documents(profile);
  semrank::SummaryRequest r;
  r.method = semrank::SummaryMethod::kBaselineOverlap;
  for (auto _ : state) {
    for (const auto& d : docs) benchmark::DoNotOptimize(semrank::summarize(d, r, {}));
  }
}
BENCHMARK(BM_BaselineSummary);

void BM_Bm25Keywords(benchmark::State& state) {
  const auto profile = semrank::builtin_profile("en");
  const auto docs = bench::news_documents(profile);
  for (auto _ : state) {
    for (const auto& d : docs) benchmark::DoNotOptimize(semrank::extract_keywords(d, {}));
  }
}
BENCHMARK(BM_Bm25Keywords);

}  // namespace
