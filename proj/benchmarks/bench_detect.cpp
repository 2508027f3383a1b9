#include <benchmark/benchmark.h>

#include "bench_corpus.hpp"
#include "pws/detect.hpp"
#include "pws/source_model.hpp"

namespace {

using namespace pws;

void BM_Tokenize(benchmark::State& state) {
  const auto& corpus = bench::fixture("general");
  std::size_t bytes = 0;
  for (auto _ : state) {
    for (const auto& s : corpus.scripts) {
      benchmark::DoNotOptimize(tokenize(s).tokens.data());
      bytes += s.text.size();
    }
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_Tokenize)->Unit(benchmark::kMillisecond);

void BM_Detect(benchmark::State& state) {
  Cwe cwe = kAllCwes[static_cast<std::size_t>(state.range(0))];
  const auto& corpus = bench::fixture("cwe" + std::to_string(cwe_number(cwe)));
  for (auto _ : state) {
    for (const auto& s : corpus.scripts) benchmark::DoNotOptimize(detect(cwe, s).verdict);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus.scripts.size()));
  state.SetLabel(to_string(cwe));
}
BENCHMARK(BM_Detect)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_SplitMerge(benchmark::State& state) {
  const auto& corpus = bench::fixture("general");
  for (auto _ : state) {
    for (const auto& s : corpus.scripts) {
      for (const auto& span : extract_functions(tokenize(s))) {
        auto split = split_completion(s, span);
        benchmark::DoNotOptimize(merge_completion(split.prompt_context, split.completion).text);
      }
    }
  }
}
BENCHMARK(BM_SplitMerge)->Unit(benchmark::kMillisecond);

}  // namespace
