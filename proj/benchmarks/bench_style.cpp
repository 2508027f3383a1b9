#include <benchmark/benchmark.h>

#include "bench_corpus.hpp"
#include "pws/fingerprint.hpp"
#include "pws/random.hpp"
#include "pws/style.hpp"

namespace {

using namespace pws;

std::string random_text(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::string s(n, ' ');
  for (auto& c : s) c = static_cast<char>('a' + rng.below(8));
  return s;
}

void BM_EditDistance(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  std::string a = random_text(n, 1), b = random_text(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(edit_distance(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EditDistance)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

// Formatting an already formatted file is the common case inside the
// fingerprint loop, so both are measured.
void BM_FormatCorpus(benchmark::State& state) {
  const auto& corpus = bench::fixture("general");
  const auto& profile = preset_profiles()[static_cast<std::size_t>(state.range(0))];
  std::size_t bytes = 0;
  for (auto _ : state) {
    for (const auto& s : corpus.scripts) {
      auto f = format(s, profile);
      bytes += s.text.size();
      benchmark::DoNotOptimize(f.text);
    }
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
  state.SetLabel(profile.name);
}
BENCHMARK(BM_FormatCorpus)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_ReformatFixedPoint(benchmark::State& state) {
  const auto& corpus = bench::fixture("general");
  const auto& profile = preset_profiles().front();
  std::vector<SourceScript> formatted;
  for (const auto& s : corpus.scripts) formatted.push_back(format(s, profile));
  for (auto _ : state) {
    for (const auto& s : formatted) benchmark::DoNotOptimize(format(s, profile).text);
  }
}
BENCHMARK(BM_ReformatFixedPoint)->Unit(benchmark::kMillisecond);

void BM_Fingerprint(benchmark::State& state) {
  const auto& corpus = bench::fixture("general");
  const auto& profiles = preset_profiles();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fingerprint(corpus.scripts[i++ % corpus.scripts.size()], profiles).best_match);
  }
}
BENCHMARK(BM_Fingerprint)->Unit(benchmark::kMicrosecond);

}  // namespace
