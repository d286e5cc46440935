#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "infokit/clt.hpp"
#include "infokit/coding.hpp"
#include "infokit/distribution.hpp"
#include "infokit/entropy.hpp"
#include "infokit/rng.hpp"
#include "infokit/typicality.hpp"

namespace {

infokit::Distribution wide_distribution(std::uint32_t w) {
  std::vector<double> probs(w);
  double norm = 0.0;
  for (std::uint32_t i = 0; i < w; ++i) {
    probs[i] = 1.0 + (i % 7);
    norm += probs[i];
  }
  for (auto& p : probs) p /= norm;
  return infokit::Distribution(std::move(probs));
}

infokit::Sequence sampled_block(const infokit::Distribution& d, std::uint32_t n,
                                std::uint64_t trial) {
  infokit::TrialRng rng(99, trial);
  std::vector<std::uint32_t> letters(n);
  for (auto& a : letters) a = d.sample(rng);
  return infokit::Sequence(letters);
}

void BM_ShannonEntropy(benchmark::State& state) {
  const auto d = wide_distribution(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(infokit::shannon_entropy(d).value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ShannonEntropy)->Arg(8)->Arg(64)->Arg(1024);

void BM_TsallisEntropy(benchmark::State& state) {
  const auto d = wide_distribution(static_cast<std::uint32_t>(state.range(0)));
  const infokit::QParam qp(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(infokit::tsallis_entropy(d, qp).value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TsallisEntropy)->Arg(8)->Arg(64)->Arg(1024);

// Exact big-integer rank/unrank through the block codec at n = 1000.
void BM_EncodeBlock(benchmark::State& state) {
  const infokit::Distribution p11({0.11, 0.89});
  const auto book = infokit::Codebook::build(
      p11, infokit::CodeParams{1000, infokit::Rational(3, 5), 0.05});
  const auto s = sampled_block(p11, 1000, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(book.encode(s).ok);
  }
}
BENCHMARK(BM_EncodeBlock);

void BM_DecodeBlock(benchmark::State& state) {
  const infokit::Distribution p11({0.11, 0.89});
  const auto book = infokit::Codebook::build(
      p11, infokit::CodeParams{1000, infokit::Rational(3, 5), 0.05});
  const auto word = book.encode(sampled_block(p11, 1000, 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(book.decode(word).has_value());
  }
}
BENCHMARK(BM_DecodeBlock);

// One Monte Carlo batch of typicality trials (dominates the workbench runtime).
void BM_TypicalityTrials(benchmark::State& state) {
  const infokit::Distribution p25({0.25, 0.75});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        infokit::estimate_typicality_probability(p25, 100, 0.05, 256, 1).estimate);
  }
  state.SetItemsProcessed(state.iterations() * 256 * 100);
}
BENCHMARK(BM_TypicalityTrials);

// KS distance including the sort of the sampled statistics.
void BM_KsDistance(benchmark::State& state) {
  const infokit::Distribution coin({0.5, 0.5}, {0.0, 1.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(infokit::clt_empirical_distance(coin, 50, 4096, 1));
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_KsDistance);

}  // namespace

BENCHMARK_MAIN();
