#include <benchmark/benchmark.h>

#include <vector>

#include "msed/graph.hpp"
#include "msed/noise_stats.hpp"
#include "msed/rng.hpp"
#include "msed/text_index.hpp"
#include "msed/wavelet.hpp"

namespace {

void BM_HaarDwt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  msed::Rng rng(1);
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.uniform();
  for (auto _ : state) {
    auto d = msed::haar_dwt(xs);
    benchmark::DoNotOptimize(d);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_HaarDwt)->Arg(64)->Arg(1024)->Arg(16384);

void BM_TfIdfCosine(benchmark::State& state) {
  const int nnz = static_cast<int>(state.range(0));
  msed::Rng rng(2);
  msed::TfIdfVector a, b;
  double na = 0, nb = 0;
  for (int i = 0; i < nnz; ++i) {
    const double wa = rng.uniform(), wb = rng.uniform();
    a.weights.emplace_back(2 * i, wa);
    b.weights.emplace_back(3 * i, wb);
    na += wa * wa;
    nb += wb * wb;
  }
  a.norm = std::sqrt(na);
  b.norm = std::sqrt(nb);
  for (auto _ : state) benchmark::DoNotOptimize(msed::tfidf_cosine(a, b));
}
BENCHMARK(BM_TfIdfCosine)->Arg(8)->Arg(64)->Arg(512);

void BM_Louvain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  msed::Rng rng(3);
  msed::SimilarityGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 8; ++k) {
      const int j = rng.uniform_int(0, n - 1);
      if (j != i) g.add_edge(std::min(i, j), std::max(i, j), rng.uniform() + 0.01);
    }
  for (auto _ : state) {
    auto p = msed::louvain_single_pass(g, 42);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_Louvain)->Arg(256)->Arg(2048);

void BM_RipleyKL(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  msed::Rng rng(4);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) p = {rng.uniform(0, 10), rng.uniform(0, 10)};
  for (auto _ : state) benchmark::DoNotOptimize(msed::ripley_kl(pts, 100.0, 1.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) * n);
}
BENCHMARK(BM_RipleyKL)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
