#include <benchmark/benchmark.h>

#include <vector>

#include "chronomine/multiset.hpp"
#include "chronomine/occurrence.hpp"
#include "chronomine/pipeline.hpp"
#include "chronomine/rules.hpp"
#include "chronomine/synthetic.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace chronomine;

SequenceDataset planted(std::size_t n, std::size_t noise) {
  auto spec = testing::planted_ab_spec();
  spec.positives = n;
  spec.negatives = n;
  spec.noise_events = noise;
  return generate_synthetic_dataset(spec, 7);
}

void BM_MatcherOccurs(benchmark::State& state) {
  const auto ds = planted(200, state.range(0));
  const Chronicle c({"A", "B", "C"}, {{0, 1, 10, 20}, {1, 2, -5, 30}});
  for (auto _ : state) {
    std::size_t hits = 0;
    for (const auto& s : ds.positives()) hits += ChronicleMatcher(c, s.alphabet()).occurs(s);
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(state.iterations() * ds.positives().size());
}
BENCHMARK(BM_MatcherOccurs)->Arg(8)->Arg(16)->Arg(32);

void BM_ExtractMultisets(benchmark::State& state) {
  const auto ds = planted(400, state.range(0));
  for (auto _ : state) {
    auto m = extract_multisets(ds.positives(), 20, 2);
    benchmark::DoNotOptimize(m.data());
  }
}
BENCHMARK(BM_ExtractMultisets)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_InduceRules(benchmark::State& state) {
  const auto ds = planted(200, 8);
  const auto table = build_duration_table({"A", "B", "C"}, ds);
  RuleLearnerConfig config;
  for (auto _ : state) {
    auto rules = induce_rules(table, config);
    benchmark::DoNotOptimize(rules.data());
  }
  state.counters["rows"] = double(table.rows().size());
}
BENCHMARK(BM_InduceRules)->Unit(benchmark::kMillisecond);

void BM_Dcm(benchmark::State& state) {
  const auto ds = planted(state.range(0), 8);
  DcmConfig config;
  config.sigma_min = SupportThreshold::fraction(0.05);
  config.g_min = 2;
  for (auto _ : state) {
    auto r = dcm(ds, config);
    benchmark::DoNotOptimize(r.chronicles.data());
  }
}
BENCHMARK(BM_Dcm)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
