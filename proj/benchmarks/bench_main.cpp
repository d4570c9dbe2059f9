#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "raagws/checks.hpp"
#include "raagws/spine.hpp"
#include "raagws/stargraph.hpp"

using namespace raagws;

namespace {

DefiningGraph fixture(const std::string& name) {
  std::ifstream in(std::string(RAAGWS_DATA_DIR) + "/" + name + ".json");
  std::ostringstream ss;
  ss << in.rdbuf();
  return DefiningGraph::parse_json(ss.str());
}

void BM_Crossings(benchmark::State& state) {
  const auto g = fixture("cycle4");
  const auto parts = enumerate_partitions(g, PartitionScope::FromPairs);
  Rng rng(1);
  std::vector<Word> words;
  for (int i = 0; i < 256; ++i) words.push_back(random_cyclic_word(g, static_cast<int>(state.range(0)), rng));
  std::size_t i = 0;
  for (auto _ : state) {
    int total = 0;
    for (const auto& p : parts) total += partition_crossings(p, words[i % words.size()]);
    benchmark::DoNotOptimize(total);
    ++i;
  }
}
BENCHMARK(BM_Crossings)->Arg(8)->Arg(16);

void BM_ConjCanonical(benchmark::State& state) {
  const auto g = fixture("cycle4");
  Rng rng(2);
  std::vector<Word> words;
  for (int i = 0; i < 64; ++i) words.push_back(random_cyclic_word(g, static_cast<int>(state.range(0)), rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(conj_canonical(g, words[i++ % words.size()]));
}
BENCHMARK(BM_ConjCanonical)->Arg(6)->Arg(10);

void BM_BuildBlowup(benchmark::State& state) {
  const auto g = fixture("cycle4");
  const auto parts = enumerate_partitions(g, PartitionScope::FromPairs);
  const auto systems = compatible_systems(g, parts, 3);
  std::vector<Partition> largest;
  for (const auto& sys : systems)
    if (sys.size() > largest.size()) {
      largest.clear();
      for (int k : sys) largest.push_back(parts[k]);
    }
  for (auto _ : state) benchmark::DoNotOptimize(build_blowup(g, largest));
}
BENCHMARK(BM_BuildBlowup);

void BM_Factor(benchmark::State& state) {
  const RoseSpace s(fixture(state.range(0) == 0 ? "f2" : "path3"));
  Rng rng(3);
  std::vector<RandomAutomorphism> autos;
  for (int i = 0; i < 32; ++i) autos.push_back(random_long_range(s.graph(), 6, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = autos[i++ % autos.size()];
    benchmark::DoNotOptimize(factor(s, a.phi, a.inverse));
  }
}
BENCHMARK(BM_Factor)->Arg(0)->Arg(1);

void BM_EnumerateRoses(benchmark::State& state) {
  const RoseSpace s(fixture("f2"));
  const long long bound = rose_identity(s).norm0 + state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_roses(s, bound));
}
BENCHMARK(BM_EnumerateRoses)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_StarPoset(benchmark::State& state) {
  const RoseSpace s(fixture("path3"));
  const auto id = rose_identity(s);
  for (auto _ : state) benchmark::DoNotOptimize(star_poset(s, id, false));
}
BENCHMARK(BM_StarPoset)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
