#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "admiq/mst.hpp"
#include "admiq/oracle.hpp"
#include "admiq/query.hpp"
#include "admiq/tree_matching.hpp"
#include "admiq/types.hpp"
#include "helpers.hpp"

using namespace admiq;
using namespace admiq::testing;

namespace {

// Connected multigraph with integer weights, sized by the benchmark range.
struct WeightedGraph {
  Graph graph;
  std::vector<Rational> weights;
};

WeightedGraph make_graph(int n, int m, unsigned seed) {
  std::mt19937 rng(seed);
  WeightedGraph out;
  out.graph = random_connected_multigraph(rng, n, n, m);
  out.weights.reserve(out.graph.edges.size());
  for (std::size_t i = 0; i < out.graph.edges.size(); ++i) {
    out.weights.push_back(uniform_int(rng, 0, 999));
  }
  return out;
}

void BM_kruskal(benchmark::State& state) {
  WeightedGraph wg = make_graph(static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(0)) * 5, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mst::kruskal_mst(wg.graph, wg.weights));
  }
}
BENCHMARK(BM_kruskal)->Arg(50)->Arg(200)->Arg(800);

void BM_nontrivial_bottlenecks(benchmark::State& state) {
  WeightedGraph wg = make_graph(static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(0)) * 5, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mst::nontrivial_bottlenecks_all(wg.graph, wg.weights));
  }
}
BENCHMARK(BM_nontrivial_bottlenecks)->Arg(50)->Arg(200)->Arg(800);

void BM_mst_thresholds(benchmark::State& state) {
  std::mt19937 rng(13);
  const int n = static_cast<int>(state.range(0));
  Instance inst = random_mst_instance(rng, n, n, n * 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mst::mst_thresholds(inst));
  }
}
BENCHMARK(BM_mst_thresholds)->Arg(50)->Arg(200);

void BM_brute_force_thresholds(benchmark::State& state) {
  std::mt19937 rng(17);
  Instance inst = random_mst_instance(rng, 6, 6, static_cast<int>(state.range(0)));
  oracle::ExactFamily engine(inst);
  for (auto _ : state) {
    for (std::size_t e = 0; e < inst.size(); ++e) {
      benchmark::DoNotOptimize(engine.brute_force_thresholds(e));
    }
  }
}
BENCHMARK(BM_brute_force_thresholds)->Arg(8)->Arg(10)->Arg(12);

void BM_tree_matching_thresholds(benchmark::State& state) {
  std::mt19937 rng(19);
  Instance inst = random_tree_matching_instance(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (std::size_t e = 0; e < inst.size(); ++e) {
      benchmark::DoNotOptimize(tree_thresholds_fixed_edge(inst, e));
    }
  }
}
BENCHMARK(BM_tree_matching_thresholds)->Arg(16)->Arg(64);

void BM_minimum_admissible_query(benchmark::State& state) {
  std::mt19937 rng(23);
  Instance inst = random_mst_instance(rng, 5, 5, 8);
  std::vector<ThresholdPair> pairs = mst::mst_thresholds(inst);
  std::vector<ElementColor> colors = color_all(inst, pairs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimum_admissible_query(inst, colors));
  }
}
BENCHMARK(BM_minimum_admissible_query);

}  // namespace

BENCHMARK_MAIN();
