#include <benchmark/benchmark.h>

#include <vector>  // for vector

#include "gsc/divergence.hpp"
#include "gsc/geometry.hpp"
#include "gsc/presentation.hpp"
#include "gsc/smallcancel.hpp"
#include "gsc/wpd.hpp"

using namespace gsc;

namespace {

std::vector<Word> tv(int upto) {
  std::vector<Word> rs;
  for (int i = 1; i <= upto; ++i) {
    rs.push_back(tv_relator(i));
  }
  return rs;
}

// state.range(0): 1 = parallel, 0 = serial
void BM_PieceTable(benchmark::State& state) {
  auto g = LabelledGraph::cycles(tv(6));
  g.prepare();
  for (auto _ : state) {
    PieceTable t(g, 0, state.range(0) != 0);
    benchmark::DoNotOptimize(t.size());
  }
}
BENCHMARK(BM_PieceTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FourPointDelta(benchmark::State& state) {
  Engine     e(tv(1));
  CayleyBall b(e, {0, 1}, 4);
  auto       dist = distance_matrix(b);
  for (auto _ : state) {
    auto d = four_point_delta(dist, 0, 2000000, 0, state.range(0) != 0);
    benchmark::DoNotOptimize(d.delta);
  }
}
BENCHMARK(BM_FourPointDelta)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_WpdProbe(benchmark::State& state) {
  auto   rs = tv(2);
  Engine e(rs);
  auto   gamma = LabelledGraph::cycles(rs);
  auto   d     = find_wpd_data(e, gamma);
  for (auto _ : state) {
    auto p = wpd_probe(e, gamma, d.g, 1, 2, 6, state.range(0) != 0);
    benchmark::DoNotOptimize(p.elements.size());
  }
}
BENCHMARK(BM_WpdProbe)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CayleyBall(benchmark::State& state) {
  Engine e({tv_relator(2)});
  for (auto _ : state) {
    CayleyBall b(e, {0, 1}, static_cast<size_t>(state.range(0)));
    benchmark::DoNotOptimize(b.size());
  }
}
BENCHMARK(BM_CayleyBall)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Divergence(benchmark::State& state) {
  Engine            e(tv(1));
  DivergenceOptions opt;
  opt.slack         = 0;
  opt.search_radius = 8;
  opt.parallel      = state.range(0) != 0;
  for (auto _ : state) {
    auto r = exact_divergence(e, 2, opt);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_Divergence)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
