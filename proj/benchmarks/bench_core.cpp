#include <benchmark/benchmark.h>

#include "ditop/category.hpp"
#include "ditop/pv.hpp"
#include "ditop/van_kampen.hpp"

using namespace ditop;

namespace {

Rat r(long long n, long long d = 1) { return Rat(n, d); }

CubicalScene square_annulus() {
  CubicalScene s;
  s.dim = 2;
  s.forbidden = {Box{{{r(1, 3), r(2, 3)}, {r(1, 3), r(2, 3)}}}};
  s.marked_points = {{"a", {r(0), r(0)}}, {"b", {r(1), r(1)}}};
  return s;
}

// n diagonal holes in series; class count a -> b grows as 2^n
CubicalScene diagonal_holes(int n) {
  CubicalScene s;
  s.dim = 2;
  for (int i = 0; i < n; ++i) {
    Rat lo(2 * i + 1, 2 * n + 1), hi(2 * i + 2, 2 * n + 1);
    s.forbidden.push_back(Box{{{lo, hi}, {lo, hi}}});
  }
  s.marked_points = {{"a", {r(0), r(0)}}, {"b", {r(1), r(1)}}};
  return s;
}

void bm_enumerate_paths(benchmark::State& state) {
  GridComplex g = compactify(diagonal_holes(static_cast<int>(state.range(0))));
  GridComplex::Vertex a = g.marked_vertex("a"), b = g.marked_vertex("b");
  for (auto _ : state) {
    PathSet ps = enumerate_dipaths(g, a, b, Budget{});
    benchmark::DoNotOptimize(ps.paths.size());
  }
}
BENCHMARK(bm_enumerate_paths)->Arg(2)->Arg(3)->Arg(4);

void bm_flip_classes(benchmark::State& state) {
  GridComplex g = compactify(diagonal_holes(static_cast<int>(state.range(0))));
  GridComplex::Vertex a = g.marked_vertex("a"), b = g.marked_vertex("b");
  for (auto _ : state) {
    ClassSet cs = classes(g, a, b, Budget{});
    benchmark::DoNotOptimize(cs.classes.size());
  }
}
BENCHMARK(bm_flip_classes)->Arg(2)->Arg(3)->Arg(4);

void bm_full_subcategory(benchmark::State& state) {
  GridComplex g = compactify(diagonal_holes(static_cast<int>(state.range(0))));
  std::vector<GridComplex::Vertex> objects = g.allowed_vertices();
  for (auto _ : state) {
    HomTable t = HomTable::full_subcategory(g, objects, Budget{});
    benchmark::DoNotOptimize(t.object_count());
  }
}
BENCHMARK(bm_full_subcategory)->Arg(2)->Arg(3);

void bm_pushout_verify(benchmark::State& state) {
  GridComplex g = compactify(square_annulus());
  Window w1{{{r(0), r(2, 3)}, {r(0), r(1)}}}, w2{{{r(1, 3), r(1)}, {r(0), r(1)}}};
  std::vector<GridComplex::Vertex> band;
  for (GridComplex::Vertex v : g.allowed_vertices()) {
    Rat x = g.coords_of(v)[0];
    if (x == r(1, 3) || x == r(2, 3)) band.push_back(v);
  }
  std::vector<GridComplex::Vertex> a1 = band, a2 = band;
  a1.push_back(g.marked_vertex("a"));
  a2.push_back(g.marked_vertex("b"));
  Cover cover = make_cover(g, w1, w2, a1, a2);
  for (auto _ : state) {
    PushoutReport report = verify_pushout(g, cover, Budget{});
    benchmark::DoNotOptimize(report.passed);
  }
}
BENCHMARK(bm_pushout_verify);

void bm_pv_compile(benchmark::State& state) {
  const std::string text =
      "sem a=1; sem b=1; sem c=2;"
      "proc{P(a);P(b);P(c);V(c);V(b);V(a);}"
      "proc{P(b);P(c);P(a);V(a);V(c);V(b);}"
      "proc{P(c);P(a);P(b);V(b);V(a);V(c);}";
  for (auto _ : state) {
    CubicalScene scene = to_scene(parse_pv(text));
    benchmark::DoNotOptimize(scene.forbidden.size());
  }
}
BENCHMARK(bm_pv_compile);

} // namespace

BENCHMARK_MAIN();
