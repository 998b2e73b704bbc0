// OpenMP kernels against the serial reference path.

#include <benchmark/benchmark.h>

#include <cmath>

#include "fhardy/gagliardo.hpp"
#include "fhardy/quadrature.hpp"
#include "fhardy/verifier.hpp"

using namespace fhardy;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

TestFunction tent() {
  TestFunction t;
  t.id = "tent";
  t.r0 = 0.5;
  t.peak = 1.0;
  t.R = 2.0;
  return t;
}

void Gagliardo(benchmark::State& st, Geometry g) {
  QuadratureScheme s;
  s.exec = mode(st);
  for (auto _ : st)
    benchmark::DoNotOptimize(integrate_gagliardo(tent(), 2.0, 0.75, PowerExpr::constant(1.0), s, g).value);
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel");
}

void Polar(benchmark::State& st) {
  const Geometry g(GroupSpec::heisenberg(), NormKind::koranyi);
  QuadratureScheme s;
  s.exec = mode(st);
  s.angular = 48;
  for (auto _ : st)
    benchmark::DoNotOptimize(
        integrate_polar([](double r, const Point& w) { return std::exp(-r * r) * (1 + 0.5 * w[0]); }, s, g).value);
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel");
}

void Cartesian(benchmark::State& st) {
  const Geometry g(GroupSpec::heisenberg(), NormKind::koranyi);
  QuadratureScheme s;
  s.exec = mode(st);
  for (auto _ : st)
    benchmark::DoNotOptimize(
        integrate_cartesian([&](const Point& x) { return std::exp(-std::pow(g.norm(x), 2)); }, {}, s, 3).value);
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel");
}

void VerifyHs(benchmark::State& st) {
  Scenario sc = parse_scenario(R"({"theorem": "hardy_sobolev", "seed": 1, "group": {"name": "euclidean", "dim": 2},
    "exponents": {"p": 3, "q": 4, "s": 0.8}, "corpus": [{"id": "tent", "profile": "tent"}]})");
  sc.scheme.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(verify(sc).results.size());
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel");
}

}  // namespace

BENCHMARK_CAPTURE(Gagliardo, line, Geometry(GroupSpec::euclidean(1), NormKind::euclidean))
    ->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(Gagliardo, plane, Geometry(GroupSpec::euclidean(2), NormKind::euclidean))
    ->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(Polar)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(Cartesian)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(VerifyHs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
