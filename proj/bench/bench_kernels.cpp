// Serial reference against the OpenMP kernels. Arg = uniform refinements of
// the L-shape; Type 3 with k = 1.

#include <map>

#include <benchmark/benchmark.h>

#include "hdgmg/eigen_estimates.hpp"
#include "hdgmg/experiment.hpp"

using namespace hdgmg;

namespace {

const ScalarFunction kZero = [](const Point&) { return 0.0; };

std::shared_ptr<const Mesh> lshape(int refinements) {
  Mesh m = build_structured(Domain::LShape);
  for (int i = 0; i < refinements; ++i) m = refine_uniform(m);
  return std::make_shared<const Mesh>(m);
}

const CondensedSystem& system_at(int level) {
  static std::map<int, CondensedSystem> cache;
  auto it = cache.find(level);
  if (it == cache.end()) {
    it = cache.emplace(level, assemble_condensed(lshape(level), ElementFamily::make(FamilyKind::Type3, 1),
                                                 coefficient_preset("exp1"), kZero))
             .first;
  }
  return it->second;
}

void spmv_kernel(benchmark::State& state, Execution exec) {
  const CondensedSystem& sys = system_at(static_cast<int>(state.range(0)));
  const Vector x = random_vector(sys.num_dofs(), 1);
  Vector y;
  for (auto _ : state) {
    spmv(sys.A, x, y, exec);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["dofs"] = sys.num_dofs();
  state.counters["threads"] = exec == Execution::Parallel ? kernel_threads() : 1;
}

void residual_kernel(benchmark::State& state, Execution exec) {
  const CondensedSystem& sys = system_at(static_cast<int>(state.range(0)));
  const Vector x = random_vector(sys.num_dofs(), 1);
  const Vector b = random_vector(sys.num_dofs(), 2);
  Vector r;
  for (auto _ : state) {
    residual(sys.A, x, b, r, exec);
    benchmark::DoNotOptimize(r.data());
  }
}

void dot_kernel(benchmark::State& state, Execution exec) {
  const CondensedSystem& sys = system_at(static_cast<int>(state.range(0)));
  const Vector x = random_vector(sys.num_dofs(), 1);
  const Vector y = random_vector(sys.num_dofs(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(dot(x, y, exec));
}

void local_solvers(benchmark::State& state, Execution exec) {
  const auto mesh = lshape(static_cast<int>(state.range(0)));
  const auto fam = ElementFamily::make(FamilyKind::Type3, 1);
  const auto a = coefficient_preset("exp1");
  for (auto _ : state) {
    auto locals = build_local_solvers(Scheme::HDG, *mesh, fam, a, exec);
    benchmark::DoNotOptimize(locals.data());
  }
  state.counters["elements"] = static_cast<double>(mesh->num_triangles());
}

}  // namespace

BENCHMARK_CAPTURE(spmv_kernel, serial, Execution::Serial)->DenseRange(3, 6);
BENCHMARK_CAPTURE(spmv_kernel, parallel, Execution::Parallel)->DenseRange(3, 6);
BENCHMARK_CAPTURE(residual_kernel, serial, Execution::Serial)->DenseRange(3, 6);
BENCHMARK_CAPTURE(residual_kernel, parallel, Execution::Parallel)->DenseRange(3, 6);
BENCHMARK_CAPTURE(dot_kernel, serial, Execution::Serial)->DenseRange(3, 6);
BENCHMARK_CAPTURE(dot_kernel, parallel, Execution::Parallel)->DenseRange(3, 6);
BENCHMARK_CAPTURE(local_solvers, serial, Execution::Serial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(local_solvers, parallel, Execution::Parallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
