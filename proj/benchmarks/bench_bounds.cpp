#include <benchmark/benchmark.h>

#include <random>

#include "zclust/bounds.hpp"
#include "zclust/certify.hpp"

using namespace zclust;

namespace {

QuadraticSystem worked_quadratic() {
  PolySystem f(2);
  Poly f1(2), f2(2);
  f1.add_term(Monomial({2, 0}), 1.0);
  f1.add_term(Monomial({0, 0}), -1e-4);
  f2.add_term(Monomial({1, 0}), 1.0);
  f2.add_term(Monomial({0, 1}), 1.0);
  f2.add_term(Monomial({3, 0}), -0.01);
  f.components = {f1, f2};
  CVector y(2);
  y << Complexd(0.001), Complexd(-0.001);
  const KernelData kd = numerical_kernel(jacobian(f, y), 0.01);
  const auto [gA, A] = normalize(singularize(f, y, kd.basis), y, kd);
  return quadratic_part(inflate_system(gA, kd.kappa, A).h);
}

QuadraticSystem diagonal_squares(int n) {
  QuadraticSystem Q;
  Q.n = n;
  for (int i = 0; i < n; ++i) {
    Poly p(n);
    Monomial m = Monomial::zero(n);
    m.e[static_cast<size_t>(i)] = 2;
    p.add_term(m, 1.0);
    Q.components.push_back(p);
  }
  return Q;
}

}  // namespace

static void BM_min_on_sphere_worked(benchmark::State& state) {
  const RealifiedQuartic rq = realify(worked_quadratic());
  const auto boxes = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    const SphereBound b = min_on_sphere(rq, std::nullopt, boxes);
    benchmark::DoNotOptimize(b.q_lower);
  }
  state.counters["boxes"] = static_cast<double>(boxes);
}
BENCHMARK(BM_min_on_sphere_worked)->Arg(10000)->Arg(50000)->Arg(200000)
    ->Unit(benchmark::kMillisecond);

static void BM_min_on_sphere_threads(benchmark::State& state) {
  const RealifiedQuartic rq = realify(diagonal_squares(3));
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const SphereBound b = min_on_sphere(rq, std::nullopt, 50000, threads);
    benchmark::DoNotOptimize(b.q_lower);
  }
}
BENCHMARK(BM_min_on_sphere_threads)->Arg(1)->Arg(2)->Arg(4)
    ->Unit(benchmark::kMillisecond);

static void BM_remainder_bound(benchmark::State& state) {
  PolySystem f(2);
  Poly f1(2), f2(2);
  f1.add_term(Monomial({2, 0}), 1.0);
  f1.add_term(Monomial({0, 0}), -1e-4);
  f2.add_term(Monomial({1, 0}), 1.0);
  f2.add_term(Monomial({0, 1}), 1.0);
  f2.add_term(Monomial({3, 0}), -0.01);
  f.components = {f1, f2};
  CVector y(2);
  y << Complexd(0.001), Complexd(-0.001);
  const KernelData kd = numerical_kernel(jacobian(f, y), 0.01);
  const auto [gA, A] = normalize(singularize(f, y, kd.basis), y, kd);
  const QuadraticSystem Q = quadratic_part(inflate_system(gA, kd.kappa, A).h);
  const ISystem R = inflate(compose_affine(to_interval(f), A), kd.kappa) -
                    to_interval(as_system(Q));
  for (auto _ : state) {
    benchmark::DoNotOptimize(remainder_bound(R, 0.1));
  }
}
BENCHMARK(BM_remainder_bound);

static void BM_epsilon_interval(benchmark::State& state) {
  PolySystem f(2);
  Poly f1(2), f2(2);
  f1.add_term(Monomial({2, 0}), 1.0);
  f1.add_term(Monomial({0, 0}), -1e-4);
  f2.add_term(Monomial({1, 0}), 1.0);
  f2.add_term(Monomial({0, 1}), 1.0);
  f2.add_term(Monomial({3, 0}), -0.01);
  f.components = {f1, f2};
  CVector y(2);
  y << Complexd(0.001), Complexd(-0.001);
  const KernelData kd = numerical_kernel(jacobian(f, y), 0.01);
  const auto [gA, A] = normalize(singularize(f, y, kd.basis), y, kd);
  const QuadraticSystem Q = quadratic_part(inflate_system(gA, kd.kappa, A).h);
  const ISystem R = inflate(compose_affine(to_interval(f), A), kd.kappa) -
                    to_interval(as_system(Q));
  for (auto _ : state) {
    benchmark::DoNotOptimize(epsilon_interval(R, 0.4713, {1e-6, 10.0}, 0.999));
  }
}
BENCHMARK(BM_epsilon_interval)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
