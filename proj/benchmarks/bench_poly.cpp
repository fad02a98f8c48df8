#include <benchmark/benchmark.h>

#include <random>

#include "zclust/linalg.hpp"
#include "zclust/poly.hpp"

using namespace zclust;

namespace {

Poly random_poly(int n, unsigned maxdeg, int nterms, std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> d(0, maxdeg);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Poly p(n);
  while (static_cast<int>(p.terms.size()) < nterms) {
    Monomial m = Monomial::zero(n);
    unsigned budget = maxdeg;
    for (int i = 0; i < n; ++i) {
      const unsigned e = std::min(d(rng), budget);
      m.e[static_cast<size_t>(i)] = e;
      budget -= e;
    }
    p.add_term(m, Complexd(u(rng), u(rng)));
  }
  return p;
}

AffineMap random_affine(int n, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix M(n, n);
  CVector t(n);
  for (int i = 0; i < n; ++i) {
    t(i) = Complexd(g(rng), g(rng));
    for (int j = 0; j < n; ++j) M(i, j) = Complexd(g(rng), g(rng));
  }
  AffineMap A;
  A.n = n;
  A.linear = Eigen::HouseholderQR<CMatrix>(M).householderQ();
  A.translation = t;
  return A;
}

}  // namespace

static void BM_compose_affine(benchmark::State& state) {
  std::mt19937 rng(1);
  const int n = static_cast<int>(state.range(0));
  const Poly p = random_poly(n, 4, 12, rng);
  const AffineMap A = random_affine(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(compose_affine(p, A));
}
BENCHMARK(BM_compose_affine)->Arg(2)->Arg(3)->Arg(4);

static void BM_compose_affine_interval(benchmark::State& state) {
  std::mt19937 rng(1);
  const int n = static_cast<int>(state.range(0));
  const IPoly p = to_interval(random_poly(n, 4, 12, rng));
  const AffineMap A = random_affine(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(compose_affine(p, A));
}
BENCHMARK(BM_compose_affine_interval)->Arg(2)->Arg(3);

static void BM_eval(benchmark::State& state) {
  std::mt19937 rng(2);
  const Poly p = random_poly(3, 6, 30, rng);
  std::normal_distribution<double> g(0.0, 1.0);
  CVector x(3);
  for (int i = 0; i < 3; ++i) x(i) = Complexd(g(rng), g(rng));
  for (auto _ : state) benchmark::DoNotOptimize(eval(p, x));
}
BENCHMARK(BM_eval);

static void BM_sphere_coeff_bound(benchmark::State& state) {
  std::mt19937 rng(3);
  const Poly p = random_poly(3, 6, 30, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sphere_coeff_bound(p, 0.1));
}
BENCHMARK(BM_sphere_coeff_bound);

BENCHMARK_MAIN();
