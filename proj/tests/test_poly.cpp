#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "zclust/poly.hpp"

using namespace zclust;
using namespace zclust::testing;

namespace {

Complexd coeff_of(const Poly& p, std::vector<unsigned> e) {
  const auto it = p.terms.find(Monomial(std::move(e)));
  return it == p.terms.end() ? Complexd(0.0) : it->second;
}

double coeff_dist(const Poly& a, const Poly& b) {
  double d = 0.0;
  for (const auto& [m, c] : a.terms) d = std::max(d, std::abs(c - coeff_of(b, m.e)));
  for (const auto& [m, c] : b.terms) d = std::max(d, std::abs(c - coeff_of(a, m.e)));
  return d;
}

}  // namespace

TEST_CASE("eval at known points") {
  const Poly root = make_poly(2, {{{2, 0}, 1.0}, {{0, 0}, -1e-4}});
  CVector x(2);
  x << Complexd(0.01), Complexd(0.0);
  CHECK(std::abs(eval(root, x)) <= 1e-18);

  const Poly sq = make_poly(2, {{{2, 0}, 1.0}});
  x << Complexd(2.0), Complexd(7.0);
  CHECK(eval(sq, x) == Complexd(4.0));

  // x2 - x1^2 (x1 + 1.5) at (1,1) = 1 - 2.5 = -1.5
  const Poly p = make_poly(2, {{{0, 1}, 1.0}, {{3, 0}, -1.0}, {{2, 0}, -1.5}});
  x << Complexd(1.0), Complexd(1.0);
  CHECK(eval(p, x) == Complexd(-1.5));
}

TEST_CASE("eval rejects dimension mismatch") {
  const Poly p = make_poly(2, {{{1, 0}, 1.0}});
  CHECK_THROWS(eval(p, std::vector<Complexd>{Complexd(1.0)}));
}

TEST_CASE("diff examples") {
  const Poly p1 = make_poly(1, {{{2}, 1.0}, {{0}, -1e-4}});
  const Poly d1 = diff(p1, 0);
  CHECK(d1.terms.size() == 1);
  CHECK(coeff_of(d1, {1}) == Complexd(2.0));

  const Poly p2 = make_poly(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{3, 0}, -0.01}});
  const Poly d2 = diff(p2, 1);
  CHECK(d2.terms.size() == 1);
  CHECK(coeff_of(d2, {0, 0}) == Complexd(1.0));

  const Poly d3 = diff(p2, 0);
  CHECK(coeff_of(d3, {0, 0}) == Complexd(1.0));
  CHECK(coeff_of(d3, {2, 0}) == Complexd(-0.03));

  CHECK_THROWS(diff(p2, 2));
  CHECK_THROWS(diff(p2, -1));
}

TEST_CASE("jacobian at known points") {
  const PolySystem f = cluster2_system();
  const CMatrix J = jacobian(f, cluster2_point());
  CHECK(std::abs(J(0, 0) - Complexd(0.002)) <= 1e-15);
  CHECK(std::abs(J(0, 1)) == 0.0);
  CHECK(std::abs(J(1, 0) - Complexd(1.0 - 3e-8)) <= 1e-18);
  CHECK(std::abs(J(1, 1) - Complexd(1.0)) == 0.0);

  PolySystem id(3);
  for (int i = 0; i < 3; ++i) id.components.push_back(Poly::variable(3, i));
  std::mt19937 rng(5);
  const CMatrix Ji = jacobian(id, random_cvector(3, rng));
  CHECK(max_abs_diff(Ji, CMatrix::Identity(3, 3)) == 0.0);

  PolySystem sq(2);
  sq.components.push_back(make_poly(2, {{{2, 0}, 1.0}}));
  sq.components.push_back(make_poly(2, {{{0, 2}, 1.0}}));
  const CMatrix Jz = jacobian(sq, CVector::Zero(2));
  CHECK(max_abs_diff(Jz, CMatrix::Zero(2, 2)) == 0.0);
}

TEST_CASE("compose_affine: shift cancels the constant of x^2 - a^2") {
  const double a = 0.01;
  const Poly p = make_poly(1, {{{2}, 1.0}, {{0}, -a * a}});
  AffineMap A = AffineMap::identity(1);
  A.translation(0) = a;
  const Poly q = compose_affine(p, A);
  CHECK(std::abs(coeff_of(q, {2}) - Complexd(1.0)) == 0.0);
  CHECK(std::abs(coeff_of(q, {1}) - Complexd(2.0 * a)) <= 1e-17);
  CHECK(std::abs(coeff_of(q, {0})) <= 1e-18);  // a^2 - a^2, up to rounding
}

TEST_CASE("compose_affine with identity is the identity") {
  std::mt19937 rng(11);
  const Poly p = random_poly(3, 4, 8, rng);
  const Poly q = compose_affine(p, AffineMap::identity(3));
  CHECK(coeff_dist(p, q) <= 1e-14);
}

TEST_CASE("compose_affine round-trips through the inverse map") {
  std::mt19937 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + (rep % 2);
    const Poly p = random_poly(n, 3, 6, rng);
    AffineMap A;
    A.n = n;
    A.linear = random_unitary(n, rng);
    A.translation = random_cvector(n, rng);
    const Poly back = compose_affine(compose_affine(p, A), A.inverse());
    CHECK(coeff_dist(p, back) <= 1e-12);

    // interval mode: the exact coefficients are contained in the enclosures
    const IPoly iback =
        compose_affine(compose_affine(to_interval(p), A), A.inverse());
    for (const auto& [m, c] : p.terms) {
      const auto it = iback.terms.find(m);
      REQUIRE(it != iback.terms.end());
      CHECK(it->second.contains(c));
    }
  }
}

TEST_CASE("inflate: squares variables past kappa") {
  // [x1^2, x2 - x1^2 (x1 + 1.5)] with kappa = 1
  const Poly h2 = make_poly(2, {{{0, 1}, 1.0}, {{3, 0}, -1.0}, {{2, 0}, -1.5}});
  const Poly i2 = inflate(h2, 1);
  CHECK(coeff_of(i2, {0, 2}) == Complexd(1.0));
  CHECK(coeff_of(i2, {3, 0}) == Complexd(-1.0));
  CHECK(coeff_of(i2, {2, 0}) == Complexd(-1.5));
  CHECK(i2.terms.size() == 3);

  std::mt19937 rng(7);
  const Poly p = random_poly(2, 4, 6, rng);
  CHECK(coeff_dist(inflate(p, 2), p) == 0.0);  // kappa = n: unchanged

  const Poly lin = make_poly(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}});
  const Poly infl0 = inflate(lin, 0);
  CHECK(coeff_of(infl0, {2, 0}) == Complexd(1.0));
  CHECK(coeff_of(infl0, {0, 2}) == Complexd(1.0));
}

TEST_CASE("eval(inflate(p,k), x) = eval(p, S_k(x))") {
  std::mt19937 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + (rep % 2);
    const Poly p = random_poly(n, 4, 8, rng);
    for (int k = 0; k <= n; ++k) {
      const CVector x = random_cvector(n, rng);
      CVector sx = x;
      for (int i = k; i < n; ++i) sx(i) = x(i) * x(i);
      const Complexd lhs = eval(inflate(p, k), x);
      const Complexd rhs = eval(p, sx);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("graded_part selects exactly one degree and sums back to p") {
  const Poly p = make_poly(1, {{{2}, 1.0}, {{3}, 1.0}});
  const Poly d2 = graded_part(p, 2);
  CHECK(d2.terms.size() == 1);
  CHECK(coeff_of(d2, {2}) == Complexd(1.0));

  const Poly c = make_poly(1, {{{1}, 1.0}, {{0}, 5.0}});
  CHECK(coeff_of(graded_part(c, 0), {0}) == Complexd(5.0));

  std::mt19937 rng(41);
  const Poly q = random_poly(3, 5, 10, rng);
  Poly sum(3);
  for (unsigned d = 0; d <= q.degree(); ++d) sum = sum + graded_part(q, d);
  CHECK(coeff_dist(sum, q) == 0.0);
}

TEST_CASE("sphere_coeff_bound on the worked remainder component") {
  // 0.5 x2^4 + x1 x2^2 - 0.001414 x1 - 1e-4 at eps = 0.1
  const Poly p = make_poly(2, {{{0, 4}, 0.5},
                               {{1, 2}, 1.0},
                               {{1, 0}, -0.001414},
                               {{0, 0}, -1e-4}});
  const double b = sphere_coeff_bound(p, 0.1);
  CHECK(b == doctest::Approx(1.2914e-3).epsilon(1e-6));

  const Poly c = make_poly(2, {{{0, 0}, Complexd(-3.0, 4.0)}});
  CHECK(sphere_coeff_bound(c, 2.5) == doctest::Approx(5.0).epsilon(1e-12));

  const Poly sq = make_poly(1, {{{2}, 1.0}});
  CHECK(sphere_coeff_bound(sq, 2.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS(sphere_coeff_bound(sq, 0.0));
}

TEST_CASE("sphere_coeff_bound dominates |eval| on the ball") {
  std::mt19937 rng(53);
  for (int rep = 0; rep < 5; ++rep) {
    const Poly p = random_poly(2, 4, 8, rng);
    for (int k = 0; k < 200; ++k) {
      const CVector x = random_cvector(2, rng);
      const double eps = x.norm();
      if (eps == 0.0) continue;
      CHECK(std::abs(eval(p, x)) <= sphere_coeff_bound(p, eps) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("interval eval contains the float eval") {
  std::mt19937 rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    const Poly p = random_poly(3, 4, 8, rng);
    const IPoly ip = to_interval(p);
    const CVector x = random_cvector(3, rng);
    std::vector<CInterval> ix;
    for (int i = 0; i < 3; ++i) ix.emplace_back(Complexd(x(i)));
    const CInterval enc = eval(ip, ix);
    // the enclosure must contain... the mathematically exact value, which the
    // float eval approximates; widen by a coarse float-error allowance
    const Complexd v = eval(p, x);
    CHECK(enc.re.lo - 1e-10 <= v.real());
    CHECK(v.real() <= enc.re.hi + 1e-10);
    CHECK(enc.im.lo - 1e-10 <= v.imag());
    CHECK(v.imag() <= enc.im.hi + 1e-10);
  }
}

TEST_CASE("no zero coefficients are stored; pruning is explicit") {
  Poly p(2);
  p.add_term(Monomial({1, 0}), Complexd(1.0));
  p.add_term(Monomial({1, 0}), Complexd(-1.0));
  CHECK(p.is_zero());

  const Poly q =
      make_poly(2, {{{1, 0}, 1e-20}, {{0, 1}, 1.0}});
  CHECK(q.terms.size() == 2);  // tiny coefficients are kept by default
  CHECK(pruned(q, 1e-16).terms.size() == 1);
}
