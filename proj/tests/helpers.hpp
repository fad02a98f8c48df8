#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "zclust/linalg.hpp"
#include "zclust/pipeline.hpp"
#include "zclust/poly.hpp"

namespace zclust::testing {

struct Term {
  std::vector<unsigned> exp;
  Complexd c;
};

inline Poly make_poly(int n, std::initializer_list<Term> ts) {
  Poly p(n);
  for (const auto& t : ts) p.add_term(Monomial(t.exp), t.c);
  return p;
}

// f = [x1^2 - 1e-4, x1 + x2 - 0.01 x1^3] with approximate double zero near
// y = (0.001, -0.001); the toolkit's standing worked example.
inline PolySystem cluster2_system() {
  PolySystem f(2);
  f.components.push_back(make_poly(2, {{{2, 0}, 1.0}, {{0, 0}, -1e-4}}));
  f.components.push_back(
      make_poly(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{3, 0}, -0.01}}));
  return f;
}

inline CVector cluster2_point() {
  CVector y(2);
  y << Complexd(0.001, 0.0), Complexd(-0.001, 0.0);
  return y;
}

// Exact multiplicity-two family: f = [(x1-y1)^2,
// (x2-y2) - alpha (x1-y1)^2 ((x1-y1) + 3 y1)] at y = (0.5, 0.3).
inline PolySystem double_zero_system(double alpha) {
  const double y1 = 0.5, y2 = 0.3;
  Poly t = make_poly(2, {{{1, 0}, 1.0}, {{0, 0}, -y1}});
  Poly f1 = t * t;
  Poly shift = make_poly(2, {{{1, 0}, 1.0}, {{0, 0}, -y1 + 3.0 * y1}});
  Poly f2 = make_poly(2, {{{0, 1}, 1.0}, {{0, 0}, -y2}}) -
            Complexd(alpha) * (t * t * shift);
  PolySystem f(2);
  f.components.push_back(f1);
  f.components.push_back(f2);
  return f;
}

inline CVector double_zero_point() {
  CVector y(2);
  y << Complexd(0.5, 0.0), Complexd(0.3, 0.0);
  return y;
}

inline Complexd rand_coeff(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

inline Poly random_poly(int n, unsigned maxdeg, int nterms, std::mt19937& rng) {
  Poly p(n);
  std::uniform_int_distribution<unsigned> d(0, maxdeg);
  while (static_cast<int>(p.terms.size()) < nterms) {
    Monomial m = Monomial::zero(n);
    unsigned budget = maxdeg;
    for (int i = 0; i < n; ++i) {
      const unsigned e = std::min(d(rng), budget);
      m.e[static_cast<size_t>(i)] = e;
      budget -= e;
    }
    p.add_term(m, rand_coeff(rng));
  }
  return p;
}

inline QuadraticSystem random_quadratic(int n, std::mt19937& rng) {
  QuadraticSystem Q;
  Q.n = n;
  for (int j = 0; j < n; ++j) {
    Poly p(n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        Monomial m = Monomial::zero(n);
        m.e[static_cast<size_t>(a)] += 1;
        m.e[static_cast<size_t>(b)] += 1;
        p.add_term(m, rand_coeff(rng));
      }
    Q.components.push_back(p);
  }
  return Q;
}

inline CMatrix random_unitary(int n, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = Complexd(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(M);
  return qr.householderQ();
}

inline Eigen::VectorXd random_unit(int m, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(m);
  do {
    for (int i = 0; i < m; ++i) v(i) = g(rng);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

inline CVector random_cvector(int n, std::mt19937& rng) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rand_coeff(rng);
  return v;
}

}  // namespace zclust::testing
