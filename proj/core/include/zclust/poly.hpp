#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "zclust/interval.hpp"
#include "zclust/linalg.hpp"

namespace zclust {

/// Dense exponent vector; length equals the ambient dimension.
struct Monomial {
  std::vector<unsigned> e;

  Monomial() = default;
  explicit Monomial(std::vector<unsigned> exps) : e(std::move(exps)) {}
  static Monomial zero(int n) { return Monomial(std::vector<unsigned>(n, 0u)); }

  unsigned degree() const {
    return std::accumulate(e.begin(), e.end(), 0u);
  }
  bool operator==(const Monomial& o) const { return e == o.e; }
};

/// Graded lexicographic order: by total degree, then lexicographically.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.e < b.e;
  }
};

// -- coefficient helpers (exact-float and interval modes) --------------------

inline bool coeff_droppable(const Complexd& c, double prune) {
  return std::abs(c) <= prune;
}
inline bool coeff_droppable(const CInterval& c, double) {
  return c.is_point_zero();
}

/// Rigorous upper bound on the coefficient magnitude.
inline double coeff_abs_upper(const Complexd& c) {
  return sqrt(square(Interval(c.real())) + square(Interval(c.imag()))).hi;
}
inline double coeff_abs_upper(const CInterval& c) { return c.mag(); }

inline CInterval to_interval_coeff(const Complexd& c) { return CInterval(c); }
inline CInterval to_interval_coeff(const CInterval& c) { return c; }

/// Sparse multivariate polynomial; C is std::complex<double> (exact-float
/// mode) or CInterval (rigorous mode).
template <class C>
struct BasicPoly {
  int n = 0;
  std::map<Monomial, C, GradedLexLess> terms;

  BasicPoly() = default;
  explicit BasicPoly(int vars) : n(vars) {}

  static BasicPoly constant(int n, const C& c) {
    BasicPoly p(n);
    if (!coeff_droppable(c, 0.0)) p.terms.emplace(Monomial::zero(n), c);
    return p;
  }
  static BasicPoly variable(int n, int i, const C& scale = C(1.0)) {
    BasicPoly p(n);
    Monomial m = Monomial::zero(n);
    m.e[static_cast<size_t>(i)] = 1;
    if (!coeff_droppable(scale, 0.0)) p.terms.emplace(std::move(m), scale);
    return p;
  }

  void add_term(const Monomial& m, const C& c) {
    if (static_cast<int>(m.e.size()) != n)
      throw std::invalid_argument("add_term: monomial length mismatch");
    auto it = terms.find(m);
    if (it == terms.end()) {
      if (!coeff_droppable(c, 0.0)) terms.emplace(m, c);
    } else {
      it->second += c;
      if (coeff_droppable(it->second, 0.0)) terms.erase(it);
    }
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms) d = std::max(d, m.degree());
    return d;
  }
  bool is_zero() const { return terms.empty(); }
};

using Poly = BasicPoly<Complexd>;
using IPoly = BasicPoly<CInterval>;

template <class C>
BasicPoly<C> operator+(const BasicPoly<C>& a, const BasicPoly<C>& b) {
  if (a.n != b.n) throw std::invalid_argument("poly +: dimension mismatch");
  BasicPoly<C> r = a;
  for (const auto& [m, c] : b.terms) r.add_term(m, c);
  return r;
}

template <class C>
BasicPoly<C> operator-(const BasicPoly<C>& a, const BasicPoly<C>& b) {
  if (a.n != b.n) throw std::invalid_argument("poly -: dimension mismatch");
  BasicPoly<C> r = a;
  for (const auto& [m, c] : b.terms) r.add_term(m, -c);
  return r;
}

template <class C>
BasicPoly<C> operator*(const BasicPoly<C>& a, const BasicPoly<C>& b) {
  if (a.n != b.n) throw std::invalid_argument("poly *: dimension mismatch");
  BasicPoly<C> r(a.n);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      Monomial m = ma;
      for (size_t i = 0; i < m.e.size(); ++i) m.e[i] += mb.e[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

template <class C>
BasicPoly<C> operator*(const C& s, const BasicPoly<C>& p) {
  BasicPoly<C> r(p.n);
  for (const auto& [m, c] : p.terms) r.add_term(m, s * c);
  return r;
}

/// Drop stored coefficients of magnitude <= threshold (exact-float mode only;
/// the default everywhere else in the library is no pruning).
inline Poly pruned(const Poly& p, double threshold) {
  Poly r(p.n);
  for (const auto& [m, c] : p.terms)
    if (!coeff_droppable(c, threshold)) r.terms.emplace(m, c);
  return r;
}

inline IPoly to_interval(const Poly& p) {
  IPoly r(p.n);
  for (const auto& [m, c] : p.terms) r.terms.emplace(m, CInterval(c));
  return r;
}

/// Value of p at x by monomial summation; with C = CInterval this returns a
/// rigorous enclosure.
template <class C>
C eval(const BasicPoly<C>& p, const std::vector<C>& x) {
  if (static_cast<int>(x.size()) != p.n)
    throw std::invalid_argument("eval: dimension mismatch");
  // per-variable power cache
  std::vector<std::vector<C>> pw(x.size());
  for (size_t i = 0; i < x.size(); ++i) pw[i].push_back(C(1.0));
  C acc(0.0);
  for (const auto& [m, c] : p.terms) {
    C t = c;
    for (size_t i = 0; i < m.e.size(); ++i) {
      auto& cache = pw[i];
      while (cache.size() <= m.e[i]) cache.push_back(cache.back() * x[i]);
      if (m.e[i] > 0) t *= cache[m.e[i]];
    }
    acc += t;
  }
  return acc;
}

inline Complexd eval(const Poly& p, const CVector& x) {
  std::vector<Complexd> v(x.data(), x.data() + x.size());
  return eval(p, v);
}

/// Formal partial derivative with respect to variable i (0-based).
template <class C>
BasicPoly<C> diff(const BasicPoly<C>& p, int i) {
  if (i < 0 || i >= p.n) throw std::out_of_range("diff: variable index");
  BasicPoly<C> r(p.n);
  for (const auto& [m, c] : p.terms) {
    const unsigned k = m.e[static_cast<size_t>(i)];
    if (k == 0) continue;
    Monomial dm = m;
    dm.e[static_cast<size_t>(i)] = k - 1;
    r.add_term(dm, C(static_cast<double>(k)) * c);
  }
  return r;
}

/// Substitute x_i -> x_i^2 for every variable with index >= kappa.
template <class C>
BasicPoly<C> inflate(const BasicPoly<C>& p, int kappa) {
  if (kappa < 0 || kappa > p.n) throw std::invalid_argument("inflate: kappa");
  BasicPoly<C> r(p.n);
  for (const auto& [m, c] : p.terms) {
    Monomial im = m;
    for (int i = kappa; i < p.n; ++i) im.e[static_cast<size_t>(i)] *= 2;
    r.add_term(im, c);
  }
  return r;
}

/// Sum of terms of total degree exactly d.
template <class C>
BasicPoly<C> graded_part(const BasicPoly<C>& p, unsigned d) {
  BasicPoly<C> r(p.n);
  for (const auto& [m, c] : p.terms)
    if (m.degree() == d) r.terms.emplace(m, c);
  return r;
}

/// Exact expansion of p(A(x)) = p(t + Ux).  Coefficient enclosures are
/// outward-rounded in interval mode.
template <class C>
BasicPoly<C> compose_affine(const BasicPoly<C>& p, const AffineMap& A) {
  if (A.n != p.n) throw std::invalid_argument("compose_affine: dimension mismatch");
  const int n = p.n;
  // linear replacement polynomial for each original variable
  std::vector<BasicPoly<C>> repl;
  repl.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    BasicPoly<C> li = BasicPoly<C>::constant(n, C(A.translation(i)));
    for (int j = 0; j < n; ++j) {
      const Complexd u = A.linear(i, j);
      if (u != 0.0) {
        Monomial m = Monomial::zero(n);
        m.e[static_cast<size_t>(j)] = 1;
        li.add_term(m, C(u));
      }
    }
    repl.push_back(std::move(li));
  }
  // lazily grown power cache per variable
  std::vector<std::vector<BasicPoly<C>>> pw(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    pw[static_cast<size_t>(i)].push_back(BasicPoly<C>::constant(n, C(1.0)));

  BasicPoly<C> result(n);
  for (const auto& [m, c] : p.terms) {
    BasicPoly<C> t = BasicPoly<C>::constant(n, c);
    for (int i = 0; i < n; ++i) {
      auto& cache = pw[static_cast<size_t>(i)];
      while (cache.size() <= m.e[static_cast<size_t>(i)])
        cache.push_back(cache.back() * repl[static_cast<size_t>(i)]);
      if (m.e[static_cast<size_t>(i)] > 0)
        t = t * cache[m.e[static_cast<size_t>(i)]];
    }
    result = result + t;
  }
  return result;
}

/// Sum over terms of |coeff| * eps^deg, rounded up: an upper bound for |p| on
/// the closed polydisk of radius eps, hence on the ball of radius eps.
template <class C>
double sphere_coeff_bound(const BasicPoly<C>& p, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("sphere_coeff_bound: eps <= 0");
  Interval acc(0.0);
  for (const auto& [m, c] : p.terms)
    acc += Interval(coeff_abs_upper(c)) * pow_nat(Interval(eps), m.degree());
  return acc.hi;
}

// -- square systems -----------------------------------------------------------

template <class C>
struct BasicSystem {
  int n = 0;
  std::vector<BasicPoly<C>> components;

  BasicSystem() = default;
  explicit BasicSystem(int vars) : n(vars) {}

  void validate() const {
    if (static_cast<int>(components.size()) != n)
      throw std::invalid_argument("system is not square");
    for (const auto& p : components)
      if (p.n != n) throw std::invalid_argument("system component dimension mismatch");
  }
};

using PolySystem = BasicSystem<Complexd>;
using ISystem = BasicSystem<CInterval>;

template <class C>
BasicSystem<C> operator-(const BasicSystem<C>& a, const BasicSystem<C>& b) {
  if (a.n != b.n || a.components.size() != b.components.size())
    throw std::invalid_argument("system -: dimension mismatch");
  BasicSystem<C> r(a.n);
  for (size_t j = 0; j < a.components.size(); ++j)
    r.components.push_back(a.components[j] - b.components[j]);
  return r;
}

template <class C>
std::vector<C> eval(const BasicSystem<C>& F, const std::vector<C>& x) {
  std::vector<C> v;
  v.reserve(F.components.size());
  for (const auto& p : F.components) v.push_back(eval(p, x));
  return v;
}

inline CVector eval(const PolySystem& F, const CVector& x) {
  std::vector<Complexd> xs(x.data(), x.data() + x.size());
  CVector v(F.components.size());
  for (size_t j = 0; j < F.components.size(); ++j)
    v(static_cast<Eigen::Index>(j)) = eval(F.components[j], xs);
  return v;
}

/// Jacobian matrix with entry (j,i) = d F_j / d x_i evaluated at x.
inline CMatrix jacobian(const PolySystem& F, const CVector& x) {
  if (x.size() != F.n) throw std::invalid_argument("jacobian: dimension mismatch");
  std::vector<Complexd> xs(x.data(), x.data() + x.size());
  CMatrix J(F.components.size(), F.n);
  for (size_t j = 0; j < F.components.size(); ++j)
    for (int i = 0; i < F.n; ++i)
      J(static_cast<Eigen::Index>(j), i) = eval(diff(F.components[j], i), xs);
  return J;
}

template <class C>
BasicSystem<C> compose_affine(const BasicSystem<C>& F, const AffineMap& A) {
  BasicSystem<C> r(F.n);
  for (const auto& p : F.components) r.components.push_back(compose_affine(p, A));
  return r;
}

template <class C>
BasicSystem<C> inflate(const BasicSystem<C>& F, int kappa) {
  BasicSystem<C> r(F.n);
  for (const auto& p : F.components) r.components.push_back(inflate(p, kappa));
  return r;
}

inline ISystem to_interval(const PolySystem& F) {
  ISystem r(F.n);
  for (const auto& p : F.components) r.components.push_back(to_interval(p));
  return r;
}

}  // namespace zclust
