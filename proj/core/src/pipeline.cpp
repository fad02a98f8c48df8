#include "zclust/pipeline.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zclust {

double coefficient_scale(const PolySystem& f) {
  double s = 0.0;
  for (const auto& p : f.components)
    for (const auto& [m, c] : p.terms) s = std::max(s, std::abs(c));
  return s;
}

PolySystem singularize(const PolySystem& f, const CVector& y, const CMatrix& V) {
  f.validate();
  const int n = f.n;
  if (y.size() != n) throw std::invalid_argument("singularize: point dimension");
  if (V.rows() != n) throw std::invalid_argument("singularize: basis dimension");
  const int kappa = static_cast<int>(V.cols());
  if (kappa > 0) {
    const double ortho =
        max_abs_diff(V.adjoint() * V, CMatrix::Identity(kappa, kappa));
    if (ortho > 1e-8)
      throw std::invalid_argument("singularize: V columns not orthonormal");
  }

  const CVector fy = eval(f, y);
  const CMatrix L = jacobian(f, y) * (V * V.adjoint());  // Df(y) pi_V

  PolySystem g(n);
  for (int j = 0; j < n; ++j) {
    Poly p = f.components[static_cast<size_t>(j)];
    p.add_term(Monomial::zero(n), -fy(j));
    for (int i = 0; i < n; ++i) {
      const Complexd lij = L(j, i);
      if (lij == 0.0) continue;
      Monomial m = Monomial::zero(n);
      m.e[static_cast<size_t>(i)] = 1;
      p.add_term(m, -lij);               // -L (x - y): linear part
      p.add_term(Monomial::zero(n), lij * y(i));  // ... and constant part
    }
    g.components.push_back(std::move(p));
  }
  return g;
}

std::pair<PolySystem, AffineMap> normalize(const PolySystem& g, const CVector& y,
                                           const KernelData& kd) {
  g.validate();
  const int n = g.n;
  const double scale = std::max(coefficient_scale(g), 1e-300);
  const double residual = eval(g, y).norm();
  if (residual > 1e-8 * scale) {
    std::ostringstream os;
    os << "normalize: g(y) residual " << residual << " exceeds 1e-8 * scale ("
       << 1e-8 * scale << ")";
    throw std::invalid_argument(os.str());
  }

  AffineMap A;
  A.n = n;
  A.translation = y;
  A.linear = unitary_from_kernel(kd, n);
  return {compose_affine(g, A), A};
}

InflatedSystem inflate_system(const PolySystem& h, int kappa, const AffineMap& A) {
  h.validate();
  InflatedSystem out;
  out.kappa = kappa;
  out.A = A;
  out.h = inflate(h, kappa);

  // after inflation a surviving degree-0/1 term is a residual: legitimate
  // linear terms in the squared variables have become quadratic
  double c2 = 0.0, l2 = 0.0;
  for (const auto& p : out.h.components) {
    for (const auto& [m, c] : p.terms) {
      const unsigned d = m.degree();
      if (d == 0) c2 += std::norm(c);
      if (d == 1) l2 += std::norm(c);
    }
  }
  out.diagnostics.constant_norm = std::sqrt(c2);
  out.diagnostics.linear_norm = std::sqrt(l2);
  return out;
}

QuadraticSystem quadratic_part(const PolySystem& h) {
  QuadraticSystem q;
  q.n = h.n;
  for (const auto& p : h.components) q.components.push_back(graded_part(p, 2u));
  return q;
}

}  // namespace zclust
