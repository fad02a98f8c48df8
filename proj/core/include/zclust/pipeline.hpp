#pragma once

#include <utility>

#include "zclust/linalg.hpp"
#include "zclust/poly.hpp"

namespace zclust {

/// g o A o S_kappa together with the data used to build it.
struct InflatedSystem {
  PolySystem h;
  int kappa = 0;
  AffineMap A;
  struct Diagnostics {
    double constant_norm = 0.0;  // Euclidean norm of the degree-0 parts
    double linear_norm = 0.0;    // Frobenius norm of the degree-1 coefficients
  } diagnostics;
};

/// Componentwise homogeneous of degree exactly 2.
struct QuadraticSystem {
  int n = 0;
  std::vector<Poly> components;
};

/// g(x) = f(x) - f(y) - Df(y) pi_V (x - y) with pi_V = V V^dagger.
/// g(y) = 0 and Dg(y) v = 0 for every column v of V.
PolySystem singularize(const PolySystem& f, const CVector& y, const CMatrix& V);

/// Affine normalization A = (translation y, linear unitary_from_kernel(kd));
/// returns (g o A, A).  Requires ||g(y)|| <= 1e-8 * coefficient scale.
std::pair<PolySystem, AffineMap> normalize(const PolySystem& g, const CVector& y,
                                           const KernelData& kd);

/// Apply inflation componentwise and record the residual constant/linear
/// norms.  Residual terms are never zeroed out; they flow into the remainder.
InflatedSystem inflate_system(const PolySystem& h, int kappa, const AffineMap& A);

/// Componentwise degree-2 graded part.
QuadraticSystem quadratic_part(const PolySystem& h);

inline PolySystem as_system(const QuadraticSystem& Q) {
  PolySystem s(Q.n);
  s.components = Q.components;
  return s;
}

/// Largest coefficient magnitude across the system (scale for residual tests).
double coefficient_scale(const PolySystem& f);

}  // namespace zclust
