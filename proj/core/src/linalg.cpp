#include "zclust/linalg.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace zclust {

SvdResult svd(const CMatrix& M) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("svd: matrix must be square");
  if (!M.allFinite()) throw std::invalid_argument("svd: non-finite entries");
  Eigen::JacobiSVD<CMatrix> dec(M, Eigen::ComputeFullV);
  SvdResult r;
  r.values = dec.singularValues();
  r.right_vectors = dec.matrixV();
  return r;
}

namespace {

// Phase-normalize a vector so its largest-magnitude entry is real positive.
CVector phase_normalize(const CVector& v) {
  int best = 0;
  double best_mag = std::abs(v(0));
  for (int i = 1; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  if (best_mag == 0.0) return v;
  const Complexd phase = std::conj(v(best)) / best_mag;
  return v * phase;
}

}  // namespace

KernelData numerical_kernel(const CMatrix& M, double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("numerical_kernel: tau must be in (0,1)");
  const int n = static_cast<int>(M.rows());
  SvdResult s = svd(M);
  const double smax = s.values.size() > 0 ? s.values(0) : 0.0;

  KernelData kd;
  kd.singular_values = s.values;
  if (smax == 0.0) {
    kd.kappa = n;
  } else {
    int k = 0;
    for (int i = 0; i < n; ++i)
      if (s.values(i) <= tau * smax) ++k;
    kd.kappa = k;
  }
  kd.basis = CMatrix(n, kd.kappa);
  // singular values are descending, so the kappa smallest are the last columns;
  // store them smallest-last reversed so basis column order matches value order
  for (int j = 0; j < kd.kappa; ++j)
    kd.basis.col(j) = phase_normalize(s.right_vectors.col(n - kd.kappa + j));
  return kd;
}

CMatrix unitary_from_kernel(const KernelData& kd, int n) {
  const int kappa = kd.kappa;
  if (kd.basis.rows() != n || kd.basis.cols() != kappa)
    throw std::invalid_argument("unitary_from_kernel: basis shape mismatch");
  if (kappa > 0) {
    const double ortho =
        max_abs_diff(kd.basis.adjoint() * kd.basis, CMatrix::Identity(kappa, kappa));
    if (ortho > 1e-8)
      throw std::invalid_argument("unitary_from_kernel: basis not orthonormal");
  }
  if (kappa == 0) return CMatrix::Identity(n, n);

  CMatrix U(n, n);
  U.leftCols(kappa) = kd.basis;
  if (kappa < n) {
    // Householder QR of the basis; trailing Q columns span the complement.
    Eigen::HouseholderQR<CMatrix> qr(kd.basis);
    CMatrix Q = qr.householderQ();
    U.rightCols(n - kappa) = Q.rightCols(n - kappa);
    // det of a unitary has modulus 1; rotate the last completion column so
    // det(U) = 1, making the completion reproducible
    const Complexd d = U.determinant();
    U.col(n - 1) *= std::conj(d);
  }
  return U;
}

double max_abs_diff(const CMatrix& A, const CMatrix& B) {
  return (A - B).cwiseAbs().maxCoeff();
}

}  // namespace zclust
