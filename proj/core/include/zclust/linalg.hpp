#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace zclust {

using Complexd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Numerical-rank analysis of a square complex matrix.
struct KernelData {
  int kappa = 0;
  Eigen::VectorXd singular_values;  // descending
  CMatrix basis;                    // n x kappa, orthonormal columns
};

/// z -> translation + linear * z, with a unitary linear part.
struct AffineMap {
  int n = 0;
  CVector translation;
  CMatrix linear;

  static AffineMap identity(int n) {
    AffineMap a;
    a.n = n;
    a.translation = CVector::Zero(n);
    a.linear = CMatrix::Identity(n, n);
    return a;
  }

  AffineMap inverse() const {
    AffineMap inv;
    inv.n = n;
    inv.linear = linear.adjoint();
    inv.translation = -(inv.linear * translation);
    return inv;
  }

  CVector apply(const CVector& x) const { return translation + linear * x; }
};

struct SvdResult {
  Eigen::VectorXd values;  // descending
  CMatrix right_vectors;   // unitary, columns are right singular vectors
};

/// Full SVD of a square complex matrix; values descending.
SvdResult svd(const CMatrix& M);

/// kappa = #{ sigma_i <= tau * sigma_max } (kappa = n when sigma_max = 0);
/// basis spans the right singular vectors of the kappa smallest values,
/// each column phase-normalized so its largest-magnitude entry is real
/// positive.
KernelData numerical_kernel(const CMatrix& M, double tau);

/// Unitary U whose first kappa columns equal kd.basis.  The completion is
/// phase-adjusted (last completion column) so that det(U) = 1 whenever
/// kappa < n, which pins down an otherwise arbitrary choice.
CMatrix unitary_from_kernel(const KernelData& kd, int n);

/// max_ij |A_ij - B_ij| convenience used in tests and validation.
double max_abs_diff(const CMatrix& A, const CMatrix& B);

}  // namespace zclust
