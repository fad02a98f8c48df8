#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "zclust/bounds.hpp"
#include "zclust/poly.hpp"

namespace zclust {

using RealPoly = std::map<Monomial, double, GradedLexLess>;

/// All monomials of total degree <= d in m variables, graded-lex sorted.
std::vector<Monomial> monomials_up_to(int m, int d);

/// q(a,b) as an expanded real polynomial in the 2n real variables.
RealPoly q_polynomial(const RealifiedQuartic& rq);

/// s(a,b) = sum a_i^2 + sum b_i^2.
RealPoly sphere_polynomial(int m);

/// Sparse symmetric matrix entry of a constraint matrix: (row, col, value),
/// upper triangle only.
using MatrixEntry = std::tuple<int, int, double>;

/// Level-r moment relaxation, encoded for SDPA in primal form
///   min c^T x  s.t.  X = sum_i x_i F_i - F_0 >= 0
/// with one PSD block (the Gram matrix of q - c - lambda(s-1)) and free
/// variables x = (c, lambda coefficients, Gram-kernel coordinates).
struct SosProblem {
  int n = 0;        // complex dimension
  int m = 0;        // 2n real variables
  int r = 2;        // relaxation level
  int block_size = 0;
  std::vector<Monomial> basis;         // monomial basis, degree <= r
  std::vector<Monomial> lambda_basis;  // degree <= 2r-2
  int num_vars = 0;                    // 1 + |lambda_basis| + kernel dim
  std::vector<double> objective;       // length num_vars
  std::vector<std::vector<MatrixEntry>> constraint;  // [0] = F_0, [i] = F_i
};

/// Externally solved SOS certificate: q - c - lambda(s-1) = v^T G v.
struct SosCertificate {
  double c_claimed = 0.0;
  Eigen::MatrixXd G;
  std::vector<std::pair<Monomial, double>> lambda;
  double verified_bound = 0.0;  // filled in by verify_certificate
};

/// Assemble the level-r relaxation (r >= 2 since q is quartic).
SosProblem assemble(const RealifiedQuartic& rq, int r);

/// Write the problem in SDPA sparse format (.dat-s).
void export_problem(const SosProblem& p, const std::string& path);

/// Re-parse of the SDPA sparse file, for round-trip checks and tooling.
struct SdpaData {
  int num_vars = 0;
  std::vector<int> block_sizes;
  std::vector<double> objective;
  // (matno, blkno, i, j, value), 1-based indices as in the file
  std::vector<std::tuple<int, int, int, int, double>> entries;
};
SdpaData parse_sdpa(const std::string& path);

struct SosRejection {
  std::string reason;
  double verified_bound = 0.0;
};

/// Rigorously re-verify an externally produced certificate.  Computes the
/// coefficient residual rho = q - c - v^T G v - lambda(s-1) and a PSD margin
/// for G in interval arithmetic; the returned bound is
///   c_claimed - sum|rho| - max(0,-mu)*(r+1),
/// valid because every basis monomial has modulus <= 1 on the unit sphere
/// and sum of squared degree-d basis monomials is <= 1 there.
/// Accepts iff the bound is positive and substantiates the claim to 1e-4.
std::optional<SphereBound> verify_certificate(const RealifiedQuartic& rq,
                                              SosCertificate& cert,
                                              SosRejection* rejection = nullptr);

}  // namespace zclust
