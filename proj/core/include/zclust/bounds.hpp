#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zclust/pipeline.hpp"
#include "zclust/poly.hpp"

namespace zclust {

/// q(a,b) = ||Q(a + i b)||^2 as a sum of squared real quadratic forms in the
/// 2n real variables (a_1..a_n, b_1..b_n).
struct RealifiedQuartic {
  int n = 0;  // complex dimension
  int m = 0;  // 2n real variables
  std::vector<Eigen::MatrixXd> forms;  // Re and Im form of each component

  /// Exact-float value of q at a real point (no rounding control; used for
  /// sampling and tests).
  double value(const Eigen::VectorXd& v) const;
};

enum class BoundMethod { subdivision, sos };

/// Certified constant c with c <= min over the unit sphere of ||Q||.
struct SphereBound {
  double c = 0.0;
  double q_lower = 0.0;  // bound on q = ||Q||^2; c = sqrt(q_lower) rounded down
  BoundMethod method = BoundMethod::subdivision;
  std::uint64_t effort = 0;  // boxes processed, or relaxation level
  bool target_missed = false;
};

/// Verified range of epsilon for which the remainder inequality holds.
struct EpsilonInterval {
  double lo = 0.0;
  double hi = 0.0;
  double safety = 1.0;
};

/// Substitute x_i = a_i + i b_i and split each component of Q into real and
/// imaginary quadratic forms.  Rejects non-homogeneous input.
RealifiedQuartic realify(const QuadraticSystem& Q);

/// Certified lower bound on q over the unit sphere by interval
/// branch-and-bound over the faces of the cube [-1,1]^{2n} (radial-projection
/// cover, degree-4 homogeneity).  Deterministic for fixed inputs and budget;
/// `threads` only parallelizes enclosure evaluation within fixed-size batches.
SphereBound min_on_sphere(const RealifiedQuartic& rq,
                          std::optional<double> target, std::uint64_t max_boxes,
                          int threads = 1);

/// sqrt(sum_j sphere_coeff_bound(R_j, eps)^2), rounded up: a valid upper
/// bound for the max over the eps-sphere of ||R||_2.
double remainder_bound(const ISystem& R, double eps);
double remainder_bound(const PolySystem& R, double eps);

/// Feasibility test remainder_bound(R,eps) <= safety*c*eps^2 in directed
/// rounding.
bool epsilon_feasible(const ISystem& R, double c, double safety, double eps);

/// The set { eps in range : remainder_bound(R,eps) <= safety*c*eps^2 } is a
/// single interval (the defect has at most two coefficient sign changes);
/// locate its endpoints by log-spaced scan plus bisection.  Returned
/// endpoints are themselves verified feasible.
std::optional<EpsilonInterval> epsilon_interval(const ISystem& R, double c,
                                                std::pair<double, double> range,
                                                double safety);

}  // namespace zclust
