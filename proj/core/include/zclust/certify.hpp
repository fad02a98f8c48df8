#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zclust/bounds.hpp"
#include "zclust/pipeline.hpp"

namespace zclust {

/// Image of a mixed-norm ball under an affine map: z is inside iff
/// u = U^dagger (z - y) satisfies
///   sqrt( sum_{i<kappa} |u_i|^2 + sum_{i>=kappa} |u_i| ) <= epsilon.
struct MixedBall {
  int kappa = 0;
  double epsilon = 0.0;
  AffineMap A;
};

bool contains(const MixedBall& ball, const CVector& z);

/// Boundary of the real slice of the ball, mapped through A, for plotting.
/// Planar (n = 2) emits the closed curve; other dimensions emit per-axis
/// profile segments.
std::vector<CVector> region_boundary(const MixedBall& ball, int count);

/// Everything needed to re-verify the cluster-isolation claim from f alone.
struct ClusterCertificate {
  int kappa = 0;
  AffineMap A;
  double epsilon = 0.0;
  EpsilonInterval eps_interval;
  SphereBound bound;
  QuadraticSystem Q;
  int multiplicity = 1;  // 2^kappa
  double safety = 0.999;
  std::string digest;

  MixedBall region() const { return MixedBall{kappa, epsilon, A}; }
};

struct CertifyOptions {
  double tau = 0.01;
  std::optional<double> target;  // target for q_lower
  std::uint64_t max_boxes = 200000;
  std::pair<double, double> eps_range{1e-6, 10.0};
  double safety = 0.999;
  std::optional<double> epsilon_override;
  int threads = 1;
  std::optional<SphereBound> precomputed_bound;  // e.g. a verified SOS bound
};

struct StageFailure {
  std::string stage;
  std::string detail;
  double measured = 0.0;
};

struct PipelineOutcome {
  std::optional<ClusterCertificate> certificate;
  std::optional<StageFailure> failure;
  KernelData kernel;

  bool ok() const { return certificate.has_value(); }
};

/// The seven-step certification pipeline: kernel, singularize, normalize,
/// inflate, quadratic part, sphere bound, epsilon interval.
PipelineOutcome run_pipeline(const PolySystem& f, const CVector& y,
                             const CertifyOptions& opts = {});

struct CheckOptions {
  std::uint64_t max_boxes = 200000;
  int samples = 10000;
  unsigned seed = 0x5eed;
  int threads = 1;
};

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Independent re-verification: recomputes the remainder in interval mode,
/// re-checks the epsilon inequality, and re-validates the sphere bound by
/// sampling plus a fresh subdivision run targeted at the claimed bound.
CheckReport check_certificate(const PolySystem& f, const ClusterCertificate& cert,
                              const CheckOptions& opts = {});

/// Desk-scale test oracle (n <= 3): Newton polishing from a seed grid over a
/// box enclosing the region; returns distinct zeros inside the region.
std::vector<CVector> oracle_solve(const PolySystem& f, const MixedBall& region,
                                  int grid);

}  // namespace zclust
