#include "zclust/certify.hpp"

#include <Eigen/LU>
#include <cmath>
#include <random>
#include <sstream>

#include "zclust/io.hpp"

namespace zclust {

bool contains(const MixedBall& ball, const CVector& z) {
  const int n = ball.A.n;
  if (z.size() != n) throw std::invalid_argument("contains: dimension mismatch");
  const CVector u = ball.A.linear.adjoint() * (z - ball.A.translation);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double m = std::abs(u(i));
    acc += i < ball.kappa ? m * m : m;
  }
  return std::sqrt(acc) <= ball.epsilon;
}

std::vector<CVector> region_boundary(const MixedBall& ball, int count) {
  const int n = ball.A.n;
  const double eps = ball.epsilon;
  const double eps2 = eps * eps;
  std::vector<CVector> pts;
  auto emit = [&](const Eigen::VectorXd& u) {
    CVector cu = u.cast<Complexd>();
    pts.push_back(ball.A.apply(cu));
  };

  if (n == 2) {
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * M_PI * static_cast<double>(k) / count;
      Eigen::VectorXd u(2);
      if (ball.kappa == 2) {
        u << eps * std::cos(t), eps * std::sin(t);
      } else if (ball.kappa == 1) {
        // u1^2 + |u2| = eps^2
        u(0) = eps * std::cos(t);
        u(1) = (std::sin(t) >= 0.0 ? 1.0 : -1.0) * (eps2 - u(0) * u(0));
      } else {
        // |u1| + |u2| = eps^2
        const double c = std::cos(t), s = std::sin(t);
        u(0) = eps2 * (c >= 0.0 ? 1.0 : -1.0) * c * c;
        u(1) = eps2 * (s >= 0.0 ? 1.0 : -1.0) * s * s;
      }
      emit(u);
    }
    return pts;
  }

  // general n: per-axis profile segments between the axis intercepts
  for (int i = 0; i < n; ++i) {
    const double r = i < ball.kappa ? eps : eps2;
    for (int k = 0; k < count; ++k) {
      Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
      u(i) = r * (2.0 * static_cast<double>(k) / std::max(count - 1, 1) - 1.0);
      emit(u);
    }
  }
  return pts;
}

namespace {

ISystem certified_remainder(const PolySystem& f, const ClusterCertificate& cert) {
  // R = f o A o S_kappa - Q, measured against the original f in interval mode
  ISystem fAS = inflate(compose_affine(to_interval(f), cert.A), cert.kappa);
  return fAS - to_interval(as_system(cert.Q));
}

}  // namespace

PipelineOutcome run_pipeline(const PolySystem& f, const CVector& y,
                             const CertifyOptions& opts) {
  f.validate();
  if (!y.allFinite()) throw std::invalid_argument("run_pipeline: y not finite");
  PipelineOutcome out;
  auto fail = [&](const std::string& stage, const std::string& detail,
                  double measured) {
    out.failure = StageFailure{stage, detail, measured};
    return out;
  };

  // (1) numerical kernel
  const CMatrix J = jacobian(f, y);
  const KernelData kd = numerical_kernel(J, opts.tau);
  out.kernel = kd;
  const int kappa = kd.kappa;

  // (2) nearby singular system
  const PolySystem g = singularize(f, y, kd.basis);

  // (3) affine normalization
  PolySystem gA;
  AffineMap A;
  try {
    std::tie(gA, A) = normalize(g, y, kd);
  } catch (const std::invalid_argument& e) {
    return fail("normalize", e.what(), eval(g, y).norm());
  }

  // (4) inflation
  const InflatedSystem infl = inflate_system(gA, kappa, A);

  // (5) quadratic part and sphere bound
  const QuadraticSystem Q = quadratic_part(infl.h);
  const RealifiedQuartic rq = realify(Q);
  const SphereBound bound =
      opts.precomputed_bound
          ? *opts.precomputed_bound
          : min_on_sphere(rq, opts.target, opts.max_boxes, opts.threads);
  if (!(bound.c > 0.0) || bound.target_missed) {
    return fail("sphere-bound",
                bound.target_missed
                    ? "budget exhausted below target (Q may nearly vanish on the sphere)"
                    : "no positive lower bound for ||Q|| on the sphere",
                bound.q_lower);
  }

  // (6) remainder and epsilon interval
  const ISystem R = certified_remainder(
      f, ClusterCertificate{kappa, A, 0.0, {}, bound, Q, 1 << kappa, opts.safety, ""});
  const auto eint = epsilon_interval(R, bound.c, opts.eps_range, opts.safety);
  if (!eint) {
    const double probe = std::sqrt(opts.eps_range.first * opts.eps_range.second);
    return fail("epsilon-interval",
                "remainder bound exceeds safety*c*eps^2 on the whole range "
                "(cluster too spread or y too far)",
                remainder_bound(R, probe));
  }

  // (7) choose epsilon and assemble the certificate
  double epsilon = std::sqrt(eint->lo * eint->hi);
  if (opts.epsilon_override) {
    epsilon = *opts.epsilon_override;
    if (!(epsilon >= eint->lo && epsilon <= eint->hi &&
          epsilon_feasible(R, bound.c, opts.safety, epsilon)))
      return fail("epsilon-choice", "requested epsilon is not verified feasible",
                  epsilon);
  }

  ClusterCertificate cert;
  cert.kappa = kappa;
  cert.A = A;
  cert.epsilon = epsilon;
  cert.eps_interval = *eint;
  cert.bound = bound;
  cert.Q = Q;
  cert.multiplicity = 1 << kappa;
  cert.safety = opts.safety;
  cert.digest = input_digest(f, y, opts);
  out.certificate = std::move(cert);
  return out;
}

CheckReport check_certificate(const PolySystem& f, const ClusterCertificate& cert,
                              const CheckOptions& opts) {
  CheckReport report;
  auto flag = [&](const std::string& what) {
    report.ok = false;
    report.failures.push_back(what);
  };

  try {
    f.validate();
    const int n = f.n;
    if (cert.kappa < 0 || cert.kappa > n) {
      flag("kappa out of range");
      return report;
    }
    if (cert.multiplicity != (1 << cert.kappa)) flag("multiplicity != 2^kappa");
    if (cert.A.n != n || cert.A.translation.size() != n) {
      flag("affine map dimension mismatch");
      return report;
    }
    if (max_abs_diff(cert.A.linear.adjoint() * cert.A.linear,
                     CMatrix::Identity(n, n)) > 1e-8)
      flag("linear part of A is not unitary");
    if (!(cert.epsilon > 0.0) || !(cert.bound.c > 0.0) ||
        !(cert.bound.q_lower > 0.0))
      flag("non-positive epsilon or bound");
    for (const auto& p : cert.Q.components)
      for (const auto& [m, c] : p.terms)
        if (m.degree() != 2) flag("Q is not homogeneous quadratic");
    if (!report.ok) return report;

    // remainder inequality at the stored epsilon and interval endpoints
    const ISystem R = certified_remainder(f, cert);
    if (!epsilon_feasible(R, cert.bound.c, cert.safety, cert.epsilon))
      flag("remainder inequality fails at epsilon");
    if (!(cert.epsilon >= cert.eps_interval.lo &&
          cert.epsilon <= cert.eps_interval.hi))
      flag("epsilon outside the stored feasible interval");
    if (!epsilon_feasible(R, cert.bound.c, cert.safety, cert.eps_interval.lo) ||
        !epsilon_feasible(R, cert.bound.c, cert.safety, cert.eps_interval.hi))
      flag("stored interval endpoint is not feasible");

    // re-validate the sphere bound: sampling can refute, subdivision re-certifies
    const RealifiedQuartic rq = realify(cert.Q);
    std::mt19937 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int s = 0; s < opts.samples; ++s) {
      Eigen::VectorXd u(rq.m);
      for (int i = 0; i < rq.m; ++i) u(i) = gauss(rng);
      const double nu = u.norm();
      if (nu == 0.0) continue;
      u /= nu;
      if (rq.value(u) < cert.bound.q_lower * (1.0 - 1e-9)) {
        flag("sampled q below the claimed bound");
        break;
      }
    }
    const SphereBound fresh =
        min_on_sphere(rq, cert.bound.q_lower, opts.max_boxes, opts.threads);
    if (fresh.q_lower < cert.bound.q_lower)
      flag("subdivision could not re-certify the claimed bound");
  } catch (const std::exception& e) {
    flag(std::string("exception during check: ") + e.what());
  }
  return report;
}

std::vector<CVector> oracle_solve(const PolySystem& f, const MixedBall& region,
                                  int grid) {
  f.validate();
  const int n = f.n;
  if (n > 3) throw std::invalid_argument("oracle_solve: desk scale is n <= 3");
  if (grid < 2) grid = 2;

  // box enclosing A(region): per-coordinate radius from the mixed-norm radii
  Eigen::VectorXd rad(n);
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    for (int j = 0; j < n; ++j) {
      const double rho =
          j < region.kappa ? region.epsilon : region.epsilon * region.epsilon;
      r += std::abs(region.A.linear(i, j)) * rho;
    }
    rad(i) = r * 1.05 + 1e-12;
  }

  const double scale = std::max(coefficient_scale(f), 1.0);
  // polish to a stationary iterate, not just below the residual threshold:
  // at a multiple zero Newton converges linearly and the first iterate under
  // the threshold can still be ~sqrt(residual) away from the zero
  auto newton = [&](CVector x) -> std::optional<CVector> {
    for (int it = 0; it < 100; ++it) {
      const CVector fx = eval(f, x);
      const CMatrix J = jacobian(f, x);
      Eigen::PartialPivLU<CMatrix> lu(J);
      const CVector step = lu.solve(fx);
      if (!step.allFinite()) break;
      x -= step;
      if (!x.allFinite() || x.norm() > 1e8) return std::nullopt;
      if (step.norm() <= 1e-15 * (1.0 + x.norm())) break;
    }
    if (eval(f, x).norm() <= 1e-12 * scale) return x;
    return std::nullopt;
  };

  std::vector<CVector> zeros;
  // regular grid over the 2n real dimensions of the box
  const std::int64_t total = static_cast<std::int64_t>(std::pow(grid, 2 * n));
  for (std::int64_t s = 0; s < total; ++s) {
    std::int64_t idx = s;
    CVector seed(n);
    for (int i = 0; i < n; ++i) {
      const auto kr = static_cast<int>(idx % grid);
      idx /= grid;
      const auto ki = static_cast<int>(idx % grid);
      idx /= grid;
      const double tr = -1.0 + 2.0 * (kr + 0.5) / grid;
      const double ti = -1.0 + 2.0 * (ki + 0.5) / grid;
      seed(i) = region.A.translation(i) + Complexd(tr * rad(i), ti * rad(i));
    }
    const auto z = newton(seed);
    if (!z) continue;
    if (!contains(region, *z)) continue;
    bool dup = false;
    // a multiplicity-k zero is located to ~residual^(1/k) at best, so the
    // dedupe radius has to cover the sqrt(1e-12) scatter of double zeros
    for (const auto& w : zeros)
      if ((w - *z).norm() <= 1e-6) { dup = true; break; }
    if (!dup) zeros.push_back(*z);
  }
  return zeros;
}

}  // namespace zclust
