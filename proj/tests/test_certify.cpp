#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "zclust/certify.hpp"

using namespace zclust;
using namespace zclust::testing;

TEST_CASE("pipeline reproduces the worked certificate") {
  const PipelineOutcome out = run_pipeline(cluster2_system(), cluster2_point());
  REQUIRE(out.ok());
  const ClusterCertificate& cert = *out.certificate;
  CHECK(cert.kappa == 1);
  CHECK(cert.multiplicity == 2);
  CHECK(cert.bound.c >= 0.458);
  CHECK(cert.bound.c <= 0.4714);
  CHECK(cert.eps_interval.lo >= 0.017 * 0.8);
  CHECK(cert.eps_interval.lo <= 0.017 * 1.2);
  CHECK(cert.eps_interval.hi >= 0.39 * 0.8);
  CHECK(cert.eps_interval.hi <= 0.39 * 1.2);
  // epsilon is the geometric mean of the feasible endpoints
  CHECK(cert.epsilon ==
        doctest::Approx(std::sqrt(cert.eps_interval.lo * cert.eps_interval.hi))
            .epsilon(1e-12));
  CHECK(!cert.digest.empty());
}

TEST_CASE("regular zero: kappa = 0 and multiplicity 1") {
  PolySystem f(2);
  f.components.push_back(make_poly(2, {{{1, 0}, 1.0}, {{0, 0}, -1.0}}));
  f.components.push_back(make_poly(2, {{{0, 1}, 1.0}}));
  CVector y(2);
  y << Complexd(1.0), Complexd(0.0);
  const PipelineOutcome out = run_pipeline(f, y);
  REQUIRE(out.ok());
  CHECK(out.certificate->kappa == 0);
  CHECK(out.certificate->multiplicity == 1);
  const auto zeros = oracle_solve(f, out.certificate->region(), 6);
  CHECK(zeros.size() == 1);
}

TEST_CASE("a far-away center fails at the epsilon stage, with a report") {
  CVector y(2);
  y << Complexd(10.0), Complexd(10.0);
  const PipelineOutcome out = run_pipeline(cluster2_system(), y);
  CHECK(!out.ok());
  REQUIRE(out.failure.has_value());
  CHECK(out.failure->stage.find("epsilon") != std::string::npos);
}

TEST_CASE("emitted certificates re-verify") {
  const PipelineOutcome out = run_pipeline(cluster2_system(), cluster2_point());
  REQUIRE(out.ok());
  const CheckReport rep = check_certificate(cluster2_system(), *out.certificate);
  CHECK(rep.ok);
  CHECK(rep.failures.empty());
}

TEST_CASE("tampered certificates are rejected") {
  const PipelineOutcome out = run_pipeline(cluster2_system(), cluster2_point());
  REQUIRE(out.ok());
  const ClusterCertificate& good = *out.certificate;

  ClusterCertificate eps2 = good;
  eps2.epsilon = 2.0 * good.eps_interval.hi;
  eps2.eps_interval.hi = eps2.epsilon;
  CHECK(!check_certificate(cluster2_system(), eps2).ok);

  ClusterCertificate c2 = good;
  c2.bound.c *= 2.0;
  c2.bound.q_lower = c2.bound.c * c2.bound.c;
  CHECK(!check_certificate(cluster2_system(), c2).ok);

  ClusterCertificate qflip = good;
  auto& terms = qflip.Q.components[0].terms;
  REQUIRE(!terms.empty());
  terms.begin()->second = -terms.begin()->second;
  CHECK(!check_certificate(cluster2_system(), qflip).ok);
}

TEST_CASE("mixed-ball membership") {
  const PipelineOutcome out = run_pipeline(cluster2_system(), cluster2_point());
  REQUIRE(out.ok());
  MixedBall ball = out.certificate->region();
  ball.epsilon = 0.17;

  // closed-form roots x1 = +-0.01, x2 = 0.01 x1^3 - x1
  CVector z1(2), z2(2);
  z1 << Complexd(0.01), Complexd(-(0.01 - 1e-8));
  z2 << Complexd(-0.01), Complexd(0.01 - 1e-8);
  CHECK(eval(cluster2_system(), z1).norm() <= 1e-15);
  CHECK(contains(ball, z1));
  CHECK(contains(ball, z2));

  CHECK(contains(ball, cluster2_point()));  // the center itself

  // a point one step past the boundary along e1 of the u-coordinates
  CVector u = CVector::Zero(2);
  u(0) = ball.epsilon + 1e-6;
  CHECK(!contains(ball, ball.A.apply(u)));
}

TEST_CASE("region boundary lies on the mixed-norm level set") {
  MixedBall ball{1, 0.17, AffineMap::identity(2)};
  const auto pts = region_boundary(ball, 256);
  CHECK(pts.size() >= 256);
  double max_u1 = 0.0;
  for (const auto& z : pts) {
    const double u1 = z(0).real(), u2 = z(1).real();
    CHECK(u1 * u1 + std::abs(u2) ==
          doctest::Approx(0.17 * 0.17).epsilon(1e-9));
    max_u1 = std::max(max_u1, std::abs(u1));
  }
  CHECK(max_u1 == doctest::Approx(0.17).epsilon(1e-3));  // axis intercepts

  // kappa = n: a circle of radius eps
  MixedBall circle{2, 0.25, AffineMap::identity(2)};
  for (const auto& z : region_boundary(circle, 64)) {
    const double r = std::hypot(z(0).real(), z(1).real());
    CHECK(r == doctest::Approx(0.25).epsilon(1e-9));
  }
}

TEST_CASE("oracle finds the cluster and honors the region filter") {
  const PipelineOutcome out = run_pipeline(cluster2_system(), cluster2_point());
  REQUIRE(out.ok());
  const auto zeros = oracle_solve(cluster2_system(), out.certificate->region(), 8);
  REQUIRE(zeros.size() == 2);
  for (const auto& z : zeros) {
    CHECK(std::abs(std::abs(z(0).real()) - 0.01) <= 1e-10);
    CHECK(std::abs(std::abs(z(1).real()) - (0.01 - 1e-8)) <= 1e-10);
  }

  PolySystem four(2);
  four.components.push_back(make_poly(2, {{{2, 0}, 1.0}, {{0, 0}, -1.0}}));
  four.components.push_back(make_poly(2, {{{0, 2}, 1.0}, {{0, 0}, -1.0}}));
  MixedBall big{2, 3.0, AffineMap::identity(2)};
  CHECK(oracle_solve(four, big, 8).size() == 4);

  AffineMap far = AffineMap::identity(2);
  far.translation(0) = 100.0;
  MixedBall empty{2, 0.5, far};
  CHECK(oracle_solve(four, empty, 6).empty());
}

TEST_CASE("exact double zero: oracle sees one point, certificate says two") {
  const PipelineOutcome out =
      run_pipeline(double_zero_system(1.0), double_zero_point());
  REQUIRE(out.ok());
  CHECK(out.certificate->multiplicity == 2);
  const auto zeros =
      oracle_solve(double_zero_system(1.0), out.certificate->region(), 8);
  CHECK(zeros.size() == 1);  // one distinct zero of multiplicity two
  CHECK(check_certificate(double_zero_system(1.0), *out.certificate).ok);
}

TEST_CASE("unitary change of variables preserves kappa and the window") {
  std::mt19937 rng(19);
  const PipelineOutcome base =
      run_pipeline(cluster2_system(), cluster2_point());
  REQUIRE(base.ok());
  for (int rep = 0; rep < 3; ++rep) {
    AffineMap W = AffineMap::identity(2);
    W.linear = random_unitary(2, rng);
    const PolySystem fW = compose_affine(cluster2_system(), W);
    const CVector yW = W.inverse().apply(cluster2_point());
    const PipelineOutcome out = run_pipeline(fW, yW);
    REQUIRE(out.ok());
    CHECK(out.certificate->kappa == base.certificate->kappa);
    CHECK(std::abs(out.certificate->eps_interval.lo -
                   base.certificate->eps_interval.lo) <=
          0.05 * base.certificate->eps_interval.lo);
    CHECK(std::abs(out.certificate->eps_interval.hi -
                   base.certificate->eps_interval.hi) <=
          0.05 * base.certificate->eps_interval.hi);
  }
}

TEST_CASE("epsilon override is honored when feasible") {
  CertifyOptions opts;
  opts.epsilon_override = 0.17;
  const PipelineOutcome out =
      run_pipeline(cluster2_system(), cluster2_point(), opts);
  REQUIRE(out.ok());
  CHECK(out.certificate->epsilon == 0.17);
  CHECK(check_certificate(cluster2_system(), *out.certificate).ok);
}
