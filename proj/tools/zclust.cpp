// zclust: certify clusters of zeros of square polynomial systems.
//
// Subcommands:
//   certify  build a cluster certificate for a system and approximate point
//   bound    certified lower bound for ||Q|| on the unit sphere
//   check    independently re-verify an emitted certificate
//   region   emit boundary points of the certified region as CSV
//
// Exit codes: 0 success; 2 sound failure (structured report written);
// 1 usage or I/O error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "zclust/io.hpp"

namespace {

using namespace zclust;

void write_or_print(const std::string& path, const json& j) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    save_json_file(path, j);
  }
}

int cmd_certify(const std::string& input, const std::string& output,
                CertifyOptions opts, const std::string& sos_export,
                const std::string& sos_cert) {
  const json in = load_json_file(input);
  const PolySystem f = system_from_json(in);
  if (!in.contains("point"))
    throw std::runtime_error("certify: input file has no \"point\" field");
  const CVector y = point_from_json(in.at("point"));
  if (y.size() != f.n) throw std::runtime_error("certify: point dimension != n");

  if (!sos_export.empty() || !sos_cert.empty()) {
    // build Q exactly as the pipeline will, so the SOS problem matches
    const KernelData kd = numerical_kernel(jacobian(f, y), opts.tau);
    const auto [gA, A] = normalize(singularize(f, y, kd.basis), y, kd);
    const QuadraticSystem Q =
        quadratic_part(inflate_system(gA, kd.kappa, A).h);
    const RealifiedQuartic rq = realify(Q);
    if (!sos_export.empty()) export_problem(assemble(rq, 2), sos_export);
    if (!sos_cert.empty()) {
      SosCertificate sc = sos_certificate_from_json(load_json_file(sos_cert), rq.m);
      SosRejection rej;
      const auto b = verify_certificate(rq, sc, &rej);
      if (!b) {
        json rep;
        rep["failed_stage"] = "sos-verify";
        rep["detail"] = rej.reason;
        rep["measured"] = rej.verified_bound;
        write_or_print(output, rep);
        return 2;
      }
      opts.precomputed_bound = *b;
    }
  }

  const PipelineOutcome out = run_pipeline(f, y, opts);
  if (!out.ok()) {
    json rep;
    rep["failed_stage"] = out.failure->stage;
    rep["detail"] = out.failure->detail;
    rep["measured"] = out.failure->measured;
    rep["kappa"] = out.kernel.kappa;
    write_or_print(output, rep);
    return 2;
  }
  write_or_print(output, certificate_to_json(*out.certificate));
  return 0;
}

int cmd_bound(const std::string& input, const std::string& output,
              std::optional<double> target, std::uint64_t max_boxes, int threads) {
  const json in = load_json_file(input);
  const PolySystem Qs = system_from_json(in);
  QuadraticSystem Q;
  Q.n = Qs.n;
  Q.components = Qs.components;
  const SphereBound b = min_on_sphere(realify(Q), target, max_boxes, threads);
  json rep;
  rep["q_lower"] = b.q_lower;
  rep["c"] = b.c;
  rep["method"] = "subdivision";
  rep["boxes"] = b.effort;
  rep["target_missed"] = b.target_missed;
  write_or_print(output, rep);
  return b.target_missed ? 2 : 0;
}

int cmd_check(const std::string& cert_path, const std::string& input,
              bool with_oracle, int grid, int threads) {
  const PolySystem f = system_from_json(load_json_file(input));
  const ClusterCertificate cert = certificate_from_json(load_json_file(cert_path));
  CheckOptions copts;
  copts.threads = threads;
  const CheckReport rep = check_certificate(f, cert, copts);
  for (const auto& why : rep.failures) std::cerr << "check: " << why << "\n";
  if (rep.ok && with_oracle && f.n <= 3) {
    const auto zeros = oracle_solve(f, cert.region(), grid);
    std::cout << "oracle: " << zeros.size() << " distinct zero(s) in the region"
              << " (certified count with multiplicity: " << cert.multiplicity
              << ")\n";
  }
  std::cout << (rep.ok ? "certificate OK" : "certificate REJECTED") << "\n";
  return rep.ok ? 0 : 2;
}

int cmd_region(const std::string& cert_path, const std::string& output, int count) {
  const ClusterCertificate cert = certificate_from_json(load_json_file(cert_path));
  const auto pts = region_boundary(cert.region(), count);
  std::ofstream out(output);
  if (!out) throw std::runtime_error("cannot open " + output);
  out << "x,y\n";
  char buf[64];
  for (const auto& z : pts) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", z(0).real(),
                  z.size() > 1 ? z(1).real() : 0.0);
    out << buf << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified isolation of zero clusters of polynomial systems"};
  app.require_subcommand(1);

  std::string input, output, cert_path, sos_export, sos_cert;
  CertifyOptions opts;
  double target = -1.0;
  std::uint64_t max_boxes = 200000;
  double eps_lo = 1e-6, eps_hi = 10.0, safety = 0.999, tau = 0.01;
  double epsilon_override = -1.0;
  int threads = 1, count = 256, grid = 6;
  bool with_oracle = false;

  auto* certify = app.add_subcommand("certify", "produce a cluster certificate");
  certify->add_option("--input", input, "system+point JSON file")->required();
  certify->add_option("--output", output, "certificate path (default: stdout)");
  certify->add_option("--tau", tau, "relative kernel threshold");
  certify->add_option("--target", target, "target for q_lower (optional)");
  certify->add_option("--max-boxes", max_boxes, "subdivision budget");
  certify->add_option("--eps-lo", eps_lo, "lower end of the epsilon search range");
  certify->add_option("--eps-hi", eps_hi, "upper end of the epsilon search range");
  certify->add_option("--safety", safety, "safety factor in (0,1]");
  certify->add_option("--epsilon", epsilon_override, "fixed epsilon (must verify)");
  certify->add_option("--threads", threads, "bounder worker threads");
  certify->add_option("--sos-export", sos_export, "write the SOS SDP (.dat-s) here");
  certify->add_option("--sos-cert", sos_cert, "use a solved SOS certificate (JSON)");

  auto* bound = app.add_subcommand("bound", "lower-bound ||Q|| on the unit sphere");
  bound->add_option("--input", input, "quadratic system JSON file")->required();
  bound->add_option("--output", output, "report path (default: stdout)");
  bound->add_option("--target", target, "stop once q_lower reaches this");
  bound->add_option("--max-boxes", max_boxes, "subdivision budget");
  bound->add_option("--threads", threads, "bounder worker threads");

  auto* check = app.add_subcommand("check", "re-verify a certificate");
  check->add_option("--cert", cert_path, "certificate JSON")->required();
  check->add_option("--input", input, "system JSON file")->required();
  check->add_flag("--with-oracle", with_oracle, "also run the desk-scale oracle");
  check->add_option("--grid", grid, "oracle seed grid per real dimension");
  check->add_option("--threads", threads, "bounder worker threads");

  auto* region = app.add_subcommand("region", "emit region boundary CSV");
  region->add_option("--cert", cert_path, "certificate JSON")->required();
  region->add_option("--output", output, "CSV path")->required();
  region->add_option("--count", count, "points per curve");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(certify)) {
      opts.tau = tau;
      opts.max_boxes = max_boxes;
      opts.eps_range = {eps_lo, eps_hi};
      opts.safety = safety;
      opts.threads = threads;
      if (target > 0.0) opts.target = target;
      if (epsilon_override > 0.0) opts.epsilon_override = epsilon_override;
      return cmd_certify(input, output, opts, sos_export, sos_cert);
    }
    if (app.got_subcommand(bound))
      return cmd_bound(input, output,
                       target > 0.0 ? std::optional<double>(target) : std::nullopt,
                       max_boxes, threads);
    if (app.got_subcommand(check))
      return cmd_check(cert_path, input, with_oracle, grid, threads);
    if (app.got_subcommand(region)) return cmd_region(cert_path, output, count);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
