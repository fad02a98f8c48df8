#include "zclust/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace zclust {

json poly_to_json(const Poly& p) {
  json j;
  j["n"] = p.n;
  j["terms"] = json::array();
  for (const auto& [m, c] : p.terms) {
    json t;
    t["exp"] = m.e;
    t["re"] = c.real();
    t["im"] = c.imag();
    j["terms"].push_back(std::move(t));
  }
  return j;
}

Poly poly_from_json(const json& j) {
  Poly p(j.at("n").get<int>());
  for (const auto& t : j.at("terms")) {
    Monomial m(t.at("exp").get<std::vector<unsigned>>());
    if (static_cast<int>(m.e.size()) != p.n)
      throw std::invalid_argument("poly JSON: exponent length != n");
    p.add_term(m, Complexd(t.at("re").get<double>(),
                           t.value("im", 0.0)));
  }
  return p;
}

json system_to_json(const PolySystem& f) {
  json j;
  j["system"] = json::array();
  for (const auto& p : f.components) j["system"].push_back(poly_to_json(p));
  return j;
}

PolySystem system_from_json(const json& j) {
  const auto& arr = j.at("system");
  if (arr.empty()) throw std::invalid_argument("system JSON: empty system");
  PolySystem f(arr.front().at("n").get<int>());
  for (const auto& pj : arr) f.components.push_back(poly_from_json(pj));
  f.validate();
  return f;
}

json point_to_json(const CVector& y) {
  json j = json::array();
  for (Eigen::Index i = 0; i < y.size(); ++i)
    j.push_back(json::array({y(i).real(), y(i).imag()}));
  return j;
}

CVector point_from_json(const json& j) {
  CVector y(j.size());
  Eigen::Index i = 0;
  for (const auto& zj : j) {
    if (zj.is_array())
      y(i++) = Complexd(zj.at(0).get<double>(),
                        zj.size() > 1 ? zj.at(1).get<double>() : 0.0);
    else
      y(i++) = Complexd(zj.get<double>(), 0.0);
  }
  return y;
}

namespace {

json matrix_to_json(const CMatrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      row.push_back(json::array({M(i, j).real(), M(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  const auto rows = j.size();
  const auto cols = rows == 0 ? 0 : j.at(0).size();
  CMatrix M(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k) {
      const auto& e = j.at(i).at(k);
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complexd(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return M;
}

}  // namespace

json certificate_to_json(const ClusterCertificate& cert) {
  json j;
  j["kappa"] = cert.kappa;
  j["epsilon"] = cert.epsilon;
  j["epsilon_interval"] = json::array({cert.eps_interval.lo, cert.eps_interval.hi});
  j["c"] = cert.bound.c;
  j["q_lower"] = cert.bound.q_lower;
  j["safety"] = cert.safety;
  j["method"] =
      cert.bound.method == BoundMethod::subdivision ? "subdivision" : "sos";
  j["A"] = json{{"translation", point_to_json(cert.A.translation)},
                {"unitary", matrix_to_json(cert.A.linear)}};
  j["Q"] = json::array();
  for (const auto& p : cert.Q.components) j["Q"].push_back(poly_to_json(p));
  j["multiplicity"] = cert.multiplicity;
  j["digest"] = cert.digest;
  return j;
}

ClusterCertificate certificate_from_json(const json& j) {
  ClusterCertificate cert;
  cert.kappa = j.at("kappa").get<int>();
  cert.epsilon = j.at("epsilon").get<double>();
  cert.eps_interval.lo = j.at("epsilon_interval").at(0).get<double>();
  cert.eps_interval.hi = j.at("epsilon_interval").at(1).get<double>();
  cert.safety = j.value("safety", 0.999);
  cert.eps_interval.safety = cert.safety;
  cert.bound.c = j.at("c").get<double>();
  cert.bound.q_lower = j.value("q_lower", cert.bound.c * cert.bound.c);
  cert.bound.method = j.value("method", "subdivision") == std::string("sos")
                          ? BoundMethod::sos
                          : BoundMethod::subdivision;
  cert.A.translation = point_from_json(j.at("A").at("translation"));
  cert.A.linear = matrix_from_json(j.at("A").at("unitary"));
  cert.A.n = static_cast<int>(cert.A.translation.size());
  cert.Q.n = cert.A.n;
  for (const auto& pj : j.at("Q")) cert.Q.components.push_back(poly_from_json(pj));
  cert.multiplicity = j.at("multiplicity").get<int>();
  cert.digest = j.value("digest", "");
  return cert;
}

SosCertificate sos_certificate_from_json(const json& j, int m) {
  SosCertificate cert;
  cert.c_claimed = j.at("c").get<double>();
  const auto& g = j.at("G");
  const auto rows = g.size();
  cert.G = Eigen::MatrixXd(rows, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < rows; ++k)
      cert.G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          g.at(i).at(k).get<double>();
  // symmetrize parser-side; verification treats the stored values as exact
  cert.G = ((cert.G + cert.G.transpose()) / 2.0).eval();
  if (j.contains("lambda"))
    for (const auto& t : j.at("lambda").at("terms")) {
      Monomial mo(t.at("exp").get<std::vector<unsigned>>());
      if (static_cast<int>(mo.e.size()) != m)
        throw std::invalid_argument("sos certificate: lambda exponent length");
      cert.lambda.emplace_back(std::move(mo), t.at("coeff").get<double>());
    }
  return cert;
}

std::string input_digest(const PolySystem& f, const CVector& y,
                         const CertifyOptions& opts) {
  json j = system_to_json(f);
  j["point"] = point_to_json(y);
  j["options"] = json{{"tau", opts.tau},
                      {"safety", opts.safety},
                      {"eps_range", {opts.eps_range.first, opts.eps_range.second}},
                      {"max_boxes", opts.max_boxes},
                      {"target", opts.target ? json(*opts.target) : json(nullptr)}};
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace zclust
