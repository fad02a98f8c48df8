#include "zclust/sos.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zclust {

std::vector<Monomial> monomials_up_to(int m, int d) {
  std::vector<Monomial> out;
  Monomial cur = Monomial::zero(m);
  // depth-first enumeration, then graded-lex sort
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == m) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      cur.e[static_cast<size_t>(pos)] = static_cast<unsigned>(k);
      rec(pos + 1, remaining - k);
    }
    cur.e[static_cast<size_t>(pos)] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

namespace {

void real_add(RealPoly& p, const Monomial& mo, double v) {
  auto it = p.find(mo);
  if (it == p.end()) {
    if (v != 0.0) p.emplace(mo, v);
  } else {
    it->second += v;
    if (it->second == 0.0) p.erase(it);
  }
}

RealPoly real_mul(const RealPoly& a, const RealPoly& b) {
  RealPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      for (size_t i = 0; i < m.e.size(); ++i) m.e[i] += mb.e[i];
      real_add(r, m, ca * cb);
    }
  return r;
}

RealPoly form_to_poly(const Eigen::MatrixXd& M) {
  const int m = static_cast<int>(M.rows());
  RealPoly p;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const double v = i == j ? M(i, j) : M(i, j) + M(j, i);
      if (v == 0.0) continue;
      Monomial mo = Monomial::zero(m);
      mo.e[static_cast<size_t>(i)] += 1;
      mo.e[static_cast<size_t>(j)] += 1;
      real_add(p, mo, v);
    }
  return p;
}

Monomial mono_product(const Monomial& a, const Monomial& b) {
  Monomial m = a;
  for (size_t i = 0; i < m.e.size(); ++i) m.e[i] += b.e[i];
  return m;
}

}  // namespace

RealPoly q_polynomial(const RealifiedQuartic& rq) {
  RealPoly q;
  for (const auto& M : rq.forms) {
    RealPoly f = form_to_poly(M);
    RealPoly f2 = real_mul(f, f);
    for (const auto& [mo, v] : f2) real_add(q, mo, v);
  }
  return q;
}

RealPoly sphere_polynomial(int m) {
  RealPoly s;
  for (int i = 0; i < m; ++i) {
    Monomial mo = Monomial::zero(m);
    mo.e[static_cast<size_t>(i)] = 2;
    s.emplace(mo, 1.0);
  }
  return s;
}

SosProblem assemble(const RealifiedQuartic& rq, int r) {
  if (r < 2) throw std::invalid_argument("assemble: r must be >= 2 (q is quartic)");
  SosProblem p;
  p.n = rq.n;
  p.m = rq.m;
  p.r = r;
  p.basis = monomials_up_to(p.m, r);
  p.block_size = static_cast<int>(p.basis.size());
  p.lambda_basis = monomials_up_to(p.m, 2 * r - 2);

  // group the basis pair products by monomial
  std::map<Monomial, std::vector<std::pair<int, int>>, GradedLexLess> pairs;
  for (int i = 0; i < p.block_size; ++i)
    for (int j = i; j < p.block_size; ++j)
      pairs[mono_product(p.basis[static_cast<size_t>(i)],
                         p.basis[static_cast<size_t>(j)])]
          .emplace_back(i, j);

  // symmetric Gram matrix entries (upper triangle) of a polynomial, using
  // the first representing pair of each monomial
  auto gram_entries = [&](const RealPoly& poly) {
    std::vector<MatrixEntry> out;
    for (const auto& [mo, v] : poly) {
      auto it = pairs.find(mo);
      if (it == pairs.end())
        throw std::invalid_argument("assemble: polynomial degree exceeds 2r");
      const auto [i, j] = it->second.front();
      // v^T E v picks up the (i,j) entry twice off the diagonal
      out.emplace_back(i, j, i == j ? v : 0.5 * v);
    }
    return out;
  };

  const RealPoly q = q_polynomial(rq);
  RealPoly s_minus_1 = sphere_polynomial(p.m);
  real_add(s_minus_1, Monomial::zero(p.m), -1.0);

  // F_0 = -Gram(q)
  p.constraint.emplace_back();
  for (auto [i, j, v] : gram_entries(q)) p.constraint[0].emplace_back(i, j, -v);

  // x_1 = c: F = Gram(-1)
  {
    RealPoly neg1;
    neg1.emplace(Monomial::zero(p.m), -1.0);
    p.constraint.push_back(gram_entries(neg1));
  }
  // lambda coefficients: F = Gram(-nu (s-1))
  for (const auto& nu : p.lambda_basis) {
    RealPoly nupoly;
    nupoly.emplace(nu, 1.0);
    RealPoly prod = real_mul(nupoly, s_minus_1);
    std::vector<MatrixEntry> entries;
    for (auto [i, j, v] : gram_entries(prod)) entries.emplace_back(i, j, -v);
    p.constraint.push_back(std::move(entries));
  }
  // Gram-kernel coordinates: E(pair_l) - E(pair_0) for every extra pair
  for (const auto& [mo, plist] : pairs) {
    (void)mo;
    for (size_t l = 1; l < plist.size(); ++l) {
      std::vector<MatrixEntry> entries;
      const auto [i0, j0] = plist.front();
      const auto [il, jl] = plist[l];
      entries.emplace_back(il, jl, il == jl ? 1.0 : 0.5);
      entries.emplace_back(i0, j0, i0 == j0 ? -1.0 : -0.5);
      p.constraint.push_back(std::move(entries));
    }
  }

  p.num_vars = static_cast<int>(p.constraint.size()) - 1;
  p.objective.assign(static_cast<size_t>(p.num_vars), 0.0);
  p.objective[0] = -1.0;  // min -c  <=>  max c
  return p;
}

void export_problem(const SosProblem& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_problem: cannot open " + path);
  char buf[64];
  out << "\"SOS moment relaxation, level " << p.r << ": one PSD block (Gram), "
      << "x = (c, lambda[" << p.lambda_basis.size() << "], kernel["
      << p.num_vars - 1 - static_cast<int>(p.lambda_basis.size()) << "])\"\n";
  out << p.num_vars << " = mDIM\n";
  out << "1 = nBLOCK\n";
  out << p.block_size << " = bLOCKsTRUCT\n";
  for (int i = 0; i < p.num_vars; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p.objective[static_cast<size_t>(i)]);
    out << buf << (i + 1 == p.num_vars ? "" : " ");
  }
  out << "\n";
  for (size_t k = 0; k < p.constraint.size(); ++k)
    for (const auto& [i, j, v] : p.constraint[k]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << k << " 1 " << i + 1 << " " << j + 1 << " " << buf << "\n";
    }
  if (!out) throw std::runtime_error("export_problem: write failed");
}

SdpaData parse_sdpa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_sdpa: cannot open " + path);
  SdpaData d;
  std::string line;
  int stage = 0;  // 0: mDIM, 1: nBLOCK, 2: blocks, 3: objective, 4: entries
  int nblocks = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '"' || line[0] == '*') continue;
    // strip trailing annotations like "= mDIM"
    const auto eq = line.find('=');
    std::istringstream is(eq == std::string::npos ? line : line.substr(0, eq));
    if (stage == 0) {
      is >> d.num_vars;
      stage = 1;
    } else if (stage == 1) {
      is >> nblocks;
      stage = 2;
    } else if (stage == 2) {
      int b;
      while (is >> b) d.block_sizes.push_back(b);
      if (static_cast<int>(d.block_sizes.size()) >= nblocks) stage = 3;
    } else if (stage == 3) {
      double v;
      while (is >> v) d.objective.push_back(v);
      if (static_cast<int>(d.objective.size()) >= d.num_vars) stage = 4;
    } else {
      int mat, blk, i, j;
      double v;
      if (is >> mat >> blk >> i >> j >> v) d.entries.emplace_back(mat, blk, i, j, v);
    }
  }
  return d;
}

namespace {

using IPolyR = std::map<Monomial, Interval, GradedLexLess>;

void iadd(IPolyR& p, const Monomial& mo, const Interval& v) {
  auto it = p.find(mo);
  if (it == p.end()) p.emplace(mo, v);
  else it->second += v;
}

IPolyR to_ipoly(const RealPoly& p) {
  IPolyR r;
  for (const auto& [mo, v] : p) r.emplace(mo, Interval(v));
  return r;
}

IPolyR imul(const IPolyR& a, const IPolyR& b) {
  IPolyR r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) iadd(r, mono_product(ma, mb), ca * cb);
  return r;
}

// Interval Cholesky: success proves every symmetric matrix in the enclosure
// (in particular the exact input) is positive definite.
bool interval_cholesky_pd(const Eigen::MatrixXd& G, double shift) {
  const int n = static_cast<int>(G.rows());
  std::vector<std::vector<Interval>> L(static_cast<size_t>(n),
                                       std::vector<Interval>(static_cast<size_t>(n), Interval(0.0)));
  for (int j = 0; j < n; ++j) {
    Interval d = Interval(G(j, j)) + Interval(shift);
    for (int k = 0; k < j; ++k) d -= square(L[static_cast<size_t>(j)][static_cast<size_t>(k)]);
    if (!(d.lo > 0.0)) return false;
    const Interval ljj = sqrt(d);
    L[static_cast<size_t>(j)][static_cast<size_t>(j)] = ljj;
    for (int i = j + 1; i < n; ++i) {
      Interval s = Interval(G(i, j));
      for (int k = 0; k < j; ++k)
        s -= L[static_cast<size_t>(i)][static_cast<size_t>(k)] * L[static_cast<size_t>(j)][static_cast<size_t>(k)];
      L[static_cast<size_t>(i)][static_cast<size_t>(j)] = s / ljj;
    }
  }
  return true;
}

// Rigorous lower bound on the smallest eigenvalue: 0 if G itself passes an
// interval Cholesky, otherwise -s for the smallest verified shift s.
double psd_margin(const Eigen::MatrixXd& G) {
  if (interval_cholesky_pd(G, 0.0)) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
  double s = std::max(0.0, -es.eigenvalues().minCoeff()) + 1e-14 * scale;
  for (int it = 0; it < 80; ++it) {
    if (interval_cholesky_pd(G, s)) return -s;
    s *= 2.0;
  }
  return -std::numeric_limits<double>::infinity();
}

}  // namespace

std::optional<SphereBound> verify_certificate(const RealifiedQuartic& rq,
                                              SosCertificate& cert,
                                              SosRejection* rejection) {
  auto reject = [&](const std::string& why, double bound) -> std::optional<SphereBound> {
    cert.verified_bound = bound;
    if (rejection) *rejection = SosRejection{why, bound};
    return std::nullopt;
  };

  const int m = rq.m;
  if (cert.G.rows() != cert.G.cols())
    throw std::invalid_argument("verify_certificate: G not square");
  if ((cert.G - cert.G.transpose()).cwiseAbs().maxCoeff() > 0.0)
    throw std::invalid_argument("verify_certificate: G not symmetric");

  // infer the level from the Gram dimension
  int r = -1;
  std::vector<Monomial> basis;
  for (int cand = 2; cand <= 10; ++cand) {
    basis = monomials_up_to(m, cand);
    if (static_cast<int>(basis.size()) == cert.G.rows()) { r = cand; break; }
    if (static_cast<int>(basis.size()) > cert.G.rows()) break;
  }
  if (r < 0)
    throw std::invalid_argument("verify_certificate: G size matches no level-r basis");

  // rho = q - c - v^T G v - lambda (s-1), assembled in interval arithmetic
  IPolyR rho = to_ipoly(q_polynomial(rq));
  iadd(rho, Monomial::zero(m), Interval(-cert.c_claimed));
  const int N = static_cast<int>(basis.size());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const double g = cert.G(i, j);
      if (g == 0.0) continue;
      iadd(rho, mono_product(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]),
           Interval(-g));
    }
  {
    IPolyR lam;
    for (const auto& [mo, v] : cert.lambda) {
      if (static_cast<int>(mo.e.size()) != m)
        throw std::invalid_argument("verify_certificate: lambda monomial dimension");
      iadd(lam, mo, Interval(v));
    }
    RealPoly sm1 = sphere_polynomial(m);
    real_add(sm1, Monomial::zero(m), -1.0);
    IPolyR prod = imul(lam, to_ipoly(sm1));
    for (const auto& [mo, v] : prod) iadd(rho, mo, -v);
  }

  Interval rho_sum(0.0);
  for (const auto& [mo, v] : rho) rho_sum += Interval(v.mag());

  const double mu = psd_margin(cert.G);
  Interval deduction = rho_sum;
  if (mu < 0.0)
    deduction += Interval(-mu) * Interval(static_cast<double>(r + 1));

  const double verified = (Interval(cert.c_claimed) - deduction).lo;
  cert.verified_bound = verified;

  if (!(verified > 0.0)) return reject("verified bound is not positive", verified);
  const double slack = 1e-4 * std::max(1.0, std::fabs(cert.c_claimed));
  if (cert.c_claimed - verified > slack)
    return reject("claimed bound not substantiated by the certificate", verified);

  SphereBound b;
  b.method = BoundMethod::sos;
  b.q_lower = verified;
  b.c = next_down(std::sqrt(verified));
  b.effort = static_cast<std::uint64_t>(r);
  return b;
}

}  // namespace zclust
