#include "zclust/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <thread>

namespace zclust {

double RealifiedQuartic::value(const Eigen::VectorXd& v) const {
  double q = 0.0;
  for (const auto& M : forms) {
    const double f = v.dot(M * v);
    q += f * f;
  }
  return q;
}

RealifiedQuartic realify(const QuadraticSystem& Q) {
  RealifiedQuartic rq;
  rq.n = Q.n;
  rq.m = 2 * Q.n;
  for (const auto& p : Q.components) {
    Eigen::MatrixXd re = Eigen::MatrixXd::Zero(rq.m, rq.m);
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(rq.m, rq.m);
    for (const auto& [mono, c] : p.terms) {
      if (mono.degree() != 2)
        throw std::invalid_argument("realify: component not homogeneous quadratic");
      // decode the (at most two) variables of the monomial
      int i = -1, j = -1;
      for (size_t k = 0; k < mono.e.size(); ++k) {
        if (mono.e[k] == 2) { i = j = static_cast<int>(k); }
        else if (mono.e[k] == 1) { (i < 0 ? i : j) = static_cast<int>(k); }
      }
      // x_i x_j = (a_i a_j - b_i b_j) + i (a_i b_j + b_i a_j)
      const int ai = i, bi = i + Q.n, aj = j, bj = j + Q.n;
      auto add = [&](Eigen::MatrixXd& M, int r, int s, double w) {
        if (r == s) M(r, s) += w;
        else { M(r, s) += 0.5 * w; M(s, r) += 0.5 * w; }
      };
      const double cr = c.real(), ci = c.imag();
      // real part of c * x_i x_j
      add(re, ai, aj, cr); add(re, bi, bj, -cr);
      add(re, ai, bj, -ci); add(re, bi, aj, -ci);
      // imaginary part
      add(im, ai, aj, ci); add(im, bi, bj, -ci);
      add(im, ai, bj, cr); add(im, bi, aj, cr);
    }
    rq.forms.push_back(std::move(re));
    rq.forms.push_back(std::move(im));
  }
  return rq;
}

namespace {

using Box = std::vector<Interval>;

// Interval Cholesky: success proves H + shift*I is positive definite.
bool chol_pd(const Eigen::MatrixXd& H, double shift) {
  const int n = static_cast<int>(H.rows());
  std::vector<std::vector<Interval>> L(static_cast<size_t>(n),
                                       std::vector<Interval>(static_cast<size_t>(n), Interval(0.0)));
  for (int j = 0; j < n; ++j) {
    Interval d = Interval(H(j, j)) + Interval(shift);
    for (int k = 0; k < j; ++k) d -= square(L[static_cast<size_t>(j)][static_cast<size_t>(k)]);
    if (!(d.lo > 0.0)) return false;
    const Interval ljj = sqrt(d);
    L[static_cast<size_t>(j)][static_cast<size_t>(j)] = ljj;
    for (int i = j + 1; i < n; ++i) {
      Interval s = Interval(H(i, j));
      for (int k = 0; k < j; ++k)
        s -= L[static_cast<size_t>(i)][static_cast<size_t>(k)] * L[static_cast<size_t>(j)][static_cast<size_t>(k)];
      L[static_cast<size_t>(i)][static_cast<size_t>(j)] = s / ljj;
    }
  }
  return true;
}

// Rigorous lower bound on the smallest eigenvalue of a symmetric matrix:
// a floating-point eigensolver proposes, an interval Cholesky certifies.
double verified_min_eigenvalue(const Eigen::MatrixXd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  const double lam = es.eigenvalues().minCoeff();
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  double gap = 1e-12 * scale;
  for (int it = 0; it < 10; ++it) {
    const double mu = lam - gap;
    if (chol_pd(H, -mu)) return mu;
    gap *= 16.0;
  }
  return -std::numeric_limits<double>::infinity();
}

// Enclosure of v^T M v over the box: intersection of the naive interval
// evaluation with the mean-value form around the box midpoint.
Interval form_range(const Eigen::MatrixXd& M, const Box& B) {
  const int m = static_cast<int>(B.size());
  // naive: sum_i B_i * (M B)_i, diagonal handled with tight squares
  Interval naive(0.0);
  std::vector<Interval> MB(static_cast<size_t>(m), Interval(0.0));
  for (int i = 0; i < m; ++i) {
    Interval row(0.0);
    for (int j = 0; j < m; ++j) {
      if (M(i, j) == 0.0) continue;
      if (j == i) continue;
      row += Interval(M(i, j)) * B[static_cast<size_t>(j)];
    }
    naive += row * B[static_cast<size_t>(i)];
    if (M(i, i) != 0.0)
      naive += Interval(M(i, i)) * square(B[static_cast<size_t>(i)]);
  }
  // mean value: f(c) + (2 M B) . (B - c)
  Interval mv(0.0);
  {
    std::vector<Interval> c(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) c[static_cast<size_t>(i)] = Interval(B[static_cast<size_t>(i)].mid());
    Interval fc(0.0);
    for (int i = 0; i < m; ++i) {
      Interval row(0.0);
      for (int j = 0; j < m; ++j)
        if (M(i, j) != 0.0) row += Interval(M(i, j)) * c[static_cast<size_t>(j)];
      fc += row * c[static_cast<size_t>(i)];
    }
    mv = fc;
    for (int i = 0; i < m; ++i) {
      Interval gi(0.0);
      for (int j = 0; j < m; ++j)
        if (M(i, j) != 0.0) gi += Interval(M(i, j)) * B[static_cast<size_t>(j)];
      gi = Interval(2.0) * gi;
      mv += gi * (B[static_cast<size_t>(i)] - c[static_cast<size_t>(i)]);
    }
  }
  return intersect(naive, mv);
}

// Lower bound of g(v) = q(v)/||v||^4 over the box (valid for the radial
// projection of the box onto the unit sphere, since g is homogeneous of
// degree zero).  Three enclosures are combined and the best one wins:
//   1. the naive interval quotient max(q_lo,0)/s_hi^2,
//   2. a mean-value form on g,
//   3. a centered expansion of the shifted quartic p_t = q - t s^2 (exact
//      midpoint coefficients, verified eigenvalue on the order-2 block,
//      secant iteration on the level t).
// Form 3 evaluates every coefficient at the thin midpoint, so its slack is
// second order in the box width wherever the order-2 block stays definite;
// it dominates on small and mid-sized boxes, forms 1-2 on large ones.
double box_lower_bound(const RealifiedQuartic& rq, const Box& B,
                       int* split_hint = nullptr) {
  Box Bn = B;
  const int m = static_cast<int>(Bn.size());
  const size_t K = rq.forms.size();
  const auto S = [](int i) { return static_cast<size_t>(i); };
  double lower = 0.0;
  std::vector<std::vector<Interval>> MB(K, std::vector<Interval>(S(m)));
  std::vector<Interval> dq(S(m));
  std::vector<Interval> dg(S(m));
  // a pass may shrink B by the monotonicity test below, in which case the
  // enclosures are worth recomputing on the smaller box
  for (int pass = 0; pass < 3; ++pass) {
    std::vector<Interval> franges(K);
    for (size_t k = 0; k < K; ++k) franges[k] = form_range(rq.forms[k], Bn);
    Interval q(0.0);
    for (const auto& fr : franges) q += square(fr);
    Interval s(0.0);  // ||v||^2
    for (const auto& bi : Bn) s += square(bi);
    if (!(s.lo > 0.0)) return 0.0;

    // form 1: naive quotient
    const double qlo = std::max(q.lo, 0.0);
    lower = std::max(lower, next_down(qlo / square(Interval(s.hi)).hi));

    const Interval s2 = square(s);
    const Interval s3 = s2 * s;

    // (M_k B)_i, shared by the gradient and the Hessians
    for (size_t k = 0; k < K; ++k) {
      const auto& M = rq.forms[k];
      for (int i = 0; i < m; ++i) {
        Interval row(0.0);
        for (int j = 0; j < m; ++j)
          if (M(i, j) != 0.0) row += Interval(M(i, j)) * Bn[S(j)];
        MB[k][S(i)] = row;
      }
    }
    // dq_i = 4 sum_k f_k (M_k v)_i ;  dg_i = dq_i / s^2 - 4 q v_i / s^3
    for (int i = 0; i < m; ++i) {
      Interval acc(0.0);
      for (size_t k = 0; k < K; ++k) acc += franges[k] * MB[k][S(i)];
      dq[S(i)] = Interval(4.0) * acc;
      dg[S(i)] = dq[S(i)] / s2 - Interval(4.0) * q * Bn[S(i)] / s3;
    }

    // monotonicity test: if g is strictly monotone in v_i over the whole box,
    // its minimum sits on the corresponding edge; pinning the box there
    // preserves the minimum and sharpens every other enclosure
    bool collapsed = false;
    for (int i = 0; i < m; ++i) {
      const auto& bi = Bn[S(i)];
      if (bi.width() == 0.0) continue;
      if (dg[S(i)].lo > 0.0) {
        Bn[S(i)] = Interval(bi.lo);
        collapsed = true;
      } else if (dg[S(i)].hi < 0.0) {
        Bn[S(i)] = Interval(bi.hi);
        collapsed = true;
      }
    }
    if (collapsed) {
      if (split_hint) *split_hint = -1;  // stale after a collapse
      continue;
    }

    // thin midpoint values
    std::vector<Interval> c(S(m));
    for (int i = 0; i < m; ++i) c[S(i)] = Interval(Bn[S(i)].mid());
    Interval qc(0.0);
    std::vector<Interval> fc(K);
    std::vector<std::vector<Interval>> Mc(K, std::vector<Interval>(S(m)));
    for (size_t k = 0; k < K; ++k) {
      const auto& M = rq.forms[k];
      Interval acc(0.0);
      for (int i = 0; i < m; ++i) {
        Interval row(0.0);
        for (int j = 0; j < m; ++j)
          if (M(i, j) != 0.0) row += Interval(M(i, j)) * c[S(j)];
        Mc[k][S(i)] = row;
        acc += row * c[S(i)];
      }
      fc[k] = acc;
      qc += square(acc);
    }
    Interval sc(0.0);
    for (const auto& ci : c) sc += square(ci);
    const Interval sc2 = square(sc);
    const Interval gc = qc / sc2;

    std::vector<Interval> d(S(m));
    Interval sumsq(0.0), gs(0.0);
    for (int i = 0; i < m; ++i) {
      d[S(i)] = Bn[S(i)] - c[S(i)];
      gs += c[S(i)] * d[S(i)];
      sumsq += square(d[S(i)]);
    }
    gs = Interval(2.0) * gs;
    const Interval& hs = sumsq;

    // form 2: mean value, g(c) + dg(B) . (B - c)
    Interval g_mv = gc;
    for (int i = 0; i < m; ++i)
      if (d[S(i)].width() > 0.0) g_mv += dg[S(i)] * d[S(i)];
    lower = std::max(lower, g_mv.lo);

    // thin midpoint gradient of q
    std::vector<Interval> qgrad(S(m));   // q_i(c) = 4 sum f_k (M_k c)_i
    for (int i = 0; i < m; ++i) {
      Interval qci(0.0);
      for (size_t k = 0; k < K; ++k) qci += fc[k] * Mc[k][S(i)];
      qgrad[S(i)] = Interval(4.0) * qci;
    }

    // form 3: centered expansion of the shifted quartic p_t(v) = q - t s^2;
    // min g over the box is at least t + min p_t / s^2 for any level t.
    // Writing f_k(c+d) = f_k(c) + 2 c^T M_k d + d^T M_k d and grouping by
    // degree in d gives, with g_k = 2 c^T M_k d and h_k = d^T M_k d (and the
    // same for s^2 via M = I):
    //   order 1: sum 4 f_k (M_k c) . d   - 4 t s_c c . d
    //   order 2: d^T (Aq - t As) d,  Aq = sum (2 f_k M_k + 4 (M_k c)(M_k c)^T),
    //            As = 2 s_c I + 4 c c^T
    //   order 3: sum 2 g_k h_k - 2 t g_s h_s
    //   order 4: sum h_k^2 - t h_s^2, where sum h_k^2 >= 0 for free.
    // A few secant steps drive t toward the largest level with min p_t >= 0,
    // the sharpest bound this form can certify.
    {
      Interval o34q(0.0);
      for (size_t k = 0; k < K; ++k) {
        const auto& M = rq.forms[k];
        Interval gk(0.0), hk(0.0);
        for (int i = 0; i < m; ++i) {
          gk += Mc[k][S(i)] * d[S(i)];
          Interval row(0.0);
          for (int j = 0; j < m; ++j)
            if (M(i, j) != 0.0) row += Interval(M(i, j)) * d[S(j)];
          hk += row * d[S(i)];
        }
        gk = Interval(2.0) * gk;
        o34q += Interval(2.0) * gk * hk;
        o34q += Interval(std::max(square(hk).lo, 0.0));  // h_k^2 >= 0
      }
      const Interval o34s = Interval(2.0) * gs * hs + square(hs);

      std::vector<std::vector<Interval>> Aq(S(m), std::vector<Interval>(S(m)));
      std::vector<std::vector<Interval>> As(S(m), std::vector<Interval>(S(m)));
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          Interval aij(0.0);
          for (size_t k = 0; k < K; ++k) {
            const double mij = rq.forms[k](i, j);
            if (mij != 0.0) aij += Interval(2.0) * fc[k] * Interval(mij);
            aij += Interval(4.0) * Mc[k][S(i)] * Mc[k][S(j)];
          }
          Aq[S(i)][S(j)] = aij;
          Interval asij = Interval(4.0) * c[S(i)] * c[S(j)];
          if (i == j) asij += Interval(2.0) * sc;
          As[S(i)][S(j)] = asij;
        }

      Eigen::MatrixXd At(m, m);
      auto eval_plb = [&](double t) -> double {
        Interval p = qc - Interval(t) * sc2 + o34q - Interval(t) * o34s;
        // order-1 coefficients with the level folded in: the gradients of q
        // and of t s^2 largely cancel near a minimizer ray, and the
        // cancellation must happen before the wide factor d_i is applied
        std::vector<Interval> lF(S(m));
        for (int i = 0; i < m; ++i)
          lF[S(i)] = qgrad[S(i)] - Interval(4.0 * t) * sc * c[S(i)];
        for (int i = 0; i < m; ++i)
          for (int j = i; j < m; ++j)
            At(i, j) = At(j, i) =
                (Aq[S(i)][S(j)] - Interval(t) * As[S(i)][S(j)]).mid();
        const double mu = verified_min_eigenvalue(At);
        if (!std::isfinite(mu)) return -std::numeric_limits<double>::infinity();
        if (mu > 0.0) {
          // d^T A d >= mu |d|^2, and l.d + mu |d|^2 separates by coordinate;
          // each one-dimensional quadratic is minimized exactly over [lo,hi]
          const Interval muI(mu);
          for (int i = 0; i < m; ++i) {
            const Interval& li = lF[S(i)];
            const Interval& di = d[S(i)];
            double lo = (li * Interval(di.lo) + muI * square(Interval(di.lo))).lo;
            lo = std::min(
                lo, (li * Interval(di.hi) + muI * square(Interval(di.hi))).lo);
            const double dstar = -li.mid() / (2.0 * mu);
            if (dstar > di.lo && dstar < di.hi)
              lo = std::min(lo, (Interval(0.0) - square(li) /
                                                    Interval(4.0 * mu)).lo);
            p += Interval(lo);
          }
        } else {
          for (int i = 0; i < m; ++i) p += lF[S(i)] * d[S(i)];
          p += Interval(mu) * sumsq;
        }
        for (int i = 0; i < m; ++i) {
          const Interval ri(d[S(i)].mag());
          for (int j = i; j < m; ++j) {
            const Interval delta =
                Aq[S(i)][S(j)] - Interval(t) * As[S(i)][S(j)] - Interval(At(i, j));
            if (delta.lo == 0.0 && delta.hi == 0.0) continue;
            const Interval w = Interval(delta.mag()) * ri * Interval(d[S(j)].mag());
            p -= (i == j ? w : Interval(2.0) * w);
          }
        }
        return p.lo;
      };

      double t = gc.lo;
      const double sc2mid = sc2.mid();
      // bracket of the largest certifiable level: plb(t_good) >= 0 > plb(t_bad)
      double t_good = 0.0, plb_good = 0.0, t_bad = 0.0, plb_bad = 0.0;
      bool have_good = false, have_bad = false;
      for (int it = 0; it < 6; ++it) {
        const double plb = eval_plb(t);
        if (!std::isfinite(plb)) break;
        if (it == 0 && split_hint) {
          // the coordinate contributing most first-plus-second-order
          // variation of p at the aspired level g(c) is the most valuable
          // one to split
          double best_score = -1.0;
          for (int i = 0; i < m; ++i) {
            const double wi = d[S(i)].width();
            const double li =
                (qgrad[S(i)] - Interval(4.0 * t) * sc * c[S(i)]).mag();
            const double score = li * wi + 0.5 * std::abs(At(i, i)) * wi * wi;
            if (score > best_score) {
              best_score = score;
              *split_hint = i;
            }
          }
        }
        const Interval denom = square(Interval(plb >= 0.0 ? s.hi : s.lo));
        const Interval gq = Interval(t) + Interval(plb) / denom;
        lower = std::max(lower, gq.lo);
        if (plb >= 0.0) {
          if (!have_good || t > t_good) { t_good = t; plb_good = plb; have_good = true; }
        } else {
          if (!have_bad || t < t_bad) { t_bad = t; plb_bad = plb; have_bad = true; }
        }
        double tn;
        if (have_good && have_bad) {
          if (t_bad - t_good <= 1e-4 * std::max(1.0, t_good)) break;
          // secant on the bracket, nudged off the endpoints
          tn = t_good + plb_good * (t_bad - t_good) / (plb_good - plb_bad);
          tn = std::min(std::max(tn, t_good + 0.05 * (t_bad - t_good)),
                        t_bad - 0.05 * (t_bad - t_good));
        } else if (have_bad) {
          tn = std::max(0.0, t + plb / sc2mid);
          if (!(tn < t)) break;
        } else {
          break;  // already certified the starting level g(c)
        }
        t = tn;
      }
    }
    break;
  }
  return std::max(lower, 0.0);
}


struct Node {
  Box box;
  double lb;
  std::uint64_t id;  // creation order, ties the heap deterministically
  int split_dim = -1;
};

struct NodeGreater {
  bool operator()(const Node& a, const Node& b) const {
    if (a.lb != b.lb) return a.lb > b.lb;
    return a.id > b.id;
  }
};

}  // namespace

SphereBound min_on_sphere(const RealifiedQuartic& rq,
                          std::optional<double> target, std::uint64_t max_boxes,
                          int threads) {
  const int m = rq.m;
  if (m <= 0) throw std::invalid_argument("min_on_sphere: empty quartic");
  if (threads < 1) threads = 1;

  std::priority_queue<Node, std::vector<Node>, NodeGreater> heap;
  std::uint64_t processed = 0;
  std::uint64_t next_id = 0;

  auto push_box = [&](Box b, double parent_lb) {
    int hint = -1;
    double lb = box_lower_bound(rq, b, &hint);
    // a child is contained in its parent, so the parent's bound stays valid;
    // clamping keeps refinement monotone
    lb = std::max(lb, parent_lb);
    heap.push(Node{std::move(b), lb, next_id++, hint});
    ++processed;
  };

  // every quadratic form is even, so the radial cover of the faces v_i = +1
  // suffices: each v_i = -1 face is its exact mirror image
  for (int i = 0; i < m; ++i) {
    Box b(static_cast<size_t>(m), Interval(-1.0, 1.0));
    b[static_cast<size_t>(i)] = Interval(1.0);
    push_box(std::move(b), 0.0);
  }

  // fixed batch size: the processing schedule must not depend on the thread
  // count, or the final bound would
  constexpr std::size_t kBatch = 32;

  while (processed < max_boxes) {
    if (target && heap.top().lb >= *target) break;
    const std::size_t batch =
        std::min({kBatch, heap.size(), static_cast<std::size_t>((max_boxes - processed + 1) / 2)});
    if (batch == 0) break;

    std::vector<Node> popped;
    popped.reserve(batch);
    for (std::size_t k = 0; k < batch; ++k) {
      if (target && heap.top().lb >= *target) break;
      popped.push_back(heap.top());
      heap.pop();
    }
    if (popped.empty()) break;

    // split each popped box along its longest edge
    std::vector<Node> children;
    children.reserve(2 * popped.size());
    for (const auto& node : popped) {
      int dim = node.split_dim;
      if (dim < 0 || node.box[static_cast<size_t>(dim)].width() == 0.0) {
        dim = 0;
        double w = -1.0;
        for (int i = 0; i < m; ++i) {
          const double wi = node.box[static_cast<size_t>(i)].width();
          if (wi > w) { w = wi; dim = i; }
        }
      }
      const double mid = node.box[static_cast<size_t>(dim)].mid();
      for (int half = 0; half < 2; ++half) {
        Box b = node.box;
        const Interval& e = node.box[static_cast<size_t>(dim)];
        b[static_cast<size_t>(dim)] =
            half == 0 ? Interval(e.lo, mid) : Interval(mid, e.hi);
        children.push_back(Node{std::move(b), node.lb, next_id++, -1});
      }
    }

    auto evaluate = [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k)
        children[k].lb = std::max(
            box_lower_bound(rq, children[k].box, &children[k].split_dim),
            children[k].lb);
    };
    if (threads == 1 || children.size() < 4) {
      evaluate(0, children.size());
    } else {
      std::vector<std::thread> pool;
      const std::size_t per = (children.size() + static_cast<std::size_t>(threads) - 1) /
                              static_cast<std::size_t>(threads);
      for (int t = 0; t < threads; ++t) {
        const std::size_t b = static_cast<std::size_t>(t) * per;
        const std::size_t e = std::min(children.size(), b + per);
        if (b < e) pool.emplace_back(evaluate, b, e);
      }
      for (auto& th : pool) th.join();
    }
    for (auto& c : children) {
      heap.push(std::move(c));
      ++processed;
    }
  }

  SphereBound out;
  out.method = BoundMethod::subdivision;
  out.effort = processed;
  out.q_lower = std::max(heap.top().lb, 0.0);
  out.c = out.q_lower > 0.0 ? next_down(std::sqrt(out.q_lower)) : 0.0;
  out.target_missed = target && out.q_lower < *target;
  return out;
}

double remainder_bound(const ISystem& R, double eps) {
  Interval acc(0.0);
  for (const auto& p : R.components)
    acc += square(Interval(sphere_coeff_bound(p, eps)));
  return sqrt(acc).hi;
}

double remainder_bound(const PolySystem& R, double eps) {
  return remainder_bound(to_interval(R), eps);
}

bool epsilon_feasible(const ISystem& R, double c, double safety, double eps) {
  const double lhs = remainder_bound(R, eps);
  const double rhs = (Interval(safety) * Interval(c) * square(Interval(eps))).lo;
  return lhs <= rhs;
}

std::optional<EpsilonInterval> epsilon_interval(const ISystem& R, double c,
                                                std::pair<double, double> range,
                                                double safety) {
  if (!(safety > 0.0 && safety <= 1.0))
    throw std::invalid_argument("epsilon_interval: safety must be in (0,1]");
  if (!(range.first > 0.0 && range.second > range.first))
    throw std::invalid_argument("epsilon_interval: bad range");
  if (!(c > 0.0)) return std::nullopt;

  auto feasible = [&](double eps) { return epsilon_feasible(R, c, safety, eps); };

  constexpr int kScan = 64;
  const double llo = std::log(range.first), lhi = std::log(range.second);
  std::vector<double> grid(kScan);
  std::vector<bool> ok(kScan);
  int first = -1, last = -1;
  for (int i = 0; i < kScan; ++i) {
    grid[static_cast<size_t>(i)] =
        std::exp(llo + (lhi - llo) * static_cast<double>(i) / (kScan - 1));
    ok[static_cast<size_t>(i)] = feasible(grid[static_cast<size_t>(i)]);
    if (ok[static_cast<size_t>(i)]) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) return std::nullopt;

  // refine each endpoint, keeping the feasible side
  auto bisect = [&](double bad, double good) {
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (bad + good);
      if (feasible(mid)) good = mid;
      else bad = mid;
    }
    return good;
  };

  EpsilonInterval out;
  out.safety = safety;
  out.lo = first == 0 ? grid[0] : bisect(grid[static_cast<size_t>(first - 1)],
                                         grid[static_cast<size_t>(first)]);
  out.hi = last == kScan - 1
               ? grid[static_cast<size_t>(kScan - 1)]
               : bisect(grid[static_cast<size_t>(last + 1)],
                        grid[static_cast<size_t>(last)]);
  return out;
}

}  // namespace zclust
