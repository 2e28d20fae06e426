#include "qp1qc/solver.hpp"

#include <algorithm>
#include <cmath>

#include "qp1qc/linalg.hpp"
#include "qp1qc/oracle.hpp"
#include "qp1qc/rng.hpp"
#include "qp1qc/slater.hpp"

namespace qp1qc {

const char* status_name(Solution::Status s) {
  switch (s) {
    case Solution::Status::Infeasible: return "infeasible";
    case Solution::Status::UnboundedBelow: return "unbounded";
    case Solution::Status::Unattained: return "unattained";
    case Solution::Status::Attained: return "attained";
  }
  return "?";
}

namespace {

double band(double x, const Tolerance& tol) { return tol.rel * std::max(1.0, std::abs(x)); }

// Spectral pseudo-solve of (A + sigma B) x = f + sigma g; null components of
// the right-hand side are dropped (minimum-norm stationary point).
struct PencilSolve {
  VectorXd x;
  double lam_min = 0.0;
  double null_resid = 0.0;  // size of the RHS component outside the range
};

PencilSolve pencil_solve(const SymMatrix& A, const SymMatrix& B, const VectorXd& f,
                         const VectorXd& g, double sigma, const Tolerance& tol) {
  const EigDecomp e = sym_eig(pencil_at(A, B, sigma));
  const VectorXd rhs = f + sigma * g;
  const VectorXd w = e.vectors.transpose() * rhs;
  const double cut = tol.cutoff(e.values.size() ? e.values.cwiseAbs().maxCoeff() : 0.0);
  VectorXd y = VectorXd::Zero(w.size());
  double nr = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    if (std::abs(e.values[i]) > cut)
      y[i] = w[i] / e.values[i];
    else
      nr += w[i] * w[i];
  }
  PencilSolve ps;
  ps.x = e.vectors * y;
  ps.lam_min = e.values.size() ? e.values[0] : 0.0;
  ps.null_resid = std::sqrt(nr);
  return ps;
}

// Stable real roots of a t^2 + b t + c = 0.
std::optional<std::pair<double, double>> quad_roots(double a, double b, double c) {
  if (std::abs(a) < 1e-300) {
    if (std::abs(b) < 1e-300) return std::nullopt;
    const double t = -c / b;
    return std::make_pair(t, t);
  }
  double disc = b * b - 4.0 * a * c;
  if (disc < 0) {
    if (disc > -1e-10 * (b * b + 4.0 * std::abs(a * c)))
      disc = 0.0;  // grazing double root
    else
      return std::nullopt;
  }
  const double s = std::sqrt(disc);
  const double qq = -0.5 * (b + (b >= 0 ? s : -s));
  double r1 = qq / a;
  double r2 = std::abs(qq) > 0 ? c / qq : r1;
  if (r1 > r2) std::swap(r1, r2);
  return std::make_pair(r1, r2);
}

}  // namespace

KktCertificate kkt_verify(const Qp1qcInstance& inst, const VectorXd& x, double sigma,
                          const Tolerance& tol) {
  (void)tol;
  const SymMatrix P = pencil_at(inst.A, inst.B, sigma);
  KktCertificate cert;
  cert.x = x;
  cert.sigma = sigma;
  const double G = inst.constraint(x);
  cert.feas_resid = G - inst.mu;
  cert.stat_resid = (P.mat() * x - (inst.f + sigma * inst.g)).norm();
  cert.comp_resid = std::abs(sigma * (G - inst.mu));
  cert.pencil_min_eig = min_eig(P);
  const double xs = x.norm();
  cert.feas_scale = std::max(
      1.0, inst.B.norm_fro() * xs * xs + 2.0 * inst.g.norm() * xs + std::abs(inst.mu));
  cert.stat_scale = std::max(1.0, P.norm_fro() * xs + (inst.f + sigma * inst.g).norm());
  cert.comp_scale = std::max(1.0, std::abs(sigma) * cert.feas_scale);
  cert.pencil_scale = std::max(1.0, P.norm_fro());
  return cert;
}

DualValue dual_value(const Qp1qcInstance& inst, double sigma, const Tolerance& tol) {
  const SymMatrix P = pencil_at(inst.A, inst.B, sigma);
  const VectorXd rhs = inst.f + sigma * inst.g;
  if (!is_psd(P, tol) || !range_contains(P, rhs, tol))
    throw PreconditionViolated("dual_value: d(sigma) = -inf at this sigma");
  DualValue dv;
  dv.sigma = sigma;
  dv.value = -rhs.dot(pinv(P, tol).mat() * rhs) - inst.mu * sigma;
  return dv;
}

FeasibilityResult feasibility_system(const Qp1qcInstance& inst, const PencilInterval& iv,
                                     const Tolerance& tol) {
  FeasibilityResult res;
  if (iv.is_empty()) {
    res.case_label = "a";
    return res;
  }

  auto range_ok = [&](double s) {
    return range_contains(pencil_at(inst.A, inst.B, s), inst.f + s * inst.g, tol);
  };

  if (iv.is_singleton()) {
    res.case_label = "b";
    // A singleton sigma* is only known to ~sqrt(eps) (lambda_min touches
    // zero quadratically); snap to 0 when 0 sits inside the pencil's own
    // tolerance-PSD band so the sign tests downstream stay consistent.
    double s_star = iv.sigma;
    if (std::abs(s_star) <= 1e-6 && is_psd(pencil_at(inst.A, inst.B, 0.0), tol))
      s_star = 0.0;
    if (s_star < -band(s_star, tol)) {
      res.case_label = "a";  // sigma_u* < 0
      return res;
    }
    const double s = std::max(0.0, s_star);
    if (range_ok(s)) {
      res.solvable = true;
      res.sigma = s;
      res.where = FeasibilityResult::Where::SingletonPoint;
    }
    return res;
  }

  const double lo = iv.lo, hi = iv.hi;
  if (std::isfinite(hi) && hi < -band(hi, tol)) {
    res.case_label = "a";
    return res;
  }
  res.case_label = (lo < 0.0 || std::isinf(lo)) ? "c1" : "c2";

  // In the interior the null space of A + sigma B collapses to the joint
  // null space V, and the range condition reduces to V^T f + sigma V^T g = 0.
  const ReducedPencil rp = reduce_pencil(inst.A, inst.B, tol);
  const VectorXd p = rp.V.columns.transpose() * inst.f;
  const VectorXd q = rp.V.columns.transpose() * inst.g;
  const bool p0 = p.norm() <= tol.cutoff(inst.f.norm());
  const bool q0 = q.norm() <= tol.cutoff(inst.g.norm());
  const double L = std::max(0.0, lo);

  if (L < hi) {
    if (p0 && q0) {
      double s;
      if (lo < 0.0)
        s = 0.0;
      else
        s = std::isinf(hi) ? L + 1.0 : 0.5 * (L + hi);
      res.solvable = true;
      res.sigma = s;
      res.where = FeasibilityResult::Where::Interior;
      return res;
    }
    if (!q0) {
      const double s_hat = -p.dot(q) / q.dot(q);
      const bool dependent =
          (p + s_hat * q).norm() <= tol.cutoff(p.norm() + std::abs(s_hat) * q.norm());
      const double m = band(s_hat, tol);
      if (dependent && s_hat >= L - m && s_hat > lo + m && s_hat < hi - m) {
        res.solvable = true;
        res.sigma = std::max(0.0, s_hat);
        res.where = FeasibilityResult::Where::Interior;
        return res;
      }
    }
    // p != 0, q = 0 has no interior solution; fall through to the endpoints.
  }

  if (std::isfinite(hi)) {
    const double s = std::max(0.0, hi);
    if (range_ok(s)) {
      res.solvable = true;
      res.sigma = s;
      res.where = FeasibilityResult::Where::HiEnd;
      return res;
    }
  }
  if (std::isfinite(lo) && lo >= -band(lo, tol)) {
    const double s = std::max(0.0, lo);
    if (range_ok(s)) {
      res.solvable = true;
      res.sigma = s;
      res.where = FeasibilityResult::Where::LoEnd;
      return res;
    }
  }
  return res;
}

namespace {

// Correction x -> x + alpha v with v in N(Ar + sigma Br), bringing G(x) to mu
// exactly (the boundary "hard case" step).
bool null_step_to_boundary(const Qp1qcInstance& r, double sigma, VectorXd& x,
                           const Tolerance& tol) {
  const Basis nb = null_basis(pencil_at(r.A, r.B, sigma), tol);
  if (nb.empty()) return false;
  const double c = r.constraint(x) - r.mu;
  bool found = false;
  double best_alpha = 0.0;
  VectorXd best_v;
  for (int j = 0; j < nb.dim(); ++j) {
    const VectorXd v = nb.columns.col(j);
    const double a = v.dot(r.B.mat() * v);
    const double b = 2.0 * (r.B.mat() * x - r.g).dot(v);
    const auto roots = quad_roots(a, b, c);
    if (!roots) continue;
    for (double al : {roots->first, roots->second}) {
      if (!std::isfinite(al)) continue;
      if (!found || std::abs(al) < std::abs(best_alpha)) {
        best_alpha = al;
        best_v = v;
        found = true;
      }
    }
  }
  if (found) x += best_alpha * best_v;
  return found;
}

}  // namespace

std::pair<VectorXd, double> solve_dual_slater(const Qp1qcInstance& r, double lo, double hi,
                                              const Tolerance& tol) {
  const double L = std::max(0.0, lo);
  const double width = std::isfinite(hi) ? hi - L : std::max(1.0, std::abs(L));
  const double delta = 1e-7 * std::max(width, 1e-6);

  auto solve_at = [&](double s) { return pencil_solve(r.A, r.B, r.f, r.g, s, tol); };
  auto psi_at = [&](double s) { return r.constraint(solve_at(s).x) - r.mu; };

  auto finish_endpoint = [&](double s) {
    VectorXd x = solve_at(s).x;
    const double fb = band(r.mu, tol);
    const double G = r.constraint(x);
    const bool needs_eq = s > band(s, tol);  // complementarity active
    if (G > r.mu + fb || (needs_eq && G < r.mu - fb)) {
      VectorXd xc = x;
      if (null_step_to_boundary(r, s, xc, tol)) x = xc;
    }
    return std::make_pair(x, s);
  };

  if (std::isfinite(hi) && hi - L <= band(hi, tol)) return finish_endpoint(L);

  const bool left_is_pencil_end = (lo >= 0.0);
  const double eval_L = left_is_pencil_end ? L + delta : L;
  if (psi_at(eval_L) <= 0.0) return finish_endpoint(L);

  double b_hi;
  if (std::isinf(hi)) {
    b_hi = std::max(2.0 * L + 1.0, 1.0);
    int it = 0;
    while (psi_at(b_hi) > 0.0 && b_hi < 1e15 && it++ < 60) b_hi *= 4.0;
    if (psi_at(b_hi) > 0.0)
      throw NonConvergence("solve_dual_slater: psi stayed positive to the cap");
  } else {
    b_hi = hi - delta;
    if (psi_at(b_hi) >= 0.0) return finish_endpoint(hi);
  }

  // psi is nonincreasing (d is concave); bracket [a, b] holds a sign change.
  double a = eval_L, bb = b_hi;
  double sigma = 0.5 * (a + bb);
  double psi = psi_at(sigma);
  for (int it = 0; it < 200; ++it) {
    const double tiny = 1e-11 * std::max({1.0, std::abs(r.mu), std::abs(psi + r.mu)});
    if (std::abs(psi) <= tiny) break;
    if (bb - a < 1e-4 * (1.0 + std::abs(sigma))) {
      // Newton polish: psi'(s) = -2 s^T (Ar+sBr)^-1 s with s = Br x - gr.
      const PencilSolve ps = pencil_solve(r.A, r.B, r.f, r.g, sigma, tol);
      const VectorXd s = r.B.mat() * ps.x - r.g;
      const PencilSolve hs = pencil_solve(r.A, r.B, s, VectorXd::Zero(s.size()), sigma, tol);
      const double dpsi = -2.0 * s.dot(hs.x);
      if (std::abs(dpsi) > 1e-300) {
        const double cand = sigma - psi / dpsi;
        if (cand > a && cand < bb) {
          if (psi > 0)
            a = sigma;
          else
            bb = sigma;
          sigma = cand;
          psi = psi_at(sigma);
          continue;
        }
      }
    }
    if (psi > 0)
      a = sigma;
    else
      bb = sigma;
    sigma = 0.5 * (a + bb);
    psi = psi_at(sigma);
  }

  VectorXd x = solve_at(sigma).x;
  const double fb = 1e-7 * std::max(1.0, std::abs(r.mu) + std::abs(r.constraint(x)));
  if (std::abs(r.constraint(x) - r.mu) > fb) {
    // Steep psi: behave like the adjacent endpoint and correct along the
    // near-null direction.
    VectorXd xc = x;
    if (null_step_to_boundary(r, sigma, xc, tol))
      x = xc;
    else
      throw NonConvergence("solve_dual_slater: psi root not resolved");
  }
  return {x, sigma};
}

Solution solve_interval_case(const Qp1qcInstance& inst, const PencilInterval& iv,
                             const FeasibilityResult& feas, const Tolerance& tol) {
  if (!iv.is_interval() || !feas.solvable)
    throw PreconditionViolated("solve_interval_case: needs a solvable interval instance");
  const ReducedPencil rp = reduce_pencil(inst.A, inst.B, tol);
  const MatrixXd& U = rp.U.columns;
  const MatrixXd& V = rp.V.columns;
  const VectorXd p = V.transpose() * inst.f;
  const VectorXd q = V.transpose() * inst.g;
  const bool p0 = p.norm() <= tol.cutoff(inst.f.norm());
  const bool q0 = q.norm() <= tol.cutoff(inst.g.norm());
  const VectorXd fr = U.transpose() * inst.f;
  const VectorXd gr = U.transpose() * inst.g;

  Solution sol;
  sol.status = Solution::Status::Attained;

  if (p0 && q0) {  // (d): reduced problem has a positive definite pencil inside
    sol.case_label = "d";
    const Qp1qcInstance red(rp.Ar, rp.Br, fr, gr, inst.mu);
    auto [xu, s] = solve_dual_slater(red, iv.lo, iv.hi, tol);
    sol.x_star = U * xu;
    sol.sigma_star = s;
  } else if (p0) {  // (e): sigma = 0, A PSD, unconstrained convex problem in u
    sol.case_label = "e";
    const SymMatrix Ar = rp.Ar;
    if (!is_psd(inst.A, tol))
      throw InternalInconsistency("interval case (e): A is not PSD");
    const VectorXd u = pinv(Ar, tol).mat() * fr;
    if ((Ar.mat() * u - fr).norm() > 1e-6 * std::max(1.0, fr.norm()))
      throw InternalInconsistency("interval case (e): f not in R(A)");
    const VectorXd xu = U * u;
    const double s_at_zero = inst.constraint(xu);
    const double qe = q.squaredNorm();
    const double cfac = std::max(0.0, (s_at_zero - inst.mu) / (2.0 * qe));
    sol.x_star = xu + V * (cfac * q);
    sol.sigma_star = 0.0;
  } else {  // (f): unique sigma > 0 with V^T f + sigma V^T g = 0
    sol.case_label = "f";
    const double s = feas.sigma;
    const SymMatrix H = pencil_at(rp.Ar, rp.Br, s);
    const VectorXd rhs = fr + s * gr;
    const VectorXd y = pinv(H, tol).mat() * rhs;
    if ((H.mat() * y - rhs).norm() > 1e-6 * std::max(1.0, rhs.norm()))
      throw InternalInconsistency("interval case (f): reduced system inconsistent");
    const double rhs_f = s * (y.dot(rp.Br.mat() * y) - 2.0 * gr.dot(y) - inst.mu);
    const double cz = -rhs_f / (2.0 * p.squaredNorm());
    sol.x_star = U * y + V * (cz * p);
    sol.sigma_star = s;
  }
  sol.value = inst.objective(sol.x_star);
  sol.cert = kkt_verify(inst, sol.x_star, sol.sigma_star, tol);
  return sol;
}

AffineSolutionSet affine_solution_set(const Qp1qcInstance& inst, double sigma_star,
                                      const Tolerance& tol) {
  const SymMatrix P = pencil_at(inst.A, inst.B, sigma_star);
  AffineSolutionSet S;
  S.base = pinv(P, tol).mat() * (inst.f + sigma_star * inst.g);
  S.V = null_basis(P, tol);
  S.sigma_star = sigma_star;
  return S;
}

SingletonAnalysis analyze_singleton(const Qp1qcInstance& inst, double sigma_star,
                                    const Tolerance& tol) {
  const AffineSolutionSet S = affine_solution_set(inst, sigma_star, tol);
  const VectorXd& base = S.base;
  const Basis& V = S.V;
  const MatrixXd& Vc = V.columns;

  SingletonAnalysis an;
  an.M = SymMatrix(Vc.transpose() * inst.B.mat() * Vc);
  an.c = Vc.transpose() * (inst.B.mat() * base - inst.g);
  an.mu_tilde = inst.mu - inst.constraint(base);

  const int r = V.dim();
  const double inf = std::numeric_limits<double>::infinity();
  if (r == 0) {
    an.Lstar = an.Ustar = 0.0;
    an.y_hat = VectorXd::Zero(0);
    an.y_tilde = VectorXd::Zero(0);
    return an;
  }
  const EigDecomp em = sym_eig(an.M);
  const double mcut = tol.cutoff(em.values.cwiseAbs().maxCoeff());
  const bool m_psd = em.values[0] >= -mcut;
  const bool m_nsd = em.values[r - 1] <= mcut;
  const bool c_in_range = range_contains(an.M, an.c, tol);
  const VectorXd stat = -pinv(an.M, tol).mat() * an.c;

  an.Lstar = (m_psd && c_in_range) ? an.c.dot(stat) : -inf;  // = -c^T M^+ c
  an.Ustar = (m_nsd && c_in_range) ? an.c.dot(stat) : +inf;
  an.y_hat = stat;

  // Direction of unbounded increase (used when Ustar = +inf): positive
  // curvature eigenvector, else a null direction where c has a component.
  if (em.values[r - 1] > mcut) {
    an.y_tilde = em.vectors.col(r - 1);
    if (an.c.dot(an.y_tilde) < 0) an.y_tilde = -an.y_tilde;
  } else {
    VectorXd cp = an.c;
    for (int i = 0; i < r; ++i)
      if (std::abs(em.values[i]) > mcut)
        cp -= em.vectors.col(i).dot(an.c) * em.vectors.col(i);
    an.y_tilde = cp.norm() > 0 ? VectorXd(cp.normalized()) : VectorXd::Zero(r);
  }
  return an;
}

namespace {

// Root of a alpha^2 + b alpha = target with the requested sign preference.
std::optional<double> quad_reach(double a, double b, double target) {
  const auto roots = quad_roots(a, b, -target);
  if (!roots) return std::nullopt;
  // prefer the smaller magnitude root
  const double r1 = roots->first, r2 = roots->second;
  if (!std::isfinite(r1)) return r2;
  if (!std::isfinite(r2)) return r1;
  return std::abs(r1) <= std::abs(r2) ? r1 : r2;
}

}  // namespace

Solution solve_singleton_case(const Qp1qcInstance& inst, double sigma_star,
                              const Tolerance& tol) {
  if (sigma_star < -band(sigma_star, tol))
    throw PreconditionViolated("solve_singleton_case: sigma* must be >= 0");
  sigma_star = std::max(0.0, sigma_star);

  const SymMatrix P = pencil_at(inst.A, inst.B, sigma_star);
  const VectorXd rhs = inst.f + sigma_star * inst.g;
  if (!range_contains(P, rhs, tol))
    throw PreconditionViolated("solve_singleton_case: system unsolvable at sigma*");

  const AffineSolutionSet S = affine_solution_set(inst, sigma_star, tol);
  const VectorXd& base = S.base;
  const Basis& V = S.V;
  SingletonAnalysis an = analyze_singleton(inst, sigma_star, tol);
  const double mt = an.mu_tilde;
  const double eq_band = tol.rel * std::max({1.0, std::abs(mt), std::abs(inst.mu)});
  const bool sigma_pos = sigma_star > band(sigma_star, tol);

  Solution sol;
  sol.sigma_star = sigma_star;

  auto attained = [&](const VectorXd& y, const char* label) {
    sol.status = Solution::Status::Attained;
    sol.case_label = label;
    sol.x_star = base + V.columns * y;
    sol.value = inst.objective(sol.x_star);
    sol.cert = kkt_verify(inst, sol.x_star, sigma_star, tol);
    return sol;
  };
  auto unattained = [&](const char* label) {
    sol.status = Solution::Status::Unattained;
    sol.case_label = label;
    sol.infimum = dual_value(inst, sigma_star, tol).value;
    return sol;
  };

  const double a_t = an.y_tilde.size() ? an.y_tilde.dot(an.M.mat() * an.y_tilde) : 0.0;

  if (!sigma_pos) {
    // Case (g): the constraint on S is an inequality q(y) <= mu_tilde.
    if (std::isfinite(an.Lstar)) {
      if (mt >= an.Lstar - eq_band) return attained(an.y_hat, "g1");
      return unattained("g");
    }
    // Lstar = -inf: q decreases without bound along y_tilde or a negative
    // curvature eigenvector; doubling search for the first feasible k.
    const EigDecomp em = sym_eig(an.M);
    VectorXd dir;
    if (em.values.size() && em.values[0] < -tol.cutoff(em.values.cwiseAbs().maxCoeff())) {
      dir = em.vectors.col(0);
      if (an.c.dot(dir) > 0) dir = -dir;
    } else {
      dir = -an.y_tilde;  // c-component null direction with c^T dir < 0
    }
    for (double k = 1.0; k <= std::pow(2.0, 60); k *= 2.0) {
      const VectorXd y = k * dir;
      if (y.dot(an.M.mat() * y) + 2.0 * an.c.dot(y) <= mt) return attained(y, "g2");
    }
    throw InternalInconsistency("singleton case (g2): doubling search exhausted");
  }

  // Case (h): the constraint on S must hold with equality q(y) = mu_tilde.
  const bool l_fin = std::isfinite(an.Lstar), u_fin = std::isfinite(an.Ustar);
  if (l_fin && u_fin) {
    if (std::abs(mt) <= eq_band && std::abs(an.Lstar) <= eq_band)
      return attained(VectorXd::Zero(V.dim()), "h1");
    if (mt >= an.Lstar - eq_band && mt <= an.Ustar + eq_band)
      return attained(an.y_hat, "h1");
    return unattained("h");
  }
  if (l_fin) {  // (h2) convex reach from y_hat along y_tilde
    if (mt < an.Lstar - eq_band) return unattained("h");
    const double bq = 2.0 * (an.M.mat() * an.y_hat + an.c).dot(an.y_tilde);
    const auto al = quad_reach(a_t, bq, mt - an.Lstar);
    if (!al) throw InternalInconsistency("singleton case (h2): no root");
    return attained(an.y_hat + *al * an.y_tilde, "h2");
  }
  if (u_fin) {  // (h3) mirror of (h2)
    if (mt > an.Ustar + eq_band) return unattained("h");
    const EigDecomp em = sym_eig(an.M);
    VectorXd yt;  // decrease direction: negative curvature or c-null component
    if (em.values[0] < -tol.cutoff(em.values.cwiseAbs().maxCoeff())) {
      yt = em.vectors.col(0);
      if (an.c.dot(yt) > 0) yt = -yt;
    } else {
      yt = -an.y_tilde;
    }
    const double a2 = yt.dot(an.M.mat() * yt);
    const double bq = 2.0 * (an.M.mat() * an.y_hat + an.c).dot(yt);
    const auto al = quad_reach(a2, bq, mt - an.Ustar);
    if (!al) throw InternalInconsistency("singleton case (h3): no root");
    return attained(an.y_hat + *al * yt, "h3");
  }
  // (h4): both infinite; the ranges of the two one-parameter quadratics
  // cover all of R.
  if (std::abs(mt) <= eq_band) return attained(VectorXd::Zero(V.dim()), "h4");
  const EigDecomp em = sym_eig(an.M);
  const double mcut = tol.cutoff(em.values.cwiseAbs().maxCoeff());
  if (mt > 0) {
    const double a2 = a_t;
    const double bq = 2.0 * an.c.dot(an.y_tilde);
    const auto al = quad_reach(a2, bq, mt);
    if (!al) throw InternalInconsistency("singleton case (h4+): no root");
    return attained(*al * an.y_tilde, "h4");
  }
  VectorXd yd;
  if (em.values[0] < -mcut) {
    yd = em.vectors.col(0);
    if (an.c.dot(yd) > 0) yd = -yd;
  } else {
    yd = -an.y_tilde;
  }
  const double a2 = yd.dot(an.M.mat() * yd);
  const double bq = 2.0 * an.c.dot(yd);
  const auto al = quad_reach(a2, bq, mt);
  if (!al) throw InternalInconsistency("singleton case (h4-): no root");
  return attained(*al * yd, "h4");
}

namespace {

// Searches for a straight-line unboundedness witness. Classification is
// certain when the boundedness system has no solution; the ray itself is a
// constructive extra and may fail to exist (curved escapes only), in which
// case the returned ray is unverified.
Ray find_unbounded_ray(const Qp1qcInstance& inst, const PencilInterval& iv,
                       const Tolerance& tol, std::uint64_t seed) {
  const int n = inst.dim();
  const MatrixXd &Am = inst.A.mat(), &Bm = inst.B.mat();
  VectorXd x0;
  try {
    x0 = slater_point(inst, tol);
  } catch (const std::exception&) {
    x0 = VectorXd::Zero(n);
  }
  const double cG0 = inst.constraint(x0) - inst.mu;

  const double eA = 1e-9 * std::max(1.0, inst.A.norm_fro());
  const double eB = 1e-9 * std::max(1.0, inst.B.norm_fro());

  auto try_dir = [&](VectorXd d) -> std::optional<Ray> {
    if (d.norm() < 1e-12) return std::nullopt;
    d.normalize();
    for (int sflip = 0; sflip < 2; ++sflip, d = -d) {
      const double a = d.dot(Bm * d), e = d.dot(Am * d);
      const double bG = 2.0 * (Bm * x0 - inst.g).dot(d);
      const double bF = 2.0 * (Am * x0 - inst.f).dot(d);
      double t_feas;
      if (a < -eB) {
        const auto roots = quad_roots(a, bG, cG0);
        t_feas = roots ? std::max(0.0, roots->second) : 0.0;
      } else if (std::abs(a) <= eB && bG <= std::abs(cG0) * 5e-10) {
        t_feas = 0.0;
      } else {
        continue;
      }
      double t_obj;
      if (e < -eA)
        t_obj = std::max(0.0, -bF / (2.0 * e));
      else if (std::abs(e) <= eA && bF < -1e-9)
        t_obj = 0.0;
      else
        continue;

      // Scale the direction so divergence is visible within the sampled range.
      double k = 1.0;
      if (e < -eA)
        k = std::max(1.0, std::sqrt(1e7 / (std::abs(e) * 1e16)));
      else
        k = std::max(1.0, 1e7 / (std::abs(bF) * 1e8));
      Ray ray;
      ray.dir = k * d;
      ray.base = x0 + (std::max(t_feas, t_obj) + 1.0) * d;
      if (ray_diverges(inst, ray.base, ray.dir, 8)) {
        ray.verified = true;
        return ray;
      }
    }
    return std::nullopt;
  };

  std::vector<VectorXd> cands;
  // Rays inside the joint null space: quadratic parts vanish, only the
  // linear terms matter.
  const ReducedPencil rp = reduce_pencil(inst.A, inst.B, tol);
  if (rp.V.dim() > 0) {
    const VectorXd p = rp.V.columns.transpose() * inst.f;
    const VectorXd q = rp.V.columns.transpose() * inst.g;
    if (p.norm() > 0) cands.push_back(rp.V.columns * p.normalized());
    if (q.norm() > 0) {
      const VectorXd qn = q.normalized();
      cands.push_back(rp.V.columns * qn);
      VectorXd pperp = p - p.dot(qn) * qn;
      if (pperp.norm() > 0) cands.push_back(rp.V.columns * pperp.normalized());
    }
  }
  // Negative-curvature eigenvectors of A + sigma B over a sigma grid.
  std::vector<double> sgrid{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  if (iv.is_singleton() && iv.sigma >= 0) sgrid.push_back(iv.sigma);
  if (iv.is_interval()) {
    if (std::isfinite(iv.lo)) sgrid.push_back(std::max(0.0, iv.lo));
    if (std::isfinite(iv.hi)) sgrid.push_back(std::max(0.0, iv.hi));
  }
  std::vector<VectorXd> eig_dirs;
  for (double s : sgrid) {
    const EigDecomp e = sym_eig(pencil_at(inst.A, inst.B, s));
    for (int i = 0; i < n && e.values[i] < -1e-10; ++i) {
      eig_dirs.push_back(e.vectors.col(i));
      cands.push_back(e.vectors.col(i));
    }
  }
  for (const VectorXd& d : cands)
    if (auto r = try_dir(d)) return *r;

  // Two-plane combinations of the leading eigen-directions.
  const size_t npair = std::min<size_t>(eig_dirs.size(), 6);
  for (size_t i = 0; i < npair; ++i)
    for (size_t j = i + 1; j < npair; ++j)
      for (int k = 1; k < 16; ++k) {
        const double th = M_PI * k / 16.0;
        if (auto r = try_dir(std::cos(th) * eig_dirs[i] + std::sin(th) * eig_dirs[j]))
          return *r;
      }

  // Deterministic random probes.
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int it = 0; it < 128; ++it) {
    VectorXd d(n);
    for (int i = 0; i < n; ++i) d[i] = rng.normal();
    if (auto r = try_dir(d)) return *r;
  }

  Ray ray;  // honest fallback: classification stands, witness unverified
  ray.base = x0;
  ray.dir = VectorXd::Zero(n);
  ray.verified = false;
  return ray;
}

}  // namespace

Solution classify_and_solve(const Qp1qcInstance& inst, const Tolerance& tol,
                            std::uint64_t seed) {
  if (!slater_holds(inst, tol)) return solve_no_slater(inst, tol);

  const PencilInterval iv = pencil_interval(inst.A, inst.B, tol);
  const FeasibilityResult feas = feasibility_system(inst, iv, tol);
  if (!feas.solvable) {
    Solution sol;
    sol.status = Solution::Status::UnboundedBelow;
    sol.case_label = feas.case_label;
    sol.ray = find_unbounded_ray(inst, iv, tol, seed);
    return sol;
  }
  if (iv.is_interval()) return solve_interval_case(inst, iv, feas, tol);
  return solve_singleton_case(inst, feas.sigma, tol);
}

}  // namespace qp1qc
