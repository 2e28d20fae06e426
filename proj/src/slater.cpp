#include "qp1qc/slater.hpp"

#include <cmath>

#include "qp1qc/linalg.hpp"
#include "qp1qc/solver.hpp"

namespace qp1qc {

namespace {

// Equality band for the boundary case -g^T B^+ g = mu; inside the band the
// feasible set is treated as the affine set {Bx = g}.
double mu_band(double mu, const Tolerance& tol) {
  return tol.rel * std::max(1.0, std::abs(mu));
}

}  // namespace

bool slater_holds(const Qp1qcInstance& inst, const Tolerance& tol) {
  const double band = mu_band(inst.mu, tol);
  if (inst.mu > band) return true;  // x = 0 is strictly feasible
  if (!is_psd(inst.B, tol)) return true;
  if (!range_contains(inst.B, inst.g, tol)) return true;
  const VectorXd xc = pinv(inst.B, tol).mat() * inst.g;
  const double gmin = -inst.g.dot(xc);  // min of G
  return gmin < inst.mu - band;
}

VectorXd slater_point(const Qp1qcInstance& inst, const Tolerance& tol) {
  const int n = inst.dim();
  const double band = mu_band(inst.mu, tol);
  if (inst.mu > band) return VectorXd::Zero(n);
  if (!is_psd(inst.B, tol)) {
    const EigDecomp e = sym_eig(inst.B);
    VectorXd w = e.vectors.col(0);  // most negative curvature of G
    for (double t = 1.0; t <= 1e12; t *= 2.0) {
      if (inst.constraint(t * w) < inst.mu - band) return t * w;
      if (inst.constraint(-t * w) < inst.mu - band) return -t * w;
    }
    throw InternalInconsistency("slater_point: indefinite B but no interior point found");
  }
  if (!range_contains(inst.B, inst.g, tol)) {
    const Basis nb = null_basis(inst.B, tol);
    VectorXd d = nb.columns * (nb.columns.transpose() * inst.g);
    d.normalize();  // G(t d) = -2 t g^T d, strictly decreasing one way
    for (double t = 1.0; t <= 1e12; t *= 2.0) {
      if (inst.constraint(t * d) < inst.mu - band) return t * d;
      if (inst.constraint(-t * d) < inst.mu - band) return -t * d;
    }
    throw InternalInconsistency("slater_point: unbounded G direction failed");
  }
  const VectorXd xc = pinv(inst.B, tol).mat() * inst.g;
  if (inst.constraint(xc) < inst.mu - band) return xc;
  throw PreconditionViolated("slater_point: instance has no strictly feasible point");
}

SlaterReduction slater_reduction(const Qp1qcInstance& inst, const Tolerance& tol) {
  SlaterReduction red;
  red.Vb = null_basis(inst.B, tol);
  const VectorXd xbar = pinv(inst.B, tol).mat() * inst.g;
  const MatrixXd& V = red.Vb.columns;
  const EigDecomp e = sym_eig(SymMatrix(V.transpose() * inst.A.mat() * V));
  red.Qh = e.vectors;
  red.Dh = e.values;
  red.Lam = e.vectors.transpose() * (V.transpose() * (inst.A.mat() * xbar - inst.f));
  red.alpha = xbar.dot(inst.A.mat() * xbar) - 2.0 * inst.f.dot(xbar);
  for (int i = 0; i < red.Dh.size(); ++i)
    if (red.Dh[i] > tol.cutoff(red.Dh.cwiseAbs().maxCoeff())) red.J.push_back(i);
  return red;
}

Solution solve_no_slater(const Qp1qcInstance& inst, const Tolerance& tol) {
  if (slater_holds(inst, tol))
    throw PreconditionViolated("solve_no_slater: a Slater point exists");

  Solution sol;
  sol.case_label = "no_slater";
  const double band = mu_band(inst.mu, tol);
  const VectorXd xbar = pinv(inst.B, tol).mat() * inst.g;
  const double gmin = -inst.g.dot(xbar);
  if (gmin > inst.mu + band) {
    sol.status = Solution::Status::Infeasible;
    return sol;
  }

  // Feasible set reduced to {x : Bx = g}; diagonalize the restriction of F.
  const SlaterReduction red = slater_reduction(inst, tol);
  const int k = red.Dh.size();
  const double dscale = k > 0 ? red.Dh.cwiseAbs().maxCoeff() : 0.0;
  const double dcut = tol.cutoff(dscale);
  const double lcut = k > 0 ? tol.cutoff(red.Lam.cwiseAbs().maxCoeff()) : 0.0;

  for (int i = 0; i < k; ++i) {
    const bool neg = red.Dh[i] < -dcut;
    const bool flat_tilted = std::abs(red.Dh[i]) <= dcut && std::abs(red.Lam[i]) > lcut;
    if (neg || flat_tilted) {
      VectorXd dir = red.Vb.columns * red.Qh.col(i);
      if (red.Lam[i] > 0) dir = -dir;  // make the linear term decrease too
      sol.status = Solution::Status::UnboundedBelow;
      sol.ray.base = xbar;
      sol.ray.dir = dir;
      sol.ray.verified = true;  // B dir = 0, so the ray stays on {Bx = g}
      return sol;
    }
  }

  VectorXd z = VectorXd::Zero(k);
  double value = red.alpha;
  for (int i : red.J) {
    z[i] = -red.Lam[i] / red.Dh[i];
    value -= red.Lam[i] * red.Lam[i] / red.Dh[i];
  }
  sol.status = Solution::Status::Attained;
  sol.x_star = xbar + red.Vb.columns * (red.Qh * z);
  sol.value = value;
  sol.sigma_star = 0.0;
  sol.cert = kkt_verify(inst, sol.x_star, 0.0, tol);
  return sol;
}

}  // namespace qp1qc
