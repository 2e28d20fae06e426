#include "qp1qc/pencil.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>

#include "qp1qc/linalg.hpp"

namespace qp1qc {

namespace {

constexpr double kRootClusterTol = 1e-7;
constexpr double kSigmaCap = 1e13;

double lam_min_at(const SymMatrix& M, const SymMatrix& N, double sigma) {
  return min_eig(pencil_at(M, N, sigma));
}

// Golden-section maximization of a concave function on [a, b].
std::pair<double, double> golden_max(const std::function<double(double)>& phi,
                                     double a, double b, int iters = 200) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = phi(x1), f2 = phi(x2);
  for (int i = 0; i < iters && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = phi(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = phi(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, phi(xm)};
}

// lambda_min(M + sigma N) is concave in sigma (infimum of linear functions),
// so its maximizer is found by bracket expansion plus golden section.
std::pair<double, double> maximize_lam_min(const SymMatrix& M, const SymMatrix& N,
                                           double center, double width) {
  auto phi = [&](double s) { return lam_min_at(M, N, s); };
  double a = center - std::max(1.0, width), b = center + std::max(1.0, width);
  for (int i = 0; i < 50 && b < kSigmaCap; ++i) {
    const double h = 0.01 * (b - a);
    if (phi(b) >= phi(b - h))
      b += (b - a);
    else
      break;
  }
  for (int i = 0; i < 50 && a > -kSigmaCap; ++i) {
    const double h = 0.01 * (b - a);
    if (phi(a) >= phi(a + h))
      a -= (b - a);
    else
      break;
  }
  return golden_max(phi, a, b);
}

// Polishes the location of a singleton. The golden-section maximizer of
// lambda_min is only sqrt(eps)-accurate where the touch is quadratic, and
// drifts into the flat side when a linear (kink) mode is also present.
// Newton steps on the eigenvalue closest to zero with a nonvanishing
// derivative v^T N v nail kink modes to ~1e-14; a parabola-vertex fit then
// handles purely quadratic touches (and is rejected if it does not improve).
double polish_touch(const SymMatrix& M, const SymMatrix& N, double s_hat) {
  const double nscale = std::max(1.0, N.norm_fro());
  for (int it = 0; it < 4; ++it) {
    const EigDecomp e = sym_eig(pencil_at(M, N, s_hat));
    const double scale =
        e.values.size() ? std::max(1.0, e.values.cwiseAbs().maxCoeff()) : 1.0;
    int pick = -1;
    double pick_slope = 0.0;
    for (int i = 0; i < e.values.size(); ++i) {
      if (std::abs(e.values[i]) > 1e-3 * scale) continue;  // not a touching mode
      const VectorXd v = e.vectors.col(i);
      const double slope = v.dot(N.mat() * v);
      if (std::abs(slope) <= 1e-6 * nscale) continue;  // quadratic mode
      // nearest root: stray eigencurves vanishing elsewhere sit further away
      if (pick < 0 || std::abs(e.values[i] / slope) < std::abs(e.values[pick] / pick_slope)) {
        pick = i;
        pick_slope = slope;
      }
    }
    if (pick < 0) break;
    const double delta = -e.values[pick] / pick_slope;
    s_hat += delta;
    if (std::abs(delta) <= 1e-15 * (1.0 + std::abs(s_hat))) break;
  }

  double best = s_hat;
  double best_v = lam_min_at(M, N, s_hat);
  for (double h : {1e-3 * (1.0 + std::abs(best)), 1e-5 * (1.0 + std::abs(best))}) {
    const double vl = lam_min_at(M, N, best - h);
    const double vr = lam_min_at(M, N, best + h);
    const double denom = vl - 2.0 * best_v + vr;
    if (denom >= 0.0) continue;  // not locally concave-quadratic
    const double vertex = best + 0.5 * h * (vl - vr) / denom;
    const double vv = lam_min_at(M, N, vertex);
    if (vv >= best_v) {
      best = vertex;
      best_v = vv;
    }
  }
  return best;
}

// Boundary of the PSD set between a point inside and a point outside.
double bisect_psd_boundary(const SymMatrix& M, const SymMatrix& N, double s_in,
                           double s_out, const Tolerance& tol) {
  for (int i = 0; i < 200; ++i) {
    if (std::abs(s_out - s_in) <= 1e-14 * (1.0 + std::abs(s_in) + std::abs(s_out))) break;
    const double mid = 0.5 * (s_in + s_out);
    if (is_psd(pencil_at(M, N, mid), tol))
      s_in = mid;
    else
      s_out = mid;
  }
  return s_in;
}

// Walks outward from a PSD edge candidate until the pencil stops being PSD;
// returns nullopt when it stays PSD out to the cap (an infinite end).
std::optional<double> probe_outside(const SymMatrix& M, const SymMatrix& N,
                                    double edge, double direction, double span,
                                    const Tolerance& tol) {
  double step = std::max(1.0, span);
  for (int i = 0; i < 60; ++i) {
    const double s = edge + direction * step;
    if (!is_psd(pencil_at(M, N, s), tol)) return s;
    if (std::abs(s) > kSigmaCap) return std::nullopt;
    step *= 4.0;
  }
  return std::nullopt;
}

}  // namespace

ReducedPencil reduce_pencil(const SymMatrix& A, const SymMatrix& B, const Tolerance& tol) {
  auto [V, U] = joint_null_split(A, B, tol);
  ReducedPencil rp;
  rp.V = V;
  rp.U = U;
  rp.Ar = SymMatrix(U.columns.transpose() * A.mat() * U.columns);
  rp.Br = SymMatrix(U.columns.transpose() * B.mat() * U.columns);
  return rp;
}

DetPolyRoots det_poly_roots(const SymMatrix& M, const SymMatrix& N, const Tolerance& tol) {
  const int m = M.dim();
  if (N.dim() != m) throw PreconditionViolated("det_poly_roots: dimension mismatch");
  DetPolyRoots out;
  if (m == 0) return out;  // det of the empty matrix is 1

  // Pre-scale so determinant values stay in range; roots are invariant.
  const double theta = std::max({1.0, M.norm_fro(), N.norm_fro()});
  const MatrixXd Ms = M.mat() / theta, Ns = N.mat() / theta;

  // Unit-spaced integer nodes centered at zero, m+1 of them.
  VectorXd nodes(m + 1), dets(m + 1);
  for (int j = 0; j <= m; ++j) {
    nodes[j] = j - 0.5 * m;
    dets[j] = (Ms + nodes[j] * Ns).partialPivLu().determinant();
  }
  const double dmax = dets.cwiseAbs().maxCoeff();
  if (!(dmax > 0.0) || !std::isfinite(dmax)) {
    out.all_sigma = std::isfinite(dmax);
    return out;
  }

  // Monomial coefficients from the Vandermonde system.
  MatrixXd VdM(m + 1, m + 1);
  for (int j = 0; j <= m; ++j) {
    double p = 1.0;
    for (int k = 0; k <= m; ++k) {
      VdM(j, k) = p;
      p *= nodes[j];
    }
  }
  VectorXd coef = VdM.colPivHouseholderQr().solve(dets / dmax);
  const double cmax = coef.cwiseAbs().maxCoeff();
  if (cmax <= 1e-10) {
    out.all_sigma = true;
    return out;
  }

  int deg = m;
  while (deg > 0 && std::abs(coef[deg]) <= 1e-10 * cmax) --deg;
  if (deg == 0) return out;

  // Variable scaling sigma = s*tau to balance the companion matrix.
  double s = 1.0;
  if (std::abs(coef[0]) > 0.0)
    s = std::clamp(std::pow(std::abs(coef[0] / coef[deg]), 1.0 / deg), 1e-6, 1e6);
  VectorXd b(deg + 1);
  double sp = 1.0;
  for (int k = 0; k <= deg; ++k) {
    b[k] = coef[k] * sp;
    sp *= s;
  }
  b /= b[deg];

  MatrixXd comp = MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -b[i];
  Eigen::EigenSolver<MatrixXd> ev(comp);
  if (ev.info() != Eigen::Success)
    throw NonConvergence("det_poly_roots: companion eigensolver failed");

  // Double roots at interval endpoints are generic; they perturb O(sqrt(eps))
  // off the real axis, so the keep-as-real threshold cannot be tighter.
  const double imag_rel = std::max(tol.rel, 3e-8);
  std::vector<double> roots;
  for (int i = 0; i < deg; ++i) {
    const std::complex<double> z = ev.eigenvalues()[i] * s;
    if (std::abs(z.imag()) <= imag_rel * (1.0 + std::abs(z.real())))
      roots.push_back(z.real());
  }
  std::sort(roots.begin(), roots.end());
  for (double r : roots) {
    if (out.roots.empty() ||
        r - out.roots.back() > kRootClusterTol * (1.0 + std::abs(r)))
      out.roots.push_back(r);
  }
  return out;
}

namespace {

struct Scan {
  std::vector<double> cands;
  std::vector<bool> psd;
  std::vector<double> lam;  // lambda_min at each candidate
  std::vector<double> cut;  // is_psd cutoff at each candidate
  int first = -1, last = -1;  // contiguous PSD block, -1 when none
};

Scan scan_candidates(const SymMatrix& Ar, const SymMatrix& Br,
                     std::vector<double> cands, const Tolerance& tol) {
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end(),
                          [](double a, double b) {
                            return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a));
                          }),
              cands.end());
  Scan sc;
  sc.cands = cands;
  sc.psd.resize(cands.size());
  sc.lam.resize(cands.size());
  sc.cut.resize(cands.size());
  for (size_t i = 0; i < cands.size(); ++i) {
    const EigDecomp e = sym_eig(pencil_at(Ar, Br, cands[i]));
    sc.lam[i] = e.values.size() ? e.values[0] : 0.0;
    sc.cut[i] = tol.cutoff(e.values.size() ? e.values.cwiseAbs().maxCoeff() : 0.0);
    sc.psd[i] = sc.lam[i] >= -sc.cut[i];
  }
  for (size_t i = 0; i < cands.size(); ++i) {
    if (!sc.psd[i]) continue;
    if (sc.first < 0) sc.first = static_cast<int>(i);
    if (sc.first >= 0 && static_cast<int>(i) > sc.last + 1 && sc.last >= sc.first)
      throw InternalInconsistency(
          "pencil_interval: PSD candidates are not contiguous");
    sc.last = static_cast<int>(i);
  }
  return sc;
}

}  // namespace

PencilInterval pencil_interval(const SymMatrix& A, const SymMatrix& B, const Tolerance& tol) {
  if (A.dim() != B.dim()) throw PreconditionViolated("pencil_interval: dimension mismatch");
  const ReducedPencil rp = reduce_pencil(A, B, tol);
  const SymMatrix &Ar = rp.Ar, &Br = rp.Br;
  const int m = rp.U.dim();
  const double inf = std::numeric_limits<double>::infinity();

  if (m == 0) return PencilInterval::Interval(-inf, inf);  // A = B = 0
  const double scale = std::max(Ar.norm_fro(), Br.norm_fro());
  if (Br.norm_fro() <= tol.cutoff(scale)) {
    return is_psd(Ar, tol) ? PencilInterval::Interval(-inf, inf)
                           : PencilInterval::Empty();
  }

  const DetPolyRoots D = det_poly_roots(Ar, Br, tol);
  std::vector<double> cands{0.0};
  if (!D.all_sigma && !D.roots.empty()) {
    for (double r : D.roots) cands.push_back(r);
    for (size_t i = 0; i + 1 < D.roots.size(); ++i)
      cands.push_back(0.5 * (D.roots[i] + D.roots[i + 1]));
    cands.push_back(D.roots.front() - 1.0);
    cands.push_back(D.roots.back() + 1.0);
  } else {
    for (double p : {1.0, 4.0, 16.0, 64.0, 256.0, 1024.0}) {
      cands.push_back(p);
      cands.push_back(-p);
    }
  }
  Scan sc = scan_candidates(Ar, Br, cands, tol);

  if (sc.first < 0) {
    // No candidate hit the PSD set. A thin or mislocated interval (or a
    // singleton whose root estimate drifted) is still found at the maximizer
    // of the concave map sigma -> lambda_min(Ar + sigma Br).
    const double span = sc.cands.back() - sc.cands.front();
    auto [s_hat, v_hat] = maximize_lam_min(Ar, Br, 0.5 * (sc.cands.front() + sc.cands.back()),
                                           span + 1.0);
    const double cut = tol.cutoff(pencil_at(Ar, Br, s_hat).norm_fro());
    if (v_hat < -cut) return PencilInterval::Empty();
    if (v_hat <= cut) return PencilInterval::Singleton(polish_touch(Ar, Br, s_hat));
    sc = scan_candidates(Ar, Br, {s_hat - 1.0, s_hat, s_hat + 1.0, 0.0}, tol);
    if (sc.first < 0)
      throw InternalInconsistency("pencil_interval: lost PSD point after rescue");
  }

  // Singleton versus interval. At a singleton lambda_min only touches zero
  // (the PSD indicator is then a tolerance band of width ~sqrt(tol), which
  // can hold several candidates); in the interior of a true interval the
  // reduced pencil is positive definite. The concave maximum of lambda_min
  // separates the two cases robustly.
  bool clearly_definite = false;
  for (int i = sc.first; i <= sc.last; ++i)
    if (sc.lam[i] > 10.0 * sc.cut[i]) clearly_definite = true;
  if (!clearly_definite) {
    const double block_lo = sc.cands[sc.first], block_hi = sc.cands[sc.last];
    const double left_gap = sc.first > 0 ? block_lo - sc.cands[sc.first - 1] : 1.0;
    const double right_gap = sc.last + 1 < static_cast<int>(sc.cands.size())
                                 ? sc.cands[sc.last + 1] - block_hi
                                 : 1.0;
    auto [s_hat, v_hat] =
        maximize_lam_min(Ar, Br, 0.5 * (block_lo + block_hi),
                         0.5 * (block_hi - block_lo) + std::max(left_gap, right_gap));
    const double cut = tol.cutoff(pencil_at(Ar, Br, s_hat).norm_fro());
    if (v_hat < -cut)
      throw InternalInconsistency("pencil_interval: PSD block vanished under polish");
    if (v_hat <= cut) return PencilInterval::Singleton(polish_touch(Ar, Br, s_hat));
    sc = scan_candidates(Ar, Br, {s_hat, block_lo - left_gap, block_hi + right_gap}, tol);
    if (sc.first < 0)
      throw InternalInconsistency("pencil_interval: lost PSD point after polish");
  }

  double lo, hi;
  if (is_psd(SymMatrix(-Br.mat()), tol)) {
    lo = -inf;
  } else {
    const double edge = sc.cands[sc.first];
    std::optional<double> outside;
    if (sc.first > 0)
      outside = sc.cands[sc.first - 1];
    else
      outside = probe_outside(Ar, Br, edge, -1.0,
                              sc.cands.back() - sc.cands.front(), tol);
    lo = outside ? bisect_psd_boundary(Ar, Br, edge, *outside, tol) : -inf;
  }
  if (is_psd(Br, tol)) {
    hi = inf;
  } else {
    const double edge = sc.cands[sc.last];
    std::optional<double> outside;
    if (sc.last + 1 < static_cast<int>(sc.cands.size()))
      outside = sc.cands[sc.last + 1];
    else
      outside = probe_outside(Ar, Br, edge, +1.0,
                              sc.cands.back() - sc.cands.front(), tol);
    hi = outside ? bisect_psd_boundary(Ar, Br, edge, *outside, tol) : inf;
  }
  if (std::isfinite(lo) && std::isfinite(hi) &&
      hi - lo <= 1e-9 * (1.0 + std::abs(lo) + std::abs(hi)))
    return PencilInterval::Singleton(0.5 * (lo + hi));
  return PencilInterval::Interval(lo, hi);
}

std::optional<double> interior_point(const PencilInterval& iv) {
  if (!iv.is_interval()) return std::nullopt;
  const bool lo_inf = std::isinf(iv.lo), hi_inf = std::isinf(iv.hi);
  if (lo_inf && hi_inf) return 0.0;
  if (lo_inf) return iv.hi - 1.0;
  if (hi_inf) return iv.lo + 1.0;
  return 0.5 * (iv.lo + iv.hi);
}

namespace {

// Within an Interval pencil, the best-conditioned combination is the one
// maximizing lambda_min; clip infinite ends before searching.
double best_interior_sigma(const SymMatrix& Ar, const SymMatrix& Br,
                           const PencilInterval& iv) {
  double lo = iv.lo, hi = iv.hi;
  const double w = (std::isfinite(lo) && std::isfinite(hi)) ? hi - lo : 1.0;
  if (std::isinf(lo)) lo = (std::isfinite(hi) ? hi : 0.0) - std::max(1.0, 10.0 * w);
  if (std::isinf(hi)) hi = (std::isfinite(iv.lo) ? iv.lo : 0.0) + std::max(1.0, 10.0 * w);
  auto phi = [&](double s) { return lam_min_at(Ar, Br, s); };
  auto [s, v] = golden_max(phi, lo, hi);
  (void)v;
  return s;
}

struct Combo {
  double muA, sigB;  // W = muA * Ar + sigB * Br
};

std::optional<SdcResult> construct_sdc(const SymMatrix& A, const SymMatrix& B,
                                       const ReducedPencil& rp, const Combo& cb,
                                       const Tolerance& tol) {
  const SymMatrix W(cb.muA * rp.Ar.mat() + cb.sigB * rp.Br.mat());
  const EigDecomp ew = sym_eig(W);
  if (ew.values.size() == 0 || ew.values[0] <= tol.cutoff(ew.values.cwiseAbs().maxCoeff()))
    return std::nullopt;  // not safely positive definite
  const MatrixXd P =
      ew.vectors * ew.values.cwiseSqrt().cwiseInverse().asDiagonal() * ew.vectors.transpose();
  // Diagonalize the reduced matrix with the smaller combination weight; the
  // other becomes diagonal through W = muA*Ar + sigB*Br.
  const bool diag_b = std::abs(cb.muA) >= std::abs(cb.sigB);
  const SymMatrix T(P * (diag_b ? rp.Br.mat() : rp.Ar.mat()) * P);
  const EigDecomp et = sym_eig(T);

  const int n = A.dim(), r = rp.V.dim();
  MatrixXd C(n, n);
  C.leftCols(n - r) = rp.U.columns * P * et.vectors;
  if (r > 0) C.rightCols(r) = rp.V.columns;

  const MatrixXd CtAC = C.transpose() * A.mat() * C;
  const MatrixXd CtBC = C.transpose() * B.mat() * C;
  const double scale = std::max({1.0, A.norm_fro(), B.norm_fro()});
  const double resid =
      std::max((CtAC - MatrixXd(CtAC.diagonal().asDiagonal())).norm(),
               (CtBC - MatrixXd(CtBC.diagonal().asDiagonal())).norm());
  if (resid > 1e-7 * scale) return std::nullopt;

  SdcResult res;
  res.status = SdcResult::Status::Sdc;
  res.C = C;
  res.dA = CtAC.diagonal();
  res.dB = CtBC.diagonal();
  Eigen::JacobiSVD<MatrixXd> svd(C);
  res.cond_C = svd.singularValues()[0] / svd.singularValues().tail(1)[0];
  return res;
}

SdcResult verified_result(const SymMatrix& A, const SymMatrix& B, const MatrixXd& C) {
  const MatrixXd CtAC = C.transpose() * A.mat() * C;
  const MatrixXd CtBC = C.transpose() * B.mat() * C;
  SdcResult res;
  res.status = SdcResult::Status::Sdc;
  res.C = C;
  res.dA = CtAC.diagonal();
  res.dB = CtBC.diagonal();
  Eigen::JacobiSVD<MatrixXd> svd(C);
  res.cond_C = svd.singularValues()[0] / svd.singularValues().tail(1)[0];
  return res;
}

// Closed-form treatment of a reduced 2x2 pair with trivial joint null space.
// With B nonsingular the pair is SDC iff B^{-1}A is diagonalizable with real
// spectrum: discriminant positive, or zero with A proportional to B.
SdcResult sdc_two_by_two(const SymMatrix& A, const SymMatrix& B,
                         const ReducedPencil& rp, const Tolerance& tol) {
  const MatrixXd &Ar = rp.Ar.mat(), &Br = rp.Br.mat();
  const double scale = std::max({1.0, rp.Ar.norm_fro(), rp.Br.norm_fro()});

  auto embed = [&](const MatrixXd& C2) {
    const int n = A.dim(), r = rp.V.dim();
    MatrixXd C(n, n);
    C.leftCols(2) = rp.U.columns * C2;
    if (r > 0) C.rightCols(r) = rp.V.columns;
    return verified_result(A, B, C);
  };

  // Proportional pairs diagonalize by the eigenvectors of either matrix.
  const double bb = Br.squaredNorm();
  if (bb > 0) {
    const double t = (Ar.cwiseProduct(Br)).sum() / bb;
    if ((Ar - t * Br).norm() <= 1e-9 * scale) return embed(sym_eig(rp.Br).vectors);
  }
  const double aa = Ar.squaredNorm();
  if (aa > 0) {
    const double t = (Ar.cwiseProduct(Br)).sum() / aa;
    if ((Br - t * Ar).norm() <= 1e-9 * scale) return embed(sym_eig(rp.Ar).vectors);
  }

  const double detA = Ar.determinant(), detB = Br.determinant();
  const bool b_nonsing = std::abs(detB) >= std::abs(detA);
  const MatrixXd& Mfull = b_nonsing ? Br : Ar;
  const MatrixXd& Mother = b_nonsing ? Ar : Br;
  const double det_pivot = b_nonsing ? detB : detA;
  if (std::abs(det_pivot) <= tol.cutoff(scale * scale)) {
    // Both singular: two independent rank-one forms, C = [u v]^{-T}.
    const EigDecomp ea = sym_eig(rp.Ar), eb = sym_eig(rp.Br);
    const int ia = std::abs(ea.values[0]) > std::abs(ea.values[1]) ? 0 : 1;
    const int ib = std::abs(eb.values[0]) > std::abs(eb.values[1]) ? 0 : 1;
    MatrixXd UV(2, 2);
    UV.col(0) = ea.vectors.col(ia);
    UV.col(1) = eb.vectors.col(ib);
    if (std::abs(UV.determinant()) <= 1e-9) {
      SdcResult res;  // dependent directions with no joint null: defective
      res.status = SdcResult::Status::NotSdc;
      return res;
    }
    return embed(UV.transpose().inverse());
  }

  const MatrixXd M2 = Mfull.inverse() * Mother;
  const double tr = M2.trace(), dt = M2.determinant();
  const double disc = tr * tr - 4.0 * dt;
  const double disc_cut = 1e-9 * (1.0 + tr * tr + std::abs(dt));
  if (disc > disc_cut) {
    // Real distinct generalized eigenvalues; eigenvectors are B-orthogonal.
    Eigen::EigenSolver<MatrixXd> ev(M2);
    MatrixXd C2(2, 2);
    C2.col(0) = ev.eigenvectors().col(0).real();
    C2.col(1) = ev.eigenvectors().col(1).real();
    return embed(C2);
  }
  SdcResult res;
  res.status = SdcResult::Status::NotSdc;
  return res;
}

}  // namespace

SdcResult sdc_certificate(const SymMatrix& A, const SymMatrix& B, const Tolerance& tol) {
  if (A.dim() != B.dim()) throw PreconditionViolated("sdc_certificate: dimension mismatch");
  const int n = A.dim();
  const double scale = std::max({1.0, A.norm_fro(), B.norm_fro()});

  // Already diagonal: the identity congruence is optimal.
  const MatrixXd offA = A.mat() - MatrixXd(A.mat().diagonal().asDiagonal());
  const MatrixXd offB = B.mat() - MatrixXd(B.mat().diagonal().asDiagonal());
  if (offA.norm() <= 1e-12 * scale && offB.norm() <= 1e-12 * scale)
    return verified_result(A, B, MatrixXd::Identity(n, n));

  const ReducedPencil rp = reduce_pencil(A, B, tol);
  const int m = rp.U.dim();

  // Degenerate joint-null dimensions: both forms vanish (m = 0) or act on a
  // single direction (m = 1); the orthonormal [U V] already diagonalizes.
  if (m <= 1) {
    MatrixXd C(n, n);
    if (m == 1) C.leftCols(1) = rp.U.columns;
    if (rp.V.dim() > 0) C.rightCols(rp.V.dim()) = rp.V.columns;
    return verified_result(A, B, C);
  }

  // (S1) the pencil of (A,B) is a nondegenerate interval.
  const PencilInterval ivAB = pencil_interval(A, B, tol);
  if (ivAB.is_interval()) {
    const double s = best_interior_sigma(rp.Ar, rp.Br, ivAB);
    if (auto res = construct_sdc(A, B, rp, Combo{1.0, s}, tol)) return *res;
  }
  // (S2) same with the roles of A and B swapped.
  const PencilInterval ivBA = pencil_interval(B, A, tol);
  if (ivBA.is_interval()) {
    const double s = best_interior_sigma(rp.Br, rp.Ar, ivBA);
    if (auto res = construct_sdc(A, B, rp, Combo{s, 1.0}, tol)) return *res;
  }
  // (S3) search the full circle of combinations for a definite one.
  {
    auto h = [&](double th) {
      return min_eig(SymMatrix(std::cos(th) * rp.Ar.mat() + std::sin(th) * rp.Br.mat()));
    };
    const int grid = 720;
    int best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
      const double v = h(2.0 * M_PI * i / grid);
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    const double lo = 2.0 * M_PI * (best - 1) / grid, hi = 2.0 * M_PI * (best + 1) / grid;
    auto [th, v] = golden_max(h, lo, hi, 120);
    if (v > tol.cutoff(scale)) {
      if (auto res = construct_sdc(A, B, rp, Combo{std::cos(th), std::sin(th)}, tol))
        return *res;
    }
  }

  if (m == 2) return sdc_two_by_two(A, B, rp, tol);

  SdcResult res;
  res.status = SdcResult::Status::Unknown;
  return res;
}

}  // namespace qp1qc
