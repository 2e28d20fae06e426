#include "qp1qc/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace qp1qc {

EigDecomp sym_eig(const SymMatrix& M) {
  if (M.dim() == 0) return EigDecomp{VectorXd(0), MatrixXd(0, 0)};
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(M.mat());
  if (es.info() != Eigen::Success)
    throw NonConvergence("sym_eig: eigensolver did not converge");
  return EigDecomp{es.eigenvalues(), es.eigenvectors()};
}

namespace {

double spectral_scale(const EigDecomp& e) {
  if (e.values.size() == 0) return 0.0;
  return e.values.cwiseAbs().maxCoeff();
}

}  // namespace

SymMatrix pinv(const SymMatrix& M, const Tolerance& tol) {
  const EigDecomp e = sym_eig(M);
  const double cut = tol.cutoff(spectral_scale(e));
  VectorXd inv = VectorXd::Zero(e.values.size());
  for (int i = 0; i < e.values.size(); ++i)
    if (std::abs(e.values[i]) > cut) inv[i] = 1.0 / e.values[i];
  return SymMatrix(e.vectors * inv.asDiagonal() * e.vectors.transpose());
}

Basis null_basis(const SymMatrix& M, const Tolerance& tol) {
  const EigDecomp e = sym_eig(M);
  const double cut = tol.cutoff(spectral_scale(e));
  int k = 0;
  for (int i = 0; i < e.values.size(); ++i)
    if (std::abs(e.values[i]) <= cut) ++k;
  MatrixXd cols(M.dim(), k);
  int j = 0;
  for (int i = 0; i < e.values.size(); ++i)
    if (std::abs(e.values[i]) <= cut) cols.col(j++) = e.vectors.col(i);
  return Basis(cols);
}

bool range_contains(const SymMatrix& M, const VectorXd& b, const Tolerance& tol) {
  if (b.size() != M.dim()) throw PreconditionViolated("range_contains: dimension mismatch");
  const Basis nb = null_basis(M, tol);
  // b ∈ R(M) ⟺ b ⊥ N(M); the null-space component is (I − M M⁺) b.
  const double resid = nb.empty() ? 0.0 : (nb.columns.transpose() * b).norm();
  return resid <= tol.cutoff(b.norm());
}

bool is_psd(const SymMatrix& M, const Tolerance& tol) {
  const EigDecomp e = sym_eig(M);
  if (e.values.size() == 0) return true;
  return e.values[0] >= -tol.cutoff(spectral_scale(e));
}

double min_eig(const SymMatrix& M) {
  if (M.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(M.mat(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NonConvergence("min_eig: eigensolver did not converge");
  return es.eigenvalues()[0];
}

std::pair<Basis, Basis> joint_null_split(const SymMatrix& A, const SymMatrix& B,
                                         const Tolerance& tol) {
  if (A.dim() != B.dim())
    throw PreconditionViolated("joint_null_split: dimension mismatch");
  const SymMatrix S(A.mat() * A.mat() + B.mat() * B.mat());
  const EigDecomp e = sym_eig(S);
  // S is PSD with N(S) = N(A) ∩ N(B); squaring means the cutoff sees
  // singular values squared, so null vectors of A and B land well below it.
  const double cut = tol.cutoff(spectral_scale(e));
  int k = 0;
  for (int i = 0; i < e.values.size(); ++i)
    if (e.values[i] <= cut) ++k;
  MatrixXd v(S.dim(), k), u(S.dim(), S.dim() - k);
  int jv = 0, ju = 0;
  for (int i = 0; i < e.values.size(); ++i) {
    if (e.values[i] <= cut)
      v.col(jv++) = e.vectors.col(i);
    else
      u.col(ju++) = e.vectors.col(i);
  }
  return {Basis(v), Basis(u)};
}

}  // namespace qp1qc
