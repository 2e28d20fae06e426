#ifndef QP1QC_LINALG_HPP
#define QP1QC_LINALG_HPP

#include <utility>

#include "qp1qc/types.hpp"

namespace qp1qc {

/// Symmetric eigendecomposition, eigenvalues ascending.
/// Throws NonConvergence if the iterative reduction fails.
EigDecomp sym_eig(const SymMatrix& M);

/// Moore-Penrose pseudoinverse via eigendecomposition. Eigenvalues with
/// |lambda| <= rel * max(1, max|lambda|) are treated as zero.
SymMatrix pinv(const SymMatrix& M, const Tolerance& tol = {});

/// Orthonormal basis of the (numerical) null space of M.
Basis null_basis(const SymMatrix& M, const Tolerance& tol = {});

/// True iff b lies in the range of M, i.e. ||(I - M M^+) b|| is below
/// rel * max(1, ||b||). For symmetric M this is b ⊥ N(M).
bool range_contains(const SymMatrix& M, const VectorXd& b, const Tolerance& tol = {});

/// True iff lambda_min(M) >= -rel * max(1, ||M||_2).
bool is_psd(const SymMatrix& M, const Tolerance& tol = {});

/// Smallest eigenvalue.
double min_eig(const SymMatrix& M);

/// Splits R^n into V = N(A) ∩ N(B) and its orthogonal complement U,
/// both orthonormal. Computed from one eigendecomposition of A^2 + B^2,
/// whose null space is exactly the joint null space.
std::pair<Basis, Basis> joint_null_split(const SymMatrix& A, const SymMatrix& B,
                                         const Tolerance& tol = {});

}  // namespace qp1qc

#endif
