#ifndef QP1QC_SLATER_HPP
#define QP1QC_SLATER_HPP

#include "qp1qc/instance.hpp"
#include "qp1qc/solution.hpp"

namespace qp1qc {

/// Diagonalized data of the equality-reduced problem on {x : Bx = g}:
/// substituting x = B^+ g + Vb y and y = Qh z turns the objective into
/// sum_i Dh_i z_i^2 + 2 Lam_i z_i + alpha.
struct SlaterReduction {
  Basis Vb;       // null space of B
  MatrixXd Qh;    // orthonormal, diagonalizes Vb^T A Vb
  VectorXd Dh;    // diagonal values
  VectorXd Lam;   // linear coefficients
  double alpha = 0.0;
  std::vector<int> J;  // indices with Dh_i > 0
};

/// False exactly when a strictly feasible point cannot exist, i.e. all of
/// mu <= 0, B PSD, g in R(B), -g^T B^+ g >= mu hold (tolerance-aware).
bool slater_holds(const Qp1qcInstance& inst, const Tolerance& tol = {});

/// Returns a strictly feasible point; throws PreconditionViolated when the
/// Slater condition fails.
VectorXd slater_point(const Qp1qcInstance& inst, const Tolerance& tol = {});

/// Full solve of the no-Slater branch: infeasible, or the reduction to
/// Bx = g classified as unbounded or attained.
Solution solve_no_slater(const Qp1qcInstance& inst, const Tolerance& tol = {});

SlaterReduction slater_reduction(const Qp1qcInstance& inst, const Tolerance& tol = {});

}  // namespace qp1qc

#endif
