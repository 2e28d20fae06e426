#ifndef QP1QC_SOLVER_HPP
#define QP1QC_SOLVER_HPP

#include <optional>
#include <string>

#include "qp1qc/instance.hpp"
#include "qp1qc/pencil.hpp"
#include "qp1qc/solution.hpp"

namespace qp1qc {

/// Dual objective d(sigma) = -(f+sg)^T (A+sB)^+ (f+sg) - mu*s, valid where
/// A+sB is PSD and f+sg lies in its range.
struct DualValue {
  double sigma = 0.0;
  double value = 0.0;
};

/// Outcome of the boundedness system { A+sB PSD, s >= 0, f+sg in R(A+sB) }.
struct FeasibilityResult {
  bool solvable = false;
  double sigma = 0.0;
  enum class Where { Interior, LoEnd, HiEnd, SingletonPoint } where = Where::Interior;
  std::string case_label;  // a, b, c1 or c2
};

/// Affine set of dual-stationary points at a singleton pencil value:
/// S = { base + V y }.
struct AffineSolutionSet {
  VectorXd base;
  Basis V;
  double sigma_star = 0.0;
};

/// Data of the constraint restricted to S: q(y) = y^T M y + 2 c^T y compared
/// against mu_tilde, with extremal values Lstar/Ustar (+-inf allowed).
struct SingletonAnalysis {
  double mu_tilde = 0.0;
  double Lstar = 0.0, Ustar = 0.0;
  VectorXd y_hat;    // minimizer (resp. maximizer) when finite
  VectorXd y_tilde;  // direction of unbounded increase when Ustar = +inf
  SymMatrix M;       // V^T B V
  VectorXd c;
  /// Distance from mu_tilde to [Lstar, Ustar]; zero when solvable.
  double solvability_gap() const {
    double gap = 0.0;
    if (std::isfinite(Lstar)) gap = std::max(gap, Lstar - mu_tilde);
    if (std::isfinite(Ustar)) gap = std::max(gap, mu_tilde - Ustar);
    return gap;
  }
};

FeasibilityResult feasibility_system(const Qp1qcInstance& inst, const PencilInterval& iv,
                                     const Tolerance& tol = {});

/// Builds S = { (A+sB)^+ (f+sg) + V y } at a singleton pencil value.
AffineSolutionSet affine_solution_set(const Qp1qcInstance& inst, double sigma_star,
                                      const Tolerance& tol = {});

DualValue dual_value(const Qp1qcInstance& inst, double sigma, const Tolerance& tol = {});

KktCertificate kkt_verify(const Qp1qcInstance& inst, const VectorXd& x, double sigma,
                          const Tolerance& tol = {});

/// Concave dual maximization over sigma in [lo, hi] for a reduced problem
/// whose pencil is positive definite on the open interval. Returns the
/// minimizer x* (reduced coordinates) and sigma*.
std::pair<VectorXd, double> solve_dual_slater(const Qp1qcInstance& reduced, double lo,
                                              double hi, const Tolerance& tol = {});

Solution solve_interval_case(const Qp1qcInstance& inst, const PencilInterval& iv,
                             const FeasibilityResult& feas, const Tolerance& tol = {});

SingletonAnalysis analyze_singleton(const Qp1qcInstance& inst, double sigma_star,
                                    const Tolerance& tol = {});

Solution solve_singleton_case(const Qp1qcInstance& inst, double sigma_star,
                              const Tolerance& tol = {});

/// Top-level classifier: every instance maps to exactly one status.
Solution classify_and_solve(const Qp1qcInstance& inst, const Tolerance& tol = {},
                            std::uint64_t seed = 0);

}  // namespace qp1qc

#endif
