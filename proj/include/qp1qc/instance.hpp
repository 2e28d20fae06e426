#ifndef QP1QC_INSTANCE_HPP
#define QP1QC_INSTANCE_HPP

#include "qp1qc/types.hpp"

namespace qp1qc {

/// One problem instance:
///   minimize  F(x) = x^T A x - 2 f^T x
///   s.t.      G(x) = x^T B x - 2 g^T x <= mu.
struct Qp1qcInstance {
  SymMatrix A, B;
  VectorXd f, g;
  double mu = 0.0;

  Qp1qcInstance() = default;
  Qp1qcInstance(SymMatrix A_, SymMatrix B_, VectorXd f_, VectorXd g_, double mu_)
      : A(std::move(A_)), B(std::move(B_)), f(std::move(f_)), g(std::move(g_)), mu(mu_) {
    const int n = A.dim();
    if (n < 1) throw PreconditionViolated("instance: dimension must be >= 1");
    if (B.dim() != n || f.size() != n || g.size() != n)
      throw PreconditionViolated("instance: dimension mismatch");
    if (!f.allFinite() || !g.allFinite() || !std::isfinite(mu))
      throw PreconditionViolated("instance: non-finite data");
  }

  int dim() const { return A.dim(); }

  double objective(const VectorXd& x) const {
    return x.dot(A.mat() * x) - 2.0 * f.dot(x);
  }
  double constraint(const VectorXd& x) const {
    return x.dot(B.mat() * x) - 2.0 * g.dot(x);
  }
  bool feasible(const VectorXd& x, double slack = 0.0) const {
    return constraint(x) <= mu + slack;
  }
};

}  // namespace qp1qc

#endif
