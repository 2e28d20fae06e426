#ifndef QP1QC_SOLUTION_HPP
#define QP1QC_SOLUTION_HPP

#include <string>

#include "qp1qc/types.hpp"

namespace qp1qc {

/// Global-optimality certificate: the four residuals of the KKT system
/// feasibility / stationarity / complementarity / pencil PSD, each with the
/// scale it is judged against.
struct KktCertificate {
  VectorXd x;
  double sigma = 0.0;
  double feas_resid = 0.0;    // G(x) - mu       (pass: <= tol * feas_scale)
  double stat_resid = 0.0;    // ||(A+sB)x-(f+sg)||
  double comp_resid = 0.0;    // |sigma (G(x)-mu)|
  double pencil_min_eig = 0.0;  // lambda_min(A+sB)  (pass: >= -tol * pencil_scale)
  double feas_scale = 1.0, stat_scale = 1.0, comp_scale = 1.0, pencil_scale = 1.0;

  bool passes(double tol = 1e-7) const {
    return feas_resid <= tol * feas_scale && stat_resid <= tol * stat_scale &&
           comp_resid <= tol * comp_scale && pencil_min_eig >= -tol * pencil_scale;
  }
};

/// Unboundedness witness: x(t) = base + t*dir, feasible with F -> -inf as
/// t -> +inf. `verified` records that the divergence check passed; rare
/// instances are unbounded only along curved paths and carry no usable ray.
struct Ray {
  VectorXd base, dir;
  bool verified = false;
};

struct Solution {
  enum class Status { Infeasible, UnboundedBelow, Unattained, Attained };

  Status status = Status::Infeasible;
  std::string case_label;

  // Attained
  VectorXd x_star;
  double value = 0.0;
  KktCertificate cert;

  // Unattained
  double infimum = 0.0;

  // Attained / Unattained
  double sigma_star = 0.0;

  // UnboundedBelow
  Ray ray;

  bool attained() const { return status == Status::Attained; }
};

const char* status_name(Solution::Status s);

}  // namespace qp1qc

#endif
