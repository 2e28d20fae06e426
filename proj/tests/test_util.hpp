#ifndef QP1QC_TEST_UTIL_HPP
#define QP1QC_TEST_UTIL_HPP

#include "qp1qc/rng.hpp"
#include "qp1qc/types.hpp"

namespace qp1qc::test {

inline MatrixXd rand_sym(Rng& rng, int n, double scale = 1.0) {
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * rng.normal();
  return 0.5 * (m + m.transpose());
}

inline VectorXd rand_vec(Rng& rng, int n, double scale = 1.0) {
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

inline MatrixXd rand_orthogonal(Rng& rng, int n) {
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
  Eigen::HouseholderQR<MatrixXd> qr(m);
  MatrixXd Q = qr.householderQ();
  const MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  return Q;
}

/// Symmetric matrix of known rank: Q diag(d) Q^T with `rank` nonzero d's.
inline MatrixXd rand_rank_deficient(Rng& rng, int n, int rank) {
  const MatrixXd Q = rand_orthogonal(rng, n);
  VectorXd d = VectorXd::Zero(n);
  for (int i = 0; i < rank; ++i) d[i] = rng.normal() * 2.0;
  return Q * d.asDiagonal() * Q.transpose();
}

}  // namespace qp1qc::test

#endif
