#ifndef QP1QC_TYPES_HPP
#define QP1QC_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace qp1qc {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Relative/absolute thresholds used by all rank and sign decisions.
/// Zero cutoffs are rel * max(1, scale) so badly scaled inputs behave
/// uniformly; abs is a floor for quantities with no natural scale.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  double cutoff(double scale) const { return rel * std::max(1.0, scale); }
};

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};
struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& what) : std::runtime_error(what) {}
};
struct InternalInconsistency : std::runtime_error {
  explicit InternalInconsistency(const std::string& what) : std::runtime_error(what) {}
};
struct DimensionTooLarge : std::runtime_error {
  explicit DimensionTooLarge(const std::string& what) : std::runtime_error(what) {}
};
struct ParseError : std::runtime_error {
  std::string key;  // offending key, when known
  ParseError(const std::string& k, const std::string& what)
      : std::runtime_error(what), key(k) {}
};

/// Dense real symmetric matrix. Symmetrized on construction; all entries
/// must be finite.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const MatrixXd& m) : m_(0.5 * (m + m.transpose())) {
    if (m.rows() != m.cols()) throw PreconditionViolated("SymMatrix: not square");
    if (!m_.allFinite()) throw PreconditionViolated("SymMatrix: non-finite entries");
  }

  static SymMatrix Zero(int n) { return SymMatrix(MatrixXd::Zero(n, n)); }
  static SymMatrix Identity(int n) { return SymMatrix(MatrixXd::Identity(n, n)); }
  static SymMatrix FromDiagonal(const VectorXd& d) {
    return SymMatrix(MatrixXd(d.asDiagonal()));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const MatrixXd& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double norm_fro() const { return m_.norm(); }

 private:
  MatrixXd m_;
};

/// σ ↦ M + σN evaluated as a SymMatrix.
inline SymMatrix pencil_at(const SymMatrix& M, const SymMatrix& N, double sigma) {
  return SymMatrix(M.mat() + sigma * N.mat());
}

/// Eigendecomposition of a symmetric matrix: values ascending, vectors
/// orthonormal columns, M = Q diag(values) Q^T.
struct EigDecomp {
  VectorXd values;
  MatrixXd vectors;
};

/// Matrix with orthonormal columns spanning a subspace (possibly empty).
struct Basis {
  MatrixXd columns;  // n x k, k >= 0

  Basis() = default;
  explicit Basis(const MatrixXd& cols) : columns(cols) {}
  static Basis Empty(int n) { return Basis(MatrixXd::Zero(n, 0)); }

  int ambient_dim() const { return static_cast<int>(columns.rows()); }
  int dim() const { return static_cast<int>(columns.cols()); }
  bool empty() const { return columns.cols() == 0; }
};

}  // namespace qp1qc

#endif
