#ifndef QP1QC_PENCIL_HPP
#define QP1QC_PENCIL_HPP

#include <optional>
#include <vector>

#include "qp1qc/types.hpp"

namespace qp1qc {

/// The set { sigma : A + sigma B is positive semidefinite }. Always empty,
/// a single point, or an interval (possibly with infinite ends).
struct PencilInterval {
  enum class Kind { Empty, Singleton, Interval };
  Kind kind = Kind::Empty;
  double sigma = 0.0;  // Singleton
  double lo = 0.0, hi = 0.0;  // Interval; +/- infinity allowed, lo < hi

  static PencilInterval Empty() { return {}; }
  static PencilInterval Singleton(double s) {
    PencilInterval p;
    p.kind = Kind::Singleton;
    p.sigma = s;
    return p;
  }
  static PencilInterval Interval(double lo, double hi) {
    PencilInterval p;
    p.kind = Kind::Interval;
    p.lo = lo;
    p.hi = hi;
    return p;
  }
  bool is_interval() const { return kind == Kind::Interval; }
  bool is_singleton() const { return kind == Kind::Singleton; }
  bool is_empty() const { return kind == Kind::Empty; }
};

/// Joint-null reduction of a pair: V spans N(A) ∩ N(B), U its orthogonal
/// complement, Ar = U^T A U, Br = U^T B U.
struct ReducedPencil {
  Basis V, U;
  SymMatrix Ar, Br;
};

/// Real roots of sigma -> det(M + sigma N). all_sigma is set when the
/// determinant vanishes identically.
struct DetPolyRoots {
  bool all_sigma = false;
  std::vector<double> roots;  // sorted, multiplicity collapsed
};

struct SdcResult {
  enum class Status { Sdc, NotSdc, Unknown };
  Status status = Status::Unknown;
  MatrixXd C;      // nonsingular congruence, when Sdc
  VectorXd dA, dB; // diagonals of C^T A C and C^T B C
  double cond_C = 0.0;
};

ReducedPencil reduce_pencil(const SymMatrix& A, const SymMatrix& B,
                            const Tolerance& tol = {});

/// Roots of det(M + sigma N) by determinant interpolation at m+1 unit-spaced
/// nodes, monomial coefficient recovery, and companion-matrix eigenvalues.
/// Near-real eigenvalues are kept; roots closer than 1e-7*(1+|r|) merge.
DetPolyRoots det_poly_roots(const SymMatrix& M, const SymMatrix& N,
                            const Tolerance& tol = {});

PencilInterval pencil_interval(const SymMatrix& A, const SymMatrix& B,
                               const Tolerance& tol = {});

/// A finite sigma strictly inside an Interval pencil; nullopt otherwise.
std::optional<double> interior_point(const PencilInterval& iv);

/// Attempts constructive simultaneous diagonalization by congruence.
/// Certification routes, in order: non-degenerate pencil interval of (A,B)
/// or (B,A); degenerate joint-null dimensions n and n-1; a definite
/// combination mu*Ar + sigma*Br > 0 found by angular search. Refutation is
/// only available in reduced dimension 2 (closed form); otherwise Unknown.
SdcResult sdc_certificate(const SymMatrix& A, const SymMatrix& B,
                          const Tolerance& tol = {});

}  // namespace qp1qc

#endif
