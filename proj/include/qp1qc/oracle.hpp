#ifndef QP1QC_ORACLE_HPP
#define QP1QC_ORACLE_HPP

#include "qp1qc/instance.hpp"

namespace qp1qc {

/// Dense search box: [-radius, radius]^n sampled with `steps` points per
/// axis (odd, so the origin is a grid point), then `refine_rounds` local
/// passes that shrink the spacing by 10x around the incumbent(s).
struct GridSpec {
  double radius = 10.0;
  int steps = 201;
  int refine_rounds = 2;
};

struct OracleReport {
  double best_value = std::numeric_limits<double>::infinity();
  VectorXd best_point;
  long long feasible_count = 0;  // feasible points of the base grid
  bool diverged = false;         // best value fell below -1e6
};

/// Exhaustive grid minimization of F over the feasible box (n <= 3).
/// Parallel kernel; deterministic result independent of thread count.
OracleReport grid_infimum(const Qp1qcInstance& inst, const GridSpec& spec = {});

/// Single-threaded run of the same kernel, kept as the reference the
/// parallel path is tested against (results are bit-identical).
OracleReport grid_infimum_serial(const Qp1qcInstance& inst, const GridSpec& spec = {});

/// True iff F(base + t dir) is strictly decreasing below -1e6 over
/// t in {1, 10, ..., 10^samples} while staying feasible at every sample.
bool ray_diverges(const Qp1qcInstance& inst, const VectorXd& base, const VectorXd& dir,
                  int samples = 8);

enum class TargetClass {
  Any,
  NoSlater,
  Unbounded,
  Unattained,
  AttainedInterval,
  AttainedSingleton,
};

const char* target_class_name(TargetClass c);

/// Deterministic pseudo-random instance biased toward the requested class.
/// The class is a hint: the solver's classification is ground truth.
Qp1qcInstance gen_instance(std::uint64_t seed, int n, TargetClass cls);

}  // namespace qp1qc

#endif
