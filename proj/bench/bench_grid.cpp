// Compares the OpenMP grid kernel against the serial reference on a dense
// three-dimensional sweep and verifies the results are identical.

#include <chrono>
#include <cstdio>

#include "qp1qc/oracle.hpp"

using namespace qp1qc;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(OracleReport (*fn)(const Qp1qcInstance&, const GridSpec&),
              const Qp1qcInstance& inst, const GridSpec& spec, OracleReport& out) {
  const auto t0 = Clock::now();
  out = fn(inst, spec);
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int steps = argc > 1 ? std::atoi(argv[1]) : 201;
  const Qp1qcInstance inst = gen_instance(42, 3, TargetClass::AttainedInterval);
  GridSpec spec;
  spec.steps = steps;
  spec.refine_rounds = 2;

  OracleReport serial, parallel;
  const double ms_serial = run_ms(grid_infimum_serial, inst, spec, serial);
  const double ms_parallel = run_ms(grid_infimum, inst, spec, parallel);

  std::printf("grid %d^3 (+%d refinement rounds)\n", steps, spec.refine_rounds);
  std::printf("serial:   %9.1f ms   best %.12g   feasible %lld\n", ms_serial,
              serial.best_value, serial.feasible_count);
  std::printf("parallel: %9.1f ms   best %.12g   feasible %lld\n", ms_parallel,
              parallel.best_value, parallel.feasible_count);
  std::printf("speedup:  %.2fx\n", ms_serial / ms_parallel);
  const bool same = serial.best_value == parallel.best_value &&
                    serial.feasible_count == parallel.feasible_count &&
                    serial.best_point == parallel.best_point;
  std::printf("results identical: %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
