#include <doctest.h>

#include "qp1qc/io.hpp"
#include "qp1qc/oracle.hpp"
#include "qp1qc/slater.hpp"
#include "qp1qc/solver.hpp"
#include "test_util.hpp"

using namespace qp1qc;

namespace {

std::string fixture(const char* name) {
  return std::string(QP1QC_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("grid_infimum on the paper fixtures") {
  SUBCASE("attained optimum found near zero") {
    const Qp1qcInstance inst = load_instance(fixture("ex53.json"));
    GridSpec spec;
    spec.refine_rounds = 4;
    const OracleReport rep = grid_infimum(inst, spec);
    CHECK(rep.feasible_count > 0);
    CHECK(rep.best_value == doctest::Approx(0.0).epsilon(1e-6));
  }
  SUBCASE("unattainable infimum: value decreases as the box grows") {
    const Qp1qcInstance inst = load_instance(fixture("ex52.json"));
    GridSpec small{10.0, 201, 2}, big{40.0, 201, 2};
    const double v_small = grid_infimum(inst, small).best_value;
    const double v_big = grid_infimum(inst, big).best_value;
    CHECK(v_small > 0.0);
    CHECK(v_big > 0.0);
    CHECK(v_big < v_small);
  }
  SUBCASE("infeasible instance") {
    const Qp1qcInstance inst(SymMatrix::Identity(2), SymMatrix::Identity(2), VectorXd::Zero(2),
                             VectorXd::Zero(2), -1.0);
    const OracleReport rep = grid_infimum(inst);
    CHECK(rep.feasible_count == 0);
  }
  SUBCASE("dimension cap") {
    const Qp1qcInstance inst(SymMatrix::Identity(4), SymMatrix::Identity(4), VectorXd::Zero(4),
                             VectorXd::Zero(4), 1.0);
    CHECK_THROWS_AS(grid_infimum(inst), DimensionTooLarge);
  }
}

TEST_CASE("ray_diverges") {
  const Qp1qcInstance ex51 = load_instance(fixture("ex51.json"));
  CHECK(ray_diverges(ex51, VectorXd::Zero(2), Eigen::Vector2d(0, 1)));

  const Qp1qcInstance ex53 = load_instance(fixture("ex53.json"));
  CHECK_FALSE(ray_diverges(ex53, VectorXd::Zero(2), Eigen::Vector2d(1, 0)));
  CHECK_FALSE(ray_diverges(ex53, VectorXd::Zero(2), Eigen::Vector2d(0, 1)));

  CHECK_FALSE(ray_diverges(ex51, VectorXd::Zero(2), Eigen::Vector2d(1e-15, 0)));
}

TEST_CASE("generator determinism and class hints") {
  for (TargetClass cls : {TargetClass::Any, TargetClass::NoSlater, TargetClass::Unbounded,
                          TargetClass::Unattained, TargetClass::AttainedInterval,
                          TargetClass::AttainedSingleton}) {
    const Qp1qcInstance a = gen_instance(1, 3, cls);
    const Qp1qcInstance b = gen_instance(1, 3, cls);
    CHECK(a.A.mat() == b.A.mat());
    CHECK(a.B.mat() == b.B.mat());
    CHECK(a.f == b.f);
    CHECK(a.g == b.g);
    CHECK(a.mu == b.mu);
  }
  for (int s = 0; s < 10; ++s) {
    CHECK_FALSE(slater_holds(gen_instance(s, 3, TargetClass::NoSlater)));
    CHECK(classify_and_solve(gen_instance(s, 2, TargetClass::Unbounded)).status ==
          Solution::Status::UnboundedBelow);
  }
}

TEST_CASE("parallel grid kernel matches the serial reference bit for bit") {
  for (int s = 0; s < 6; ++s) {
    const int n = 2 + s % 2;
    const Qp1qcInstance inst = gen_instance(100 + s, n, TargetClass::Any);
    GridSpec spec;
    spec.steps = n == 3 ? 81 : 201;
    spec.refine_rounds = 2;
    const OracleReport par = grid_infimum(inst, spec);
    const OracleReport ser = grid_infimum_serial(inst, spec);
    CHECK(par.feasible_count == ser.feasible_count);
    CHECK(par.best_value == ser.best_value);  // exact: same kernel, same merge order
    CHECK(par.best_point == ser.best_point);
    CHECK(par.diverged == ser.diverged);
  }
}

TEST_CASE("solver status and value are invariant under orthogonal conjugation") {
  Rng rng(555);
  for (int it = 0; it < 15; ++it) {
    const int n = 2 + it % 2;
    const TargetClass cls =
        it % 3 == 0 ? TargetClass::AttainedInterval
                    : (it % 3 == 1 ? TargetClass::AttainedSingleton : TargetClass::Unattained);
    const Qp1qcInstance inst = gen_instance(200 + it, n, cls);
    const MatrixXd Q = test::rand_orthogonal(rng, n);
    const Qp1qcInstance rot(SymMatrix(Q * inst.A.mat() * Q.transpose()),
                            SymMatrix(Q * inst.B.mat() * Q.transpose()), Q * inst.f,
                            Q * inst.g, inst.mu);
    const Solution s1 = classify_and_solve(inst);
    const Solution s2 = classify_and_solve(rot);
    CHECK(s1.status == s2.status);
    if (s1.status == Solution::Status::Attained)
      CHECK(s1.value == doctest::Approx(s2.value).epsilon(1e-6));
    if (s1.status == Solution::Status::Unattained)
      CHECK(s1.infimum == doctest::Approx(s2.infimum).epsilon(1e-6));
  }
}
