#include <doctest.h>

#include "qp1qc/linalg.hpp"
#include "qp1qc/oracle.hpp"
#include "qp1qc/slater.hpp"
#include "test_util.hpp"

using namespace qp1qc;

namespace {

Qp1qcInstance make(const MatrixXd& A, const MatrixXd& B, const VectorXd& f, const VectorXd& g,
                   double mu) {
  return Qp1qcInstance(SymMatrix(A), SymMatrix(B), f, g, mu);
}

// Brute-force minimization of F restricted to {Bx = g}: dense grid over the
// null-space coordinates plus local refinement. Independent of the solver.
struct AffineOracle {
  bool infeasible = false;
  bool unbounded = false;
  double best = std::numeric_limits<double>::infinity();
};

AffineOracle affine_oracle(const Qp1qcInstance& inst, double radius = 20.0) {
  AffineOracle out;
  const Tolerance tol;
  const VectorXd xbar = pinv(inst.B, tol).mat() * inst.g;
  if (inst.constraint(xbar) > inst.mu + 1e-9 * std::max(1.0, std::abs(inst.mu))) {
    out.infeasible = true;
    return out;
  }
  const Basis nb = null_basis(inst.B, tol);
  const int k = nb.dim();
  if (k == 0) {
    out.best = inst.objective(xbar);
    return out;
  }
  REQUIRE(k <= 2);
  auto value = [&](const VectorXd& y) { return inst.objective(xbar + nb.columns * y); };

  const int steps = 201;
  auto scan = [&](const VectorXd& center, double rad) {
    std::pair<double, VectorXd> best{std::numeric_limits<double>::infinity(),
                                     VectorXd::Zero(k)};
    VectorXd y(k);
    for (int i = 0; i < steps; ++i) {
      y[0] = center[0] - rad + 2.0 * rad * i / (steps - 1);
      const int inner = (k == 2) ? steps : 1;
      for (int j = 0; j < inner; ++j) {
        if (k == 2) y[1] = center[1] - rad + 2.0 * rad * j / (steps - 1);
        const double v = value(y);
        if (v < best.first) best = {v, y};
      }
    }
    return best;
  };

  auto [best, y] = scan(VectorXd::Zero(k), radius);
  double spacing = 2.0 * radius / (steps - 1);
  for (int round = 0; round < 3; ++round) {
    auto [b2, y2] = scan(y, 5.0 * spacing);
    if (b2 < best) {
      best = b2;
      y = y2;
    }
    spacing /= 10.0;
  }
  out.best = best;

  const auto far = scan(VectorXd::Zero(k), 50.0 * radius);
  if (far.first < best - 10.0 * (1.0 + std::abs(best))) out.unbounded = true;
  return out;
}

}  // namespace

TEST_CASE("slater_holds fixtures") {
  CHECK(slater_holds(make(MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2),
                          VectorXd::Zero(2), VectorXd::Zero(2), 1.0)));
  CHECK_FALSE(slater_holds(make(MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2),
                                VectorXd::Zero(2), VectorXd::Zero(2), 0.0)));
  MatrixXd off(2, 2);
  off << 0, 1, 1, 0;
  CHECK(slater_holds(make(MatrixXd::Identity(2, 2), off, VectorXd::Zero(2), VectorXd::Zero(2),
                          0.0)));
}

TEST_CASE("solve_no_slater fixtures") {
  SUBCASE("feasible set is the origin") {
    const auto s = solve_no_slater(make(MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2),
                                        VectorXd::Zero(2), VectorXd::Zero(2), 0.0));
    REQUIRE(s.status == Solution::Status::Attained);
    CHECK(s.value == doctest::Approx(0.0));
    CHECK(s.x_star.norm() <= 1e-9);
    CHECK(s.case_label == "no_slater");
  }
  SUBCASE("line x1 = 1, convex restriction") {
    MatrixXd B = MatrixXd::Zero(2, 2);
    B(0, 0) = 1;
    const auto s = solve_no_slater(
        make(MatrixXd::Identity(2, 2), B, VectorXd::Zero(2), Eigen::Vector2d(1, 0), -1.0));
    REQUIRE(s.status == Solution::Status::Attained);
    CHECK(s.value == doctest::Approx(1.0));
    CHECK(s.x_star[0] == doctest::Approx(1.0));
    CHECK(s.x_star[1] == doctest::Approx(0.0));
  }
  SUBCASE("line x1 = 1, concave restriction is unbounded") {
    MatrixXd B = MatrixXd::Zero(2, 2);
    B(0, 0) = 1;
    MatrixXd A = MatrixXd::Zero(2, 2);
    A(0, 0) = 1;
    A(1, 1) = -1;
    const auto s =
        solve_no_slater(make(A, B, VectorXd::Zero(2), Eigen::Vector2d(1, 0), -1.0));
    REQUIRE(s.status == Solution::Status::UnboundedBelow);
    CHECK(ray_diverges(Qp1qcInstance(SymMatrix(A), SymMatrix(B), VectorXd::Zero(2),
                                     Eigen::Vector2d(1, 0), -1.0),
                       s.ray.base, s.ray.dir));
  }
  SUBCASE("empty feasible set") {
    const auto s = solve_no_slater(make(MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2),
                                        VectorXd::Zero(2), VectorXd::Zero(2), -1.0));
    CHECK(s.status == Solution::Status::Infeasible);
  }
  SUBCASE("precondition") {
    CHECK_THROWS_AS(solve_no_slater(make(MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2),
                                         VectorXd::Zero(2), VectorXd::Zero(2), 1.0)),
                    PreconditionViolated);
  }
}

TEST_CASE("no-slater branch agrees with the affine-restricted oracle") {
  Rng rng(111);
  int attained = 0, unbounded = 0, infeasible = 0;
  for (int it = 0; it < 60; ++it) {
    const int n = rng.uniform_int(2, 3);
    const Qp1qcInstance inst = gen_instance(9000 + it, n, TargetClass::NoSlater);
    REQUIRE_FALSE(slater_holds(inst));
    const Solution sol = solve_no_slater(inst);
    const double radius = sol.status == Solution::Status::Attained
                              ? std::max(20.0, 3.0 * (sol.x_star.lpNorm<Eigen::Infinity>() + 1))
                              : 20.0;
    const AffineOracle orc = affine_oracle(inst, radius);
    switch (sol.status) {
      case Solution::Status::Infeasible:
        CHECK(orc.infeasible);
        ++infeasible;
        break;
      case Solution::Status::Attained: {
        CHECK_FALSE(orc.infeasible);
        CHECK_FALSE(orc.unbounded);
        CHECK(std::abs(sol.value - orc.best) <= 1e-6 * std::max(1.0, std::abs(sol.value)));
        CHECK((inst.B.mat() * sol.x_star - inst.g).norm() <=
              1e-7 * std::max(1.0, inst.g.norm()));
        CHECK(std::abs(inst.objective(sol.x_star) - sol.value) <=
              1e-9 * std::max(1.0, std::abs(sol.value)));
        ++attained;
        break;
      }
      case Solution::Status::UnboundedBelow:
        CHECK_FALSE(orc.infeasible);
        CHECK(ray_diverges(inst, sol.ray.base, sol.ray.dir));
        ++unbounded;
        break;
      default:
        FAIL("unexpected status from the no-slater branch");
    }
  }
  CHECK(attained > 0);
  CHECK(unbounded > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("slater_holds matches the direct convex minimum test for PSD B") {
  Rng rng(222);
  for (int it = 0; it < 40; ++it) {
    const int n = rng.uniform_int(1, 4);
    const int deficiency = rng.uniform_int(0, n - 1);
    MatrixXd L(n, n - deficiency);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n - deficiency; ++j) L(i, j) = rng.normal();
    const MatrixXd B = L * L.transpose();
    VectorXd g;
    const bool in_range = rng.uniform() < 0.7;
    if (in_range)
      g = B * test::rand_vec(rng, n, 0.8);
    else
      g = test::rand_vec(rng, n, 0.8);
    const double mu = rng.uniform(-2.0, 2.0);
    const Qp1qcInstance inst = make(test::rand_sym(rng, n, 1.0), B, VectorXd::Zero(n), g, mu);

    double gmin;  // min of G: -g^T B^+ g when g in R(B), else -inf
    if (range_contains(inst.B, g)) {
      gmin = -g.dot(pinv(inst.B).mat() * g);
    } else {
      gmin = -std::numeric_limits<double>::infinity();
    }
    const bool direct = gmin < mu - 1e-9 * std::max(1.0, std::abs(mu));
    if (std::abs(gmin - mu) > 1e-6 * std::max(1.0, std::abs(mu)))  // off the boundary band
      CHECK(slater_holds(inst) == direct);
  }
}
