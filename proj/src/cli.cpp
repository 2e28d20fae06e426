#include "qp1qc/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

#include <CLI11.hpp>

#include "qp1qc/io.hpp"
#include "qp1qc/linalg.hpp"
#include "qp1qc/slater.hpp"
#include "qp1qc/solver.hpp"

namespace qp1qc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int status_exit_code(Solution::Status s) {
  switch (s) {
    case Solution::Status::Attained: return 0;
    case Solution::Status::Unattained: return 1;
    case Solution::Status::UnboundedBelow: return 2;
    case Solution::Status::Infeasible: return 3;
  }
  return 64;
}

struct CommonFlags {
  double tol = 1e-9;
  bool json = false;

  Tolerance tolerance() const {
    Tolerance t;
    t.rel = tol;
    t.abs = std::min(1e-12, tol * 1e-3);
    return t;
  }
};

int cmd_solve(const std::string& path, const CommonFlags& fl, bool oracle,
              std::uint64_t seed, std::ostream& out, std::ostream& err) {
  const Qp1qcInstance inst = load_instance(path);
  const Tolerance tol = fl.tolerance();
  const auto t0 = Clock::now();
  ReportTimings tm;
  const PencilInterval iv = pencil_interval(inst.A, inst.B, tol);
  tm.pencil_ms = ms_since(t0);
  const auto t1 = Clock::now();
  const SdcResult sdc = sdc_certificate(inst.A, inst.B, tol);
  tm.sdc_ms = ms_since(t1);
  const auto t2 = Clock::now();
  const Solution sol = classify_and_solve(inst, tol, seed);
  tm.solve_ms = ms_since(t2);

  OracleCheck oc;
  if (oracle) {
    if (inst.dim() > 3) {
      err << "warning: --oracle supports n <= 3 only; skipped\n";
    } else {
      oc.ran = true;
      oc.rep = grid_infimum(inst);
      switch (sol.status) {
        case Solution::Status::Infeasible:
          oc.agrees = oc.rep.feasible_count == 0;
          break;
        case Solution::Status::Attained:
          oc.agrees = oc.rep.feasible_count > 0 &&
                      oc.rep.best_value >= sol.value - 1e-5 * std::max(1.0, std::abs(sol.value));
          break;
        case Solution::Status::Unattained:
          oc.agrees =
              oc.rep.feasible_count > 0 &&
              oc.rep.best_value >= sol.infimum - 1e-5 * std::max(1.0, std::abs(sol.infimum));
          break;
        case Solution::Status::UnboundedBelow:
          oc.agrees = sol.ray.verified;
          break;
      }
    }
  }
  tm.total_ms = ms_since(t0);
  out << (fl.json ? solve_report_json(sol, iv, sdc, tm, oc.ran ? &oc : nullptr)
                  : solve_report_text(sol, iv, sdc, tm, oc.ran ? &oc : nullptr));
  if (fl.json) out << "\n";
  return status_exit_code(sol.status);
}

int cmd_pencil(const std::string& path, const CommonFlags& fl, bool with_sdc,
               std::ostream& out) {
  const Qp1qcInstance inst = load_instance(path);
  const Tolerance tol = fl.tolerance();
  const auto t0 = Clock::now();
  ReportTimings tm;
  const PencilInterval iv = pencil_interval(inst.A, inst.B, tol);
  tm.pencil_ms = ms_since(t0);
  SdcResult sdc;
  if (with_sdc) {
    const auto t1 = Clock::now();
    sdc = sdc_certificate(inst.A, inst.B, tol);
    tm.sdc_ms = ms_since(t1);
  }
  tm.total_ms = ms_since(t0);
  if (with_sdc)
    out << (fl.json ? pencil_report_json(iv, sdc, tm) : pencil_report_text(iv, sdc, tm));
  else if (fl.json)
    out << "{\"pencil\":" + pencil_json(iv) + "}";
  else
    out << pencil_report_text(iv, sdc, tm);
  if (fl.json) out << "\n";
  return 0;
}

int cmd_sdc(const std::string& path, const CommonFlags& fl, std::ostream& out) {
  const Qp1qcInstance inst = load_instance(path);
  const SdcResult sdc = sdc_certificate(inst.A, inst.B, fl.tolerance());
  if (fl.json) {
    out << sdc_json(sdc) << "\n";
  } else {
    ReportTimings tm;
    out << pencil_report_text(pencil_interval(inst.A, inst.B, fl.tolerance()), sdc, tm);
  }
  return 0;
}

struct CheckStats {
  int passed = 0, failed = 0;
};

bool check_instance(const Qp1qcInstance& inst, std::uint64_t seed, const Tolerance& tol,
                    std::string& why) {
  const Solution sol = classify_and_solve(inst, tol, seed);
  const int n = inst.dim();
  const bool no_slater = sol.case_label == "no_slater";

  switch (sol.status) {
    case Solution::Status::Attained: {
      const double vs = std::max(1.0, std::abs(sol.value));
      if (std::abs(inst.objective(sol.x_star) - sol.value) > 1e-9 * vs) {
        why = "reported value differs from F(x*)";
        return false;
      }
      if (inst.constraint(sol.x_star) > inst.mu + 1e-7 * sol.cert.feas_scale) {
        why = "x* infeasible";
        return false;
      }
      if (!no_slater && !sol.cert.passes(1e-7)) {
        why = "certificate failed";
        return false;
      }
      if (no_slater) {
        // the feasible set is the affine set {Bx = g}: the box grid cannot
        // sample it, so verify membership and the reported value instead
        if ((inst.B.mat() * sol.x_star - inst.g).norm() >
            1e-7 * std::max(1.0, inst.g.norm())) {
          why = "no-slater x* off the affine feasible set";
          return false;
        }
        return true;
      }
      {
        const DualValue dv = dual_value(inst, sol.sigma_star, tol);
        if (std::abs(dv.value - sol.value) > 1e-6 * vs) {
          why = "strong duality gap";
          return false;
        }
      }
      if (n <= 3 && sol.x_star.lpNorm<Eigen::Infinity>() <= 8.0) {
        GridSpec spec;
        spec.steps = n == 3 ? 121 : 201;
        spec.refine_rounds = 5;
        const OracleReport rep = grid_infimum(inst, spec);
        if (rep.feasible_count == 0 || rep.best_value < sol.value - 1e-5 * vs ||
            rep.best_value > sol.value + 1e-3 * vs) {
          why = "grid oracle disagrees with attained value";
          return false;
        }
      }
      return true;
    }
    case Solution::Status::Unattained: {
      if (sol.sigma_star < 0) {
        why = "negative sigma*";
        return false;
      }
      const SingletonAnalysis an = analyze_singleton(inst, sol.sigma_star, tol);
      if (an.solvability_gap() <= 0) {
        why = "unattained but restricted constraint is solvable";
        return false;
      }
      if (n <= 3) {
        GridSpec spec;
        spec.radius = 60.0;
        spec.steps = n == 3 ? 151 : 401;
        spec.refine_rounds = 5;
        const OracleReport rep = grid_infimum(inst, spec);
        const double vs = std::max(1.0, std::abs(sol.infimum));
        if (rep.feasible_count == 0 || rep.best_value < sol.infimum - 1e-6 * vs) {
          why = "oracle beat the reported infimum";
          return false;
        }
        if (rep.best_value > sol.infimum + 0.05 * vs) {
          why = "oracle could not approach the reported infimum";
          return false;
        }
      }
      return true;
    }
    case Solution::Status::UnboundedBelow: {
      if (sol.ray.verified && ray_diverges(inst, sol.ray.base, sol.ray.dir)) return true;
      if (n > 3) {
        why = "unbounded without a verified ray";
        return false;
      }
      // curved-path escape: look for divergence evidence in growing boxes
      double prev = std::numeric_limits<double>::infinity();
      for (double radius : {25.0, 100.0, 400.0}) {
        GridSpec spec;
        spec.radius = radius;
        spec.steps = n == 3 ? 121 : 201;
        spec.refine_rounds = 2;
        const OracleReport rep = grid_infimum(inst, spec);
        const double drop = std::isfinite(prev) ? std::max(1.0, 0.5 * std::abs(prev)) : 0.0;
        if (rep.feasible_count == 0 || rep.best_value >= prev - drop) {
          why = "unbounded but no divergence evidence";
          return false;
        }
        prev = rep.best_value;
      }
      if (prev > -10.0) {
        why = "unbounded but shallow divergence";
        return false;
      }
      return true;
    }
    case Solution::Status::Infeasible: {
      if (n <= 3) {
        const OracleReport rep = grid_infimum(inst);
        if (rep.feasible_count != 0) {
          why = "oracle found a feasible point";
          return false;
        }
      }
      return true;
    }
  }
  why = "unknown status";
  return false;
}

int cmd_check(std::uint64_t seed, int count, int n, const CommonFlags& fl, std::ostream& out) {
  const Tolerance tol = fl.tolerance();
  const TargetClass classes[] = {TargetClass::Any,
                                 TargetClass::Unbounded,
                                 TargetClass::Unattained,
                                 TargetClass::AttainedInterval,
                                 TargetClass::AttainedSingleton,
                                 TargetClass::NoSlater};
  CheckStats st;
  for (int i = 0; i < count; ++i) {
    const TargetClass cls = classes[i % 6];
    const Qp1qcInstance inst = gen_instance(seed + i, n, cls);
    std::string why;
    if (check_instance(inst, seed + i, tol, why)) {
      ++st.passed;
    } else {
      ++st.failed;
      out << "FAIL seed=" << (seed + i) << " class=" << target_class_name(cls) << ": " << why
          << "\n";
    }
  }
  if (fl.json)
    out << "{\"passed\":" << st.passed << ",\"count\":" << count << "}\n";
  else
    out << st.passed << "/" << count << " passed\n";
  return st.failed == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qp1qc: global solver for quadratic programs with one quadratic constraint"};
  app.require_subcommand(1);

  CommonFlags fl;
  std::string path;
  bool oracle = false;
  std::uint64_t seed = 0;
  int count = 100, dim = 2;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", fl.tol, "relative tolerance (default 1e-9)");
    cmd->add_flag("--json", fl.json, "machine-readable report");
  };

  CLI::App* solve = app.add_subcommand("solve", "classify and solve an instance file");
  solve->add_option("file", path, "instance file")->required();
  add_common(solve);
  solve->add_flag("--oracle", oracle, "append a grid cross-check (n <= 3)");
  solve->add_option("--seed", seed, "seed for randomized searches");

  CLI::App* pencil = app.add_subcommand("pencil", "pencil interval and SDC report");
  pencil->add_option("file", path, "instance file")->required();
  add_common(pencil);

  CLI::App* sdc = app.add_subcommand("sdc", "simultaneous diagonalization report");
  sdc->add_option("file", path, "instance file")->required();
  add_common(sdc);

  CLI::App* check = app.add_subcommand("check", "generate instances and cross-verify");
  add_common(check);
  check->add_option("--seed", seed, "base seed (default 0)");
  check->add_option("--count", count, "number of instances (default 100)");
  check->add_option("--n", dim, "instance dimension (default 2)");

  std::vector<const char*> argv;
  argv.push_back("qp1qc");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 64;
  }

  try {
    if (solve->parsed()) return cmd_solve(path, fl, oracle, seed, out, err);
    if (pencil->parsed()) return cmd_pencil(path, fl, true, out);
    if (sdc->parsed()) return cmd_sdc(path, fl, out);
    if (check->parsed()) return cmd_check(seed, count, dim, fl, out);
  } catch (const ParseError& e) {
    err << "parse error";
    if (!e.key.empty()) err << " [key " << e.key << "]";
    err << ": " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 64;
  }
  return 64;
}

}  // namespace qp1qc
