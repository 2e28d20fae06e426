#include "qp1qc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qp1qc/linalg.hpp"
#include "qp1qc/rng.hpp"

namespace qp1qc {

namespace {

struct GridPoint {
  double value = std::numeric_limits<double>::infinity();
  long long index = -1;  // unique per sample; ties in value break on it
  double pt[3] = {0, 0, 0};

  bool better_than(const GridPoint& o) const {
    return value < o.value || (value == o.value && index < o.index);
  }
};

struct BoxScan {
  GridPoint best;
  long long feasible_count = 0;
  std::vector<GridPoint> top;        // up to kTopKeep best feasible points
  std::vector<GridPoint> cell_best;  // best feasible point per 3^n subcell
};

constexpr int kTopKeep = 128;
constexpr int kSeeds = 8;      // walked candidates
constexpr int kBasins = 4;     // fully refined candidates
constexpr int kWalkBudget = 32;  // boundary-following moves per seed

void push_top(std::vector<GridPoint>& top, const GridPoint& gp) {
  auto cmp = [](const GridPoint& a, const GridPoint& b) { return a.better_than(b); };
  if (static_cast<int>(top.size()) == kTopKeep) {
    if (!gp.better_than(top.front())) return;  // front is the worst kept
    std::pop_heap(top.begin(), top.end(), cmp);
    top.pop_back();
  }
  top.push_back(gp);
  std::push_heap(top.begin(), top.end(), cmp);
}

VectorXd point_of(const GridPoint& gp, int n) {
  VectorXd x(n);
  for (int k = 0; k < n; ++k) x[k] = gp.pt[k];
  return x;
}

// Stable real roots of a t^2 + b t + c = 0 (for boundary crossings).
int line_roots(double a, double b, double c, double out[2]) {
  if (std::abs(a) < 1e-300) {
    if (std::abs(b) < 1e-300) return 0;
    out[0] = -c / b;
    return 1;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0) return 0;
  const double s = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0 ? s : -s));
  out[0] = q / a;
  out[1] = std::abs(q) > 0 ? c / q : out[0];
  return 2;
}

// One box sweep. The last axis is hoisted: along it both F and G are scalar
// quadratics whose coefficients are built once per outer point.
BoxScan scan_box(const Qp1qcInstance& inst, const VectorXd& center, double radius,
                 int steps, double feas_band, bool parallel, bool track_cells = false) {
  const int n = inst.dim();
  const MatrixXd &Am = inst.A.mat(), &Bm = inst.B.mat();
  const VectorXd lo = center.array() - radius;
  const double spacing = steps > 1 ? 2.0 * radius / (steps - 1) : 0.0;
  long long outer_count = 1;
  for (int k = 0; k < n - 1; ++k) outer_count *= steps;
  int ncells = 1;
  if (track_cells)
    for (int k = 0; k < n; ++k) ncells *= 3;

  std::vector<BoxScan> partial;
  int nthreads = 1;
#ifdef _OPENMP
  nthreads = parallel ? omp_get_max_threads() : 1;
#else
  (void)parallel;
#endif
  partial.resize(nthreads);
  for (auto& p : partial) p.cell_best.resize(track_cells ? ncells : 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads)
#endif
  for (long long outer = 0; outer < outer_count; ++outer) {
#ifdef _OPENMP
    BoxScan& acc = partial[omp_get_thread_num()];
#else
    BoxScan& acc = partial[0];
#endif
    VectorXd x(n);
    long long rest = outer;
    int cell_base = 0, cell_weight = 3;
    for (int k = 0; k < n - 1; ++k) {
      const int ik = static_cast<int>(rest % steps);
      x[k] = lo[k] + spacing * ik;
      if (track_cells) {
        cell_base += cell_weight * std::min(2, 3 * ik / steps);
        cell_weight *= 3;
      }
      rest /= steps;
    }
    x[n - 1] = 0.0;
    // F(x + t e_last) = aF + bF t + cF t^2, same for G
    const double cF = Am(n - 1, n - 1), cG = Bm(n - 1, n - 1);
    double bF = -2.0 * inst.f[n - 1], bG = -2.0 * inst.g[n - 1];
    for (int k = 0; k < n - 1; ++k) {
      bF += 2.0 * Am(n - 1, k) * x[k];
      bG += 2.0 * Bm(n - 1, k) * x[k];
    }
    const double aF = inst.objective(x), aG = inst.constraint(x);
    for (int i = 0; i < steps; ++i) {
      const double t = lo[n - 1] + spacing * i;
      const double G = (cG * t + bG) * t + aG;
      if (G > inst.mu + feas_band) continue;
      const double F = (cF * t + bF) * t + aF;
      GridPoint gp{F, (2 * n + 1) * (outer * steps + i), {0, 0, 0}};
      for (int k = 0; k < n - 1; ++k) gp.pt[k] = x[k];
      gp.pt[n - 1] = t;
      ++acc.feasible_count;
      if (gp.better_than(acc.best)) acc.best = gp;
      push_top(acc.top, gp);
      if (track_cells) {
        const int cell = cell_base + std::min(2, 3 * i / steps);
        if (gp.better_than(acc.cell_best[cell])) acc.cell_best[cell] = gp;
      }
    }
  }

  BoxScan out;
  out.cell_best.resize(track_cells ? ncells : 0);
  for (const BoxScan& p : partial) {
    out.feasible_count += p.feasible_count;
    if (p.best.index >= 0 && p.best.better_than(out.best)) out.best = p.best;
    for (const GridPoint& gp : p.top) out.top.push_back(gp);
    for (int c = 0; c < static_cast<int>(p.cell_best.size()); ++c)
      if (p.cell_best[c].index >= 0 && p.cell_best[c].better_than(out.cell_best[c]))
        out.cell_best[c] = p.cell_best[c];
  }

  // Exact constraint-boundary crossings along every axis direction. A
  // boundary optimum is tangent to at most n-1 of them, so some sweep always
  // samples it with no perpendicular offset and the incumbent value
  // converges quadratically in the spacing (folds included).
  long long line_count = 1;
  for (int k = 0; k < n - 1; ++k) line_count *= steps;
  for (int axis = 0; axis < n; ++axis) {
    std::vector<BoxScan> sweep(nthreads);
    for (auto& p : sweep) p.cell_best.resize(track_cells ? ncells : 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads)
#endif
    for (long long line = 0; line < line_count; ++line) {
#ifdef _OPENMP
      BoxScan& acc = sweep[omp_get_thread_num()];
#else
      BoxScan& acc = sweep[0];
#endif
      double x[3] = {0, 0, 0};
      long long rest = line;
      for (int k = 0; k < n; ++k) {
        if (k == axis) continue;
        x[k] = lo[k] + spacing * (rest % steps);
        rest /= steps;
      }
      const double cG = Bm(axis, axis), cF = Am(axis, axis);
      double bG = -2.0 * inst.g[axis], bF = -2.0 * inst.f[axis];
      double aG = 0.0, aF = 0.0;
      for (int k = 0; k < n; ++k) {
        if (k == axis) continue;
        bG += 2.0 * Bm(axis, k) * x[k];
        bF += 2.0 * Am(axis, k) * x[k];
        aG -= 2.0 * inst.g[k] * x[k];
        aF -= 2.0 * inst.f[k] * x[k];
        for (int l = 0; l < n; ++l) {
          if (l == axis) continue;
          aG += Bm(k, l) * x[k] * x[l];
          aF += Am(k, l) * x[k] * x[l];
        }
      }
      double roots[2];
      const int nr = line_roots(cG, bG, aG - inst.mu, roots);
      const double t_lo = lo[axis], t_hi = lo[axis] + spacing * (steps - 1);
      for (int r = 0; r < nr; ++r) {
        const double t = roots[r];
        if (!(t >= t_lo && t <= t_hi)) continue;
        const int i_near = std::clamp(
            static_cast<int>((t - t_lo) / std::max(spacing, 1e-300) + 0.5), 0, steps - 1);
        GridPoint gp{(cF * t + bF) * t + aF,
                     (2 * n + 1) * (line * steps + i_near) + 1 + 2 * axis + r,
                     {0, 0, 0}};
        for (int k = 0; k < n; ++k) gp.pt[k] = x[k];
        gp.pt[axis] = t;
        ++acc.feasible_count;
        if (gp.better_than(acc.best)) acc.best = gp;
        push_top(acc.top, gp);
        if (track_cells) {
          // same digit layout as the main sweep: axes 0..n-2 carry weights
          // 3, 9, ..., the last axis weight 1
          int cell = 0, w = 3;
          for (int k = 0; k < n; ++k) {
            const int ik = std::clamp(
                static_cast<int>((gp.pt[k] - lo[k]) / std::max(spacing, 1e-300) + 0.5), 0,
                steps - 1);
            const int digit = std::min(2, 3 * ik / steps);
            if (k == n - 1) {
              cell += digit;
            } else {
              cell += w * digit;
              w *= 3;
            }
          }
          if (gp.better_than(acc.cell_best[cell])) acc.cell_best[cell] = gp;
        }
      }
    }
    for (const BoxScan& p : sweep) {
      out.feasible_count += p.feasible_count;
      if (p.best.index >= 0 && p.best.better_than(out.best)) out.best = p.best;
      for (const GridPoint& gp : p.top) out.top.push_back(gp);
      for (int c = 0; c < static_cast<int>(p.cell_best.size()); ++c)
        if (p.cell_best[c].index >= 0 && p.cell_best[c].better_than(out.cell_best[c]))
          out.cell_best[c] = p.cell_best[c];
    }
  }

  std::sort(out.top.begin(), out.top.end(),
            [](const GridPoint& a, const GridPoint& b) { return a.better_than(b); });
  if (static_cast<int>(out.top.size()) > kTopKeep) out.top.resize(kTopKeep);
  return out;
}

struct Seed {
  double value;
  VectorXd point;
};

OracleReport grid_run(const Qp1qcInstance& inst, const GridSpec& spec, bool parallel) {
  const int n = inst.dim();
  if (n > 3) throw DimensionTooLarge("grid_infimum: n must be <= 3");
  const int steps = spec.steps % 2 == 1 ? spec.steps : spec.steps + 1;
  const double feas_band = 1e-9 * std::max(1.0, std::abs(inst.mu));

  const VectorXd center0 = VectorXd::Zero(n);
  const BoxScan base =
      scan_box(inst, center0, spec.radius, steps, feas_band, parallel, true);

  OracleReport rep;
  rep.feasible_count = base.feasible_count;
  if (base.best.index < 0) {
    rep.best_point = VectorXd::Zero(n);
    return rep;
  }
  const double spacing0 = 2.0 * spec.radius / (steps - 1);

  // Seeds: well-separated members of the global top list plus the best point
  // of every 3^n subcell, so each region of the feasible set launches a
  // local search regardless of how grid values rank across regions.
  std::vector<Seed> seeds;
  auto add_seed = [&](const GridPoint& gp, double min_sep) {
    if (gp.index < 0) return;
    const VectorXd x = point_of(gp, n);
    for (const Seed& s : seeds)
      if ((x - s.point).lpNorm<Eigen::Infinity>() < min_sep) return;
    seeds.push_back({gp.value, x});
  };
  int taken = 0;
  for (const GridPoint& gp : base.top) {
    if (taken >= kSeeds) break;
    const size_t before = seeds.size();
    add_seed(gp, 8.0 * spacing0);
    taken += seeds.size() > before;
  }
  for (const GridPoint& gp : base.cell_best) add_seed(gp, 2.0 * spacing0);

  // Walk phase: boundary minima pull incumbents sideways; follow the descent
  // at the base resolution with cheap low-resolution boxes.
  for (Seed& s : seeds) {
    for (int move = 0; move < kWalkBudget; ++move) {
      const double rad = 5.0 * spacing0;
      const BoxScan w = scan_box(inst, s.point, rad, 11, feas_band, parallel);
      if (w.best.index < 0 || w.best.value >= s.value) break;
      const double sp = 2.0 * rad / 10.0;
      const VectorXd cand = point_of(w.best, n);
      const bool on_edge = (cand - s.point).lpNorm<Eigen::Infinity>() > rad - 1.5 * sp;
      s.value = w.best.value;
      s.point = cand;
      if (!on_edge) break;
    }
  }
  std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
    if (a.value != b.value) return a.value < b.value;
    for (int k = 0; k < a.point.size(); ++k)
      if (a.point[k] != b.point[k]) return a.point[k] < b.point[k];
    return false;
  });
  std::vector<Seed> chosen;
  for (const Seed& s : seeds) {
    bool distinct = true;
    for (const Seed& c : chosen)
      if ((s.point - c.point).lpNorm<Eigen::Infinity>() < 4.0 * spacing0) {
        distinct = false;
        break;
      }
    if (distinct) chosen.push_back(s);
    if (static_cast<int>(chosen.size()) >= kBasins) break;
  }

  double best_val = base.best.value;
  VectorXd best_x = point_of(base.best, n);
  for (Seed& s : chosen) {
    double spacing = spacing0;
    int slide_budget = 16;  // extra same-resolution moves across all rounds
    for (int round = 0; round < spec.refine_rounds; ++round) {
      // The window must track the optimum as resolution shrinks; when the
      // best point lands on the window edge (flat constraint boundaries can
      // put it many cells away tangentially), re-center at the same
      // resolution instead of shrinking past it.
      const double cells = round == 0 ? 5.0 : 4.0;
      const int steps_r = round == 0 ? 101 : 81;  // spacing shrinks 10x either way
      const double rad = cells * spacing;
      while (true) {
        const BoxScan w = scan_box(inst, s.point, rad, steps_r, feas_band, parallel);
        if (w.best.index < 0 || w.best.value >= s.value) break;
        const double grid_h = 2.0 * rad / (steps_r - 1);
        const VectorXd cand = point_of(w.best, n);
        const bool near_edge =
            (cand - s.point).lpNorm<Eigen::Infinity>() > rad - 2.0 * grid_h;
        s.value = w.best.value;
        s.point = cand;
        if (!near_edge || slide_budget-- <= 0) break;
      }
      spacing /= 10.0;
    }
    if (s.value < best_val) {
      best_val = s.value;
      best_x = s.point;
    }
  }

  rep.best_value = best_val;
  rep.best_point = best_x;
  rep.diverged = best_val < -1e6;
  return rep;
}

}  // namespace

OracleReport grid_infimum(const Qp1qcInstance& inst, const GridSpec& spec) {
  return grid_run(inst, spec, true);
}

OracleReport grid_infimum_serial(const Qp1qcInstance& inst, const GridSpec& spec) {
  return grid_run(inst, spec, false);
}

bool ray_diverges(const Qp1qcInstance& inst, const VectorXd& base, const VectorXd& dir,
                  int samples) {
  if (dir.size() != base.size() || dir.norm() <= 1e-12) return false;
  double prev = std::numeric_limits<double>::infinity();
  double lowest = prev;
  double t = 1.0;
  for (int j = 0; j <= samples; ++j, t *= 10.0) {
    const VectorXd x = base + t * dir;
    const double xs = x.norm();
    const double gscale =
        std::max({1.0, std::abs(inst.mu),
                  inst.B.norm_fro() * xs * xs + 2.0 * inst.g.norm() * xs});
    if (inst.constraint(x) > inst.mu + 1e-9 * gscale) return false;
    const double F = inst.objective(x);
    if (j > 0 && F >= prev) return false;
    prev = F;
    lowest = std::min(lowest, F);
  }
  return lowest < -1e6;
}

const char* target_class_name(TargetClass c) {
  switch (c) {
    case TargetClass::Any: return "any";
    case TargetClass::NoSlater: return "no_slater";
    case TargetClass::Unbounded: return "unbounded";
    case TargetClass::Unattained: return "unattained";
    case TargetClass::AttainedInterval: return "attained_interval";
    case TargetClass::AttainedSingleton: return "attained_singleton";
  }
  return "?";
}

namespace {

MatrixXd rand_sym(Rng& rng, int n, double scale) {
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * rng.normal();
  return 0.5 * (m + m.transpose());
}

VectorXd rand_vec(Rng& rng, int n, double scale) {
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

MatrixXd rand_orthogonal(Rng& rng, int n) {
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

Qp1qcInstance conjugated(Rng& rng, const MatrixXd& Ah, const MatrixXd& Bh,
                         const VectorXd& fh, const VectorXd& gh, double mu) {
  const int n = static_cast<int>(Ah.rows());
  const MatrixXd Q = rand_orthogonal(rng, n);
  return Qp1qcInstance(SymMatrix(Q * Ah * Q.transpose()), SymMatrix(Q * Bh * Q.transpose()),
                       Q * fh, Q * gh, mu);
}

// spectral radius of rand_sym(k, s) grows like 2 s sqrt(k); this keeps
// padding blocks bounded independently of the dimension
double pad_scale(int k) { return 0.1 / std::sqrt(static_cast<double>(std::max(1, k))); }

MatrixXd pd_block(Rng& rng, int k, double shift) {
  if (k == 0) return MatrixXd::Zero(0, 0);
  const MatrixXd R = rand_sym(rng, k, 0.6);
  return R * R.transpose() / std::sqrt(static_cast<double>(k)) +
         shift * MatrixXd::Identity(k, k);
}

Qp1qcInstance gen_any(Rng& rng, int n) {
  return conjugated(rng, rand_sym(rng, n, 1.0), rand_sym(rng, n, 1.0), rand_vec(rng, n, 0.5),
                    rand_vec(rng, n, 0.5), rng.uniform(-2.0, 2.0));
}

Qp1qcInstance gen_no_slater(Rng& rng, int n) {
  const int deficiency = n > 1 ? rng.uniform_int(0, n - 1) : 0;
  MatrixXd L(n, n - deficiency);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n - deficiency; ++j) L(i, j) = rng.normal();
  const MatrixXd B = L * L.transpose() / std::sqrt(static_cast<double>(n));
  const VectorXd w = rand_vec(rng, n, 0.7);
  const VectorXd g = B * w;
  double mu = -w.dot(g);  // = -g^T B^+ g: the Slater boundary
  const double u = rng.uniform();
  if (u < 1.0 / 3.0) mu -= rng.uniform(0.2, 1.0);  // strictly infeasible
  return Qp1qcInstance(SymMatrix(rand_sym(rng, n, 1.0)), SymMatrix(B), rand_vec(rng, n, 0.5),
                       g, mu);
}

Qp1qcInstance gen_unbounded(Rng& rng, int n) {
  if (n == 1) {
    // F concave, constraint inactive
    MatrixXd A(1, 1), B(1, 1);
    A(0, 0) = -rng.uniform(0.5, 2.0);
    B(0, 0) = 0.0;
    VectorXd f = rand_vec(rng, 1, 0.3), g = VectorXd::Zero(1);
    return Qp1qcInstance(SymMatrix(A), SymMatrix(B), f, g, rng.uniform(0.0, 1.0));
  }
  // 2x2 core whose pencil is empty for every sigma, plus a PD tail.
  MatrixXd Ah = MatrixXd::Zero(n, n), Bh = MatrixXd::Zero(n, n);
  const double c1 = rng.uniform(0.5, 2.0), c2 = rng.uniform(0.5, 2.0);
  Ah(0, 0) = c1;
  Ah(1, 1) = -c1;
  Bh(0, 1) = Bh(1, 0) = c2;
  for (int k = 2; k < n; ++k) Ah(k, k) = rng.uniform(0.5, 2.0);
  return conjugated(rng, Ah, Bh, rand_vec(rng, n, 0.3), rand_vec(rng, n, 0.3),
                    rng.uniform(-0.5, 0.5));
}

// Singleton pencil at sigma* = 0 via the hard-case 2x2 core; f in R(A) and
// g aligned so that the restricted constraint has L* = 0 while mu_tilde < 0.
Qp1qcInstance gen_unattained_g(Rng& rng, int n) {
  MatrixXd Ah = MatrixXd::Zero(n, n), Bh = MatrixXd::Zero(n, n);
  Ah(1, 1) = 1.0;
  Bh(0, 1) = Bh(1, 0) = -1.0;
  if (n > 2) {
    Ah.bottomRightCorner(n - 2, n - 2) = pd_block(rng, n - 2, 0.7);
    Bh.bottomRightCorner(n - 2, n - 2) = rand_sym(rng, n - 2, pad_scale(n - 2));
  }
  const VectorXd w = rand_vec(rng, n, 0.6);
  const VectorXd fh = Ah * w;
  VectorXd base = w;
  base[0] = 0.0;  // A^+ A w zeroes the null component
  const VectorXd z = rand_vec(rng, n, 0.5);
  const VectorXd gh = Bh * base - Ah * z;
  const double Gbase = base.dot(Bh * base) - 2.0 * gh.dot(base);
  const double mu = Gbase - rng.uniform(0.4, 1.5);
  return conjugated(rng, Ah, Bh, fh, gh, mu);
}

// Singleton pencil at sigma* > 0 built from a both-sided degenerate 2x2 core
// plus a one-dimensional b-core giving M = diag(0, b); c = (0, c2).
struct ShiftedSingleton {
  MatrixXd A0, B;
  VectorXd base;
  double sigma_bar = 0.0;
  double Lstar = 0.0;
  VectorXd g, f;
  double Gbase = 0.0;
};

ShiftedSingleton shifted_singleton_core(Rng& rng, int n) {
  ShiftedSingleton s;
  s.A0 = MatrixXd::Zero(n, n);
  s.B = MatrixXd::Zero(n, n);
  s.A0(0, 0) = 1.0;
  s.B(0, 1) = s.B(1, 0) = 1.0;  // core: PSD only at 0, null dir e2
  const double b = rng.uniform(0.5, 1.5);
  if (n > 2) s.B(2, 2) = b;  // b-core: PSD iff sigma >= 0
  if (n > 3) {
    s.A0.bottomRightCorner(n - 3, n - 3) = pd_block(rng, n - 3, 0.7);
    s.B.bottomRightCorner(n - 3, n - 3) = rand_sym(rng, n - 3, pad_scale(n - 3));
  }
  s.sigma_bar = rng.uniform(0.3, 2.0);

  VectorXd w = rand_vec(rng, n, 0.6);
  s.base = w;
  s.base[1] = 0.0;  // null directions of A0 are e2 (and e3 for the b-core)
  if (n > 2) s.base[2] = 0.0;
  const VectorXd z = rand_vec(rng, n, 0.5);
  const double c2 = n > 2 ? rng.uniform(-1.0, 1.0) : 0.0;
  VectorXd cvec = VectorXd::Zero(n);
  if (n > 2) cvec[2] = c2;
  s.g = s.B * s.base - cvec - s.A0 * z;
  s.f = s.A0 * w - s.sigma_bar * s.g;
  s.Gbase = s.base.dot(s.B * s.base) - 2.0 * s.g.dot(s.base);
  s.Lstar = n > 2 ? -c2 * c2 / b : 0.0;
  return s;
}

Qp1qcInstance gen_unattained(Rng& rng, int n) {
  if (n < 2) return gen_any(rng, n);  // no 1-d instance can be unattained
  if (n >= 3 && rng.uniform() < 0.5) {
    ShiftedSingleton s = shifted_singleton_core(rng, n);
    const double mu_tilde = s.Lstar - rng.uniform(0.3, 1.0);
    const MatrixXd A = s.A0 - s.sigma_bar * s.B;
    return conjugated(rng, A, s.B, s.f, s.g, s.Gbase + mu_tilde);
  }
  return gen_unattained_g(rng, n);
}

Qp1qcInstance gen_attained_interval(Rng& rng, int n) {
  const double u = rng.uniform();
  if (u < 0.4 || n < 2) {  // plain: A positive definite
    const MatrixXd A = pd_block(rng, n, 0.3);
    return conjugated(rng, A, rand_sym(rng, n, 1.0), rand_vec(rng, n, 0.5),
                      rand_vec(rng, n, 0.5), rng.uniform(0.3, 2.0));
  }
  const int m = n - 1;  // one joint-null direction
  MatrixXd Ah = MatrixXd::Zero(n, n), Bh = MatrixXd::Zero(n, n);
  const MatrixXd Bu = rand_sym(rng, m, 0.8);
  Bh.topLeftCorner(m, m) = Bu;
  VectorXd fh(n), gh(n);
  fh.head(m) = rand_vec(rng, m, 0.5);
  gh.head(m) = rand_vec(rng, m, 0.5);
  const double qv = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 1.5);
  gh[m] = qv;
  if (u < 0.7) {  // (e): V^T f = 0, sigma = 0, A PSD
    Ah.topLeftCorner(m, m) = pd_block(rng, m, 0.3);
    fh[m] = 0.0;
  } else {  // (f): V^T f = -sigma_bar V^T g != 0
    const double sigma_bar = rng.uniform(0.3, 1.5);
    Ah.topLeftCorner(m, m) = pd_block(rng, m, 0.5) - sigma_bar * Bu;
    fh[m] = -sigma_bar * qv;
  }
  return conjugated(rng, Ah, Bh, fh, gh, rng.uniform(-1.0, 1.0));
}

Qp1qcInstance gen_attained_singleton(Rng& rng, int n) {
  if (n < 2) return gen_attained_interval(rng, n);
  const double u = rng.uniform();
  if (u < 0.35) {  // (g1)
    MatrixXd Ah = MatrixXd::Zero(n, n), Bh = MatrixXd::Zero(n, n);
    Ah(1, 1) = 1.0;
    Bh(0, 1) = Bh(1, 0) = 1.0;
    if (n > 2) {
      Ah.bottomRightCorner(n - 2, n - 2) = pd_block(rng, n - 2, 0.7);
      Bh.bottomRightCorner(n - 2, n - 2) = rand_sym(rng, n - 2, pad_scale(n - 2));
    }
    const VectorXd w = rand_vec(rng, n, 0.6);
    const VectorXd fh = Ah * w;
    VectorXd base = w;
    base[0] = 0.0;
    const VectorXd gh = Bh * base - Ah * rand_vec(rng, n, 0.5);
    const double Gbase = base.dot(Bh * base) - 2.0 * gh.dot(base);
    return conjugated(rng, Ah, Bh, fh, gh, Gbase + rng.uniform(0.0, 1.2));
  }
  if (u < 0.55) {  // (g2): L* = -inf through a null component of c
    MatrixXd Ah = MatrixXd::Zero(n, n), Bh = MatrixXd::Zero(n, n);
    Ah(1, 1) = 1.0;
    Bh(0, 1) = Bh(1, 0) = 1.0;
    if (n > 2) Ah.bottomRightCorner(n - 2, n - 2) = pd_block(rng, n - 2, 0.7);
    const VectorXd w = rand_vec(rng, n, 0.6);
    const VectorXd fh = Ah * w;
    VectorXd base = w;
    base[0] = 0.0;
    VectorXd cvec = VectorXd::Zero(n);
    cvec[0] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.4, 1.0);
    const VectorXd gh = Bh * base - cvec - Ah * rand_vec(rng, n, 0.5);
    const double Gbase = base.dot(Bh * base) - 2.0 * gh.dot(base);
    return conjugated(rng, Ah, Bh, fh, gh, Gbase - rng.uniform(0.0, 2.0));
  }
  if (u < 0.8 && n >= 3) {  // (h2) attained at sigma* > 0
    ShiftedSingleton s = shifted_singleton_core(rng, n);
    const double mu_tilde = s.Lstar + rng.uniform(0.0, 1.5);
    const MatrixXd A = s.A0 - s.sigma_bar * s.B;
    return conjugated(rng, A, s.B, s.f, s.g, s.Gbase + mu_tilde);
  }
  // (h4): A = -sigma_bar B with B indefinite; S is the whole null space
  MatrixXd B;
  for (int tries = 0; tries < 64; ++tries) {
    B = rand_sym(rng, n, 1.0);
    const EigDecomp e = sym_eig(SymMatrix(B));
    if (e.values[0] < -0.2 && e.values[n - 1] > 0.2) break;
  }
  const double sigma_bar = rng.uniform(0.3, 2.0);
  const VectorXd gh = rand_vec(rng, n, 0.5);
  const VectorXd fh = -sigma_bar * gh;
  return conjugated(rng, -sigma_bar * B, B, fh, gh, rng.uniform(-1.5, 1.5));
}

}  // namespace

Qp1qcInstance gen_instance(std::uint64_t seed, int n, TargetClass cls) {
  if (n < 1) throw PreconditionViolated("gen_instance: n must be >= 1");
  const std::uint64_t mix = seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL * n +
                            0x100000001b3ULL * static_cast<std::uint64_t>(cls);
  Rng rng(mix);
  switch (cls) {
    case TargetClass::Any: return gen_any(rng, n);
    case TargetClass::NoSlater: return gen_no_slater(rng, n);
    case TargetClass::Unbounded: return gen_unbounded(rng, n);
    case TargetClass::Unattained: return gen_unattained(rng, n);
    case TargetClass::AttainedInterval: return gen_attained_interval(rng, n);
    case TargetClass::AttainedSingleton: return gen_attained_singleton(rng, n);
  }
  throw PreconditionViolated("gen_instance: unknown class");
}

}  // namespace qp1qc
