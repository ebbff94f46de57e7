#pragma once

// Damped Newton on the family period residuals, and continuation in alpha
// (or tau for the torus family) warm-started from the alpha = 0 roots.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dihedral/dccw.hpp"
#include "dihedral/de.hpp"
#include "dihedral/dks.hpp"

namespace dihedral {

enum class Family { de, dccw, dks };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::de: return "de";
    case Family::dccw: return "dccw";
    default: return "dks";
  }
}

inline std::optional<Family> family_from_string(const std::string& s) {
  if (s == "de") return Family::de;
  if (s == "dccw") return Family::dccw;
  if (s == "dks") return Family::dks;
  return std::nullopt;
}

struct SolveOptions {
  double tol = 1e-8;          // acceptance threshold on the residual norm
  int max_iterations = 30;
  int max_halvings = 30;      // step damping
  double fd_step = 1e-6;      // scaled by (1 + |param|)
  quad::Tolerance quad_tol{1e-11, 1e-11};
};

struct SolutionRecord {
  Family family = Family::de;
  double alpha = 0.0;
  double tau_im = 1.0;              // dks only; 1 otherwise
  std::array<double, 2> params{};   // (a,b) for de/dccw, (a,c) for dks
  double rho = 1.0;                 // de: Lopez-Ros scalar; 1 elsewhere
  double residual_norm = 0.0;
  int iterations = 0;
  bool solved = false;
  std::string message;

  double a() const { return params[0]; }
  double b_or_c() const { return params[1]; }
};

namespace solver_detail {

using Vec2 = std::array<double, 2>;
using ResidualFn = std::function<Vec2(const Vec2&)>;
using BoxFn = std::function<bool(const Vec2&)>;

inline double nrm(const Vec2& v) { return std::hypot(v[0], v[1]); }

struct NewtonOutcome {
  Vec2 x;
  double residual_norm;
  int iterations;
  bool solved;
  std::string message;
};

inline NewtonOutcome newton2(const ResidualFn& f, const BoxFn& inside,
                             Vec2 x0, const SolveOptions& opt) {
  Vec2 x = x0;
  Vec2 fx = f(x);
  double n0 = nrm(fx);
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (n0 < opt.tol) return {x, n0, it, true, "converged"};

    double J[2][2];
    for (int j = 0; j < 2; ++j) {
      const double h = opt.fd_step * (1.0 + std::abs(x[j]));
      Vec2 xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      // fall back to one-sided differences at the parameter-box boundary
      if (!inside(xp)) xp[j] = x[j];
      if (!inside(xm)) xm[j] = x[j];
      const double denom = xp[j] - xm[j];
      if (denom == 0.0)
        return {x, n0, it, false, "parameter box too thin for FD Jacobian"};
      const Vec2 fp = f(xp), fm = f(xm);
      J[0][j] = (fp[0] - fm[0]) / denom;
      J[1][j] = (fp[1] - fm[1]) / denom;
    }
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    const double scale = std::abs(J[0][0] * J[1][1]) + std::abs(J[0][1] * J[1][0]);
    if (!(std::abs(det) > 1e-14 * std::max(scale, 1e-300)))
      return {x, n0, it, false,
              "jacobian numerically singular (det=" + std::to_string(det) + ")"};
    const Vec2 step = {-(J[1][1] * fx[0] - J[0][1] * fx[1]) / det,
                       -(-J[1][0] * fx[0] + J[0][0] * fx[1]) / det};

    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opt.max_halvings; ++h) {
      const Vec2 xt = {x[0] + lambda * step[0], x[1] + lambda * step[1]};
      if (inside(xt)) {
        const Vec2 ft = f(xt);
        const double nt = nrm(ft);
        if (nt < n0) {
          x = xt;
          fx = ft;
          n0 = nt;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted)
      return {x, n0, it, false, "line search stalled (divergence)"};
  }
  return {x, n0, opt.max_iterations, n0 < opt.tol,
          n0 < opt.tol ? "converged" : "iteration budget exhausted"};
}

}  // namespace solver_detail

inline SolutionRecord solve_family(Family family, double alpha,
                                   std::optional<double> tau_im,
                                   std::array<double, 2> init,
                                   const SolveOptions& opt = {}) {
  using solver_detail::Vec2;
  SolutionRecord rec;
  rec.family = family;
  rec.alpha = alpha;
  rec.tau_im = tau_im.value_or(1.0);

  solver_detail::ResidualFn f;
  solver_detail::BoxFn inside;
  switch (family) {
    case Family::de:
      f = [&, alpha](const Vec2& x) -> Vec2 {
        return de::residual(x[0], x[1], alpha, opt.quad_tol);
      };
      inside = [](const Vec2& x) {
        return 1.0 + 1e-9 < x[0] && x[0] + 1e-9 < x[1];
      };
      break;
    case Family::dccw:
      f = [&, alpha](const Vec2& x) -> Vec2 {
        return dccw::residual_constrained(x[0], x[1], alpha, opt.quad_tol);
      };
      inside = [](const Vec2& x) {
        return 1.0 + 1e-9 < x[0] && x[0] + 1e-9 < x[1];  // then b < b^2/a
      };
      break;
    case Family::dks: {
      const double ti = rec.tau_im;
      f = [&, alpha, ti](const Vec2& x) -> Vec2 {
        return dks::residual(x[0], x[1], ti, alpha, opt.quad_tol);
      };
      inside = [alpha, ti](const Vec2& x) {
        const double b = x[0] * (1.0 - alpha) + 0.5 * alpha;
        return 1e-6 < x[0] && x[0] < 0.5 - 1e-6 && 1e-6 < x[1] &&
               x[1] < 0.5 * ti - 1e-6 && b < 0.5 - 1e-9;
      };
      break;
    }
  }

  auto out = solver_detail::newton2(f, inside, init, opt);
  if (!out.solved && family == Family::dks) {
    // the |r|^2 landscape has spurious boundary minima (e.g. the diagonal
    // ridge at tau = i); retry from a deterministic grid, nearest first
    const double ti = rec.tau_im;
    std::vector<Vec2> starts;
    for (double fa : {0.3, 0.5, 0.7})
      for (double fc : {0.3, 0.5, 0.7})
        starts.push_back({0.5 * fa, 0.5 * ti * fc});
    std::sort(starts.begin(), starts.end(), [&](const Vec2& u, const Vec2& v) {
      return std::hypot(u[0] - init[0], u[1] - init[1]) <
             std::hypot(v[0] - init[0], v[1] - init[1]);
    });
    for (const auto& s : starts) {
      auto retry = solver_detail::newton2(f, inside, s, opt);
      if (retry.solved) {
        retry.message = "converged (grid restart)";
        out = retry;
        break;
      }
    }
  }
  rec.params = out.x;
  rec.residual_norm = out.residual_norm;
  rec.iterations = out.iterations;
  rec.solved = out.solved;
  rec.message = out.message;
  if (family == Family::de && rec.solved) {
    const auto li = de::loop_integrals(rec.params[0], rec.params[1], alpha,
                                       opt.quad_tol);
    rec.rho = de::solve_rho(li, alpha);
  }
  return rec;
}

inline std::array<double, 2> alpha_zero_root(Family family) {
  switch (family) {
    case Family::de: return {de::kRootA, de::kRootB};
    case Family::dccw: return {dccw::kRootA, dccw::kRootB};
    default: return {dks::kTorusRoot, dks::kTorusRoot};
  }
}

// Continuation along an increasing alpha schedule starting at 0, warm
// starting each step and bisecting a failed step up to 4 levels. A truncated
// branch is reported, not fatal.
inline std::vector<SolutionRecord> continuation(
    Family family, std::span<const double> alpha_schedule,
    std::optional<double> tau_im = std::nullopt, const SolveOptions& opt = {},
    std::optional<std::array<double, 2>> init = std::nullopt) {
  if (alpha_schedule.empty() || alpha_schedule.front() != 0.0)
    throw std::invalid_argument("continuation: schedule must start at 0");
  for (std::size_t i = 1; i < alpha_schedule.size(); ++i)
    if (!(alpha_schedule[i] > alpha_schedule[i - 1]))
      throw std::invalid_argument("continuation: schedule must increase");

  std::vector<SolutionRecord> branch;
  std::array<double, 2> cur = init.value_or(alpha_zero_root(family));

  SolutionRecord first = solve_family(family, 0.0, tau_im, cur, opt);
  if (!first.solved) {
    branch.push_back(first);
    return branch;
  }
  branch.push_back(first);
  cur = first.params;

  for (std::size_t i = 1; i < alpha_schedule.size(); ++i) {
    double from = alpha_schedule[i - 1];
    const double target = alpha_schedule[i];

    // try the full step, bisecting on failure (<= 4 levels deep)
    std::function<bool(double, double, int)> advance =
        [&](double a0, double a1, int depth) -> bool {
      SolutionRecord rec = solve_family(family, a1, tau_im, cur, opt);
      if (rec.solved) {
        cur = rec.params;
        if (a1 == target) branch.push_back(rec);
        return true;
      }
      if (depth >= 4) return false;
      const double mid = 0.5 * (a0 + a1);
      if (!advance(a0, mid, depth + 1)) return false;
      return advance(mid, a1, depth + 1);
    };
    if (!advance(from, target, 0)) break;  // branch truncated
  }
  return branch;
}

// tau sweep for the torus family at fixed alpha, walking outward from tau=i.
inline std::vector<SolutionRecord> tau_sweep(double alpha,
                                             std::span<const double> tau_ims,
                                             const SolveOptions& opt = {}) {
  std::vector<SolutionRecord> out(tau_ims.size());
  // order: nearest to 1 first, warm-starting outward in each direction
  std::vector<std::size_t> order(tau_ims.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::abs(tau_ims[i] - 1.0) < std::abs(tau_ims[j] - 1.0);
  });
  std::array<double, 2> below = alpha_zero_root(Family::dks);
  std::array<double, 2> above = below;
  for (std::size_t k : order) {
    auto& warm = tau_ims[k] < 1.0 ? below : above;
    SolutionRecord rec =
        solve_family(Family::dks, alpha, tau_ims[k], warm, opt);
    if (rec.solved) warm = rec.params;
    out[k] = rec;
  }
  return out;
}

}  // namespace dihedral
