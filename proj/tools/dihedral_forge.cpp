// dihedral-forge: solve the period problems of the three dihedralized
// minimal-surface families, continue them in the wedge angle (or modulus),
// and export triangulated meshes of the resulting surfaces.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dihedral/builder.hpp"
#include "dihedral/mesh_io.hpp"
#include "dihedral/solution_io.hpp"
#include "dihedral/solver.hpp"
#include "dihedral/verify.hpp"
#include "dihedral/version.hpp"

using namespace dihedral;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolverFailure = 2;
constexpr int kExitBadArtifact = 3;
constexpr int kExitUsage = 64;

struct CommonConfig {
  std::string family = "de";
  double alpha = 0.0;
  double alpha_max = 0.0;
  int steps = 10;
  std::string tau;      // value, or "lo:hi" for a sweep in `continue`
  int resolution = 32;
  double tol = 1e-8;
  std::string out;
  std::string symmetry = "fundamental";
  std::string suite = "all";
  std::string solution;  // input solution file for `mesh`
};

std::optional<double> parse_tau_value(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

int cmd_solve(const CommonConfig& cfg) {
  const auto fam = family_from_string(cfg.family);
  if (!fam) {
    std::cerr << "unknown family: " << cfg.family << "\n";
    return kExitUsage;
  }
  std::optional<double> tau;
  if (!cfg.tau.empty()) {
    if (*fam != Family::dks) {
      std::cerr << "--tau applies only to the dks family\n";
      return kExitUsage;
    }
    tau = parse_tau_value(cfg.tau);
    if (!tau || !(*tau > 0.0)) {
      std::cerr << "invalid --tau value\n";
      return kExitUsage;
    }
  }
  if (cfg.alpha < 0.0) {
    std::cerr << "--alpha must be >= 0\n";
    return kExitUsage;
  }

  SolveOptions opt;
  opt.tol = cfg.tol;
  SolutionRecord rec =
      solve_family(*fam, cfg.alpha, tau, alpha_zero_root(*fam), opt);
  if (!rec.solved && cfg.alpha > 0.0) {
    // retry through a short continuation from the alpha = 0 root
    std::vector<double> sched;
    for (int k = 0; k <= 4; ++k) sched.push_back(cfg.alpha * k / 4.0);
    const auto branch = continuation(*fam, sched, tau, opt);
    if (!branch.empty() && branch.back().alpha == cfg.alpha)
      rec = branch.back();
  }

  if (!cfg.out.empty()) io::write_solutions({rec}, cfg.out);
  const std::string taustr =
      rec.family == Family::dks ? " tau=" + io::fmt(rec.tau_im) + "i" : "";
  std::printf("%s alpha=%g%s: %s  a=%.12g %s=%.12g  |residual|=%.3e  (%d "
              "iterations)\n",
              to_string(rec.family), rec.alpha, taustr.c_str(),
              rec.solved ? "solved" : "NOT SOLVED", rec.params[0],
              rec.family == Family::dks ? "c" : "b", rec.params[1],
              rec.residual_norm, rec.iterations);
  if (rec.family == Family::de && rec.solved)
    std::printf("  rho = %.12g\n", rec.rho);
  return rec.solved ? kExitOk : kExitSolverFailure;
}

int cmd_continue(const CommonConfig& cfg) {
  const auto fam = family_from_string(cfg.family);
  if (!fam) {
    std::cerr << "unknown family: " << cfg.family << "\n";
    return kExitUsage;
  }
  if (cfg.steps < 1) {
    std::cerr << "--steps must be >= 1\n";
    return kExitUsage;
  }
  SolveOptions opt;
  opt.tol = cfg.tol;

  // tau sweep mode: --family dks --tau lo:hi at fixed alpha
  const auto colon = cfg.tau.find(':');
  if (colon != std::string::npos) {
    if (*fam != Family::dks) {
      std::cerr << "--tau range applies only to the dks family\n";
      return kExitUsage;
    }
    const auto lo = parse_tau_value(cfg.tau.substr(0, colon));
    const auto hi = parse_tau_value(cfg.tau.substr(colon + 1));
    if (!lo || !hi || !(*lo > 0.0) || !(*hi > *lo)) {
      std::cerr << "invalid --tau range\n";
      return kExitUsage;
    }
    std::vector<double> taus;
    for (int k = 0; k <= cfg.steps; ++k)
      taus.push_back(*lo + (*hi - *lo) * k / cfg.steps);
    const auto recs = tau_sweep(cfg.alpha, taus, opt);
    int solved = 0;
    std::printf("# tau_im        a               c               residual\n");
    for (const auto& r : recs) {
      std::printf("%-14.8g %-15.10g %-15.10g %.3e %s\n", r.tau_im,
                  r.params[0], r.params[1], r.residual_norm,
                  r.solved ? "" : "FAILED");
      solved += r.solved ? 1 : 0;
    }
    if (!cfg.out.empty()) io::write_solutions(recs, cfg.out);
    return solved > 0 ? kExitOk : kExitSolverFailure;
  }

  if (cfg.alpha != 0.0) {
    std::cerr << "continuation schedule must start at alpha = 0\n";
    return kExitUsage;
  }
  if (!(cfg.alpha_max > 0.0)) {
    std::cerr << "--alpha-max must be > 0\n";
    return kExitUsage;
  }
  std::optional<double> tau = parse_tau_value(cfg.tau);
  if (!cfg.tau.empty() && *fam != Family::dks) {
    std::cerr << "--tau applies only to the dks family\n";
    return kExitUsage;
  }

  std::vector<double> sched;
  for (int k = 0; k <= cfg.steps; ++k)
    sched.push_back(cfg.alpha_max * k / cfg.steps);
  const auto branch = continuation(*fam, sched, tau, opt);

  std::printf("# alpha         a               %s               residual\n",
              *fam == Family::dks ? "c" : "b");
  for (const auto& r : branch)
    std::printf("%-14.8g %-15.10g %-15.10g %.3e\n", r.alpha, r.params[0],
                r.params[1], r.residual_norm);
  const bool any = !branch.empty() && branch.front().solved;
  if (any && branch.back().alpha < cfg.alpha_max)
    std::printf("# branch truncated at alpha = %g (of %g requested)\n",
                branch.back().alpha, cfg.alpha_max);
  if (!cfg.out.empty() && any) io::write_solutions(branch, cfg.out);
  return any ? kExitOk : kExitSolverFailure;
}

// fitted offset of a vertical plane with the given nominal angle
double fitted_offset(const mesh::SurfaceMesh& m, const std::string& tag,
                     double angle) {
  const double na = -std::sin(angle), nb = std::cos(angle);
  double sum = 0.0;
  int count = 0;
  for (const auto& e : m.boundary)
    if (e.tag == tag) {
      for (int v : {e.v0, e.v1}) {
        sum += na * m.vertices[v][0] + nb * m.vertices[v][1];
        ++count;
      }
    }
  if (count == 0) throw std::runtime_error("no boundary edges for " + tag);
  return sum / count;
}

int cmd_mesh(const CommonConfig& cfg) {
  if (cfg.solution.empty() || cfg.out.empty()) {
    std::cerr << "mesh requires a solution file and --out\n";
    return kExitUsage;
  }
  std::vector<SolutionRecord> recs;
  try {
    recs = io::read_solutions(cfg.solution);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitBadArtifact;
  }
  if (recs.empty()) {
    std::cerr << "empty solution file\n";
    return kExitBadArtifact;
  }
  const SolutionRecord rec = recs.back();
  if (!rec.solved) {
    std::cerr << "solution record is not solved; refusing to mesh\n";
    return kExitBadArtifact;
  }

  WeierstrassData data{HalfPlaneWeierstrass{}};
  mesh::FundamentalDomain dom;
  std::string plane0_tag, plane1_tag;
  switch (rec.family) {
    case Family::de: {
      de::Params p{rec.params[0], rec.params[1], rec.alpha, rec.rho};
      data = de::weierstrass_data(p);
      dom = mesh::domain_for(p);
      plane0_tag = "v4";
      plane1_tag = "v5";
      break;
    }
    case Family::dccw: {
      const auto p =
          dccw::Params::constrained(rec.params[0], rec.params[1], rec.alpha);
      data = dccw::weierstrass_data(p);
      dom = mesh::domain_for(p);
      plane0_tag = "v3";
      plane1_tag = "v4";
      break;
    }
    case Family::dks: {
      dks::Params p{rec.params[0], rec.params[1], TorusModulus(rec.tau_im),
                    rec.alpha};
      data = dks::weierstrass_data(p);
      dom = mesh::domain_for(p);
      plane0_tag = "dl";
      plane1_tag = "dr";
      break;
    }
  }

  const auto grid = mesh::sample_domain(dom, cfg.resolution, 1e-2);
  mesh::BuildReport report;
  const auto base =
      mesh::build_fundamental_piece(data, dom, grid, {1e-9, 1e-9}, &report);

  mesh::SurfaceMesh final_mesh = base;
  if (cfg.symmetry != "fundamental") {
    mesh::SymmetryGroup group;
    group.alpha = rec.alpha;
    group.angle0 = 0.0;
    group.offset0 = fitted_offset(base, plane0_tag, 0.0);
    // the realized second plane family sits at -alpha*pi
    group.angle1 = -rec.alpha * kPi;
    group.offset1 = fitted_offset(base, plane1_tag, group.angle1);
    std::vector<mesh::Isometry> elements;
    if (cfg.symmetry == "wedge") {
      elements.push_back(mesh::Isometry{});
      elements.push_back(
          mesh::vertical_plane_reflection(group.angle0, group.offset0));
    } else if (cfg.symmetry == "full") {
      if (rec.alpha > 0.0) {
        const double n = 1.0 / rec.alpha;
        if (std::abs(n - std::round(n)) > 1e-6) {
          std::cerr << "full extension needs alpha = 1/n\n";
          return kExitUsage;
        }
        group.order_n = static_cast<int>(std::round(n));
      } else {
        group.order_n = 0;  // translation group of the dihedral limit
      }
      elements = mesh::group_elements(group, 1);
    } else {
      std::cerr << "unknown symmetry mode: " << cfg.symmetry << "\n";
      return kExitUsage;
    }
    mesh::ExtendReport er;
    final_mesh = mesh::extend_by_symmetry(base, elements, 1e-6, &er);
    std::printf("extension: %zu copies, weld gap %.3e\n", elements.size(),
                er.max_weld_gap);
  }

  mesh::write_mesh(final_mesh, cfg.out,
                   std::string(to_string(rec.family)) +
                       " alpha=" + io::fmt(rec.alpha));
  std::printf("mesh: %zu vertices, %zu triangles -> %s (closure gap %.3e)\n",
              final_mesh.vertices.size(), final_mesh.triangles.size(),
              cfg.out.c_str(), report.max_closure_gap);
  return kExitOk;
}

int cmd_verify(const CommonConfig& cfg) {
  std::vector<verify::CheckResult> checks;
  if (cfg.suite == "paper" || cfg.suite == "all") {
    const auto v = verify::paper_suite();
    checks.insert(checks.end(), v.begin(), v.end());
  }
  if (cfg.suite == "properties" || cfg.suite == "all") {
    const auto v = verify::properties_suite();
    checks.insert(checks.end(), v.begin(), v.end());
  }
  if (checks.empty()) {
    std::cerr << "unknown suite: " << cfg.suite << "\n";
    return kExitUsage;
  }
  bool all = true;
  for (const auto& c : checks) {
    std::printf("check=%s value=%.12g target=%.12g tol=%.3g status=%s\n",
                c.name.c_str(), c.value, c.target, c.tol,
                c.pass ? "pass" : "FAIL");
    all = all && c.pass;
  }
  std::printf("%zu checks, %s\n", checks.size(),
              all ? "all passed" : "FAILURES present");
  return all ? kExitOk : kExitSolverFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dihedral-forge: dihedralized minimal-surface toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "de | dccw | dks");
    sub->add_option("--alpha", cfg.alpha, "dihedral angle parameter");
    sub->add_option("--tau", cfg.tau,
                    "Im(tau) for dks; lo:hi sweeps in `continue`");
    sub->add_option("--tol", cfg.tol, "solver residual tolerance");
    sub->add_option("--out", cfg.out, "output path");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one period problem");
  add_common(solve);

  CLI::App* cont =
      app.add_subcommand("continue", "continuation from alpha = 0");
  add_common(cont);
  cont->add_option("--alpha-max", cfg.alpha_max, "end of the schedule");
  cont->add_option("--steps", cfg.steps, "number of schedule increments");

  CLI::App* meshc = app.add_subcommand("mesh", "export a surface mesh");
  meshc->add_option("solution", cfg.solution, "solution file from solve");
  meshc->add_option("--resolution", cfg.resolution, "grid cells per side");
  meshc->add_option("--symmetry", cfg.symmetry, "fundamental | wedge | full");
  meshc->add_option("--out", cfg.out, "mesh path (.obj or .ply)");

  CLI::App* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", cfg.suite, "paper | properties | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg);
    if (cont->parsed()) return cmd_continue(cfg);
    if (meshc->parsed()) return cmd_mesh(cfg);
    if (ver->parsed()) return cmd_verify(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitUsage;
}
