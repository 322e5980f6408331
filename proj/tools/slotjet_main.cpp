#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slotjet/config.hpp"
#include "slotjet/error.hpp"
#include "slotjet/shooting.hpp"
#include "slotjet/svg.hpp"
#include "slotjet/velocity.hpp"

namespace {

using namespace slotjet;

// Exit codes: 1 config, 2 convergence, 3 invariant violation.
constexpr int kExitConfig = 1;
constexpr int kExitConvergence = 2;
constexpr int kExitInvariant = 3;

int classify_exit(const std::string& code) {
  if (code == "NOT_CONVERGED" || code == "BRACKET_INVALID")
    return kExitConvergence;
  if (code == "MULTI_CROSSING" || code == "NO_CROSSING" ||
      code == "MONOTONE_Y_VIOLATION" || code == "BOX_VIOLATION")
    return kExitInvariant;
  return kExitConfig;
}

[[noreturn]] void die(const std::string& code, const std::string& what) {
  std::cerr << "error: " << code << (what.empty() ? "" : " " + what) << "\n";
  std::exit(classify_exit(code));
}

struct Cli {
  std::string config_path;
  std::string out_dir;
  double dx_override = -1;
};

RunConfig load(const Cli& cli) {
  RunConfig cfg = parse_config_file(cli.config_path);
  if (!cli.out_dir.empty()) cfg.out = cli.out_dir;
  if (cli.dx_override > 0) cfg.dx = cli.dx_override;
  if (cfg.out.empty()) cfg.out = ".";
  if (const char* env = std::getenv("SLOTJET_MAX_SWEEPS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) cfg.max_sweeps = v;
  }
  return cfg;
}

FitOptions fit_options(const RunConfig& cfg) {
  FitOptions o;
  if (cfg.lambda_lo) o.lambda_lo = *cfg.lambda_lo;
  if (cfg.lambda_hi) o.lambda_hi = *cfg.lambda_hi;
  if (cfg.lambda_tol) o.lambda_tol = *cfg.lambda_tol;
  if (cfg.fit_tol) o.fit_tol = *cfg.fit_tol;
  if (cfg.pad) o.pad = *cfg.pad;
  if (cfg.tol) o.minimize.tol = *cfg.tol;
  if (cfg.max_sweeps) o.minimize.max_sweeps = *cfg.max_sweeps;
  if (cfg.omega) o.minimize.omega = *cfg.omega;
  if (cfg.trace_every) o.minimize.trace_every = *cfg.trace_every;
  return o;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream os(path, std::ios::binary);
  if (!os) die("OUTPUT_UNWRITABLE", path);
  return os;
}

void write_solve_outputs(const RunConfig& cfg, const DomainSpec& spec,
                         const FitResult& fit) {
  const Coefficients c = make_coefficients(spec, fit.report.lambda_star);
  const SandwichReport sw = sandwich_check(fit.field, c);
  const AsymptoticsReport asym = asymptotics_check(fit.field, c, spec);
  const double mono_y = monotone_y_violation(fit.field);
  const VelocityField vel = recover(fit.field, spec);
  const PositivityReport pos = positivity_report(vel, fit.field);

  std::vector<std::pair<std::string, double>> rows = {
      {"lambda", fit.report.lambda_star},
      {"h", fit.report.h},
      {"fit_residual", fit.report.fit_residual},
      {"jump_median", fit.report.jump_median},
      {"jump_p90", fit.report.jump_p90},
      {"detachment_slope", fit.report.detachment_slope},
      {"energy", fit.report.energy},
      {"sweeps", static_cast<double>(fit.report.sweeps)},
      {"dx", fit.report.dx},
      {"converged", fit.report.converged ? 1.0 : 0.0},
      {"downstream_height", fit.curve.downstream_height},
      {"monotone_y_violation", mono_y},
      {"sandwich_violations", static_cast<double>(sw.violations)},
      {"asym_downstream", asym.downstream},
      {"asym_upstream", asym.upstream},
      {"asym_slot", asym.slot},
      {"u_nonpositive", static_cast<double>(pos.u_nonpositive)},
      {"v_nonpositive_near_slot",
       static_cast<double>(pos.v_nonpositive_near_slot)},
      {"scan_monotone", fit.scan_monotone ? 1.0 : 0.0},
  };
  {
    auto os = open_out(cfg.out, "report.csv");
    dump_diagnostics_csv(rows, os);
  }
  {
    auto os = open_out(cfg.out, "curve.csv");
    dump_curve_csv(fit.curve, os);
  }
  {
    auto os = open_out(cfg.out, "field.csv");
    dump_field_csv(fit.field, os);
  }
  {
    auto os = open_out(cfg.out, "trace.csv");
    dump_trace_csv(fit.last_minimize, os);
  }
  {
    auto os = open_out(cfg.out, "velocity.csv");
    dump_velocity_csv(vel, os);
  }
  {
    auto os = open_out(cfg.out, "field.svg");
    render_svg(fit.field, &fit.curve, os);
  }

  std::printf("lambda %.9g\n", fit.report.lambda_star);
  std::printf("h %.9g\n", fit.report.h);
  std::printf("fit_residual %.9g\n", fit.report.fit_residual);
  std::printf("jump_median %.9g\n", fit.report.jump_median);

  if (!fit.report.converged) die("NOT_CONVERGED", "see report.csv");
  if (mono_y > 1e-9) die("MONOTONE_Y_VIOLATION", std::to_string(mono_y));
}

int cmd_solve(const Cli& cli) {
  const RunConfig cfg = load(cli);
  const DomainSpec spec = validate(cfg.to_spec(/*require_q=*/true));
  const FitResult fit = fit_lambda(spec, cfg.require_dx(), fit_options(cfg));
  write_solve_outputs(cfg, spec, fit);
  return 0;
}

int cmd_trace(const Cli& cli) {
  const RunConfig cfg = load(cli);
  const DomainSpec spec = validate(cfg.to_spec(/*require_q=*/false));
  if (cfg.q_list.size() < 2) die("NEED_TWO_POINTS", "Q_list needs >= 2 values");
  const TraceResult tr = trace(spec, cfg.q_list, cfg.require_dx(),
                               fit_options(cfg));
  {
    auto os = open_out(cfg.out, "lambda_q.csv");
    dump_lambda_q_csv(tr.curve, os);
  }
  std::printf("lambda_monotonic %s\n", tr.monotone ? "PASS" : "FAIL");
  if (!std::isnan(tr.curve.kappa_estimate))
    std::printf("kappa_estimate %.9g\n", tr.curve.kappa_estimate);
  if (!std::isnan(tr.curve.lambda_under_estimate))
    std::printf("lambda_under_estimate %.9g\n", tr.curve.lambda_under_estimate);
  return tr.monotone ? 0 : kExitInvariant;
}

int cmd_harmonic(const Cli& cli) {
  const RunConfig cfg = load(cli);
  const DomainSpec spec = validate(cfg.to_spec(/*require_q=*/false));
  const HarmonicSolve inf = harmonic_flux(spec.a, spec.b, spec.theta);
  std::printf("Q_infinite %.12g residual %.3g\n", inf.Q, inf.residual);
  const HarmonicSolve tr =
      harmonic_flux_truncated(spec.a, spec.b, spec.theta, spec.L);
  std::printf("Q_truncated %.12g residual %.3g\n", tr.Q, tr.residual);
  return 0;
}

int cmd_render(const Cli& cli) {
  const RunConfig cfg = load(cli);
  if (cfg.lambda) {
    // Fixed-lambda relaxation without shooting.
    const DomainSpec spec = validate(cfg.to_spec(/*require_q=*/true));
    GridField field = build(spec, cfg.require_dx(),
                            cfg.pad ? *cfg.pad : -1.0);
    const Coefficients c = make_coefficients(spec, *cfg.lambda);
    initialize_profile(field, c);
    MinimizeOptions mo;
    if (cfg.tol) mo.tol = *cfg.tol;
    if (cfg.max_sweeps) mo.max_sweeps = *cfg.max_sweeps;
    if (cfg.omega) mo.omega = *cfg.omega;
    const MinimizeReport rep = minimize(field, c, mo);
    const FreeBoundaryCurve curve = extract(field);
    {
      auto os = open_out(cfg.out, "field.svg");
      render_svg(field, &curve, os);
    }
    {
      auto os = open_out(cfg.out, "curve.csv");
      dump_curve_csv(curve, os);
    }
    if (!rep.converged) die("NOT_CONVERGED", "fixed-lambda relaxation");
    return 0;
  }
  const RunConfig cfg2 = cfg;
  const DomainSpec spec = validate(cfg2.to_spec(/*require_q=*/true));
  const FitResult fit = fit_lambda(spec, cfg2.require_dx(), fit_options(cfg2));
  {
    auto os = open_out(cfg2.out, "field.svg");
    render_svg(fit.field, &fit.curve, os);
  }
  {
    auto os = open_out(cfg2.out, "curve.csv");
    dump_curve_csv(fit.curve, os);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase slot-injection free-boundary solver"};
  app.require_subcommand(1);

  Cli cli;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", cli.config_path, "key=value config file")
        ->required();
    sub->add_option("--out", cli.out_dir, "output directory");
    sub->add_option("--dx", cli.dx_override, "grid spacing override");
  };
  auto* solve = app.add_subcommand("solve", "fit the jump constant and emit diagnostics");
  auto* trace_cmd = app.add_subcommand("trace", "sweep the flux list and emit lambda(Q)");
  auto* harmonic = app.add_subcommand("harmonic", "closed-form zero-jump fluxes");
  auto* render = app.add_subcommand("render", "SVG of the field and interface");
  for (auto* sub : {solve, trace_cmd, harmonic, render}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(cli);
    if (trace_cmd->parsed()) return cmd_trace(cli);
    if (harmonic->parsed()) return cmd_harmonic(cli);
    if (render->parsed()) return cmd_render(cli);
  } catch (const Error& e) {
    die(e.code(), e.what());
  } catch (const std::exception& e) {
    die("INTERNAL", e.what());
  }
  return 0;
}
