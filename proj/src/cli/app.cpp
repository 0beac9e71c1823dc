// app.cpp — command-line front end: sweep, state and verify subcommands
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "mfgs/cli.hpp"
#include "mfgs/comparator.hpp"
#include "mfgs/errors.hpp"

namespace mfgs::cli {

namespace {

using nlohmann::json;

Convention parse_convention(const std::string& s) {
  if (s == "renormalized") return Convention::Renormalized;
  if (s == "natural") return Convention::Natural;
  throw ValidationError("unknown convention '" + s + "' (renormalized, natural)");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw ValidationError("failed writing '" + path + "'");
}

json matrix_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array(), c = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      c.push_back(m(i, j).imag());
    }
    re.push_back(r);
    im.push_back(c);
  }
  return {{"real", re}, {"imag", im}};
}

json diagnostics_json(const Diagnostics& d) {
  return {{"lambda2q_beta", d.lambda2q_beta}, {"cutoff_beta", d.cutoff_beta}, {"coupling_ratio", d.coupling_ratio},
          {"strong_coupling", d.strong_coupling}, {"series_valid", d.series_valid},
          {"high_t_valid", d.high_t_valid}, {"min_eigenvalue", d.min_eigenvalue}, {"psd_warning", d.psd_warning}};
}

// Shared physical parameters of the sweep and state subcommands.
struct PhysicsOptions {
  CLI::Option *delta, *beta, *omega_c, *lambda2q, *spectral, *convention, *rel_tol;
  std::string spectral_v, convention_v = "renormalized";
};

void add_physics(CLI::App* app, SweepSpec& s, PhysicsOptions& o) {
  o.delta = app->add_option("--delta", s.delta, "tunnelling amplitude Δ (ε = 1)");
  o.beta = app->add_option("--beta", s.beta, "inverse temperature");
  o.omega_c = app->add_option("--omega-c", s.omega_c, "bath cutoff frequency");
  o.lambda2q = app->add_option("--lambda2q", s.lambda2q, "coupling strength λ²Q");
  o.spectral = app->add_option("--spectral", o.spectral_v, "lorentz-drude | ohmic | tabulated:PATH");
  o.convention = app->add_option("--convention", o.convention_v, "renormalized | natural");
  o.rel_tol = app->add_option("--rel-tol", s.rel_tol, "quadrature relative tolerance");
}

// Copies explicitly given options onto a base spec (a preset or the defaults).
void overlay(SweepSpec& base, const SweepSpec& given, const PhysicsOptions& o) {
  if (o.delta->count()) base.delta = given.delta;
  if (o.beta->count()) base.beta = given.beta;
  if (o.omega_c->count()) base.omega_c = given.omega_c;
  if (o.lambda2q->count()) base.lambda2q = given.lambda2q;
  if (o.spectral->count()) base.spectral = o.spectral_v;
  if (o.convention->count()) base.convention = parse_convention(o.convention_v);
  if (o.rel_tol->count()) base.rel_tol = given.rel_tol;
}

int run_state(const SweepSpec& spec, Method m) {
  const PointSetup ps = setup_point(spec, spec.lambda2q);
  const spinboson::SpinBosonParams sb{1.0, spec.delta};
  quad::QuadratureSettings q;
  q.rel_tol = spec.rel_tol;
  json out{{"method", to_string(m)}, {"convention", to_string(spec.convention)}, {"spectral", spec.spectral},
           {"delta", spec.delta}, {"beta", spec.beta}, {"omega_c", spec.omega_c}, {"lambda2q", spec.lambda2q}};
  Diagnostics diag = regime_diagnostics(ps.system, ps.bath, ps.density);
  std::optional<linalg::DensityMatrix> rho;
  switch (m) {
    case Method::Exact:
    case Method::HighT:
    case Method::Series: {
      const CorrectionMethod cm = m == Method::Exact   ? CorrectionMethod::ExactQuadrature
                                  : m == Method::HighT ? CorrectionMethod::HighTemperatureDawson
                                                       : CorrectionMethod::UltrastrongSeries;
      const auto r = steady_state(ps.system, ps.bath, ps.density, cm, spec.convention, q);
      diag = r.diagnostics;
      out["populations"] = r.populations;
      out["f"] = {{"f_01", r.f_values(0, 1)}, {"f_10", r.f_values(1, 0)}};
      rho = r.state;
      break;
    }
    case Method::ME: {
      const auto r = comparator::me_steady_state(ps.system, ps.bath, ps.density, q);
      out["populations"] = r.populations;
      out["truncation_tau"] = r.truncation_tau(0, 1);
      out["hermiticity_defect"] = r.hermiticity_defect;
      rho = r.state(ps.system);
      break;
    }
    case Method::Zeroth:
      rho = zeroth_order_state(ps.system, ps.bath, spec.convention, ps.density);
      break;
    case Method::Oracle: {
      auto bd = oracle::discretize(ps.density, spec.oracle_modes, 40.0 * ps.density.characteristic_frequency(),
                                   spec.fock_cutoff);
      oracle::OracleSettings os;
      os.max_dim = spec.oracle_max_dim;
      const auto r = oracle::exact_mean_force_state(ps.system, bd, ps.bath, spec.convention, os);
      out["fock_cutoffs"] = r.fock_cutoffs;
      out["converged"] = r.converged;
      json table = json::array();
      for (const auto& row : r.convergence)
        table.push_back({{"fock_cutoffs", row.fock_cutoffs},
                         {"distance_to_previous", std::isfinite(row.distance_to_previous)
                                                      ? json(row.distance_to_previous)
                                                      : json(nullptr)}});
      out["convergence"] = table;
      rho = r.state;
      break;
    }
  }
  const auto obs = spinboson::observables(*rho, sb);
  out["c_ss"] = {obs.c_ss.real(), obs.c_ss.imag()};
  out["c_eg"] = {obs.c_eg.real(), obs.c_eg.imag()};
  out["p_plus"] = obs.p_plus;
  out["p_e"] = obs.p_e;
  out["rho"] = matrix_json(rho->matrix());
  out["diagnostics"] = diagnostics_json(diag);
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Mean force Gibbs state of the spin-boson model: sweeps, single states and self-checks", "mfgs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "read options from an INI/TOML file; [sweep], [state] and [verify] sections");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "sweep one parameter and write a CSV table");
  SweepSpec given;
  PhysicsOptions sp;
  std::string preset, sweep_var = "lambda2Q", methods = "high-t,series,me", out, svg;
  add_physics(sweep, given, sp);
  auto* o_preset = sweep->add_option("--preset", preset, "fig1a | fig1b | fig2 | fig2-text | fig3");
  auto* o_var = sweep->add_option("--sweep", sweep_var, "swept variable: lambda2Q | beta | omega_c");
  auto* o_from = sweep->add_option("--from", given.from, "first grid value");
  auto* o_to = sweep->add_option("--to", given.to, "last grid value");
  auto* o_points = sweep->add_option("--points", given.points, "number of grid points (>= 2)");
  auto* o_log = sweep->add_flag("--log", given.log_grid, "logarithmic grid");
  auto* o_methods = sweep->add_option("--methods", methods, "comma list of exact,high-t,series,me,zeroth,oracle");
  auto* o_modes = sweep->add_option("--oracle-modes", given.oracle_modes, "oracle bath modes");
  auto* o_fock = sweep->add_option("--fock-cutoff", given.fock_cutoff, "oracle Fock cutoff per mode");
  auto* o_jobs = sweep->add_option("--jobs", given.jobs, "worker threads");
  sweep->add_option("--out", out, "CSV output path (default stdout)");
  sweep->add_option("--svg", svg, "also write an SVG plot");

  // state
  auto* state = app.add_subcommand("state", "print one steady state as JSON");
  SweepSpec sgiven;
  PhysicsOptions stp;
  std::string smethod = "high-t";
  add_physics(state, sgiven, stp);
  state->add_option("--method", smethod, "exact | high-t | series | me | zeroth | oracle");
  auto* s_modes = state->add_option("--oracle-modes", sgiven.oracle_modes, "oracle bath modes");
  auto* s_fock = state->add_option("--fock-cutoff", sgiven.fock_cutoff, "oracle Fock cutoff per mode");

  // verify
  auto* verify = app.add_subcommand("verify", "run self-checks and print a JSON report");
  VerifyConfig vcfg;
  std::string checks = "trace_identity,hermiticity,kernel_symmetry,dawson", vout;
  verify->add_option("--checks", checks, "comma list of checks (empty for none)");
  verify->add_option("--trace-tolerance", vcfg.trace_tolerance, "relative tolerance of the trace identity");
  verify->add_option("--hermiticity-tolerance", vcfg.hermiticity_tolerance, "relative tolerance of p f symmetry");
  verify->add_option("--fock-cutoff", vcfg.fock_cutoff, "Fock cutoff of the trace identity mode");
  verify->add_option("--random-systems", vcfg.random_systems, "random systems in the hermiticity check");
  verify->add_option("--seed", vcfg.seed, "random seed");
  verify->add_option("--out", vout, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sweep) {
      SweepSpec spec = o_preset->count() ? find_preset(preset).spec : SweepSpec{};
      overlay(spec, given, sp);
      if (o_var->count()) spec.swept = parse_sweep_variable(sweep_var);
      if (o_from->count()) spec.from = given.from;
      if (o_to->count()) spec.to = given.to;
      if (o_points->count()) spec.points = given.points;
      if (o_log->count()) spec.log_grid = given.log_grid;
      if (o_methods->count()) spec.methods = parse_methods(methods);
      if (o_modes->count()) spec.oracle_modes = given.oracle_modes;
      if (o_fock->count()) spec.fock_cutoff = given.fock_cutoff;
      if (o_jobs->count()) spec.jobs = given.jobs;
      const SweepResult r = run_sweep(spec);
      write_text(out, to_csv(r));
      if (!svg.empty()) {
        SvgOptions so;
        if (o_preset->count()) {
          const Preset& p = find_preset(preset);
          so.observable = p.plotted;
          so.validity_line = p.validity_line;
          if (std::isfinite(p.series_line)) so.series_line = p.series_line;
          so.title = p.name;
        }
        write_text(svg, to_svg(r, so));
      }
      return 0;
    }
    if (*state) {
      SweepSpec spec;
      overlay(spec, sgiven, stp);
      if (s_modes->count()) spec.oracle_modes = sgiven.oracle_modes;
      if (s_fock->count()) spec.fock_cutoff = sgiven.fock_cutoff;
      spec.swept = SweepVariable::Lambda2Q;
      return run_state(spec, parse_method(smethod));
    }
    if (*verify) {
      vcfg.checks.clear();
      std::stringstream ss(checks);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) vcfg.checks.push_back(item);
      const VerifyReport rep = run_verify(vcfg);
      write_text(vout, rep.json + "\n");
      return rep.passed ? 0 : 2;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const UnsupportedOperation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace mfgs::cli
