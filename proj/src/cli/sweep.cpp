// sweep.cpp — sweep grid, per-point evaluation, presets and CSV output
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "mfgs/cli.hpp"
#include "mfgs/comparator.hpp"
#include "mfgs/errors.hpp"

namespace mfgs::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string clean_note(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

// "method: message", without repeating a prefix the message already carries
std::string method_note(Method m, const std::string& what) {
  const std::string name = to_string(m);
  if (what.rfind(name + ":", 0) == 0) return clean_note(what);
  return name + ": " + clean_note(what);
}

SpectralDensity make_density(const SweepSpec& spec, double omega_c) {
  if (spec.spectral == "lorentz-drude") return SpectralDensity::lorentz_drude(1.0, omega_c);
  if (spec.spectral == "ohmic") return SpectralDensity::ohmic(1.0 / omega_c, omega_c);
  if (spec.spectral.rfind("tabulated:", 0) == 0) return spectral::load_tabulated(spec.spectral.substr(10));
  throw ValidationError("unknown spectral density '" + spec.spectral + "'");
}

}  // namespace

// ---- names ----

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::Lambda2Q: return "lambda2Q";
    case SweepVariable::Beta: return "beta";
    case SweepVariable::OmegaC: return "omega_c";
  }
  return "unknown";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::HighT: return "high-t";
    case Method::Series: return "series";
    case Method::ME: return "me";
    case Method::Zeroth: return "zeroth";
    case Method::Oracle: return "oracle";
  }
  return "unknown";
}

SweepVariable parse_sweep_variable(const std::string& s) {
  if (s == "lambda2Q" || s == "lambda2q") return SweepVariable::Lambda2Q;
  if (s == "beta") return SweepVariable::Beta;
  if (s == "omega_c" || s == "omega-c") return SweepVariable::OmegaC;
  throw ValidationError("unknown sweep variable '" + s + "' (lambda2Q, beta, omega_c)");
}

Method parse_method(const std::string& s) {
  for (Method m : {Method::Exact, Method::HighT, Method::Series, Method::ME, Method::Zeroth, Method::Oracle})
    if (to_string(m) == s) return m;
  throw ValidationError("unknown method '" + s + "' (exact, high-t, series, me, zeroth, oracle)");
}

std::vector<Method> parse_methods(const std::string& csv) {
  std::vector<Method> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    const Method m = parse_method(item);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

// ---- spec ----

void SweepSpec::validate() const {
  if (!std::isfinite(from) || !std::isfinite(to) || !(from < to))
    throw ValidationError("sweep: requires from < to");
  if (points < 2) throw ValidationError("sweep: points must be >= 2");
  if (log_grid && !(from > 0.0)) throw ValidationError("sweep: log grid requires from > 0");
  if (delta == 0.0 || !std::isfinite(delta)) throw ValidationError("sweep: delta must be nonzero");
  if (!(beta > 0.0) || !(omega_c > 0.0) || !(lambda2q >= 0.0))
    throw ValidationError("sweep: beta, omega_c must be > 0 and lambda2q >= 0");
  if (swept != SweepVariable::Lambda2Q && !(from > 0.0))
    throw ValidationError("sweep: beta and omega_c sweeps need positive values");
  if (swept == SweepVariable::Lambda2Q && !(from >= 0.0))
    throw ValidationError("sweep: lambda2Q must be >= 0");
  if (methods.empty()) throw ValidationError("sweep: no methods selected");
  if (!(rel_tol > 0.0)) throw ValidationError("sweep: rel-tol must be > 0");
  if (oracle_modes < 1 || fock_cutoff < 0) throw ValidationError("sweep: invalid oracle settings");
  if (jobs < 1) throw ValidationError("sweep: jobs must be >= 1");
  const bool tab = spectral.rfind("tabulated:", 0) == 0;
  if (!tab && spectral != "lorentz-drude" && spectral != "ohmic")
    throw ValidationError("sweep: spectral must be lorentz-drude, ohmic or tabulated:PATH");
  if (tab && swept == SweepVariable::OmegaC)
    throw ValidationError("sweep: omega_c cannot be swept for a tabulated density");
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    g[i] = log_grid ? std::exp(std::log(from) + t * (std::log(to) - std::log(from))) : from + t * (to - from);
  }
  g.front() = from;
  g.back() = to;
  return g;
}

// ---- presets ----

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = [] {
    std::vector<Preset> p;
    SweepSpec s;
    s.delta = 0.7;
    s.methods = {Method::HighT, Method::Series, Method::ME};
    s.log_grid = true;
    s.points = 40;

    SweepSpec f1 = s;
    f1.swept = SweepVariable::Lambda2Q;
    f1.from = 0.2;
    f1.to = 10.0;
    f1.beta = 1.0;
    f1.omega_c = 0.25;
    p.push_back({"fig1a", f1, "c_ss", 1.0, true, 3.0});
    p.push_back({"fig1b", f1, "c_eg", 1.0, true, 3.0});

    SweepSpec f2 = s;
    f2.swept = SweepVariable::Beta;
    f2.from = 0.05;
    f2.to = 3.0;
    f2.lambda2q = 5.0;
    f2.omega_c = 0.5;
    p.push_back({"fig2", f2, "c_ss", 0.5 / f2.omega_c, false, 3.0 / f2.lambda2q});
    f2.omega_c = 0.1;
    p.push_back({"fig2-text", f2, "c_ss", 0.5 / f2.omega_c, false, 3.0 / f2.lambda2q});

    SweepSpec f3 = s;
    f3.swept = SweepVariable::OmegaC;
    f3.from = 0.02;
    f3.to = 2.0;
    f3.beta = 1.0;
    f3.lambda2q = 5.0;
    p.push_back({"fig3", f3, "c_ss", 0.5 / f3.beta, false, kNaN});
    return p;
  }();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw ValidationError("unknown preset '" + name + "' (fig1a, fig1b, fig2, fig2-text, fig3)");
}

// ---- evaluation ----

PointSetup setup_point(const SweepSpec& spec, double x) {
  double l2q = spec.lambda2q, beta = spec.beta, wc = spec.omega_c;
  switch (spec.swept) {
    case SweepVariable::Lambda2Q: l2q = x; break;
    case SweepVariable::Beta: beta = x; break;
    case SweepVariable::OmegaC: wc = x; break;
  }
  SpectralDensity sd = make_density(spec, wc);
  const double q = spectral::reorganization_energy(sd);
  BathParams bath{beta, std::sqrt(l2q / q)};
  bath.validate();
  return {spinboson::build_system({1.0, spec.delta}), std::move(sd), bath};
}

PointValue evaluate(const SweepSpec& spec, double x, Method m) {
  PointValue pv;
  const spinboson::SpinBosonParams sb{1.0, spec.delta};
  try {
    const PointSetup ps = setup_point(spec, x);
    pv.diagnostics = regime_diagnostics(ps.system, ps.bath, ps.density);
    quad::QuadratureSettings q;
    q.rel_tol = spec.rel_tol;
    auto take = [&](const linalg::DensityMatrix& rho) {
      pv.obs = spinboson::observables(rho, sb);
      pv.ok = true;
    };
    switch (m) {
      case Method::Exact:
        take(steady_state(ps.system, ps.bath, ps.density, CorrectionMethod::ExactQuadrature, spec.convention, q).state);
        break;
      case Method::HighT:
        take(steady_state(ps.system, ps.bath, ps.density, CorrectionMethod::HighTemperatureDawson, spec.convention, q)
                 .state);
        break;
      case Method::Series:
        take(steady_state(ps.system, ps.bath, ps.density, CorrectionMethod::UltrastrongSeries, spec.convention, q)
                 .state);
        break;
      case Method::Zeroth:
        take(zeroth_order_state(ps.system, ps.bath, spec.convention, ps.density));
        break;
      case Method::ME:
        take(comparator::me_steady_state(ps.system, ps.bath, ps.density, q).state(ps.system));
        break;
      case Method::Oracle: {
        const double wmax = spec.spectral == "ohmic" ? ps.density.characteristic_frequency()
                            : spec.spectral == "lorentz-drude" ? 40.0 * ps.density.characteristic_frequency()
                                                               : ps.density.characteristic_frequency();
        auto bd = oracle::discretize(ps.density, spec.oracle_modes, wmax, spec.fock_cutoff);
        bd.auto_raise = false;
        oracle::OracleSettings os;
        os.max_dim = spec.oracle_max_dim;
        os.convergence_table = false;
        take(oracle::exact_mean_force_state(ps.system, bd, ps.bath, spec.convention, os).state);
        break;
      }
    }
  } catch (const ValidationError& e) {  // includes DimensionCapError
    pv.note = method_note(m, e.what());
  } catch (const UnsupportedOperation& e) {
    pv.note = method_note(m, e.what());
  } catch (const NumericalError& e) {
    pv.note = method_note(m, e.what());
  }
  return pv;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult r{spec, spec.grid(), {}};
  r.values.assign(r.x.size(), std::vector<PointValue>(spec.methods.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < r.x.size() && !failed; i = next++) {
      try {
        for (std::size_t j = 0; j < spec.methods.size(); ++j) r.values[i][j] = evaluate(spec, r.x[i], spec.methods[j]);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const int nthreads = std::min<int>(spec.jobs, static_cast<int>(r.x.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return r;
}

// ---- CSV ----

std::string format_number(double v) {
  if (!std::isfinite(v)) return "NA";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string to_csv(const SweepResult& r) {
  std::ostringstream out;
  out << to_string(r.spec.swept);
  for (Method m : r.spec.methods) {
    const std::string p = to_string(m);
    for (const char* c : {"c_ss_real", "c_ss_imag", "c_eg_real", "c_eg_imag", "p_plus", "strong_coupling",
                          "series_valid", "high_t_valid"})
      out << ',' << p << '_' << c;
  }
  out << ",notes\n";
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    out << format_number(r.x[i]);
    std::string notes;
    for (const PointValue& v : r.values[i]) {
      const auto& o = v.obs;
      if (v.ok) {
        for (double d : {o.c_ss.real(), o.c_ss.imag(), o.c_eg.real(), o.c_eg.imag(), o.p_plus})
          out << ',' << format_number(d);
        const auto& g = v.diagnostics;
        out << ',' << g.strong_coupling << ',' << g.series_valid << ',' << g.high_t_valid;
      } else {
        for (int k = 0; k < 8; ++k) out << ",NA";
      }
      if (!v.note.empty()) notes += (notes.empty() ? "" : "; ") + v.note;
    }
    out << ',' << notes << '\n';
  }
  return out.str();
}

}  // namespace mfgs::cli
