// cli.hpp — parameter sweeps, CSV/SVG output and verification runs behind the mfgs tool
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mfgs/mfgs.hpp"
#include "mfgs/oracle.hpp"
#include "mfgs/spinboson.hpp"

namespace mfgs::cli {

enum class SweepVariable { Lambda2Q, Beta, OmegaC };
enum class Method { Exact, HighT, Series, ME, Zeroth, Oracle };

std::string to_string(SweepVariable v);
std::string to_string(Method m);
SweepVariable parse_sweep_variable(const std::string& s);
Method parse_method(const std::string& s);
std::vector<Method> parse_methods(const std::string& csv);

// Energies in units of ε (ε = 1), β in units of 1/ε.
struct SweepSpec {
  SweepVariable swept = SweepVariable::Lambda2Q;
  double from = 0.2;
  double to = 10.0;
  int points = 40;
  bool log_grid = false;
  double delta = 0.7;
  double beta = 1.0;
  double omega_c = 0.25;
  double lambda2q = 5.0;
  std::string spectral = "lorentz-drude";  // lorentz-drude | ohmic | tabulated:PATH
  std::vector<Method> methods{Method::HighT, Method::Series, Method::ME};
  Convention convention = Convention::Renormalized;
  double rel_tol = 1e-10;
  int oracle_modes = 3;
  int fock_cutoff = 12;
  std::size_t oracle_max_dim = oracle::kDefaultMaxDim;
  int jobs = 1;

  void validate() const;
  std::vector<double> grid() const;
};

struct Preset {
  std::string name;
  SweepSpec spec;
  std::string plotted;    // observable drawn in the SVG: c_ss or c_eg
  double validity_line;   // red line, in swept units
  bool valid_above;       // validity region lies above (true) or below the red line
  double series_line;     // grey line, in swept units

  bool in_validity_region(double x) const { return valid_above ? x >= validity_line : x <= validity_line; }
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);

struct PointValue {
  bool ok = false;
  spinboson::SpinObservables obs{};
  Diagnostics diagnostics{};
  std::string note;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<double> x;
  std::vector<std::vector<PointValue>> values;  // [point][method]
};

// Builds the system, density and bath for one swept value.
struct PointSetup {
  SystemSpec system;
  SpectralDensity density;
  BathParams bath;
};
PointSetup setup_point(const SweepSpec& spec, double x);
PointValue evaluate(const SweepSpec& spec, double x, Method m);

SweepResult run_sweep(const SweepSpec& spec);
std::string to_csv(const SweepResult& r);
std::string format_number(double v);

struct SvgOptions {
  std::string observable = "c_ss";  // c_ss | c_eg
  std::optional<double> validity_line;
  std::optional<double> series_line;
  std::string title;
};
std::string to_svg(const SweepResult& r, const SvgOptions& opt);

// ---- verification ----

struct VerifyConfig {
  std::vector<std::string> checks{"trace_identity", "hermiticity", "kernel_symmetry", "dawson"};
  double trace_tolerance = 1e-8;
  double hermiticity_tolerance = 1e-9;
  int fock_cutoff = 60;
  int random_systems = 20;
  unsigned seed = 12345;
  oracle::KernelFunction kernel;  // overrides the overlap kernel (mutation testing)
};

struct VerifyReport {
  std::string json;
  bool passed;
};

VerifyReport run_verify(const VerifyConfig& cfg);

// Entry point of the mfgs executable; returns the process exit code.
int run(int argc, char** argv);

}  // namespace mfgs::cli
