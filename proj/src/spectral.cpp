// spectral.cpp — spectral density families and the bath integrals built on them
#include "mfgs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "mfgs/errors.hpp"

namespace mfgs::spectral {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

double ld_j(const LorentzDrude& ld, double w) {
  const double c = ld.cutoff;
  return (2.0 * ld.reorganization / kPi) * c * w / (c * c + w * w);
}

double tab_j(const Tabulated& t, double w) {
  if (w <= 0.0 || w > t.omega.back()) return 0.0;
  if (w <= t.omega.front()) return t.j.front() * w / t.omega.front();
  const auto it = std::upper_bound(t.omega.begin(), t.omega.end(), w);
  const std::size_t i = static_cast<std::size_t>(it - t.omega.begin());
  if (i >= t.omega.size()) return t.j.back();
  const double x0 = t.omega[i - 1], x1 = t.omega[i];
  return t.j[i - 1] + (t.j[i] - t.j[i - 1]) * (w - x0) / (x1 - x0);
}

double coth_half(double beta, double w) { return 1.0 / std::tanh(0.5 * beta * w); }

// 2/(e^{βω} − 1), i.e. coth(βω/2) − 1
double bose2(double beta, double w) { return 2.0 / std::expm1(beta * w); }

// x − sin x without cancellation
double x_minus_sin(double x) {
  if (std::abs(x) >= 0.5) return x - std::sin(x);
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = term;
  for (int k = 2; k < 12; ++k) {
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    sum += term;
  }
  return sum;
}

// 1 − cos x
double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

// x + e^{−x} − 1
double x_plus_expm1(double x) {
  if (x >= 1e-2) return x + std::expm1(-x);
  double term = 0.5 * x * x;
  double sum = term;
  for (int k = 3; k < 12; ++k) {
    term *= -x / k;
    sum += term;
  }
  return sum;
}

// e^{x}E1(x) − e^{−x}Ei(x) for x > 0
double ei_difference(double x) {
  if (x > 40.0) {
    // −2 Σ_{k odd} k!/x^{k+1}
    double term = 1.0 / (x * x);
    double sum = term;
    for (int k = 3; k < 60; k += 2) {
      const double next = term * (k - 1.0) * k / (x * x);
      if (next >= term) break;
      term = next;
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return -2.0 * sum;
  }
  return -std::exp(x) * std::expint(-x) - std::exp(-x) * std::expint(x);
}

// 2(γ_E + ln x) + e^{x}E1(x) − e^{−x}Ei(x), the zero-temperature Lorentz-Drude Re G in units of Q/(πω_c)
double ld_vacuum_g(double x) {
  if (x >= 1.0) return 2.0 * (std::log(x) + kEulerGamma) + ei_difference(x);
  double s_odd = 0.0, s_even = 0.0, p = 1.0;
  for (int k = 1; k < 40; ++k) {
    p *= x / k;  // x^k / k!
    const double t = p / k;
    (k % 2 ? s_odd : s_even) += t;
    if (t < 1e-18 * (s_odd + 1e-300)) break;
  }
  const double sh = std::sinh(0.5 * x);
  const double ell = kEulerGamma + std::log(x);
  return -4.0 * ell * sh * sh + 2.0 * std::sinh(x) * s_odd - 2.0 * std::cosh(x) * s_even;
}

void check_beta(double beta) {
  if (!positive_finite(beta)) throw ValidationError("beta must be positive and finite");
}

quad::QuadratureSettings with_room(quad::QuadratureSettings q, std::size_t breakpoints) {
  q.max_subdivisions = std::max<int>(q.max_subdivisions, static_cast<int>(4 * breakpoints + 100));
  return q;
}

}  // namespace

// ---- construction ----

SpectralDensity SpectralDensity::lorentz_drude(double q, double omega_c) {
  if (!positive_finite(q) || !positive_finite(omega_c))
    throw ValidationError("LorentzDrude: Q and omega_c must be positive");
  return SpectralDensity(LorentzDrude{q, omega_c});
}

SpectralDensity SpectralDensity::ohmic(double eta, double omega_c) {
  if (!positive_finite(eta) || !positive_finite(omega_c))
    throw ValidationError("OhmicHardCutoff: eta and omega_c must be positive");
  return SpectralDensity(OhmicHardCutoff{eta, omega_c});
}

SpectralDensity SpectralDensity::discrete(std::vector<Mode> modes) {
  if (modes.empty()) throw ValidationError("DiscreteModes: at least one mode required");
  bool any = false;
  for (const auto& m : modes) {
    if (!positive_finite(m.frequency)) throw ValidationError("DiscreteModes: frequencies must be > 0");
    if (!std::isfinite(m.coupling)) throw ValidationError("DiscreteModes: coupling must be finite");
    any = any || m.coupling != 0.0;
  }
  if (!any) throw ValidationError("DiscreteModes: reorganization energy must be > 0");
  return SpectralDensity(DiscreteModes{std::move(modes)});
}

SpectralDensity SpectralDensity::tabulated(std::vector<double> omega, std::vector<double> j) {
  if (omega.empty() || omega.size() != j.size())
    throw ValidationError("Tabulated: omega and J must be non-empty and equally long");
  if (!positive_finite(omega.front())) throw ValidationError("Tabulated: frequencies must be > 0");
  bool any = false;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!std::isfinite(omega[i]) || (i > 0 && !(omega[i] > omega[i - 1])))
      throw ValidationError("Tabulated: grid must be strictly increasing");
    if (!(j[i] >= 0.0) || !std::isfinite(j[i])) throw ValidationError("Tabulated: J must be >= 0");
    any = any || j[i] > 0.0;
  }
  if (!any) throw ValidationError("Tabulated: J vanishes identically");
  return SpectralDensity(Tabulated{std::move(omega), std::move(j)});
}

std::string SpectralDensity::name() const {
  return std::visit(overloaded{[](const LorentzDrude&) { return std::string("lorentz-drude"); },
                               [](const OhmicHardCutoff&) { return std::string("ohmic"); },
                               [](const DiscreteModes&) { return std::string("discrete"); },
                               [](const Tabulated&) { return std::string("tabulated"); }},
                    v_);
}

double SpectralDensity::characteristic_frequency() const {
  return std::visit(
      overloaded{[](const LorentzDrude& d) { return d.cutoff; },
                 [](const OhmicHardCutoff& d) { return d.cutoff; },
                 [](const DiscreteModes& d) {
                   double m = 0.0;
                   for (const auto& x : d.modes) m = std::max(m, x.frequency);
                   return m;
                 },
                 [](const Tabulated& d) { return d.omega.back(); }},
      v_);
}

SpectralDensity load_tabulated(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("load_tabulated: cannot open " + path.string());
  std::vector<double> om, jv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double w, j;
    if (!(ss >> w)) continue;
    std::string rest;
    if (!(ss >> j) || (ss >> rest))
      throw ValidationError("load_tabulated: expected two columns at line " + std::to_string(lineno));
    om.push_back(w);
    jv.push_back(j);
  }
  return SpectralDensity::tabulated(std::move(om), std::move(jv));
}

void BathParams::validate() const {
  check_beta(beta);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be >= 0");
}

// ---- J and Q ----

double j_of_omega(const SpectralDensity& sd, double omega) {
  if (!(omega >= 0.0)) throw ValidationError("j_of_omega: omega must be >= 0");
  return std::visit(
      overloaded{[&](const LorentzDrude& d) { return ld_j(d, omega); },
                 [&](const OhmicHardCutoff& d) { return omega < d.cutoff ? d.eta * omega : 0.0; },
                 [&](const DiscreteModes&) -> double {
                   throw UnsupportedOperation(
                       "j_of_omega: discrete modes have no pointwise density; use mode sums");
                 },
                 [&](const Tabulated& d) { return tab_j(d, omega); }},
      sd.variant());
}

double reorganization_energy(const SpectralDensity& sd) {
  return std::visit(overloaded{[](const LorentzDrude& d) { return d.reorganization; },
                               [](const OhmicHardCutoff& d) { return d.eta * d.cutoff; },
                               [](const DiscreteModes& d) {
                                 double q = 0.0;
                                 for (const auto& m : d.modes) q += m.coupling * m.coupling / m.frequency;
                                 return q;
                               },
                               [](const Tabulated& d) {
                                 // exact integral of the piecewise-linear interpolant over ω
                                 double q = d.j.front();
                                 for (std::size_t i = 1; i < d.omega.size(); ++i) {
                                   const double x0 = d.omega[i - 1], x1 = d.omega[i];
                                   const double s = (d.j[i] - d.j[i - 1]) / (x1 - x0);
                                   q += (d.j[i - 1] - s * x0) * std::log(x1 / x0) + s * (x1 - x0);
                                 }
                                 return q;
                               }},
                    sd.variant());
}

// ---- overlap kernel ----

double kernel_factor(double omega, double beta, double u) {
  const double v = beta - u;
  if (u <= 0.0 || v <= 0.0 || omega <= 0.0) return 0.0;
  if (omega * beta < 1e-4) return omega * u * v / beta * (1.0 - omega * omega * u * v / 12.0);
  const double lo = std::min(u, v), hi = std::max(u, v);
  return (-std::expm1(-omega * lo)) * (-std::expm1(-omega * hi)) / (-std::expm1(-omega * beta));
}

double overlap_kernel(const SpectralDensity& sd, double beta, double u,
                      const quad::QuadratureSettings& q) {
  check_beta(beta);
  if (!(u >= 0.0 && u <= beta)) throw ValidationError("overlap_kernel: u must lie in [0, beta]");
  if (u == 0.0 || u == beta) return 0.0;
  const double v = beta - u;
  const double feats[] = {1.0 / std::max(u, v), 1.0 / std::min(u, v), 1.0 / beta};

  return std::visit(
      overloaded{
          [&](const LorentzDrude& d) {
            const double c = d.cutoff;
            const double pref = 2.0 * d.reorganization * c / kPi;
            auto f = [&](double w) { return pref / (w * (c * c + w * w)) * kernel_factor(w, beta, u); };
            auto env = [&](double w) { return pref / (w * (c * c + w * w)); };
            std::vector<double> br(std::begin(feats), std::end(feats));
            br.push_back(c);
            return quad::integrate_semi_infinite(f, 0.0, env, q, c, br).value;
          },
          [&](const OhmicHardCutoff& d) {
            auto f = [&](double w) { return d.eta * kernel_factor(w, beta, u) / w; };
            return quad::integrate_finite(f, 0.0, d.cutoff, q, feats).value;
          },
          [&](const DiscreteModes& d) {
            double k = 0.0;
            for (const auto& m : d.modes)
              k += m.coupling * m.coupling / (m.frequency * m.frequency) * kernel_factor(m.frequency, beta, u);
            return k;
          },
          [&](const Tabulated& d) {
            auto f = [&](double w) { return tab_j(d, w) / (w * w) * kernel_factor(w, beta, u); };
            std::vector<double> br(d.omega.begin(), d.omega.end());
            br.insert(br.end(), std::begin(feats), std::end(feats));
            return quad::integrate_finite(f, 0.0, d.omega.back(), with_room(q, br.size()), br).value;
          }},
      sd.variant());
}

// ---- correlation function ----

cplx bath_correlation(const SpectralDensity& sd, double beta, double s,
                      const quad::QuadratureSettings& q) {
  check_beta(beta);
  if (!(s >= 0.0) || !std::isfinite(s)) throw ValidationError("bath_correlation: s must be >= 0");
  auto finite_support = [&](auto jfun, double top, std::span<const double> br) {
    auto f = [&](double w) {
      const double j = jfun(w);
      return cplx(j * coth_half(beta, w) * std::cos(w * s), -j * std::sin(w * s));
    };
    return quad::integrate_finite(f, 0.0, top, with_room(q, br.size()), br).value;
  };

  return std::visit(
      overloaded{
          [&](const LorentzDrude& d) {
            const double c = d.cutoff, Q = d.reorganization;
            if (s == 0.0) return cplx(kInf, 0.0);  // J ~ 1/ω tail: Re c_B(0) diverges
            const double vac = Q * c / kPi * ei_difference(c * s);
            auto f = [&](double w) { return ld_j(d, w) * bose2(beta, w) * std::cos(w * s); };
            auto env = [&](double w) { return ld_j(d, w) * bose2(beta, w); };
            const double br[] = {c};
            const double th = quad::integrate_semi_infinite(f, 0.0, env, q, 1.0 / beta, br).value;
            return cplx(vac + th, -Q * c * std::exp(-c * s));
          },
          [&](const OhmicHardCutoff& d) {
            return finite_support([&](double w) { return d.eta * w; }, d.cutoff, {});
          },
          [&](const DiscreteModes& d) {
            cplx c = 0.0;
            for (const auto& m : d.modes) {
              const double g2 = m.coupling * m.coupling, w = m.frequency;
              c += g2 * cplx(coth_half(beta, w) * std::cos(w * s), -std::sin(w * s));
            }
            return c;
          },
          [&](const Tabulated& d) {
            return finite_support([&](double w) { return tab_j(d, w); }, d.omega.back(), d.omega);
          }},
      sd.variant());
}

cplx g_double_integral(const SpectralDensity& sd, double beta, double tau,
                       const quad::QuadratureSettings& q) {
  check_beta(beta);
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw ValidationError("g_double_integral: tau must be >= 0");
  if (tau == 0.0) return 0.0;

  // ∫ J(ω)[coth(βω/2)(1 − cos ωτ) − i(ωτ − sin ωτ)]/ω² over finite support
  auto finite_support = [&](auto jfun, double top, std::span<const double> br) {
    auto f = [&](double w) {
      const double jw = jfun(w) / (w * w);
      return cplx(jw * coth_half(beta, w) * one_minus_cos(w * tau), -jw * x_minus_sin(w * tau));
    };
    return quad::integrate_finite(f, 0.0, top, with_room(q, br.size()), br).value;
  };

  return std::visit(
      overloaded{
          [&](const LorentzDrude& d) {
            const double c = d.cutoff, Q = d.reorganization;
            const double x = c * tau;
            const double vac = Q / (kPi * c) * ld_vacuum_g(x);
            auto f = [&](double w) { return ld_j(d, w) * bose2(beta, w) * one_minus_cos(w * tau) / (w * w); };
            auto env = [&](double w) {
              return ld_j(d, w) * bose2(beta, w) * std::min(0.5 * tau * tau, 2.0 / (w * w));
            };
            const double br[] = {c};
            const double th = quad::integrate_semi_infinite(f, 0.0, env, q, 1.0 / beta, br).value;
            return cplx(vac + th, -Q * x_plus_expm1(x) / c);
          },
          [&](const OhmicHardCutoff& d) {
            return finite_support([&](double w) { return d.eta * w; }, d.cutoff, {});
          },
          [&](const DiscreteModes& d) {
            cplx g = 0.0;
            for (const auto& m : d.modes) {
              const double g2 = m.coupling * m.coupling, w = m.frequency;
              g += g2 / (w * w) * cplx(coth_half(beta, w) * one_minus_cos(w * tau), -x_minus_sin(w * tau));
            }
            return g;
          },
          [&](const Tabulated& d) {
            return finite_support([&](double w) { return tab_j(d, w); }, d.omega.back(), d.omega);
          }},
      sd.variant());
}

}  // namespace mfgs::spectral
