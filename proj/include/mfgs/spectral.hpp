// spectral.hpp — bath spectral densities, reorganization energy, overlap kernel, correlation function
#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "mfgs/quadrature.hpp"

namespace mfgs::spectral {

using cplx = std::complex<double>;

// J(ω) = (2Q/π) ω_c ω / (ω_c² + ω²)
struct LorentzDrude {
  double reorganization;
  double cutoff;
};

// J(ω) = η ω for ω < ω_c, else 0
struct OhmicHardCutoff {
  double eta;
  double cutoff;
};

struct Mode {
  double coupling;   // g_k
  double frequency;  // ω_k
};

// J(ω) = Σ g_k² δ(ω − ω_k)
struct DiscreteModes {
  std::vector<Mode> modes;
};

// Linear interpolation through (0, 0) and the grid; zero beyond the last point.
struct Tabulated {
  std::vector<double> omega;
  std::vector<double> j;
};

class SpectralDensity {
 public:
  using Variant = std::variant<LorentzDrude, OhmicHardCutoff, DiscreteModes, Tabulated>;

  static SpectralDensity lorentz_drude(double q, double omega_c);
  static SpectralDensity ohmic(double eta, double omega_c);
  static SpectralDensity discrete(std::vector<Mode> modes);
  static SpectralDensity tabulated(std::vector<double> omega, std::vector<double> j);

  const Variant& variant() const noexcept { return v_; }
  std::string name() const;
  // ω_c for the continuous families, largest mode/grid frequency otherwise.
  double characteristic_frequency() const;

 private:
  explicit SpectralDensity(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// Reads whitespace-separated (ω, J) rows; '#' starts a comment.
SpectralDensity load_tabulated(const std::filesystem::path& path);

struct BathParams {
  double beta;
  double lambda;

  void validate() const;
};

double j_of_omega(const SpectralDensity& sd, double omega);
double reorganization_energy(const SpectralDensity& sd);

// (1 − e^{−ωu})(1 − e^{−ω(β−u)}) / (1 − e^{−ωβ}), symmetric under u ↔ β−u.
double kernel_factor(double omega, double beta, double u);

// K(u) = ∫ dω J(ω)/ω² · kernel_factor(ω, β, u)
double overlap_kernel(const SpectralDensity& sd, double beta, double u,
                      const quad::QuadratureSettings& q = {});

// c_B(s) = ∫ dω J(ω)[coth(βω/2) cos(ωs) − i sin(ωs)]
cplx bath_correlation(const SpectralDensity& sd, double beta, double s,
                      const quad::QuadratureSettings& q = {});

// G(τ) = ∫_0^τ (τ − s) c_B(s) ds
cplx g_double_integral(const SpectralDensity& sd, double beta, double tau,
                       const quad::QuadratureSettings& q = {});

}  // namespace mfgs::spectral
