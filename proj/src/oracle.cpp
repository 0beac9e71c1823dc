// oracle.cpp — truncated-Fock exact diagonalization and the single-mode trace identity
#include "mfgs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mfgs/errors.hpp"

namespace mfgs::oracle {

namespace {

std::size_t checked_dim(std::size_t dim_s, const std::vector<int>& cutoffs, std::size_t cap) {
  std::size_t total = dim_s;
  bool over = false;
  for (int c : cutoffs) {
    const auto f = static_cast<std::size_t>(c) + 1;
    if (total > std::numeric_limits<std::size_t>::max() / f) over = true;
    total = over ? std::numeric_limits<std::size_t>::max() : total * f;
  }
  if (over || total > cap)
    throw DimensionCapError("oracle: Hilbert dimension " + (over ? std::string("(overflow)") : std::to_string(total)) +
                                " exceeds cap " + std::to_string(cap),
                            total);
  return total;
}

// log Σ_{n=0}^{c} e^{−βωn}
double log_truncated_z(double beta, double w, int c) {
  const double x = beta * w;
  return std::log(-std::expm1(-x * (c + 1.0))) - std::log(-std::expm1(-x));
}

// H_{B,l} = ωn + λa g(a + a†) + λ²a²g²/ω on {0..c}
HermitianMatrix displaced_mode(const Mode& m, double lambda, double a, int c) {
  Matrix h = Matrix::Zero(c + 1, c + 1);
  const double shift = lambda * lambda * a * a * m.coupling * m.coupling / m.frequency;
  for (int n = 0; n <= c; ++n) {
    h(n, n) = m.frequency * n + shift;
    if (n < c) h(n, n + 1) = h(n + 1, n) = lambda * a * m.coupling * std::sqrt(n + 1.0);
  }
  return HermitianMatrix(h);
}

}  // namespace

// ---- discretization ----

BathDiscretization BathDiscretization::explicit_modes(std::vector<Mode> modes, int fock_cutoff) {
  BathDiscretization bd;
  bd.fock_cutoffs.assign(modes.size(), fock_cutoff);
  bd.modes = std::move(modes);
  bd.source = "explicit";
  bd.validate();
  return bd;
}

void BathDiscretization::validate() const {
  if (modes.empty()) throw ValidationError("BathDiscretization: no modes");
  if (fock_cutoffs.size() != modes.size())
    throw ValidationError("BathDiscretization: one Fock cutoff per mode required");
  for (const auto& m : modes)
    if (!(m.frequency > 0.0) || !std::isfinite(m.frequency) || !std::isfinite(m.coupling))
      throw ValidationError("BathDiscretization: frequencies must be > 0 and couplings finite");
  for (int c : fock_cutoffs)
    if (c < 0) throw ValidationError("BathDiscretization: Fock cutoff must be >= 0");
}

std::size_t BathDiscretization::bath_dim() const {
  return checked_dim(1, fock_cutoffs, std::numeric_limits<std::size_t>::max());
}

double BathDiscretization::reorganization() const {
  double q = 0.0;
  for (const auto& m : modes) q += m.coupling * m.coupling / m.frequency;
  return q;
}

SpectralDensity BathDiscretization::density() const { return SpectralDensity::discrete(modes); }

BathDiscretization discretize(const SpectralDensity& sd, int n, double omega_max, int fock_cutoff) {
  if (n < 1) throw ValidationError("discretize: n must be >= 1");
  if (!(omega_max > 0.0) || !std::isfinite(omega_max))
    throw ValidationError("discretize: omega_max must be > 0");
  const double dw = omega_max / n;
  std::vector<Mode> modes;
  for (int k = 1; k <= n; ++k) {
    const double w = (k - 0.5) * dw;
    const double g2 = spectral::j_of_omega(sd, w) * dw;
    if (g2 > 0.0) modes.push_back({std::sqrt(g2), w});
  }
  if (modes.empty()) throw ValidationError("discretize: density vanishes at every midpoint");
  BathDiscretization bd = BathDiscretization::explicit_modes(std::move(modes), fock_cutoff);
  bd.source = sd.name() + " midpoint n=" + std::to_string(n) + " omega_max=" + std::to_string(omega_max);
  return bd;
}

// ---- total Hamiltonian ----

HermitianMatrix build_total_hamiltonian(const SystemSpec& sys, const BathDiscretization& bd,
                                        double lambda, Convention conv, std::size_t max_dim) {
  bd.validate();
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be >= 0");
  const std::size_t ds = sys.dim();
  const std::size_t total = checked_dim(ds, bd.fock_cutoffs, max_dim);
  const std::size_t db = total / ds;
  const std::size_t nm = bd.modes.size();

  // bath index = Σ_k n_k·stride_k, first mode most significant
  std::vector<std::size_t> stride(nm);
  std::size_t s = 1;
  for (std::size_t k = nm; k-- > 0;) {
    stride[k] = s;
    s *= static_cast<std::size_t>(bd.fock_cutoffs[k]) + 1;
  }
  auto occupation = [&](std::size_t idx, std::size_t k) {
    return static_cast<int>((idx / stride[k]) % (static_cast<std::size_t>(bd.fock_cutoffs[k]) + 1));
  };

  Matrix sys_part = sys.h_s().matrix();
  if (conv == Convention::Renormalized)
    sys_part += lambda * lambda * bd.reorganization() * sys.a().matrix() * sys.a().matrix();
  const Matrix& a = sys.a().matrix();

  Matrix h = Matrix::Zero(total, total);
  for (std::size_t i = 0; i < ds; ++i)
    for (std::size_t j = 0; j < ds; ++j) {
      const cplx sv = sys_part(i, j);
      const cplx av = lambda * a(i, j);
      for (std::size_t n = 0; n < db; ++n) {
        const std::size_t col = j * db + n;
        if (sv != 0.0) h(i * db + n, col) += sv;
        if (av == 0.0) continue;
        for (std::size_t k = 0; k < nm; ++k) {
          const int nk = occupation(n, k);
          if (nk >= bd.fock_cutoffs[k]) continue;
          const cplx amp = av * bd.modes[k].coupling * std::sqrt(nk + 1.0);
          h(i * db + n + stride[k], col) += amp;  // a†
          h(i * db + n, j * db + n + stride[k]) += amp;  // a
        }
      }
    }
  for (std::size_t n = 0; n < db; ++n) {
    double e = 0.0;
    for (std::size_t k = 0; k < nm; ++k) e += bd.modes[k].frequency * occupation(n, k);
    for (std::size_t i = 0; i < ds; ++i) h(i * db + n, i * db + n) += e;
  }
  return HermitianMatrix(h);
}

// ---- thermal state ----

ReducedThermal reduced_thermal_state(const HermitianMatrix& h, std::size_t dim_s, double beta,
                                     double window) {
  if (!(beta > 0.0)) throw ValidationError("reduced_thermal_state: beta must be > 0");
  if (dim_s == 0 || h.dim() % dim_s != 0)
    throw ValidationError("reduced_thermal_state: system dimension does not divide total");
  const auto ed = linalg::eigh_window(h, window / beta);
  const double e0 = ed.eigenvalues(0);
  const RealVector w = (-beta * (ed.eigenvalues.array() - e0)).exp();
  const Eigen::Index db = static_cast<Eigen::Index>(h.dim() / dim_s);

  Matrix rho(dim_s, dim_s);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(dim_s); ++i) {
    const Matrix wi = ed.eigenvectors.middleRows(i * db, db) * w.cast<cplx>().asDiagonal();
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(dim_s); ++j)
      rho(i, j) = (wi.array() * ed.eigenvectors.middleRows(j * db, db).conjugate().array()).sum();
  }
  const double zw = w.sum();
  return {rho / zw, -beta * e0 + std::log(zw)};
}

double OracleResult::z_sb() const { return std::exp(log_z_sb); }
double OracleResult::z_b() const { return std::exp(log_z_b); }

OracleResult exact_mean_force_state(const SystemSpec& sys, const BathDiscretization& bd,
                                    const BathParams& bath, Convention conv,
                                    const OracleSettings& settings) {
  bath.validate();
  bd.validate();
  std::vector<int> cut = bd.fock_cutoffs;
  if (bd.auto_raise) {
    const double amax = sys.a_eigenvalues().cwiseAbs().maxCoeff();
    for (std::size_t k = 0; k < bd.modes.size(); ++k) {
      const auto& m = bd.modes[k];
      const double disp = bath.lambda * m.coupling * amax / m.frequency;
      const double occ = disp * disp + 1.0 / std::expm1(bath.beta * m.frequency);
      if (occ > cut[k] / 4.0) cut[k] = static_cast<int>(std::ceil(4.0 * occ));
    }
  }

  auto run = [&](const std::vector<int>& c) {
    BathDiscretization b = bd;
    b.fock_cutoffs = c;
    const auto h = build_total_hamiltonian(sys, b, bath.lambda, conv, settings.max_dim);
    return reduced_thermal_state(h, sys.dim(), bath.beta, settings.boltzmann_window);
  };

  const ReducedThermal top = run(cut);
  double log_zb = 0.0;
  for (std::size_t k = 0; k < bd.modes.size(); ++k)
    log_zb += log_truncated_z(bath.beta, bd.modes[k].frequency, cut[k]);

  std::vector<ConvergenceRow> table;
  bool converged = false;
  if (settings.convergence_table) {
    std::vector<std::vector<int>> ladder;
    for (int drop : {10, 5}) {
      std::vector<int> c = cut;
      bool ok = true;
      for (int& x : c) {
        x -= drop;
        ok = ok && x >= 1;
      }
      if (ok) ladder.push_back(c);
    }
    std::vector<Matrix> states;
    for (const auto& c : ladder) states.push_back(run(c).rho);
    ladder.push_back(cut);
    states.push_back(top.rho);
    for (std::size_t r = 0; r < ladder.size(); ++r) {
      const double d = r == 0 ? std::numeric_limits<double>::quiet_NaN()
                              : linalg::trace_distance(states[r], states[r - 1]);
      table.push_back({ladder[r], d});
    }
    converged = table.size() >= 2 && table.back().distance_to_previous <= settings.convergence_tol;
  }
  return {linalg::DensityMatrix(top.rho, 1e-10), top.log_z, log_zb, cut, std::move(table), converged};
}

// ---- trace identity ----

TraceIdentityCheck verify_trace_identity(const BathDiscretization& bd, double a_l, double a_l2,
                                         double lambda, double beta, double u,
                                         const KernelFunction& kernel) {
  bd.validate();
  if (bd.modes.size() != 1) throw ValidationError("verify_trace_identity: exactly one mode required");
  if (!(beta > 0.0)) throw ValidationError("verify_trace_identity: beta must be > 0");
  if (!(u >= 0.0 && u <= beta)) throw ValidationError("verify_trace_identity: u must lie in [0, beta]");
  if (!(lambda >= 0.0)) throw ValidationError("verify_trace_identity: lambda must be >= 0");
  const Mode& m = bd.modes[0];
  const int c = bd.fock_cutoffs[0];

  auto lhs_at = [&](int cutoff) {
    const auto e1 = linalg::matrix_exp_hermitian(displaced_mode(m, lambda, a_l, cutoff), -(beta - u));
    const auto e2 = linalg::matrix_exp_hermitian(displaced_mode(m, lambda, a_l2, cutoff), -u);
    return (e1.matrix() * e2.matrix()).trace().real();
  };
  const double lhs = lhs_at(c);
  const auto sd = bd.density();
  const double k = kernel ? kernel(sd, beta, u) : spectral::overlap_kernel(sd, beta, u);
  const double da = a_l2 - a_l;
  const double rhs = std::exp(log_truncated_z(beta, m.frequency, c) - lambda * lambda * da * da * k);
  const bool flag = std::abs(lhs_at(c + 10) - lhs) > 1e-8 * std::abs(lhs);
  return {lhs, rhs, std::abs(lhs / rhs - 1.0), flag};
}

}  // namespace mfgs::oracle
