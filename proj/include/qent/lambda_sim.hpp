#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "qent/composite_space.hpp"
#include "qent/density_matrix.hpp"
#include "qent/state_vector.hpp"

namespace qent {

/// Cavity + three-level-atom parameters. Factor order of the simulation
/// space: the atoms (levels 1,2,3 as indices 0,1,2), the pump mode, the
/// Stokes mode. Natural units, hbar = 1.
struct SimConfig {
  int atoms = 2;
  int pump_cutoff = 1;
  int stokes_cutoff = 1;
  double omega_p = 10.0;
  double omega_s = 7.0;
  double omega_12 = 10.0;
  double omega_13 = 3.0;
  double g_p = 0.1;
  double g_s = 0.1;
  double kappa = 0.1;
  double t_final = 200.0;
  double dt = 1e-3;
  int output_stride = 100;
  /// Couple the 2->3 transition to Stokes annihilation instead of creation.
  /// Off by default: emission into the Stokes mode is what feeds the damped
  /// channel; the absorbing form is kept selectable for comparison.
  bool literal_stokes_coupling = false;

  void validate() const {
    if (atoms < 1) throw std::invalid_argument("SimConfig: atoms must be >= 1");
    if (pump_cutoff < 1 || stokes_cutoff < 1) {
      throw std::invalid_argument("SimConfig: mode cutoffs must be >= 1");
    }
    if (!(dt > 0)) throw std::invalid_argument("SimConfig: dt must be positive");
    if (t_final < 0) throw std::invalid_argument("SimConfig: t_final must be >= 0");
    if (output_stride < 1) throw std::invalid_argument("SimConfig: output_stride must be >= 1");
    if (omega_p < 0 || omega_s < 0 || g_p < 0 || g_s < 0 || kappa < 0) {
      throw std::invalid_argument("SimConfig: rates must be >= 0");
    }
    if (!(omega_12 > omega_13) || omega_13 < 0) {
      throw std::invalid_argument("SimConfig: need omega_12 > omega_13 >= 0");
    }
  }
};

inline CompositeSpace build_space(const SimConfig& config) {
  config.validate();
  std::int64_t total = 1;
  std::vector<int> dims;
  dims.reserve(static_cast<std::size_t>(config.atoms) + 2);
  for (int f = 0; f < config.atoms; ++f) dims.push_back(3);
  dims.push_back(config.pump_cutoff + 1);
  dims.push_back(config.stokes_cutoff + 1);
  for (int n : dims) total *= n;
  if (total > 4096) {
    throw std::invalid_argument("build_space: total dimension " + std::to_string(total) +
                                " exceeds the supported 4096");
  }
  return CompositeSpace(dims);
}

namespace detail {

using Sparse = Eigen::SparseMatrix<Complex>;

inline Sparse embed_sparse(const Matrix& g, int ell, const CompositeSpace& space) {
  const int n = space.dim(ell);
  const int stride = space.stride(ell);
  const int left = space.left_dim(ell);
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex gij = g(i, j);
      if (gij == Complex(0, 0)) continue;
      for (int l = 0; l < left; ++l) {
        for (int r = 0; r < stride; ++r) {
          triplets.emplace_back((l * n + i) * stride + r, (l * n + j) * stride + r, gij);
        }
      }
    }
  }
  Sparse out(space.total_dim(), space.total_dim());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

/// |i><j| on a single three-level atom, with levels 1,2,3 as indices 0,1,2.
inline Matrix level_projector(int i, int j) {
  Matrix r = Matrix::Zero(3, 3);
  r(i - 1, j - 1) = 1.0;
  return r;
}

inline Matrix mode_annihilation(int cutoff) {
  Matrix a = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

struct SimOperators {
  CompositeSpace space;
  Sparse hamiltonian;
  Sparse stokes_a;       // embedded Stokes annihilation
  Eigen::VectorXd pump_number;   // diagonal of the pump number operator
  Eigen::VectorXd stokes_number; // diagonal of the Stokes number operator
};

inline SimOperators build_operators(const SimConfig& config) {
  const CompositeSpace space = build_space(config);
  const int pump_factor = config.atoms;
  const int stokes_factor = config.atoms + 1;
  const int total = space.total_dim();

  const Sparse a_p = embed_sparse(mode_annihilation(config.pump_cutoff), pump_factor, space);
  const Sparse a_s = embed_sparse(mode_annihilation(config.stokes_cutoff), stokes_factor, space);

  Sparse h(total, total);
  h = (config.omega_p * (a_p.adjoint() * a_p) + config.omega_s * (a_s.adjoint() * a_s)).eval();
  for (int f = 0; f < config.atoms; ++f) {
    h += config.omega_12 * embed_sparse(level_projector(2, 2), f, space);
    h += config.omega_13 * embed_sparse(level_projector(3, 3), f, space);
    const Sparse r21 = embed_sparse(level_projector(2, 1), f, space);
    const Sparse r32 = embed_sparse(level_projector(3, 2), f, space);
    const Sparse pump_term = (config.g_p * (r21 * a_p)).eval();
    const Sparse stokes_term = config.literal_stokes_coupling
                                   ? (config.g_s * (r32 * a_s)).eval()
                                   : (config.g_s * (r32 * a_s.adjoint())).eval();
    h += pump_term + Sparse(pump_term.adjoint());
    h += stokes_term + Sparse(stokes_term.adjoint());
  }

  Eigen::VectorXd pump_number(total);
  Eigen::VectorXd stokes_number(total);
  const int pump_stride = space.stride(pump_factor);
  const int pump_dim = space.dim(pump_factor);
  const int stokes_dim = space.dim(stokes_factor);
  for (int idx = 0; idx < total; ++idx) {
    pump_number[idx] = (idx / pump_stride) % pump_dim;
    stokes_number[idx] = idx % stokes_dim;
  }

  return SimOperators{space, std::move(h), a_s, std::move(pump_number),
                      std::move(stokes_number)};
}

inline int flat_index(const CompositeSpace& space, const std::vector<int>& indices) {
  int flat = 0;
  for (int ell = 0; ell < space.factors(); ++ell) {
    flat += indices.at(static_cast<std::size_t>(ell)) * space.stride(ell);
  }
  return flat;
}

inline void require_two_atoms(const SimConfig& config, const char* where) {
  if (config.atoms != 2) {
    throw std::invalid_argument(std::string(where) + ": defined for the two-atom configuration");
  }
}

/// (|a1 a2> + |b1 b2>)/sqrt(2) (x) |pump> (x) |stokes>, atom levels 1-based.
inline StateVector symmetric_pair(const SimConfig& config, int level_a, int level_b, int pump,
                                  int stokes) {
  const CompositeSpace space = build_space(config);
  Vector amps = Vector::Zero(space.total_dim());
  const double a = 1.0 / std::sqrt(2.0);
  amps[flat_index(space, {level_a - 1, level_b - 1, pump, stokes})] = a;
  amps[flat_index(space, {level_b - 1, level_a - 1, pump, stokes})] = a;
  return StateVector(space, amps);
}

}  // namespace detail

/// The system Hamiltonian as a dense matrix (for spectra and cross-checks).
inline Matrix build_hamiltonian(const SimConfig& config) {
  return Matrix(detail::build_operators(config).hamiltonian);
}

/// The embedded Stokes annihilation operator (the collapse channel).
inline Matrix stokes_annihilation_operator(const SimConfig& config) {
  return Matrix(detail::build_operators(config).stokes_a);
}

/// Conserved under the emission-form coupling: pump quanta plus atoms in the
/// excited manifold (levels 2 and 3).
inline Matrix conserved_pump_excitation(const SimConfig& config) {
  const auto ops = detail::build_operators(config);
  Matrix op = Matrix::Zero(ops.space.total_dim(), ops.space.total_dim());
  op.diagonal() = ops.pump_number.cast<Complex>();
  for (int f = 0; f < config.atoms; ++f) {
    op += Matrix(detail::embed_sparse(detail::level_projector(2, 2), f, ops.space));
    op += Matrix(detail::embed_sparse(detail::level_projector(3, 3), f, ops.space));
  }
  return op;
}

/// Conserved under the emission-form coupling: Stokes quanta minus atoms in
/// level 3 (a Stokes photon appears exactly when an atom drops 2 -> 3).
inline Matrix conserved_stokes_level3(const SimConfig& config) {
  const auto ops = detail::build_operators(config);
  Matrix op = Matrix::Zero(ops.space.total_dim(), ops.space.total_dim());
  op.diagonal() = ops.stokes_number.cast<Complex>();
  for (int f = 0; f < config.atoms; ++f) {
    op -= Matrix(detail::embed_sparse(detail::level_projector(3, 3), f, ops.space));
  }
  return op;
}

/// All atoms in level 1, one pump photon, no Stokes photons.
inline StateVector initial_state(const SimConfig& config) {
  const CompositeSpace space = build_space(config);
  std::vector<int> indices(static_cast<std::size_t>(space.factors()), 0);
  indices[static_cast<std::size_t>(config.atoms)] = 1;  // pump occupation
  Vector amps = Vector::Zero(space.total_dim());
  amps[detail::flat_index(space, indices)] = 1.0;
  return StateVector(space, amps);
}

/// (|2,1> + |1,2>)/sqrt(2) with empty modes: the short-lived state reached by
/// pump absorption.
inline StateVector pump_absorbed_state(const SimConfig& config) {
  detail::require_two_atoms(config, "pump_absorbed_state");
  return detail::symmetric_pair(config, 2, 1, 0, 0);
}

/// (|3,1> + |1,3>)/sqrt(2) with one Stokes photon: reached by Stokes emission.
inline StateVector stokes_emitted_state(const SimConfig& config) {
  detail::require_two_atoms(config, "stokes_emitted_state");
  return detail::symmetric_pair(config, 3, 1, 0, 1);
}

/// (|3,1> + |1,3>)/sqrt(2) with both modes empty: the long-lived target.
inline StateVector final_target_state(const SimConfig& config) {
  detail::require_two_atoms(config, "final_target_state");
  return detail::symmetric_pair(config, 3, 1, 0, 0);
}

/// <psi_fin| rho |psi_fin>
inline double fidelity_final(const DensityMatrix& rho, const SimConfig& config) {
  detail::require_two_atoms(config, "fidelity_final");
  const StateVector target = final_target_state(config);
  if (rho.dim() != target.total_dim()) {
    throw std::invalid_argument("fidelity_final: density matrix does not match the sim space");
  }
  return target.amplitudes().dot(rho.entries() * target.amplitudes()).real();
}

struct TrajectoryPoint {
  double t = 0.0;
  double trace = 0.0;
  double n_pump = 0.0;
  double n_stokes = 0.0;
  double fidelity_final = 0.0;
  double pop_psi1 = 0.0;
  double pop_psi2 = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
};

struct SimResult {
  Trajectory trajectory;
  DensityMatrix final_state;
};

/// Raised when the integrator loses the trace beyond 1e-6: the fixed step is
/// too large for the configured rates.
class TraceDriftError : public std::runtime_error {
public:
  TraceDriftError(double drift_in, double t_in, double dt_in,
                  const char* kind = "trace drift")
      : std::runtime_error(format(drift_in, t_in, dt_in, kind)), drift(drift_in), t(t_in) {}

  double drift;
  double t;

private:
  static std::string format(double drift, double t, double dt, const char* kind) {
    std::ostringstream text;
    text << std::scientific << std::setprecision(3) << kind << " " << drift << " at t = " << t
         << "; reduce dt (currently " << dt << ")";
    return text.str();
  }
};

using SimObserver = std::function<void(double, const Matrix&)>;

/// Integrates the master equation
///   drho/dt = -i[H, rho] + kappa (2 a_S rho a_S^+ - a_S^+ a_S rho - rho a_S^+ a_S)
/// with classical fixed-step RK4, re-hermitizing after every step. Records the
/// observable row at step 0, every output_stride steps, and the final step.
/// The observer, when given, is called at each recorded time with the raw
/// density matrix.
inline SimResult evolve(const SimConfig& config, const Matrix& initial_rho,
                        const SimObserver& observer = {}) {
  const detail::SimOperators ops = detail::build_operators(config);
  const int total = ops.space.total_dim();
  if (initial_rho.rows() != total || initial_rho.cols() != total) {
    throw std::invalid_argument("evolve: initial state does not match the sim space");
  }

  // Split form: drho/dt = -i(H_eff rho - rho H_eff^+) + 2 kappa a rho a^+,
  // with H_eff = H - i kappa a^+ a.
  detail::Sparse h_eff = ops.hamiltonian;
  h_eff -= detail::Sparse((Complex(0, 1) * config.kappa * (ops.stokes_a.adjoint() * ops.stokes_a))
                              .eval());
  const detail::Sparse h_eff_adj = h_eff.adjoint();
  const detail::Sparse a = ops.stokes_a;
  const detail::Sparse a_adj = a.adjoint();
  const double jump_rate = 2.0 * config.kappa;

  const Complex minus_i(0, -1);
  auto liouvillian = [&](const Matrix& rho) -> Matrix {
    Matrix out = minus_i * (h_eff * rho - rho * h_eff_adj);
    if (jump_rate > 0.0) out += jump_rate * (a * rho * a_adj);
    return out;
  };

  const bool two_atoms = config.atoms == 2;
  Vector psi1, psi2, psi_fin;
  if (two_atoms) {
    psi1 = pump_absorbed_state(config).amplitudes();
    psi2 = stokes_emitted_state(config).amplitudes();
    psi_fin = final_target_state(config).amplitudes();
  }

  Trajectory trajectory;
  auto record = [&](double t, const Matrix& rho) {
    TrajectoryPoint point;
    point.t = t;
    point.trace = rho.trace().real();
    point.n_pump = (ops.pump_number.cast<Complex>().asDiagonal() * rho).trace().real();
    point.n_stokes = (ops.stokes_number.cast<Complex>().asDiagonal() * rho).trace().real();
    if (two_atoms) {
      point.fidelity_final = psi_fin.dot(rho * psi_fin).real();
      point.pop_psi1 = psi1.dot(rho * psi1).real();
      point.pop_psi2 = psi2.dot(rho * psi2).real();
    }
    trajectory.points.push_back(point);
    if (observer) observer(t, rho);
  };

  // Step-size failures show up as negative eigenvalues long before the trace
  // moves (the split form conserves it structurally), so physicality is
  // checked on a fixed time cadence in addition to the per-step trace guard.
  const long check_every = std::max(1L, std::lround(std::ceil(0.5 / config.dt)));
  auto check_physical = [&](double t, const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    const double floor = es.eigenvalues().minCoeff();
    if (!(floor >= -1e-6)) {
      throw TraceDriftError(std::abs(floor), t, config.dt, "negative eigenvalue");
    }
  };

  Matrix rho = initial_rho;
  const long steps = std::lround(config.t_final / config.dt);
  record(0.0, rho);

  for (long s = 1; s <= steps; ++s) {
    const Matrix k1 = liouvillian(rho);
    const Matrix k2 = liouvillian(rho + (config.dt / 2.0) * k1);
    const Matrix k3 = liouvillian(rho + (config.dt / 2.0) * k2);
    const Matrix k4 = liouvillian(rho + config.dt * k3);
    rho += (config.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = ((rho + rho.adjoint()) / 2.0).eval();

    const double t = static_cast<double>(s) * config.dt;
    const double drift = std::abs(rho.trace().real() - 1.0);
    if (!(drift <= 1e-6)) throw TraceDriftError(drift, t, config.dt);
    if (s % check_every == 0 || s == steps) check_physical(t, rho);
    if (s % config.output_stride == 0 || s == steps) record(t, rho);
  }

  return SimResult{std::move(trajectory), DensityMatrix(std::move(rho))};
}

inline SimResult evolve(const SimConfig& config, const DensityMatrix& initial,
                        const SimObserver& observer = {}) {
  return evolve(config, initial.entries(), observer);
}

inline SimResult evolve(const SimConfig& config, const StateVector& initial,
                        const SimObserver& observer = {}) {
  return evolve(config, DensityMatrix::from_pure(initial), observer);
}

inline SimResult evolve(const SimConfig& config) {
  return evolve(config, initial_state(config));
}

/// Conditions on the zero-photon sector with both atoms in levels {1,3} and
/// returns the renormalized two-qubit state (level 1 -> |+>, level 3 -> |->).
/// Throws when the sector population is below 1e-6.
inline DensityMatrix atomic_conditional_state(const DensityMatrix& rho, const SimConfig& config) {
  detail::require_two_atoms(config, "atomic_conditional_state");
  const CompositeSpace space = build_space(config);
  if (rho.dim() != space.total_dim()) {
    throw std::invalid_argument("atomic_conditional_state: density matrix does not match space");
  }
  const std::array<int, 2> levels = {0, 2};  // levels 1 and 3
  std::array<int, 4> sector{};
  int pos = 0;
  for (int a1 : levels) {
    for (int a2 : levels) {
      sector[static_cast<std::size_t>(pos++)] = detail::flat_index(space, {a1, a2, 0, 0});
    }
  }
  Matrix block(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      block(i, j) = rho.entries()(sector[static_cast<std::size_t>(i)],
                                  sector[static_cast<std::size_t>(j)]);
    }
  }
  const double population = block.trace().real();
  if (population < 1e-6) {
    throw std::runtime_error("atomic_conditional_state: sector population below 1e-6");
  }
  return DensityMatrix((block / population).eval());
}

}  // namespace qent
