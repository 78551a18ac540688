#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qent/composite_space.hpp"
#include "qent/density_matrix.hpp"
#include "qent/generators.hpp"
#include "qent/measurement.hpp"
#include "qent/state_vector.hpp"

namespace qent {

/// Slice-orthogonality findings for one direction: all n_ell slices must have
/// norm 1/sqrt(n_ell) and vanishing pairwise Hermitian inner products.
struct SliceDirectionReport {
  int direction = 0;
  double expected_norm = 0.0;
  std::vector<double> norms;
  double max_norm_deviation = 0.0;
  double max_overlap = 0.0;
};

struct SliceReport {
  double tol = 0.0;
  std::vector<SliceDirectionReport> directions;
  bool verdict = false;
};

struct MarginalReport {
  double tol = 0.0;
  std::vector<double> distances;  // Frobenius distance of rho_ell from identity/n_ell
  bool verdict = false;
};

/// Certification outcome. residual is the total squared local expectation
/// sum_ell sum_j <g_j^(ell)>^2; verdict_generators = (residual <= tol).
/// The slice and marginal verdicts are filled in by certify_generators so a
/// single report carries all three criteria.
struct CertReport {
  double tol = 1e-10;
  bool complete_sets = false;
  double residual = 0.0;
  LocalExpectations per_generator;
  bool verdict_generators = false;
  bool verdict_slices = false;
  bool verdict_marginals = false;
  SliceReport slice_report;
  MarginalReport marginal_report;

  /// Overall outcome. The three criteria coincide only when every factor
  /// carries a complete su(n) generator set; for incomplete sets (spin
  /// projections at n > 2) the generator criterion alone applies.
  bool verdict() const {
    if (complete_sets) {
      return verdict_generators && verdict_slices && verdict_marginals;
    }
    return verdict_generators;
  }
};

inline double generator_residual(const LocalExpectations& table) {
  double residual = 0.0;
  for (const auto& row : table.values) {
    for (double v : row) residual += v * v;
  }
  return residual;
}

inline double generator_residual(const StateVector& state, const std::vector<GeneratorSet>& sets) {
  return generator_residual(local_expectations(state, sets));
}

inline double generator_residual(const DensityMatrix& rho, const CompositeSpace& space,
                                 const std::vector<GeneratorSet>& sets) {
  if (rho.dim() != space.total_dim()) {
    throw std::invalid_argument("generator_residual: density matrix does not match space");
  }
  if (static_cast<int>(sets.size()) != space.factors()) {
    throw std::invalid_argument("generator_residual: one generator set per factor required");
  }
  double residual = 0.0;
  for (int ell = 0; ell < space.factors(); ++ell) {
    const GeneratorSet& set = sets[static_cast<std::size_t>(ell)];
    if (set.local_dim != space.dim(ell)) {
      throw std::invalid_argument("generator_residual: generator set dimension mismatch");
    }
    for (const Matrix& g : set.matrices) {
      const double v = expectation(rho, embed(g, ell, space));
      residual += v * v;
    }
  }
  return residual;
}

/// Slice criterion: for every direction, parallel slices of the amplitude
/// tensor are mutually orthogonal with common norm 1/sqrt(n_ell).
inline SliceReport certify_slices(const StateVector& state, double tol) {
  if (tol <= 0) throw std::invalid_argument("certify_slices: tol must be positive");
  SliceReport report;
  report.tol = tol;
  report.verdict = true;
  const CompositeSpace& space = state.space();
  for (int ell = 0; ell < space.factors(); ++ell) {
    const SliceFamily family = slices(state, ell);
    SliceDirectionReport dir;
    dir.direction = ell;
    dir.expected_norm = 1.0 / std::sqrt(static_cast<double>(space.dim(ell)));
    for (const Vector& s : family.slices) {
      const double norm = s.norm();
      dir.norms.push_back(norm);
      dir.max_norm_deviation = std::max(dir.max_norm_deviation, std::abs(norm - dir.expected_norm));
    }
    for (std::size_t a = 0; a < family.slices.size(); ++a) {
      for (std::size_t b = a + 1; b < family.slices.size(); ++b) {
        const double overlap = std::abs(family.slices[a].dot(family.slices[b]));
        dir.max_overlap = std::max(dir.max_overlap, overlap);
      }
    }
    if (dir.max_norm_deviation > tol || dir.max_overlap > tol) report.verdict = false;
    report.directions.push_back(std::move(dir));
  }
  return report;
}

/// Marginal criterion: every reduced density matrix is maximally mixed,
/// ||rho_ell - identity/n_ell||_F <= tol.
inline MarginalReport marginal_report(const StateVector& state, double tol) {
  if (tol <= 0) throw std::invalid_argument("certify_marginals: tol must be positive");
  MarginalReport report;
  report.tol = tol;
  report.verdict = true;
  const CompositeSpace& space = state.space();
  for (int ell = 0; ell < space.factors(); ++ell) {
    const DensityMatrix rho = partial_trace(state, ell);
    const int n = space.dim(ell);
    const Matrix deviation = rho.entries() - Matrix::Identity(n, n) / static_cast<double>(n);
    const double distance = deviation.norm();
    report.distances.push_back(distance);
    if (distance > tol) report.verdict = false;
  }
  return report;
}

inline bool certify_marginals(const StateVector& state, double tol) {
  return marginal_report(state, tol).verdict;
}

/// Full certification: generator criterion with the given sets, plus the
/// slice and marginal criteria at the same tolerance.
inline CertReport certify_generators(const StateVector& state, const std::vector<GeneratorSet>& sets,
                                     double tol) {
  if (tol <= 0) throw std::invalid_argument("certify_generators: tol must be positive");
  CertReport report;
  report.tol = tol;
  report.per_generator = local_expectations(state, sets);
  report.residual = generator_residual(report.per_generator);
  report.verdict_generators = report.residual <= tol;
  report.complete_sets = true;
  for (const GeneratorSet& set : sets) {
    if (!set.complete()) report.complete_sets = false;
  }
  report.slice_report = certify_slices(state, tol);
  report.verdict_slices = report.slice_report.verdict;
  report.marginal_report = marginal_report(state, tol);
  report.verdict_marginals = report.marginal_report.verdict;
  return report;
}

namespace detail {

/// |cos(theta/2)| <= tol, the phase constraint shared by the explicit
/// solution families. theta is a sum/difference of coefficient phases.
inline bool half_angle_condition(double theta, double tol) {
  return std::abs(std::cos(0.5 * theta)) <= tol;
}

inline void require_normalized(double norm_sq, const char* where) {
  if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-12) {
    throw std::invalid_argument(std::string(where) + ": coefficients must be normalized");
  }
}

}  // namespace detail

/// Two-qubit family membership for amplitudes (psi11, psi12, psi21, psi22):
/// |psi22| = |psi11|, |psi21| = |psi12|, |psi11|^2 + |psi12|^2 = 1/2, and
/// phi11 + phi22 - phi12 - phi21 an odd multiple of pi. The phase condition
/// is vacuous when either modulus pair vanishes (the corresponding cross
/// terms drop out of the expectation values).
inline bool verify_family_two_qubit(const std::array<Complex, 4>& coeffs, double tol = 1e-10) {
  const double m11 = std::abs(coeffs[0]);
  const double m12 = std::abs(coeffs[1]);
  const double m21 = std::abs(coeffs[2]);
  const double m22 = std::abs(coeffs[3]);
  detail::require_normalized(m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22,
                             "verify_family_two_qubit");

  if (std::abs(m22 - m11) > tol) return false;
  if (std::abs(m21 - m12) > tol) return false;
  if (std::abs(m11 * m11 + m12 * m12 - 0.5) > tol) return false;
  if (m11 * m12 > tol) {
    const double theta = std::arg(coeffs[0]) + std::arg(coeffs[3]) - std::arg(coeffs[1]) -
                         std::arg(coeffs[2]);
    if (!detail::half_angle_condition(theta, tol)) return false;
  }
  return true;
}

/// Three-qubit family membership for states supported on the component
/// slots (+++), (+-+), (-+-), (---): circle condition |psi_{+++}|^2 +
/// |psi_{+-+}|^2 = 1/2, opposite-slot moduli equal, and phase sum
/// phi_{+++} - phi_{+-+} - phi_{-+-} + phi_{---} an odd multiple of pi.
/// Throws if any amplitude outside the four slots is nonzero.
inline bool verify_family_three_qubit(const StateVector& state, double tol = 1e-10) {
  static const std::vector<int> expected_dims = {2, 2, 2};
  if (state.space().dims() != expected_dims) {
    throw std::invalid_argument("verify_family_three_qubit: state must have three qubit factors");
  }
  constexpr int slot_ppp = 0;  // (+,+,+)
  constexpr int slot_pmp = 2;  // (+,-,+)
  constexpr int slot_mpm = 5;  // (-,+,-)
  constexpr int slot_mmm = 7;  // (-,-,-)
  const Vector& amps = state.amplitudes();
  for (int i = 0; i < 8; ++i) {
    if (i == slot_ppp || i == slot_pmp || i == slot_mpm || i == slot_mmm) continue;
    if (std::abs(amps[i]) > 1e-12) {
      throw std::invalid_argument(
          "verify_family_three_qubit: nonzero amplitude outside the four family slots");
    }
  }
  const Complex c_ppp = amps[slot_ppp];
  const Complex c_pmp = amps[slot_pmp];
  const Complex c_mpm = amps[slot_mpm];
  const Complex c_mmm = amps[slot_mmm];
  const double r = std::abs(c_ppp);
  const double c = std::abs(c_pmp);

  if (std::abs(r * r + c * c - 0.5) > tol) return false;
  if (std::abs(std::abs(c_mmm) - r) > tol) return false;
  if (std::abs(std::abs(c_mpm) - c) > tol) return false;
  if (r * c > tol) {
    const double theta =
        std::arg(c_ppp) - std::arg(c_pmp) - std::arg(c_mpm) + std::arg(c_mmm);
    if (!detail::half_angle_condition(theta, tol)) return false;
  }
  return true;
}

/// Single spin-1 membership for amplitudes (lambda_+, lambda_0, lambda_-):
/// the three vanishing-spin-projection equations, cross-checked against the
/// explicit solution forms (the |0>-free superposition, |0> itself, or the
/// general equal-side-moduli family with its half-angle phase condition).
inline bool verify_family_spin1(const std::array<Complex, 3>& coeffs, double tol = 1e-10) {
  const Complex lp = coeffs[0];
  const Complex l0 = coeffs[1];
  const Complex lm = coeffs[2];
  const double mp = std::abs(lp);
  const double m0 = std::abs(l0);
  const double mm = std::abs(lm);
  detail::require_normalized(mp * mp + m0 * m0 + mm * mm, "verify_family_spin1");

  // Vanishing spin projections: <S_z> and the complex ladder expectation.
  const Complex ladder = std::conj(lp) * l0 + std::conj(l0) * lm;
  const bool projections_vanish = std::abs(mp * mp - mm * mm) <= tol &&
                                  std::abs(ladder.real()) <= tol &&
                                  std::abs(ladder.imag()) <= tol;

  // Explicit family forms.
  bool family_form = false;
  if (m0 <= tol) {
    family_form = std::abs(mp - mm) <= tol;  // balanced |+>/|-> superposition
  } else if (mp <= tol && mm <= tol) {
    family_form = true;  // the |0> state
  } else {
    const bool moduli_ok = std::abs(mp - mm) <= tol &&
                           std::abs(2.0 * mp * mp + m0 * m0 - 1.0) <= tol;
    const double theta = std::arg(lp) + std::arg(lm) - 2.0 * std::arg(l0);
    family_form = moduli_ok && detail::half_angle_condition(theta, tol);
  }
  return projections_vanish && family_form;
}

}  // namespace qent
