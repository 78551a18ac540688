#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qent/composite_space.hpp"
#include "qent/density_matrix.hpp"
#include "qent/generators.hpp"
#include "qent/state_vector.hpp"

namespace qent {

namespace detail {

inline void require_hermitian(const Matrix& op, const char* where) {
  if (op.rows() != op.cols()) {
    throw std::invalid_argument(std::string(where) + ": operator must be square");
  }
  const double dev = (op - op.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw std::invalid_argument(std::string(where) + ": operator is not Hermitian");
  }
}

}  // namespace detail

/// <psi| op |psi> for a Hermitian operator on the full space.
inline double expectation(const StateVector& state, const Matrix& op) {
  detail::require_hermitian(op, "expectation");
  if (op.rows() != state.total_dim()) {
    throw std::invalid_argument("expectation: operator dimension does not match state");
  }
  const Complex value = state.amplitudes().dot(op * state.amplitudes());
  return value.real();
}

/// Re Tr(rho op) for a Hermitian operator.
inline double expectation(const DensityMatrix& rho, const Matrix& op) {
  detail::require_hermitian(op, "expectation");
  if (op.rows() != rho.dim()) {
    throw std::invalid_argument("expectation: operator dimension does not match density matrix");
  }
  return (rho.entries() * op).trace().real();
}

/// <psi| g_(ell) |psi> where g acts on factor ell only.
inline double local_expectation(const StateVector& state, const Matrix& g, int ell) {
  detail::require_hermitian(g, "local_expectation");
  const Vector image = apply_local(g, ell, state.space(), state.amplitudes());
  return state.amplitudes().dot(image).real();
}

/// <op^2> - <op>^2. Computed from the explicit square.
inline double variance(const StateVector& state, const Matrix& op) {
  detail::require_hermitian(op, "variance");
  if (op.rows() != state.total_dim()) {
    throw std::invalid_argument("variance: operator dimension does not match state");
  }
  const Vector image = op * state.amplitudes();
  const double second = state.amplitudes().dot(op * image).real();
  const double first = state.amplitudes().dot(image).real();
  return second - first * first;
}

/// Expectation values of every generator on every factor.
/// values[ell][a] = <psi| g_a^(ell) |psi>.
struct LocalExpectations {
  std::vector<std::vector<double>> values;
};

inline LocalExpectations local_expectations(const StateVector& state,
                                            const std::vector<GeneratorSet>& sets) {
  const CompositeSpace& space = state.space();
  if (static_cast<int>(sets.size()) != space.factors()) {
    throw std::invalid_argument("local_expectations: one generator set per factor required");
  }
  LocalExpectations out;
  out.values.resize(sets.size());
  for (int ell = 0; ell < space.factors(); ++ell) {
    const GeneratorSet& set = sets[static_cast<std::size_t>(ell)];
    if (set.local_dim != space.dim(ell)) {
      throw std::invalid_argument("local_expectations: generator set dimension mismatch at factor " +
                                  std::to_string(ell));
    }
    auto& row = out.values[static_cast<std::size_t>(ell)];
    row.reserve(set.matrices.size());
    for (const Matrix& g : set.matrices) {
      row.push_back(local_expectation(state, g, ell));
    }
  }
  return out;
}

}  // namespace qent
