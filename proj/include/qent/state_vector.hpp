#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "qent/composite_space.hpp"

namespace qent {

/// Pure state on a CompositeSpace. Amplitudes are stored unit-normalized in
/// the row-major index convention of CompositeSpace.
class StateVector {
public:
  StateVector(CompositeSpace space, Vector normalized_amplitudes)
      : space_(std::move(space)), amplitudes_(std::move(normalized_amplitudes)) {
    if (amplitudes_.size() != space_.total_dim()) {
      throw std::invalid_argument("StateVector: amplitude length does not match total dimension");
    }
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-12) {
      throw std::invalid_argument("StateVector: amplitudes must be unit-normalized");
    }
  }

  const CompositeSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }
  int total_dim() const { return space_.total_dim(); }

  double norm() const { return amplitudes_.norm(); }

  /// |<this|other>|^2
  double fidelity(const StateVector& other) const {
    if (other.total_dim() != total_dim()) {
      throw std::invalid_argument("fidelity: dimension mismatch");
    }
    return std::norm(amplitudes_.dot(other.amplitudes_));
  }

private:
  CompositeSpace space_;
  Vector amplitudes_;
};

/// Builds a normalized state from raw amplitudes. Throws on length mismatch
/// and on (numerically) zero input vectors.
inline StateVector make_state(const std::vector<int>& dims, const Vector& amplitudes) {
  CompositeSpace space(dims);
  if (amplitudes.size() != space.total_dim()) {
    throw std::invalid_argument("make_state: expected " + std::to_string(space.total_dim()) +
                                " amplitudes, got " + std::to_string(amplitudes.size()));
  }
  const double nrm = amplitudes.norm();
  if (!(nrm > 1e-300)) {
    throw std::invalid_argument("make_state: amplitude vector has zero norm");
  }
  return StateVector(std::move(space), amplitudes / nrm);
}

inline StateVector make_state(const std::vector<int>& dims, std::initializer_list<Complex> amplitudes) {
  Vector v(static_cast<Eigen::Index>(amplitudes.size()));
  Eigen::Index i = 0;
  for (const Complex& c : amplitudes) v[i++] = c;
  return make_state(dims, v);
}

/// The n_ell parallel slices of the coefficient tensor along one factor:
/// slice a fixes that factor's index to a and flattens the rest row-major.
struct SliceFamily {
  CompositeSpace space;
  int direction;
  std::vector<Vector> slices;
};

inline SliceFamily slices(const StateVector& state, int direction) {
  const CompositeSpace& sp = state.space();
  sp.check_factor(direction);
  const int n = sp.dim(direction);
  const int stride = sp.stride(direction);
  const int left = sp.left_dim(direction);
  const Vector& psi = state.amplitudes();

  SliceFamily family{sp, direction, {}};
  family.slices.reserve(n);
  for (int a = 0; a < n; ++a) {
    Vector s(left * stride);
    for (int l = 0; l < left; ++l) {
      for (int r = 0; r < stride; ++r) {
        s[l * stride + r] = psi[(l * n + a) * stride + r];
      }
    }
    family.slices.push_back(std::move(s));
  }
  return family;
}

/// Inverse of slices(): scatters each slice back to its position in the flat
/// amplitude tensor. Bit-exact round trip with slices().
inline Vector reassemble(const SliceFamily& family) {
  const CompositeSpace& sp = family.space;
  const int n = sp.dim(family.direction);
  const int stride = sp.stride(family.direction);
  const int left = sp.left_dim(family.direction);

  Vector psi(sp.total_dim());
  for (int a = 0; a < n; ++a) {
    const Vector& s = family.slices.at(a);
    for (int l = 0; l < left; ++l) {
      for (int r = 0; r < stride; ++r) {
        psi[(l * n + a) * stride + r] = s[l * stride + r];
      }
    }
  }
  return psi;
}

}  // namespace qent
