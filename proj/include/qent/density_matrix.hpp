#pragma once

#include <algorithm>
#include <cmath>

#include "qent/state_vector.hpp"

namespace qent {

/// Hermitian, unit-trace, positive-semidefinite operator.
class DensityMatrix {
public:
  /// Validating factory. psd_floor is the allowed eigenvalue negativity
  /// (float noise); anything below it is rejected.
  static DensityMatrix make(Matrix entries, double hermitian_tol = 1e-10,
                            double trace_tol = 1e-10, double psd_floor = -1e-8) {
    if (entries.rows() != entries.cols()) {
      throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    const double herm_dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > hermitian_tol) {
      throw std::invalid_argument("DensityMatrix: not Hermitian (max deviation " +
                                  std::to_string(herm_dev) + ")");
    }
    const Complex tr = entries.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > trace_tol) {
      throw std::invalid_argument("DensityMatrix: trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(((entries + entries.adjoint()) / 2.0).eval(),
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < psd_floor) {
      throw std::invalid_argument("DensityMatrix: spectrum negative beyond tolerance");
    }
    return DensityMatrix(std::move(entries));
  }

  static DensityMatrix from_pure(const StateVector& psi) {
    return DensityMatrix((psi.amplitudes() * psi.amplitudes().adjoint()).eval());
  }

  /// Trusted constructor: callers guarantee the invariants (e.g. outputs of
  /// partial_trace, which are Hermitian PSD by construction).
  explicit DensityMatrix(Matrix entries) : entries_(std::move(entries)) {}

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

private:
  Matrix entries_;
};

/// Reduced state of factor `keep`, tracing out everything else.
inline DensityMatrix partial_trace(const StateVector& state, int keep) {
  const CompositeSpace& sp = state.space();
  sp.check_factor(keep);
  const int n = sp.dim(keep);
  const int stride = sp.stride(keep);
  const int left = sp.left_dim(keep);
  const Vector& psi = state.amplitudes();

  Matrix rho = Matrix::Zero(n, n);
  for (int l = 0; l < left; ++l) {
    for (int r = 0; r < stride; ++r) {
      for (int i = 0; i < n; ++i) {
        const Complex a = psi[(l * n + i) * stride + r];
        for (int j = 0; j < n; ++j) {
          rho(i, j) += a * std::conj(psi[(l * n + j) * stride + r]);
        }
      }
    }
  }
  return DensityMatrix(std::move(rho));
}

/// Eigenvalues of a density matrix, clipped to [0, 1] after a small
/// negativity allowance. Throws if the spectrum is negative beyond it.
inline Eigen::VectorXd density_spectrum(const DensityMatrix& rho, double neg_floor = -1e-8) {
  const Matrix sym = (rho.entries() + rho.entries().adjoint()) / 2.0;
  const double herm_dev = (rho.entries() - rho.entries().adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > 1e-10) {
    throw std::invalid_argument("density_spectrum: input not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < neg_floor) {
      throw std::invalid_argument("density_spectrum: negative eigenvalue beyond tolerance");
    }
    ev[i] = std::clamp(ev[i], 0.0, 1.0);
  }
  return ev;
}

/// S = -sum p ln p in nats, with 0 ln 0 := 0.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd ev = density_spectrum(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > 0.0) s -= ev[i] * std::log(ev[i]);
  }
  return std::max(s, 0.0);
}

/// Tr(rho^2), in [1/dim, 1].
inline double purity(const DensityMatrix& rho) {
  return (rho.entries() * rho.entries()).trace().real();
}

}  // namespace qent
