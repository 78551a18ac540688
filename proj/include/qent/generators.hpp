#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qent/composite_space.hpp"

namespace qent {

enum class GeneratorKind { pauli, spin, su_n };

inline std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::pauli: return "pauli";
    case GeneratorKind::spin: return "spin";
    case GeneratorKind::su_n: return "sun";
  }
  return "?";
}

/// A family of Hermitian traceless generators acting on one factor.
struct GeneratorSet {
  int local_dim = 0;
  GeneratorKind kind = GeneratorKind::pauli;
  double spin = 0.0;  // meaningful when kind == spin
  std::vector<Matrix> matrices;

  /// True when the set spans the full traceless Hermitian space su(n):
  /// pauli and su_n always, spin only in the s = 1/2 representation.
  bool complete() const {
    switch (kind) {
      case GeneratorKind::pauli:
      case GeneratorKind::su_n: return true;
      case GeneratorKind::spin: return local_dim == 2;
    }
    return false;
  }
};

/// The Pauli matrices in the |+> = index 0, |-> = index 1 convention.
inline GeneratorSet pauli_set() {
  GeneratorSet set;
  set.local_dim = 2;
  set.kind = GeneratorKind::pauli;
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  set.matrices = {sx, sy, sz};
  return set;
}

/// Spin matrices for spin s (dimension 2s+1) from the ladder construction:
/// S_z = diag(s, s-1, ..., -s), <m±1|S±|m> = sqrt(s(s+1) - m(m±1)).
/// Dimensionful: eigenvalues of each projection run s ... -s.
inline GeneratorSet spin_set(double s) {
  const double two_s = 2.0 * s;
  if (s < 0.5 - 1e-12 || std::abs(two_s - std::round(two_s)) > 1e-9) {
    throw std::invalid_argument("spin_set: s must be a half-integer >= 1/2");
  }
  const int dim = static_cast<int>(std::lround(two_s)) + 1;

  Matrix sz = Matrix::Zero(dim, dim);
  Matrix splus = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = s - k;
    sz(k, k) = m;
    if (k > 0) {
      // raising: |s, m+1><s, m|, row k-1 holds m+1
      splus(k - 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
    }
  }
  const Matrix sminus = splus.adjoint();

  GeneratorSet set;
  set.local_dim = dim;
  set.kind = GeneratorKind::spin;
  set.spin = s;
  set.matrices = {(splus + sminus) / 2.0, (splus - sminus) / Complex(0, 2), sz};
  return set;
}

/// Generalized Gell-Mann basis of su(n): n(n-1)/2 symmetric, n(n-1)/2
/// antisymmetric, and n-1 diagonal matrices, normalized so Tr(g_i g_j) = 2 d_ij.
inline GeneratorSet su_n_set(int n) {
  if (n < 2) {
    throw std::invalid_argument("su_n_set: n must be >= 2");
  }
  GeneratorSet set;
  set.local_dim = n;
  set.kind = GeneratorKind::su_n;
  set.matrices.reserve(static_cast<std::size_t>(n) * n - 1);

  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix g = Matrix::Zero(n, n);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      set.matrices.push_back(g);
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix g = Matrix::Zero(n, n);
      g(j, k) = Complex(0, -1);
      g(k, j) = Complex(0, 1);
      set.matrices.push_back(g);
    }
  }
  for (int l = 1; l < n; ++l) {
    Matrix g = Matrix::Zero(n, n);
    const double factor = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) g(j, j) = factor;
    g(l, l) = -l * factor;
    set.matrices.push_back(g);
  }
  return set;
}

/// identity (x) ... (x) g (x) ... (x) identity, with g at factor ell.
inline Matrix embed(const Matrix& g, int ell, const CompositeSpace& space) {
  space.check_factor(ell);
  const int n = space.dim(ell);
  if (g.rows() != n || g.cols() != n) {
    throw std::invalid_argument("embed: operator dimension does not match factor dimension");
  }
  const int stride = space.stride(ell);
  const int left = space.left_dim(ell);
  const int total = space.total_dim();

  Matrix full = Matrix::Zero(total, total);
  for (int l = 0; l < left; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Complex gij = g(i, j);
        if (gij == Complex(0, 0)) continue;
        const int row0 = (l * n + i) * stride;
        const int col0 = (l * n + j) * stride;
        for (int r = 0; r < stride; ++r) {
          full(row0 + r, col0 + r) = gij;
        }
      }
    }
  }
  return full;
}

/// Applies a local operator to factor ell of psi without forming the full
/// embedded matrix. Identical result to embed(g, ell, space) * psi.
inline Vector apply_local(const Matrix& g, int ell, const CompositeSpace& space, const Vector& psi) {
  space.check_factor(ell);
  const int n = space.dim(ell);
  if (g.rows() != n || g.cols() != n) {
    throw std::invalid_argument("apply_local: operator dimension does not match factor dimension");
  }
  if (psi.size() != space.total_dim()) {
    throw std::invalid_argument("apply_local: state dimension mismatch");
  }
  const int stride = space.stride(ell);
  const int left = space.left_dim(ell);

  Vector out = Vector::Zero(psi.size());
  for (int l = 0; l < left; ++l) {
    for (int i = 0; i < n; ++i) {
      const int row0 = (l * n + i) * stride;
      for (int j = 0; j < n; ++j) {
        const Complex gij = g(i, j);
        if (gij == Complex(0, 0)) continue;
        const int col0 = (l * n + j) * stride;
        for (int r = 0; r < stride; ++r) {
          out[row0 + r] += gij * psi[col0 + r];
        }
      }
    }
  }
  return out;
}

/// One generator set per factor of `space`, all of the same kind.
/// kind spin uses s = (n-1)/2 per factor; kind pauli requires qubit factors.
inline std::vector<GeneratorSet> sets_for(const CompositeSpace& space, GeneratorKind kind) {
  std::vector<GeneratorSet> sets;
  sets.reserve(space.factors());
  for (int ell = 0; ell < space.factors(); ++ell) {
    const int n = space.dim(ell);
    switch (kind) {
      case GeneratorKind::pauli:
        if (n != 2) {
          throw std::invalid_argument("sets_for: pauli generators require qubit factors (got dimension " +
                                      std::to_string(n) + ")");
        }
        sets.push_back(pauli_set());
        break;
      case GeneratorKind::spin:
        sets.push_back(spin_set((n - 1) / 2.0));
        break;
      case GeneratorKind::su_n:
        sets.push_back(su_n_set(n));
        break;
    }
  }
  return sets;
}

}  // namespace qent
