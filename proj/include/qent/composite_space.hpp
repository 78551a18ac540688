#pragma once

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qent {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Tensor product of finite-dimensional factors. Flat indices are row-major
/// with the leftmost factor varying slowest; local basis label |+> is index 0.
class CompositeSpace {
public:
  explicit CompositeSpace(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
      throw std::invalid_argument("CompositeSpace: dims must be non-empty");
    }
    total_dim_ = 1;
    for (int n : dims_) {
      if (n < 2) {
        throw std::invalid_argument("CompositeSpace: every factor dimension must be >= 2");
      }
      total_dim_ *= n;
    }
  }

  int factors() const { return static_cast<int>(dims_.size()); }
  int dim(int ell) const { return dims_.at(check_factor(ell)); }
  int total_dim() const { return total_dim_; }
  const std::vector<int>& dims() const { return dims_; }

  /// Product of dimensions strictly right of factor ell (the flat-index stride
  /// of that factor under the row-major convention).
  int stride(int ell) const {
    check_factor(ell);
    int s = 1;
    for (std::size_t k = ell + 1; k < dims_.size(); ++k) s *= dims_[k];
    return s;
  }

  /// Product of dimensions strictly left of factor ell.
  int left_dim(int ell) const {
    check_factor(ell);
    int s = 1;
    for (int k = 0; k < ell; ++k) s *= dims_[k];
    return s;
  }

  int check_factor(int ell) const {
    if (ell < 0 || ell >= factors()) {
      throw std::out_of_range("CompositeSpace: factor index " + std::to_string(ell) +
                              " out of range for " + std::to_string(factors()) + " factors");
    }
    return ell;
  }

  bool operator==(const CompositeSpace& other) const { return dims_ == other.dims_; }
  bool operator!=(const CompositeSpace& other) const { return !(*this == other); }

private:
  std::vector<int> dims_;
  int total_dim_ = 0;
};

}  // namespace qent
