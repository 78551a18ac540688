#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <random>
#include <utility>
#include <vector>

#include "qent/certifier.hpp"
#include "qent/composite_space.hpp"
#include "qent/generators.hpp"
#include "qent/state_vector.hpp"

namespace qent {

struct SolveOptions {
  int restarts = 10;
  int max_iters = 20000;
  double grad_tol = 1e-12;      // stop when the tangent gradient is this small
  double objective_tol = 1e-17; // declare convergence below this objective
  std::uint64_t seed = 0;
  double initial_step = 1.0;
  double shrink = 0.5;          // backtracking factor
  double armijo_slope = 1e-4;   // sufficient-decrease fraction
  double min_step = 1e-18;      // line-search failure threshold
  bool parallel = false;        // run restarts concurrently

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("SolveOptions: restarts must be >= 1");
    if (max_iters < 1) throw std::invalid_argument("SolveOptions: max_iters must be >= 1");
    if (grad_tol <= 0 || objective_tol <= 0) {
      throw std::invalid_argument("SolveOptions: tolerances must be positive");
    }
    if (initial_step <= 0 || shrink <= 0 || shrink >= 1 || armijo_slope <= 0 || min_step <= 0) {
      throw std::invalid_argument("SolveOptions: invalid step policy");
    }
  }
};

struct RestartRecord {
  std::uint64_t seed = 0;
  double objective = 0.0;
  int iters = 0;
  bool converged = false;
};

struct SolveResult {
  StateVector best_state;
  double best_objective = 0.0;
  bool converged = false;
  std::vector<RestartRecord> per_restart;
};

/// Total squared local expectation F = sum_ell sum_j <g_j^(ell)>^2. Zero
/// exactly on maximally entangled states; coincides with the certification
/// residual.
inline double objective(const StateVector& state, const std::vector<GeneratorSet>& sets) {
  return generator_residual(state, sets);
}

/// Ambient gradient of F over the raw complex amplitudes (real pairing):
/// 4 sum <g> g|psi>.
inline Vector ambient_gradient(const StateVector& state, const std::vector<GeneratorSet>& sets) {
  const CompositeSpace& space = state.space();
  if (static_cast<int>(sets.size()) != space.factors()) {
    throw std::invalid_argument("ambient_gradient: one generator set per factor required");
  }
  Vector grad = Vector::Zero(space.total_dim());
  for (int ell = 0; ell < space.factors(); ++ell) {
    if (sets[static_cast<std::size_t>(ell)].local_dim != space.dim(ell)) {
      throw std::invalid_argument("ambient_gradient: generator set dimension mismatch");
    }
    for (const Matrix& g : sets[static_cast<std::size_t>(ell)].matrices) {
      const Vector image = apply_local(g, ell, space, state.amplitudes());
      const double value = state.amplitudes().dot(image).real();
      grad += (4.0 * value) * image;
    }
  }
  return grad;
}

/// Gradient of F restricted to the unit sphere: the ambient gradient with its
/// component along |psi> removed (F is phase-invariant, so the result is
/// complex-orthogonal to the state).
inline Vector riemannian_gradient(const StateVector& state, const std::vector<GeneratorSet>& sets) {
  const Vector grad = ambient_gradient(state, sets);
  const Complex overlap = state.amplitudes().dot(grad);
  return grad - overlap * state.amplitudes();
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

struct SphereObjective {
  const CompositeSpace& space;
  const std::vector<GeneratorSet>& sets;

  double value(const Vector& x) const {
    double total = 0.0;
    for (int ell = 0; ell < space.factors(); ++ell) {
      for (const Matrix& g : sets[static_cast<std::size_t>(ell)].matrices) {
        const double v = x.dot(apply_local(g, ell, space, x)).real();
        total += v * v;
      }
    }
    return total;
  }

  /// Objective and sphere-tangent gradient in one sweep.
  std::pair<double, Vector> value_and_gradient(const Vector& x) const {
    double total = 0.0;
    Vector grad = Vector::Zero(space.total_dim());
    for (int ell = 0; ell < space.factors(); ++ell) {
      for (const Matrix& g : sets[static_cast<std::size_t>(ell)].matrices) {
        const Vector image = apply_local(g, ell, space, x);
        const double v = x.dot(image).real();
        total += v * v;
        grad += (4.0 * v) * image;
      }
    }
    grad -= x.dot(grad) * x;
    return {total, std::move(grad)};
  }
};

inline Vector random_unit_vector(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector x(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    x[i] = Complex(re, im);
  }
  return x.normalized();
}

struct RestartOutcome {
  Vector state;
  RestartRecord record;
};

/// Projected gradient descent with Armijo backtracking; every iterate is
/// renormalized, so the path stays on the unit sphere.
inline RestartOutcome run_restart(const SphereObjective& objective_fn, std::uint64_t seed,
                                  const SolveOptions& opt) {
  Vector x = random_unit_vector(objective_fn.space.total_dim(), seed);
  auto [f, grad] = objective_fn.value_and_gradient(x);
  double step = opt.initial_step;
  int iter = 0;

  for (; iter < opt.max_iters; ++iter) {
    if (f <= opt.objective_tol) break;
    const double grad_norm_sq = grad.squaredNorm();
    if (std::sqrt(grad_norm_sq) <= opt.grad_tol) break;

    double alpha = step;
    bool accepted = false;
    Vector x_trial;
    double f_trial = 0.0;
    while (alpha >= opt.min_step) {
      x_trial = (x - alpha * grad).normalized();
      f_trial = objective_fn.value(x_trial);
      if (f_trial <= f - opt.armijo_slope * alpha * grad_norm_sq) {
        accepted = true;
        break;
      }
      alpha *= opt.shrink;
    }
    if (!accepted) break;

    x = std::move(x_trial);
    std::tie(f, grad) = objective_fn.value_and_gradient(x);
    step = std::min(opt.initial_step, 2.0 * alpha);
  }

  return RestartOutcome{std::move(x), RestartRecord{seed, f, iter, f <= opt.objective_tol}};
}

}  // namespace detail

/// Multistart minimization of the total squared local expectation over unit
/// states. Deterministic for a fixed SolveOptions (restart seeds derive from
/// options.seed); restarts run concurrently when options.parallel is set.
inline SolveResult find_max_entangled(const CompositeSpace& space,
                                      const std::vector<GeneratorSet>& sets,
                                      const SolveOptions& options = {}) {
  options.validate();
  if (static_cast<int>(sets.size()) != space.factors()) {
    throw std::invalid_argument("find_max_entangled: one generator set per factor required");
  }
  const detail::SphereObjective objective_fn{space, sets};

  std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(options.restarts));
  auto run_one = [&](int index) {
    const std::uint64_t seed = detail::splitmix64(options.seed + static_cast<std::uint64_t>(index));
    outcomes[static_cast<std::size_t>(index)] = detail::run_restart(objective_fn, seed, options);
  };

  if (options.parallel && options.restarts > 1) {
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<std::size_t>(options.restarts));
    for (int i = 0; i < options.restarts; ++i) {
      futures.push_back(std::async(std::launch::async, run_one, i));
    }
    for (auto& fut : futures) fut.get();
  } else {
    for (int i = 0; i < options.restarts; ++i) run_one(i);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (outcomes[i].record.objective < outcomes[best].record.objective) best = i;
  }

  SolveResult result{StateVector(space, std::move(outcomes[best].state)),
                     outcomes[best].record.objective,
                     outcomes[best].record.objective <= options.objective_tol,
                     {}};
  result.per_restart.reserve(outcomes.size());
  for (const auto& outcome : outcomes) result.per_restart.push_back(outcome.record);
  return result;
}

}  // namespace qent
