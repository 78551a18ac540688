#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qent/state_vector.hpp"

namespace qent {

namespace detail {

inline Complex polar(double modulus, double phase) {
  return std::polar(modulus, phase);
}

inline void require_sign(int sign, const char* where) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument(std::string(where) + ": sign must be +1 or -1");
  }
}

}  // namespace detail

/// (|+->  +/- |-+>)/sqrt(2)
inline StateVector epr(int sign = +1) {
  detail::require_sign(sign, "epr");
  const double a = 1.0 / std::sqrt(2.0);
  return make_state({2, 2}, {0.0, a, sign * a, 0.0});
}

/// (|++>  +/- |-->)/sqrt(2)
inline StateVector bell(int sign = +1) {
  detail::require_sign(sign, "bell");
  const double a = 1.0 / std::sqrt(2.0);
  return make_state({2, 2}, {a, 0.0, 0.0, sign * a});
}

/// Orthonormal basis of four maximally entangled two-qubit states, each with
/// all four components of modulus 1/2 and quarter-turn phase patterns.
inline std::vector<StateVector> four_component_basis() {
  const Complex h(0.5, 0.0);
  const Complex ih(0.0, 0.5);
  return {
      make_state({2, 2}, {h, ih, ih, h}),
      make_state({2, 2}, {h, -ih, ih, -h}),
      make_state({2, 2}, {ih, h, h, ih}),
      make_state({2, 2}, {-ih, h, -h, ih}),
  };
}

/// (|+++>  +/- |--->)/sqrt(2)
inline StateVector ghz(int sign = +1) {
  detail::require_sign(sign, "ghz");
  const double a = 1.0 / std::sqrt(2.0);
  Vector amps = Vector::Zero(8);
  amps[0] = a;
  amps[7] = sign * a;
  return StateVector(CompositeSpace({2, 2, 2}), amps);
}

/// Two-qubit family: |psi11| = |psi22| = m, |psi12| = |psi21| = sqrt(1/2 - m^2),
/// three phases free, the fourth fixed by phi11 + phi22 - phi12 - phi21 = pi.
/// Every member is maximally entangled; m = 0 and m = 1/sqrt(2) degenerate to
/// the EPR and Bell forms.
inline StateVector two_qubit_family(double m, double phi11 = 0.0, double phi12 = 0.0,
                                    double phi21 = 0.0) {
  const double max_m = 1.0 / std::sqrt(2.0);
  if (m < 0.0 || m > max_m + 1e-12) {
    throw std::invalid_argument("two_qubit_family: m must lie in [0, 1/sqrt(2)]");
  }
  const double mu = std::sqrt(std::max(0.0, 0.5 - m * m));
  const double phi22 = std::numbers::pi - phi11 + phi12 + phi21;
  return make_state({2, 2}, {detail::polar(m, phi11), detail::polar(mu, phi12),
                             detail::polar(mu, phi21), detail::polar(m, phi22)});
}

/// Three-qubit family on the slots (+++), (+-+), (-+-), (---):
/// |psi_{+++}| = |psi_{---}| = r, the other pair carries sqrt(1/2 - r^2),
/// and phi_{+++} - phi_{+-+} - phi_{-+-} + phi_{---} = pi. r = 1/sqrt(2)
/// recovers GHZ+ up to phases.
inline StateVector three_qubit_family(double r, double phi111 = 0.0, double phi121 = 0.0,
                                      double phi212 = 0.0) {
  const double max_r = 1.0 / std::sqrt(2.0);
  if (r < 0.0 || r > max_r + 1e-12) {
    throw std::invalid_argument("three_qubit_family: r must lie in [0, 1/sqrt(2)]");
  }
  const double c = std::sqrt(std::max(0.0, 0.5 - r * r));
  const double phi222 = std::numbers::pi - phi111 + phi121 + phi212;
  Vector amps = Vector::Zero(8);
  amps[0] = detail::polar(r, phi111);
  amps[2] = detail::polar(c, phi121);
  amps[5] = detail::polar(c, phi212);
  amps[7] = detail::polar(r, phi222);
  return StateVector(CompositeSpace({2, 2, 2}), amps);
}

/// SU(2) phase state of two spin-1 factors:
/// (|+-> + e^{i phi_k}|00> + e^{2i phi_k}|-+>)/sqrt(3), phi_k = 2k pi/3.
inline StateVector su2_phase_state(int k) {
  if (k < 0 || k > 2) {
    throw std::invalid_argument("su2_phase_state: k must be 0, 1, or 2");
  }
  const double phi = 2.0 * std::numbers::pi * k / 3.0;
  const double a = 1.0 / std::sqrt(3.0);
  Vector amps = Vector::Zero(9);
  amps[2] = a;                        // |+ ->
  amps[4] = detail::polar(a, phi);    // |0 0>
  amps[6] = detail::polar(a, 2 * phi);  // |- +>
  return StateVector(CompositeSpace({3, 3}), amps);
}

/// The photon-twin product kets |+->, |00>, |-+> on two spin-1 factors.
inline std::vector<StateVector> photon_twin_basis() {
  std::vector<StateVector> basis;
  for (int flat : {2, 4, 6}) {
    Vector amps = Vector::Zero(9);
    amps[flat] = 1.0;
    basis.push_back(StateVector(CompositeSpace({3, 3}), amps));
  }
  return basis;
}

/// Single spin-1 balanced superposition (|+> + e^{i phi}|->)/sqrt(2).
inline StateVector spin1_plus_minus(double phi = 0.0) {
  const double a = 1.0 / std::sqrt(2.0);
  return make_state({3}, {Complex(a, 0.0), Complex(0.0, 0.0), detail::polar(a, phi)});
}

/// Single spin-1 state |0>.
inline StateVector spin1_zero() {
  return make_state({3}, {0.0, 1.0, 0.0});
}

/// General certified single spin-1 family: |lambda_+| = |lambda_-| =
/// side_modulus, |lambda_0| = sqrt(1 - 2 side_modulus^2), and
/// phi_+ + phi_- - 2 phi_0 an odd multiple of pi whenever both moduli are
/// nonzero. Throws when the phase condition is violated.
inline StateVector spin1_family(double side_modulus, double phi_plus = 0.0,
                                double phi_minus = 0.0,
                                double phi_zero = std::numbers::pi / 2) {
  const double max_side = 1.0 / std::sqrt(2.0);
  if (side_modulus < 0.0 || side_modulus > max_side + 1e-12) {
    throw std::invalid_argument("spin1_family: side modulus must lie in [0, 1/sqrt(2)]");
  }
  double center = std::sqrt(std::max(0.0, 1.0 - 2.0 * side_modulus * side_modulus));
  // Any floating-point spelling of 1/sqrt(2) lands within 1e-7 of the corner;
  // snap so the phase condition is vacuous there, as it is in exact arithmetic.
  if (center < 1e-7) center = 0.0;
  if (side_modulus > 1e-12 && center > 1e-12) {
    const double theta = phi_plus + phi_minus - 2.0 * phi_zero;
    if (std::abs(std::cos(0.5 * theta)) > 1e-10) {
      throw std::invalid_argument(
          "spin1_family: phases must satisfy phi_+ + phi_- - 2 phi_0 = pi (mod 2 pi)");
    }
  }
  return make_state({3}, {detail::polar(side_modulus, phi_plus), detail::polar(center, phi_zero),
                          detail::polar(side_modulus, phi_minus)});
}

namespace detail {

/// Pulls named parameters with defaults and rejects unknown leftovers.
class ParamReader {
 public:
  explicit ParamReader(const std::map<std::string, double>& params) : params_(params) {}

  double get(const std::string& key, double fallback) {
    consumed_.insert(key);
    const auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second;
  }

  void finish(const std::string& name) const {
    for (const auto& [key, value] : params_) {
      (void)value;
      if (consumed_.find(key) == consumed_.end()) {
        throw std::invalid_argument("construct_named: unknown parameter '" + key + "' for '" +
                                    name + "'");
      }
    }
  }

 private:
  const std::map<std::string, double>& params_;
  std::set<std::string> consumed_;
};

}  // namespace detail

inline std::vector<std::string> catalog_names() {
  return {"epr+",        "epr-",        "bell+",       "bell-",
          "four-component-0", "four-component-1", "four-component-2", "four-component-3",
          "ghz+",        "ghz-",        "two-qubit-family", "three-qubit-family",
          "su2-phase-0", "su2-phase-1", "su2-phase-2",
          "twin-0",      "twin-1",      "twin-2",
          "spin1-pm",    "spin1-zero",  "spin1-family"};
}

/// Builds a catalog state from its CLI name and a parameter map. Unknown
/// names and parameters throw std::invalid_argument.
inline StateVector construct_named(const std::string& name,
                                   const std::map<std::string, double>& params = {}) {
  detail::ParamReader reader(params);
  auto finish = [&](StateVector state) {
    reader.finish(name);
    return state;
  };

  if (name == "epr+") return finish(epr(+1));
  if (name == "epr-") return finish(epr(-1));
  if (name == "bell+") return finish(bell(+1));
  if (name == "bell-") return finish(bell(-1));
  if (name == "ghz+") return finish(ghz(+1));
  if (name == "ghz-") return finish(ghz(-1));
  for (int i = 0; i < 4; ++i) {
    if (name == "four-component-" + std::to_string(i)) return finish(four_component_basis()[i]);
  }
  for (int k = 0; k < 3; ++k) {
    if (name == "su2-phase-" + std::to_string(k)) return finish(su2_phase_state(k));
    if (name == "twin-" + std::to_string(k)) return finish(photon_twin_basis()[k]);
  }
  if (name == "two-qubit-family") {
    const double m = reader.get("m", 0.5);
    const double phi11 = reader.get("phi11", 0.0);
    const double phi12 = reader.get("phi12", 0.0);
    const double phi21 = reader.get("phi21", 0.0);
    return finish(two_qubit_family(m, phi11, phi12, phi21));
  }
  if (name == "three-qubit-family") {
    const double r = reader.get("r", 0.5);
    const double phi111 = reader.get("phi111", 0.0);
    const double phi121 = reader.get("phi121", 0.0);
    const double phi212 = reader.get("phi212", 0.0);
    return finish(three_qubit_family(r, phi111, phi121, phi212));
  }
  if (name == "spin1-pm") return finish(spin1_plus_minus(reader.get("phi", 0.0)));
  if (name == "spin1-zero") return finish(spin1_zero());
  if (name == "spin1-family") {
    const double side = reader.get("side_modulus", 0.5);
    const double phi_plus = reader.get("phi_plus", 0.0);
    const double phi_minus = reader.get("phi_minus", 0.0);
    const double phi_zero = reader.get("phi_zero", std::numbers::pi / 2);
    return finish(spin1_family(side, phi_plus, phi_minus, phi_zero));
  }
  throw std::invalid_argument("construct_named: unknown state name '" + name + "'");
}

}  // namespace qent
