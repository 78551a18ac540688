#pragma once

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qent/certifier.hpp"
#include "qent/lambda_sim.hpp"
#include "qent/solver.hpp"
#include "qent/state_vector.hpp"

namespace qent {

using Json = nlohmann::json;

inline Json state_to_json(const StateVector& state) {
  Json j;
  j["dims"] = state.space().dims();
  Json amps = Json::array();
  for (int i = 0; i < state.total_dim(); ++i) {
    const Complex& c = state.amplitudes()[i];
    amps.push_back(Json::array({c.real(), c.imag()}));
  }
  j["amplitudes"] = std::move(amps);
  return j;
}

inline StateVector state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("amplitudes")) {
    throw std::invalid_argument("state file: expected an object with 'dims' and 'amplitudes'");
  }
  std::vector<int> dims;
  for (const Json& d : j.at("dims")) {
    if (!d.is_number_integer()) {
      throw std::invalid_argument("state file: dims must be integers");
    }
    dims.push_back(d.get<int>());
  }
  const Json& amps = j.at("amplitudes");
  if (!amps.is_array()) {
    throw std::invalid_argument("state file: amplitudes must be an array of [re, im] pairs");
  }
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const Json& entry : amps) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      throw std::invalid_argument("state file: each amplitude must be an [re, im] pair");
    }
    v[i++] = Complex(entry[0].get<double>(), entry[1].get<double>());
  }
  return make_state(dims, v);
}

namespace detail {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Json parse_json_file(const std::string& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const Json::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace detail

inline StateVector read_state(const std::string& path) {
  return state_from_json(detail::parse_json_file(path));
}

inline void write_state(const std::string& path, const StateVector& state) {
  detail::write_text_file(path, state_to_json(state).dump(2) + "\n");
}

inline Json cert_report_to_json(const CertReport& report) {
  Json j;
  j["tol"] = report.tol;
  j["residual"] = report.residual;
  j["complete_sets"] = report.complete_sets;
  j["verdicts"] = {{"generators", report.verdict_generators},
                   {"slices", report.verdict_slices},
                   {"marginals", report.verdict_marginals},
                   {"overall", report.verdict()}};
  Json table = Json::array();
  for (std::size_t ell = 0; ell < report.per_generator.values.size(); ++ell) {
    const auto& row = report.per_generator.values[ell];
    for (std::size_t a = 0; a < row.size(); ++a) {
      table.push_back({{"factor", ell}, {"generator", a}, {"value", row[a]}});
    }
  }
  j["per_generator"] = std::move(table);
  Json directions = Json::array();
  for (const SliceDirectionReport& dir : report.slice_report.directions) {
    directions.push_back({{"direction", dir.direction},
                          {"expected_norm", dir.expected_norm},
                          {"norms", dir.norms},
                          {"max_norm_deviation", dir.max_norm_deviation},
                          {"max_overlap", dir.max_overlap}});
  }
  j["slices"] = {{"directions", std::move(directions)}};
  j["marginals"] = {{"distances", report.marginal_report.distances}};
  return j;
}

inline Json solve_result_to_json(const SolveResult& result) {
  Json j;
  j["best_objective"] = result.best_objective;
  j["converged"] = result.converged;
  Json restarts = Json::array();
  for (const RestartRecord& record : result.per_restart) {
    restarts.push_back({{"seed", record.seed},
                        {"objective", record.objective},
                        {"iters", record.iters},
                        {"converged", record.converged}});
  }
  j["per_restart"] = std::move(restarts);
  j["state"] = state_to_json(result.best_state);
  return j;
}

inline Json sim_config_to_json(const SimConfig& config) {
  return Json{{"atoms", config.atoms},
              {"pump_cutoff", config.pump_cutoff},
              {"stokes_cutoff", config.stokes_cutoff},
              {"omega_p", config.omega_p},
              {"omega_s", config.omega_s},
              {"omega_12", config.omega_12},
              {"omega_13", config.omega_13},
              {"g_p", config.g_p},
              {"g_s", config.g_s},
              {"kappa", config.kappa},
              {"t_final", config.t_final},
              {"dt", config.dt},
              {"output_stride", config.output_stride},
              {"literal_stokes_coupling", config.literal_stokes_coupling}};
}

/// Reads a SimConfig, starting from the defaults; unknown keys are rejected
/// so silent typos cannot revert a field to its default.
inline SimConfig sim_config_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("sim config: expected a JSON object");
  SimConfig config;
  auto read_int = [&](const char* key, int& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer()) {
      throw std::invalid_argument(std::string("sim config: '") + key + "' must be an integer");
    }
    out = j.at(key).get<int>();
  };
  auto read_double = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number()) {
      throw std::invalid_argument(std::string("sim config: '") + key + "' must be a number");
    }
    out = j.at(key).get<double>();
  };
  read_int("atoms", config.atoms);
  read_int("pump_cutoff", config.pump_cutoff);
  read_int("stokes_cutoff", config.stokes_cutoff);
  read_double("omega_p", config.omega_p);
  read_double("omega_s", config.omega_s);
  read_double("omega_12", config.omega_12);
  read_double("omega_13", config.omega_13);
  read_double("g_p", config.g_p);
  read_double("g_s", config.g_s);
  read_double("kappa", config.kappa);
  read_double("t_final", config.t_final);
  read_double("dt", config.dt);
  read_int("output_stride", config.output_stride);
  if (j.contains("literal_stokes_coupling")) {
    if (!j.at("literal_stokes_coupling").is_boolean()) {
      throw std::invalid_argument("sim config: 'literal_stokes_coupling' must be a boolean");
    }
    config.literal_stokes_coupling = j.at("literal_stokes_coupling").get<bool>();
  }

  static const std::vector<std::string> known = {
      "atoms",    "pump_cutoff", "stokes_cutoff", "omega_p", "omega_s",
      "omega_12", "omega_13",    "g_p",           "g_s",     "kappa",
      "t_final",  "dt",          "output_stride", "literal_stokes_coupling"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw std::invalid_argument("sim config: unknown key '" + it.key() + "'");
    }
  }
  config.validate();
  return config;
}

inline SimConfig read_sim_config(const std::string& path) {
  return sim_config_from_json(detail::parse_json_file(path));
}

inline void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,trace,n_pump,n_stokes,fidelity_final,pop_psi1,pop_psi2\n";
  out << std::setprecision(17);
  for (const TrajectoryPoint& p : trajectory.points) {
    out << p.t << ',' << p.trace << ',' << p.n_pump << ',' << p.n_stokes << ','
        << p.fidelity_final << ',' << p.pop_psi1 << ',' << p.pop_psi2 << '\n';
  }
}

inline void write_trajectory_csv(const std::string& path, const Trajectory& trajectory) {
  std::ostringstream buffer;
  write_trajectory_csv(buffer, trajectory);
  detail::write_text_file(path, buffer.str());
}

}  // namespace qent
