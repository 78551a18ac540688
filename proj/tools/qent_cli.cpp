#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qent/qent.hpp>

namespace {

qent::GeneratorKind parse_kind(const std::string& name) {
  if (name == "pauli") return qent::GeneratorKind::pauli;
  if (name == "spin") return qent::GeneratorKind::spin;
  if (name == "sun") return qent::GeneratorKind::su_n;
  throw std::invalid_argument("unknown generator kind '" + name + "' (pauli|spin|sun)");
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      dims.push_back(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid dimension list '" + text + "'");
    }
  }
  if (dims.empty()) throw std::invalid_argument("empty dimension list");
  return dims;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& entries) {
  std::map<std::string, double> params;
  for (const std::string& entry : entries) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("parameter '" + entry + "' is not of the form name=value");
    }
    const std::string key = entry.substr(0, eq);
    const std::string value = entry.substr(eq + 1);
    try {
      std::size_t used = 0;
      params[key] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("parameter '" + entry + "' has a non-numeric value");
    }
  }
  return params;
}

int run_construct(const std::string& name, const std::vector<std::string>& param_entries,
                  const std::string& out_path, const std::string& kind_name, double tol) {
  const qent::StateVector state = qent::construct_named(name, parse_params(param_entries));
  const auto sets = qent::sets_for(state.space(), parse_kind(kind_name));
  const double residual = qent::generator_residual(state, sets);

  std::ostringstream residual_line;
  residual_line << "residual = " << std::setprecision(17) << residual << " (tol " << tol << ")\n";
  if (out_path.empty()) {
    std::cout << qent::state_to_json(state).dump(2) << "\n";
    std::cerr << residual_line.str();
  } else {
    qent::write_state(out_path, state);
    std::cout << residual_line.str();
  }
  return 0;
}

int run_certify(const std::string& state_path, const std::string& kind_name, double tol) {
  const qent::StateVector state = qent::read_state(state_path);
  const auto sets = qent::sets_for(state.space(), parse_kind(kind_name));
  const qent::CertReport report = qent::certify_generators(state, sets, tol);
  std::cout << qent::cert_report_to_json(report).dump(2) << "\n";
  return report.verdict() ? 0 : 1;
}

int run_solve(const std::string& dims_text, const std::string& kind_name, int restarts,
              std::uint64_t seed, int max_iters, bool parallel, const std::string& out_path) {
  const qent::CompositeSpace space(parse_dims(dims_text));
  const auto sets = qent::sets_for(space, parse_kind(kind_name));
  qent::SolveOptions options;
  options.restarts = restarts;
  options.seed = seed;
  options.max_iters = max_iters;
  options.parallel = parallel;
  const qent::SolveResult result = qent::find_max_entangled(space, sets, options);

  const qent::Json j = qent::solve_result_to_json(result);
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    qent::detail::write_text_file(out_path, j.dump(2) + "\n");
    std::cout << "best objective = " << std::setprecision(17) << result.best_objective
              << (result.converged ? " (converged)" : " (not converged)") << "\n";
  }
  return result.converged ? 0 : 1;
}

int run_simulate(const std::string& config_path, const std::string& out_path) {
  const qent::SimConfig config = qent::read_sim_config(config_path);
  const qent::SimResult result = qent::evolve(config);

  std::ostringstream fidelity_line;
  fidelity_line << "final fidelity_final = " << std::setprecision(17)
                << result.trajectory.points.back().fidelity_final << "\n";
  if (out_path.empty()) {
    qent::write_trajectory_csv(std::cout, result.trajectory);
    std::cerr << fidelity_line.str();
  } else {
    qent::write_trajectory_csv(out_path, result.trajectory);
    std::cout << fidelity_line.str();
  }
  return 0;
}

int run_entropy(const std::string& state_path) {
  const qent::StateVector state = qent::read_state(state_path);
  std::cout << std::setprecision(17);
  for (int ell = 0; ell < state.space().factors(); ++ell) {
    const double s = qent::von_neumann_entropy(qent::partial_trace(state, ell));
    std::cout << "S[" << ell << "] = " << s << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximally entangled states: construction, certification, search, and cavity dynamics"};
  app.require_subcommand(1);
  app.fallthrough();

  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::string out_path;
  app.add_option("--tol", tol, "certification tolerance")->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--out", out_path, "output file (default: stdout)");

  auto* construct_cmd = app.add_subcommand("construct", "build a named catalog state");
  std::string construct_name;
  std::vector<std::string> param_entries;
  std::string construct_kind = "spin";
  construct_cmd->add_option("name", construct_name, "catalog state name")->required();
  construct_cmd->add_option("--param", param_entries, "state parameter as name=value");
  construct_cmd->add_option("--generators", construct_kind, "generator family: pauli|spin|sun")
      ->capture_default_str();

  auto* certify_cmd = app.add_subcommand("certify", "certify a state file");
  std::string certify_path;
  std::string certify_kind = "spin";
  certify_cmd->add_option("state", certify_path, "state JSON file")->required();
  certify_cmd->add_option("--generators", certify_kind, "generator family: pauli|spin|sun")
      ->capture_default_str();

  auto* solve_cmd = app.add_subcommand("solve", "search for a maximally entangled state");
  std::string dims_text;
  int restarts = 10;
  int max_iters = 20000;
  bool parallel = false;
  std::string solve_kind = "sun";
  solve_cmd->add_option("--dims", dims_text, "factor dimensions, comma separated")->required();
  solve_cmd->add_option("--restarts", restarts, "number of restarts")->capture_default_str();
  solve_cmd->add_option("--max-iters", max_iters, "iteration cap per restart")
      ->capture_default_str();
  solve_cmd->add_flag("--parallel", parallel, "run restarts concurrently");
  solve_cmd->add_option("--generators", solve_kind, "generator family: pauli|spin|sun")
      ->capture_default_str();

  auto* simulate_cmd = app.add_subcommand("simulate", "integrate the cavity master equation");
  std::string config_path;
  simulate_cmd->add_option("config", config_path, "SimConfig JSON file")->required();

  auto* entropy_cmd = app.add_subcommand("entropy", "print the reduced entropy of every factor");
  std::string entropy_path;
  entropy_cmd->add_option("state", entropy_path, "state JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (construct_cmd->parsed()) {
      return run_construct(construct_name, param_entries, out_path, construct_kind, tol);
    }
    if (certify_cmd->parsed()) return run_certify(certify_path, certify_kind, tol);
    if (solve_cmd->parsed()) {
      return run_solve(dims_text, solve_kind, restarts, seed, max_iters, parallel, out_path);
    }
    if (simulate_cmd->parsed()) return run_simulate(config_path, out_path);
    if (entropy_cmd->parsed()) return run_entropy(entropy_path);
  } catch (const qent::TraceDriftError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
