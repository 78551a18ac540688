#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <qent/qent.hpp>

#include "test_support.hpp"

using namespace qent;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "qent_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_raw(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("state json round trip", "[io]") {
  std::mt19937_64 rng(71);
  for (const auto& dims : std::vector<std::vector<int>>{{2, 2}, {3}, {2, 3, 2}}) {
    const auto psi = test_support::random_state(dims, rng);
    const auto path = temp_file("state_roundtrip.json");
    write_state(path.string(), psi);
    const auto back = read_state(path.string());
    REQUIRE(back.space() == psi.space());
    for (int i = 0; i < psi.total_dim(); ++i) {
      REQUIRE(back.amplitudes()[i] == psi.amplitudes()[i]);
    }
  }
}

TEST_CASE("state json shape", "[io]") {
  const Json j = state_to_json(epr(+1));
  REQUIRE(j.at("dims") == Json::array({2, 2}));
  REQUIRE(j.at("amplitudes").size() == 4);
  REQUIRE(j.at("amplitudes")[1][0].get<double>() == Catch::Approx(1.0 / std::sqrt(2.0)));
  REQUIRE(j.at("amplitudes")[1][1].get<double>() == 0.0);

  SECTION("reader normalizes") {
    Json scaled = j;
    for (auto& pair : scaled.at("amplitudes")) {
      pair[0] = pair[0].get<double>() * 3.0;
      pair[1] = pair[1].get<double>() * 3.0;
    }
    const auto psi = state_from_json(scaled);
    REQUIRE(psi.norm() == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(psi.fidelity(epr(+1)) == Catch::Approx(1.0).margin(1e-14));
  }

  SECTION("reader rejects malformed payloads") {
    REQUIRE_THROWS_AS(state_from_json(Json::array()), std::invalid_argument);
    REQUIRE_THROWS_AS(state_from_json(Json{{"dims", {2, 2}}}), std::invalid_argument);

    Json wrong_len = j;
    wrong_len["amplitudes"].erase(3);
    REQUIRE_THROWS_AS(state_from_json(wrong_len), std::invalid_argument);

    Json bad_pair = j;
    bad_pair["amplitudes"][0] = {1.0};
    REQUIRE_THROWS_AS(state_from_json(bad_pair), std::invalid_argument);

    Json bad_dims = j;
    bad_dims["dims"] = {2.5, 2};
    REQUIRE_THROWS_AS(state_from_json(bad_dims), std::invalid_argument);

    Json zero = j;
    for (auto& pair : zero.at("amplitudes")) {
      pair[0] = 0.0;
      pair[1] = 0.0;
    }
    REQUIRE_THROWS_AS(state_from_json(zero), std::invalid_argument);
  }
}

TEST_CASE("file errors", "[io]") {
  REQUIRE_THROWS_AS(read_state("/nonexistent/path/state.json"), std::invalid_argument);

  const auto path = temp_file("malformed.json");
  write_raw(path, "{ not json");
  REQUIRE_THROWS_MATCHES(read_state(path.string()), std::invalid_argument,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("malformed JSON")));
}

TEST_CASE("certification report json", "[io]") {
  const auto sets = sets_for(CompositeSpace({2, 2}), GeneratorKind::pauli);
  const auto report = certify_generators(epr(+1), sets, 1e-10);
  const Json j = cert_report_to_json(report);

  REQUIRE(j.at("tol").get<double>() == 1e-10);
  REQUIRE(j.at("residual").get<double>() < 1e-20);
  REQUIRE(j.at("complete_sets").get<bool>());
  REQUIRE(j.at("verdicts").at("generators").get<bool>());
  REQUIRE(j.at("verdicts").at("slices").get<bool>());
  REQUIRE(j.at("verdicts").at("marginals").get<bool>());
  REQUIRE(j.at("verdicts").at("overall").get<bool>());
  REQUIRE(j.at("per_generator").size() == 6);
  REQUIRE(j.at("per_generator")[0].at("factor").get<int>() == 0);
  REQUIRE(j.at("per_generator")[5].at("generator").get<int>() == 2);
  REQUIRE(j.at("slices").at("directions").size() == 2);
  REQUIRE(j.at("marginals").at("distances").size() == 2);
}

TEST_CASE("solve result json", "[io]") {
  const CompositeSpace space({2, 2});
  const auto sets = sets_for(space, GeneratorKind::pauli);
  SolveOptions opt;
  opt.restarts = 3;
  const auto result = find_max_entangled(space, sets, opt);
  const Json j = solve_result_to_json(result);

  REQUIRE(j.at("converged").get<bool>());
  REQUIRE(j.at("best_objective").get<double>() < 1e-16);
  REQUIRE(j.at("per_restart").size() == 3);
  for (const auto& record : j.at("per_restart")) {
    REQUIRE(record.contains("seed"));
    REQUIRE(record.contains("objective"));
    REQUIRE(record.contains("iters"));
    REQUIRE(record.contains("converged"));
  }
  const auto state = state_from_json(j.at("state"));
  REQUIRE(state.space() == space);
}

TEST_CASE("sim config json", "[io]") {
  SECTION("defaults from an empty object") {
    const SimConfig config = sim_config_from_json(Json::object());
    REQUIRE(config.atoms == 2);
    REQUIRE(config.t_final == 200.0);
    REQUIRE_FALSE(config.literal_stokes_coupling);
  }

  SECTION("round trip") {
    SimConfig config;
    config.atoms = 1;
    config.kappa = 0.25;
    config.dt = 5e-4;
    config.literal_stokes_coupling = true;
    const SimConfig back = sim_config_from_json(sim_config_to_json(config));
    REQUIRE(back.atoms == config.atoms);
    REQUIRE(back.kappa == config.kappa);
    REQUIRE(back.dt == config.dt);
    REQUIRE(back.literal_stokes_coupling == config.literal_stokes_coupling);
  }

  SECTION("unknown keys and bad values are rejected") {
    REQUIRE_THROWS_MATCHES(sim_config_from_json(Json{{"kapa", 0.1}}), std::invalid_argument,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("unknown key")));
    REQUIRE_THROWS_AS(sim_config_from_json(Json{{"atoms", 1.5}}), std::invalid_argument);
    REQUIRE_THROWS_AS(sim_config_from_json(Json{{"dt", 0.0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(sim_config_from_json(Json{{"literal_stokes_coupling", 1}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(sim_config_from_json(Json::array()), std::invalid_argument);
  }

  SECTION("file reader") {
    const auto path = temp_file("config.json");
    write_raw(path, R"({"t_final": 5.0, "kappa": 0.0})");
    const SimConfig config = read_sim_config(path.string());
    REQUIRE(config.t_final == 5.0);
    REQUIRE(config.kappa == 0.0);
    REQUIRE(config.atoms == 2);
  }
}

TEST_CASE("trajectory csv", "[io]") {
  Trajectory trajectory;
  TrajectoryPoint p;
  p.t = 0.0;
  p.trace = 1.0;
  p.n_pump = 1.0;
  trajectory.points.push_back(p);
  p.t = 0.1;
  p.trace = 1.0 - 1e-13;
  p.n_pump = 0.875;
  p.n_stokes = 0.0625;
  p.fidelity_final = 0.03125;
  p.pop_psi1 = 0.015625;
  p.pop_psi2 = 0.0078125;
  trajectory.points.push_back(p);

  std::ostringstream out;
  write_trajectory_csv(out, trajectory);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  REQUIRE(header == "t,trace,n_pump,n_stokes,fidelity_final,pop_psi1,pop_psi2");

  std::string row;
  std::getline(lines, row);
  REQUIRE(row.rfind("0,1,1,0,0,0,0", 0) == 0);
  std::getline(lines, row);
  std::istringstream cells(row);
  std::string cell;
  std::vector<double> values;
  while (std::getline(cells, cell, ',')) values.push_back(std::stod(cell));
  REQUIRE(values.size() == 7);
  REQUIRE(values[0] == 0.1);
  REQUIRE(values[1] == 1.0 - 1e-13);
  REQUIRE(values[2] == 0.875);
  REQUIRE(values[6] == 0.0078125);

  SECTION("file overload") {
    const auto path = temp_file("trajectory.csv");
    write_trajectory_csv(path.string(), trajectory);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    REQUIRE(first == "t,trace,n_pump,n_stokes,fidelity_final,pop_psi1,pop_psi2");
  }
}
