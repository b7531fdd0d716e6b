#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "pwlcf/demo.hpp"
#include "pwlcf/io.hpp"
#include "test_util.hpp"

using namespace pwlcf;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("pwlcf_io_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("law JSON round trip preserves coefficients exactly") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 50; ++i) {
    const PwlLaw law = pwlcf_test::random_stable_law(rng);
    const PwlLaw back = law_from_json(law_to_json(law));
    REQUIRE(back.groups().size() == law.groups().size());
    for (std::size_t u = 0; u < law.groups().size(); ++u) {
      REQUIRE(back.groups()[u].size() == law.groups()[u].size());
      for (std::size_t w = 0; w < law.groups()[u].size(); ++w) {
        CHECK(back.groups()[u][w].alpha == law.groups()[u][w].alpha);
        CHECK(back.groups()[u][w].beta == law.groups()[u][w].beta);
      }
    }
  }
}

TEST_CASE("law JSON carries the unit annotations") {
  const std::string text = law_to_json(demo::min_plus_law());
  CHECK(text.find("\"0.5s\"") != std::string::npos);
  CHECK(text.find("\"m\"") != std::string::npos);
  CHECK_THROWS_AS(law_from_json("{\"groups\": [[]]}"), std::invalid_argument);
  CHECK_THROWS_AS(law_from_json("not json"), std::invalid_argument);
}

TEST_CASE("scenario files load") {
  TempDir dir;
  SUBCASE("open scenario round trip") {
    const OpenScenario scenario = demo::default_open_scenario();
    save_open_scenario(scenario, dir.file("open.json"));
    const OpenScenario back = load_open_scenario(dir.file("open.json"));
    CHECK(back.nu == scenario.nu);
    CHECK(back.initial_headway == scenario.initial_headway);
    CHECK(back.horizon == scenario.horizon);
    CHECK(back.profile.segments().size() == scenario.profile.segments().size());
    CHECK(back.profile.v1_at(500) == doctest::Approx(scenario.profile.v1_at(500)));
  }
  SUBCASE("ring scenario") {
    write_text_file(dir.file("ring.json"), R"({
      "law": {"groups": [[{"alpha": 0.0, "beta": 2.0}], [{"alpha": 1.0, "beta": -1.0}]]},
      "nu": 4, "mu": 12.0, "horizon": 100, "seed": 7,
      "init": "noisy", "noise_amplitude": 0.5
    })");
    const RingScenario scenario = load_ring_scenario(dir.file("ring.json"));
    CHECK(scenario.nu == 4);
    CHECK(scenario.mu == doctest::Approx(12.0));
    CHECK(scenario.seed == 7);
    CHECK(scenario.noisy);
    CHECK(scenario.noise_amplitude == doctest::Approx(0.5));
  }
  SUBCASE("dual instance") {
    write_text_file(dir.file("dual.json"), R"({
      "segments": [{"a": 0, "c": 2, "tau": 1, "taubar": 1},
                   {"a": 1, "c": 1, "tau": 1, "taubar": 2}],
      "arrivals": [0, 1, 1, 2],
      "horizon": 10
    })");
    const DualInstance instance = load_dual_instance(dir.file("dual.json"));
    CHECK(instance.grid.size() == 2);
    CHECK(instance.grid.seg(2).taubar == 2);
    CHECK(instance.arrivals.size() == 4);
    CHECK(instance.horizon == 10);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_law(dir.file("absent.json")), std::invalid_argument);
  }
}

TEST_CASE("samples CSV") {
  TempDir dir;
  write_text_file(dir.file("samples.csv"), "y,v\n0,0\n10,5\n20,8\n");
  const std::vector<Sample> samples = load_samples_csv(dir.file("samples.csv"));
  REQUIRE(samples.size() == 3);
  CHECK(samples[1].y == doctest::Approx(10.0));
  CHECK(samples[1].v == doctest::Approx(5.0));

  write_text_file(dir.file("bad.csv"), "y,v\n1\n");
  CHECK_THROWS_AS(load_samples_csv(dir.file("bad.csv")), std::invalid_argument);
}

TEST_CASE("CSV writers are deterministic") {
  TempDir dir;
  const RingConfig config{3, 9.0};
  const auto traj = simulate_ring(noisy_ring_state(config, 0.5, 0),
                                  demo::min_plus_law(), config, 20);
  write_ring_trajectory_csv(dir.file("a.csv"), traj);
  write_ring_trajectory_csv(dir.file("b.csv"), traj);
  const std::string a = slurp(dir.file("a.csv"));
  CHECK(a == slurp(dir.file("b.csv")));
  CHECK(a.rfind("t,x_1,x_2,x_3\n", 0) == 0);

  write_ring_headways_csv(dir.file("y.csv"), traj, config);
  CHECK(slurp(dir.file("y.csv")).rfind("t,y_1,y_2,y_3\n", 0) == 0);
}

TEST_CASE("format_double gives 12 significant digits") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(-14.25) == "-14.25");
}

TEST_CASE("diagram CSV layouts") {
  TempDir dir;
  write_flow_diagram_csv(dir.file("flow.csv"),
                         {{0.1, 0.2, std::nullopt}, {0.2, 0.4, std::nullopt}});
  CHECK(slurp(dir.file("flow.csv")) == "rho,q_model\n0.1,0.2\n0.2,0.4\n");

  write_flow_diagram_csv(dir.file("flow_emp.csv"), {{0.1, 0.2, 0.199}});
  CHECK(slurp(dir.file("flow_emp.csv")) == "rho,q_model,q_emp\n0.1,0.2,0.199\n");

  const auto points = speed_diagram(demo::min_plus_law(), std::vector<double>{2.0});
  write_speed_diagram_csv(dir.file("speed.csv"), points);
  CHECK(slurp(dir.file("speed.csv")) ==
        "y_bar,v_bar,rho_bar,q_bar\n2,1,0.5,0.5\n");
}
