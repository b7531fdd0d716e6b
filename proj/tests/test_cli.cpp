// End-to-end checks of the command-line tool: exit codes, output files, and
// byte-identical reruns. The binary path arrives as argv[1].

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "pwlcf/demo.hpp"
#include "pwlcf/io.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    std::cerr << "[FAIL] " << what << "\n";
    ++failures;
  } else {
    std::cout << "[ ok ] " << what << "\n";
  }
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing>";
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-pwlcf>\n";
    return 2;
  }
  const std::string bin = argv[1];
  const fs::path work = fs::temp_directory_path() / "pwlcf_cli_test";
  fs::remove_all(work);
  fs::create_directories(work);
  const auto in = [&](const std::string& name) { return (work / name).string(); };

  // inputs
  {
    std::ofstream samples(in("samples.csv"));
    samples << "y,v\n";
    for (const pwlcf::Sample& s : pwlcf::demo::sigmoid_samples(0.0, 60.0, 0.5)) {
      samples << pwlcf::format_double(s.y) << ',' << pwlcf::format_double(s.v) << '\n';
    }
  }
  pwlcf::save_law(pwlcf::demo::min_plus_law(), in("min_plus.json"));
  pwlcf::save_law(pwlcf::PwlLaw::from_min_pieces({{1.5, 0.0}}), in("unstable.json"));
  pwlcf::write_text_file(in("one_sample.csv"), "y,v\n1,1\n");
  pwlcf::write_text_file(in("ring.json"), R"({
    "law": {"groups": [[{"alpha": 0.0, "beta": 2.0}], [{"alpha": 1.0, "beta": -1.0}]]},
    "nu": 4, "mu": 12.0, "horizon": 50, "seed": 0, "init": "uniform"
  })");
  pwlcf::write_text_file(in("dual.json"), R"({
    "segments": [{"a": 0, "c": 3, "tau": 1, "taubar": 1},
                 {"a": 1, "c": 2, "tau": 1, "taubar": 2}],
    "arrivals": [0, 1, 2, 2, 3],
    "horizon": 15
  })");

  // fit
  expect(run(bin + " --quiet --out " + in("fit_out") + " fit " + in("samples.csv") +
             " 6") == 0,
         "fit exits 0 on the sigmoid samples");
  expect(fs::exists(work / "fit_out" / "law.json"), "fit writes law.json");
  expect(fs::exists(work / "fit_out" / "fit_report.json"), "fit writes the report");
  expect(run(bin + " --quiet --out " + in("fit_bad") + " fit " + in("one_sample.csv") +
             " 3") == 2,
         "fit exits 2 with a single sample");

  // diagram (with determinism check)
  const std::string diagram_cmd = bin + " --quiet --out " + in("diag_out") +
                                  " diagram " + in("min_plus.json") +
                                  " --rho 0.05:0.45:0.05 --empirical 10 200";
  expect(run(diagram_cmd) == 0, "diagram exits 0");
  const std::string first = slurp(work / "diag_out" / "flow_diagram.csv");
  expect(run(diagram_cmd) == 0, "diagram rerun exits 0");
  expect(first == slurp(work / "diag_out" / "flow_diagram.csv"),
         "diagram reruns are byte-identical");
  expect(first.rfind("rho,q_model,q_emp\n", 0) == 0, "diagram has the empirical column");

  // ring
  expect(run(bin + " --quiet --out " + in("ring_out") + " ring " + in("ring.json")) == 0,
         "ring exits 0");
  expect(fs::exists(work / "ring_out" / "trajectory.csv") &&
             fs::exists(work / "ring_out" / "headways.csv") &&
             fs::exists(work / "ring_out" / "manifest.json"),
         "ring writes trajectory, headways and manifest");

  // open: built-in demonstration scenario, shortened via an emitted file
  expect(run(bin + " --quiet open --emit-scenario " + in("open.json")) == 0,
         "open emits the default scenario");
  expect(run(bin + " --quiet --out " + in("open_out") + " open " + in("open.json")) == 0,
         "open runs the emitted scenario");
  expect(fs::exists(work / "open_out" / "hysteresis.csv"),
         "open writes the hysteresis series");

  // eigen
  expect(run(bin + " --quiet --out " + in("eig_ring") + " eigen " + in("min_plus.json") +
             " --nu 4 --mu 12") == 0,
         "eigen (ring mode) exits 0");
  expect(run(bin + " --quiet --out " + in("eig_open") + " eigen " + in("min_plus.json") +
             " --nu 3 --v1 1") == 0,
         "eigen (open mode) exits 0");
  expect(run(bin + " --quiet --out " + in("eig_bad") + " eigen " + in("unstable.json") +
             " --nu 4 --mu 12") == 3,
         "eigen exits 3 on an unstable law");
  expect(run(bin + " --quiet --out " + in("eig_deg") + " eigen " + in("min_plus.json") +
             " --nu 3 --v1 99") == 3,
         "eigen exits 3 on a degenerate stationary headway");

  // dual
  expect(run(bin + " --quiet --out " + in("dual_out") + " dual " + in("dual.json")) == 0,
         "dual exits 0");
  expect(slurp(work / "dual_out" / "duality_report.json")
                 .find("\"max_duality_discrepancy\": 0") != std::string::npos,
         "dual reports zero discrepancy on the sample instance");

  // argument errors
  expect(run(bin + " frobnicate 2>/dev/null") == 2, "unknown subcommand exits 2");
  expect(run(bin + " --quiet --out " + in("x") + " fit missing.csv 3") == 2,
         "missing input file exits 2");

  if (failures > 0) {
    std::cerr << failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
