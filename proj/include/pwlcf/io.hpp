#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pwlcf/eulerian.hpp"
#include "pwlcf/law.hpp"
#include "pwlcf/open_road.hpp"
#include "pwlcf/ring.hpp"

// File formats and deterministic text output. CSV floats are written with 12
// significant digits, locale-independent, so identical runs produce
// byte-identical files.

namespace pwlcf {

std::string format_double(double value);

// --- law JSON ---------------------------------------------------------
// {"groups": [[{"alpha": a, "beta": b}, ...], ...],
//  "units": {"time": "0.5s", "distance": "m"}}

std::string law_to_json(const PwlLaw& law);
PwlLaw law_from_json(const std::string& text);
void save_law(const PwlLaw& law, const std::string& path);
PwlLaw load_law(const std::string& path);

// --- scenarios --------------------------------------------------------

struct RingScenario {
  PwlLaw law;
  int nu = 1;
  double mu = 1.0;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  bool noisy = false;        // "init": "uniform" | "noisy"
  double noise_amplitude = 0.0;
};

RingScenario load_ring_scenario(const std::string& path);

OpenScenario load_open_scenario(const std::string& path);
std::string open_scenario_to_json(const OpenScenario& scenario);
void save_open_scenario(const OpenScenario& scenario, const std::string& path);

struct DualInstance {
  SegmentGrid grid;
  ArrivalCurve arrivals;
  std::int64_t horizon = 0;
};

DualInstance load_dual_instance(const std::string& path);

// --- samples ----------------------------------------------------------

/// CSV with header "y,v"; throws std::invalid_argument on a malformed file.
std::vector<Sample> load_samples_csv(const std::string& path);

// --- CSV writers ------------------------------------------------------

void write_ring_trajectory_csv(const std::string& path,
                               const std::vector<RingState>& trajectory);
void write_ring_headways_csv(const std::string& path,
                             const std::vector<RingState>& trajectory,
                             const RingConfig& config);
void write_open_trajectory_csv(const std::string& path,
                               const std::vector<OpenState>& trajectory);
void write_hysteresis_csv(const std::string& path,
                          const std::vector<HysteresisPoint>& series);

struct FlowDiagramRow {
  double rho = 0.0;
  double q_model = 0.0;
  std::optional<double> q_empirical;
};

void write_flow_diagram_csv(const std::string& path,
                            const std::vector<FlowDiagramRow>& rows);
void write_speed_diagram_csv(const std::string& path,
                             const std::vector<DiagramPoint>& points);

void write_counts_csv(const std::string& path, const CountField& field);
void write_times_csv(const std::string& path, const TimeField& field);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pwlcf
