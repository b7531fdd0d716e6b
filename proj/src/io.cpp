#include "pwlcf/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pwlcf {

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return doc;
}

json law_to_json_doc(const PwlLaw& law) {
  json groups = json::array();
  for (const auto& group : law.groups()) {
    json pieces = json::array();
    for (const AffinePiece& p : group) {
      pieces.push_back({{"alpha", p.alpha}, {"beta", p.beta}});
    }
    groups.push_back(std::move(pieces));
  }
  return json{{"groups", std::move(groups)},
              {"units", {{"time", "0.5s"}, {"distance", "m"}}}};
}

PwlLaw law_from_json_doc(const json& doc) {
  try {
    std::vector<PwlLaw::Group> groups;
    for (const json& group : doc.at("groups")) {
      PwlLaw::Group pieces;
      for (const json& piece : group) {
        pieces.push_back(AffinePiece{piece.at("alpha").get<double>(),
                                     piece.at("beta").get<double>()});
      }
      groups.push_back(std::move(pieces));
    }
    return PwlLaw(std::move(groups));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed law document: ") + e.what());
  }
}

LeadProfile profile_from_json(const json& doc) {
  std::vector<ProfileSegment> segments;
  try {
    for (const json& seg : doc) {
      ProfileSegment s;
      s.t_start = seg.at("t_start").get<std::int64_t>();
      s.t_end = seg.at("t_end").get<std::int64_t>();
      const std::string kind = seg.at("kind").get<std::string>();
      if (kind == "constant") {
        s.kind = SegmentKind::constant;
      } else if (kind == "linear-ramp") {
        s.kind = SegmentKind::linear_ramp;
      } else {
        throw std::invalid_argument("unknown profile segment kind: " + kind);
      }
      s.v_start = seg.at("v_start").get<double>();
      s.v_end = seg.at("v_end").get<double>();
      segments.push_back(s);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed profile: ") + e.what());
  }
  return LeadProfile(std::move(segments));
}

json profile_to_json(const LeadProfile& profile) {
  json doc = json::array();
  for (const ProfileSegment& s : profile.segments()) {
    doc.push_back(
        {{"t_start", s.t_start},
         {"t_end", s.t_end},
         {"kind", s.kind == SegmentKind::constant ? "constant" : "linear-ramp"},
         {"v_start", s.v_start},
         {"v_end", s.v_end}});
  }
  return doc;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value,
                                    std::chars_format::general, 12);
  return std::string(buf, result.ptr);
}

std::string law_to_json(const PwlLaw& law) { return law_to_json_doc(law).dump(2); }

PwlLaw law_from_json(const std::string& text) {
  try {
    return law_from_json_doc(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed law JSON: ") + e.what());
  }
}

void save_law(const PwlLaw& law, const std::string& path) {
  write_text_file(path, law_to_json(law) + "\n");
}

PwlLaw load_law(const std::string& path) {
  return law_from_json_doc(read_json_file(path));
}

RingScenario load_ring_scenario(const std::string& path) {
  const json doc = read_json_file(path);
  try {
    RingScenario scenario{law_from_json_doc(doc.at("law")),
                          doc.at("nu").get<int>(),
                          doc.at("mu").get<double>(),
                          doc.at("horizon").get<std::int64_t>(),
                          doc.value("seed", std::uint64_t{0}),
                          false,
                          0.0};
    const std::string init = doc.value("init", std::string("uniform"));
    if (init == "noisy") {
      scenario.noisy = true;
      scenario.noise_amplitude = doc.value("noise_amplitude", 0.0);
    } else if (init != "uniform") {
      throw std::invalid_argument("ring scenario: init must be uniform or noisy");
    }
    return scenario;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed ring scenario: ") + e.what());
  }
}

OpenScenario load_open_scenario(const std::string& path) {
  const json doc = read_json_file(path);
  try {
    return OpenScenario{law_from_json_doc(doc.at("law")),
                        doc.at("nu").get<int>(),
                        doc.at("initial_headway_m").get<double>(),
                        profile_from_json(doc.at("profile")),
                        doc.at("horizon").get<std::int64_t>(),
                        doc.value("seed", std::uint64_t{0})};
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed open scenario: ") + e.what());
  }
}

std::string open_scenario_to_json(const OpenScenario& scenario) {
  json doc{{"law", law_to_json_doc(scenario.law)},
           {"nu", scenario.nu},
           {"initial_headway_m", scenario.initial_headway},
           {"profile", profile_to_json(scenario.profile)},
           {"horizon", scenario.horizon},
           {"seed", scenario.seed}};
  return doc.dump(2);
}

void save_open_scenario(const OpenScenario& scenario, const std::string& path) {
  write_text_file(path, open_scenario_to_json(scenario) + "\n");
}

DualInstance load_dual_instance(const std::string& path) {
  const json doc = read_json_file(path);
  try {
    DualInstance instance;
    for (const json& seg : doc.at("segments")) {
      RoadSegment s;
      s.a = seg.at("a").get<std::int64_t>();
      s.c = seg.at("c").get<std::int64_t>();
      s.tau = seg.at("tau").get<std::int64_t>();
      s.taubar = seg.at("taubar").get<std::int64_t>();
      instance.grid.segments.push_back(s);
    }
    instance.grid.exit_open = doc.value("exit_open", true);
    for (const json& a : doc.at("arrivals")) {
      instance.arrivals.push_back(a.get<std::int64_t>());
    }
    instance.horizon = doc.at("horizon").get<std::int64_t>();
    validate(instance.grid);
    return instance;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed dual instance: ") + e.what());
  }
}

std::vector<Sample> load_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::vector<Sample> samples;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("y,", 0) == 0 || line.rfind("y;", 0) == 0) continue;
    }
    std::istringstream row(line);
    std::string y_text, v_text;
    if (!std::getline(row, y_text, ',') || !std::getline(row, v_text)) {
      throw std::invalid_argument("samples CSV: expected two columns in " + path);
    }
    try {
      samples.push_back(Sample{std::stod(y_text), std::stod(v_text)});
    } catch (const std::exception&) {
      throw std::invalid_argument("samples CSV: non-numeric row in " + path);
    }
  }
  return samples;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

namespace {

template <typename State>
void write_trajectory(const std::string& path, const std::vector<State>& trajectory,
                      const char* value_prefix) {
  std::ostringstream out;
  if (!trajectory.empty()) {
    out << "t";
    for (std::size_t n = 1; n <= trajectory.front().x.size(); ++n) {
      out << ',' << value_prefix << '_' << n;
    }
    out << '\n';
    for (const State& state : trajectory) {
      out << state.time_step;
      for (double xn : state.x) out << ',' << format_double(xn);
      out << '\n';
    }
  }
  write_text_file(path, out.str());
}

}  // namespace

void write_ring_trajectory_csv(const std::string& path,
                               const std::vector<RingState>& trajectory) {
  write_trajectory(path, trajectory, "x");
}

void write_ring_headways_csv(const std::string& path,
                             const std::vector<RingState>& trajectory,
                             const RingConfig& config) {
  std::ostringstream out;
  if (!trajectory.empty()) {
    out << "t";
    for (int n = 1; n <= config.nu; ++n) out << ",y_" << n;
    out << '\n';
    for (const RingState& state : trajectory) {
      out << state.time_step;
      for (double yn : ring_headways(state, config)) out << ',' << format_double(yn);
      out << '\n';
    }
  }
  write_text_file(path, out.str());
}

void write_open_trajectory_csv(const std::string& path,
                               const std::vector<OpenState>& trajectory) {
  write_trajectory(path, trajectory, "x");
}

void write_hysteresis_csv(const std::string& path,
                          const std::vector<HysteresisPoint>& series) {
  std::ostringstream out;
  out << "t,v1,mean_headway\n";
  for (const HysteresisPoint& p : series) {
    out << p.t << ',' << format_double(p.v1) << ','
        << format_double(p.mean_headway) << '\n';
  }
  write_text_file(path, out.str());
}

void write_flow_diagram_csv(const std::string& path,
                            const std::vector<FlowDiagramRow>& rows) {
  const bool with_empirical =
      !rows.empty() && rows.front().q_empirical.has_value();
  std::ostringstream out;
  out << (with_empirical ? "rho,q_model,q_emp" : "rho,q_model") << '\n';
  for (const FlowDiagramRow& row : rows) {
    out << format_double(row.rho) << ',' << format_double(row.q_model);
    if (with_empirical) out << ',' << format_double(row.q_empirical.value());
    out << '\n';
  }
  write_text_file(path, out.str());
}

void write_speed_diagram_csv(const std::string& path,
                             const std::vector<DiagramPoint>& points) {
  std::ostringstream out;
  out << "y_bar,v_bar,rho_bar,q_bar\n";
  for (const DiagramPoint& p : points) {
    out << format_double(p.y_bar) << ',' << format_double(p.v_bar) << ','
        << format_double(p.rho_bar) << ',' << format_double(p.q_bar) << '\n';
  }
  write_text_file(path, out.str());
}

void write_counts_csv(const std::string& path, const CountField& field) {
  std::ostringstream out;
  out << "t,x,n\n";
  for (std::int64_t t = 0; t <= field.time_computed(); ++t) {
    for (std::int64_t x = 0; x <= field.grid().size(); ++x) {
      out << t << ',' << x << ',' << field.at(t, x) << '\n';
    }
  }
  write_text_file(path, out.str());
}

void write_times_csv(const std::string& path, const TimeField& field) {
  std::ostringstream out;
  out << "n,x,t\n";
  for (std::int64_t n = 1; n <= field.cars_computed(); ++n) {
    for (std::int64_t x = 0; x <= field.grid().size(); ++x) {
      const std::int64_t t = field.at(n, x);
      if (t >= kNever) continue;  // the passage never happens
      out << n << ',' << x << ',' << t << '\n';
    }
  }
  write_text_file(path, out.str());
}

}  // namespace pwlcf
