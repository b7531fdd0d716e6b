#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pwlcf/law.hpp"
#include "pwlcf/stationary.hpp"

// Open-road (lead-driven) dynamics: car 1 follows a prescribed velocity
// profile, every other car follows the speed law of its headway.

namespace pwlcf {

enum class SegmentKind { constant, linear_ramp };

struct ProfileSegment {
  std::int64_t t_start = 0;
  std::int64_t t_end = 0;  // exclusive
  SegmentKind kind = SegmentKind::constant;
  double v_start = 0.0;
  double v_end = 0.0;
};

/// Lead-car velocity, piecewise over contiguous integer-time segments.
class LeadProfile {
 public:
  LeadProfile() = default;
  /// Segments must start at 0, be contiguous and nonempty, with finite
  /// velocities. Throws std::invalid_argument otherwise.
  explicit LeadProfile(std::vector<ProfileSegment> segments);

  static LeadProfile constant(double v, std::int64_t horizon);

  /// Throws std::invalid_argument when t is outside [0, horizon).
  double v1_at(std::int64_t t) const;

  std::int64_t horizon() const;
  bool covers(std::int64_t horizon) const;
  const std::vector<ProfileSegment>& segments() const { return segments_; }

 private:
  std::vector<ProfileSegment> segments_;
};

struct OpenState {
  std::vector<double> x;  // positions, car 1 first (largest)
  std::int64_t time_step = 0;
};

/// Validates the input contract x_1 > x_2 > ... > x_nu.
OpenState make_open_state(std::vector<double> positions);

/// nu cars with uniform gaps, car nu at position 0.
OpenState uniform_open_state(int nu, double headway);

/// x_1' = x_1 + v1; x_n' = x_n + V(x_{n-1} - x_n) for n >= 2, all headways
/// read from the pre-step state.
OpenState step_open(const OpenState& state, const PwlLaw& law, double v1);

/// Trajectory of length horizon + 1. The profile must cover [0, horizon);
/// the initial state must be strictly ordered.
std::vector<OpenState> simulate_open(OpenState initial, const PwlLaw& law,
                                     const LeadProfile& profile,
                                     std::int64_t horizon);

/// Steps at which some gap is nonpositive (ordering lost). Violations are
/// reported, not forbidden.
int count_ordering_violations(const std::vector<OpenState>& trajectory);

/// Stationary headway at lead speed v1, with the degenerate classes of the
/// lead-driven eigenproblem.
struct StationaryHeadway {
  enum class Kind { finite, plus_infinity, minus_infinity, indeterminate };
  Kind kind = Kind::finite;
  double value = 0.0;  // meaningful only when kind == finite

  bool is_finite() const { return kind == Kind::finite; }
};

std::string to_string(StationaryHeadway::Kind kind);

/// y~ = max over groups of min over the group's pieces of (v1 - beta)/alpha,
/// with a/0 = +inf for a > 0 and -inf for a < 0. Pieces equal to (0, v1) are
/// ignored; a group consisting only of such pieces imposes no constraint and
/// is skipped. Laws whose pieces all have alpha = 0 move at one speed m:
/// m = v1 is indeterminate, m < v1 diverges to +inf, m > v1 to -inf.
StationaryHeadway stationary_headway(const PwlLaw& law, double v1);

/// v_bar = v1, positions ((nu-1)y~, ..., y~, 0) with the gauge x_nu = 0.
/// Throws ModelError naming the degenerate class when y~ is not finite.
EigenPair eigen_solution_open(const PwlLaw& law, double v1, int nu);

/// max over cars of the eigen-equation defect for the lead-driven system.
double eigen_residual_open(const PwlLaw& law, double v1, const EigenPair& pair);

struct HysteresisPoint {
  std::int64_t t = 0;
  double v1 = 0.0;
  double mean_headway = 0.0;  // arithmetic mean of the nu-1 gaps
};

/// Per-step (lead velocity, mean inter-vehicular distance) pairs for
/// t = 0 .. horizon-1. Requires nu >= 2.
std::vector<HysteresisPoint> hysteresis_series(
    const std::vector<OpenState>& trajectory, const LeadProfile& profile);

/// Largest separation between the headway-vs-velocity curves of two time
/// windows (e.g. a deceleration and an acceleration ramp), measured on a
/// velocity grid spanning the windows' shared velocity range.
double hysteresis_loop_gap(const std::vector<HysteresisPoint>& series,
                           std::int64_t window_a_begin, std::int64_t window_a_end,
                           std::int64_t window_b_begin, std::int64_t window_b_end,
                           int grid_points = 41);

/// One open-road run, as stored in a scenario file.
struct OpenScenario {
  PwlLaw law;
  int nu = 2;
  double initial_headway = 10.0;  // m
  LeadProfile profile;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
};

}  // namespace pwlcf
