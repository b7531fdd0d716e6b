#include "pwlcf/open_road.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pwlcf/errors.hpp"

namespace pwlcf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kValueTol = 1e-9;  // pointwise law comparisons

}  // namespace

LeadProfile::LeadProfile(std::vector<ProfileSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw std::invalid_argument("LeadProfile: at least one segment required");
  }
  std::int64_t expected_start = 0;
  for (const ProfileSegment& s : segments_) {
    if (s.t_start != expected_start) {
      throw std::invalid_argument("LeadProfile: segments must be contiguous from 0");
    }
    if (s.t_end <= s.t_start) {
      throw std::invalid_argument("LeadProfile: segment must have positive length");
    }
    if (!std::isfinite(s.v_start) || !std::isfinite(s.v_end)) {
      throw std::invalid_argument("LeadProfile: velocities must be finite");
    }
    expected_start = s.t_end;
  }
}

LeadProfile LeadProfile::constant(double v, std::int64_t horizon) {
  return LeadProfile({ProfileSegment{0, horizon, SegmentKind::constant, v, v}});
}

double LeadProfile::v1_at(std::int64_t t) const {
  if (t < 0 || segments_.empty() || t >= segments_.back().t_end) {
    throw std::invalid_argument("LeadProfile: time outside the covered range");
  }
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), t,
      [](std::int64_t lhs, const ProfileSegment& s) { return lhs < s.t_end; });
  const ProfileSegment& s = *it;
  if (s.kind == SegmentKind::constant) return s.v_start;
  const double frac = static_cast<double>(t - s.t_start) /
                      static_cast<double>(s.t_end - s.t_start);
  return s.v_start + (s.v_end - s.v_start) * frac;
}

std::int64_t LeadProfile::horizon() const {
  return segments_.empty() ? 0 : segments_.back().t_end;
}

bool LeadProfile::covers(std::int64_t h) const { return horizon() >= h; }

OpenState make_open_state(std::vector<double> positions) {
  if (positions.empty()) {
    throw std::invalid_argument("OpenState: at least one car required");
  }
  for (std::size_t n = 1; n < positions.size(); ++n) {
    if (!(positions[n - 1] > positions[n])) {
      throw std::invalid_argument(
          "OpenState: positions must be strictly decreasing (car 1 leads)");
    }
  }
  OpenState state;
  state.x = std::move(positions);
  return state;
}

OpenState uniform_open_state(int nu, double headway) {
  if (nu < 1) throw std::invalid_argument("uniform_open_state: nu < 1");
  if (!(headway > 0.0)) {
    throw std::invalid_argument("uniform_open_state: headway must be positive");
  }
  std::vector<double> x(static_cast<std::size_t>(nu));
  x.back() = 0.0;
  for (std::size_t n = x.size() - 1; n-- > 0;) x[n] = x[n + 1] + headway;
  return make_open_state(std::move(x));
}

OpenState step_open(const OpenState& state, const PwlLaw& law, double v1) {
  OpenState next;
  next.x.resize(state.x.size());
  next.time_step = state.time_step + 1;
  next.x[0] = state.x[0] + v1;
  for (std::size_t n = 1; n < state.x.size(); ++n) {
    next.x[n] = state.x[n] + law.evaluate(state.x[n - 1] - state.x[n]);
  }
  return next;
}

std::vector<OpenState> simulate_open(OpenState initial, const PwlLaw& law,
                                     const LeadProfile& profile,
                                     std::int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("simulate_open: horizon < 0");
  if (!profile.covers(horizon)) {
    throw std::invalid_argument("simulate_open: profile does not cover the horizon");
  }
  make_open_state(std::vector<double>(initial.x));  // ordering contract
  std::vector<OpenState> trajectory;
  trajectory.reserve(static_cast<std::size_t>(horizon) + 1);
  trajectory.push_back(std::move(initial));
  for (std::int64_t t = 0; t < horizon; ++t) {
    trajectory.push_back(step_open(trajectory.back(), law, profile.v1_at(t)));
  }
  return trajectory;
}

int count_ordering_violations(const std::vector<OpenState>& trajectory) {
  int violations = 0;
  for (const OpenState& state : trajectory) {
    for (std::size_t n = 1; n < state.x.size(); ++n) {
      if (!(state.x[n - 1] > state.x[n])) {
        ++violations;
        break;
      }
    }
  }
  return violations;
}

std::string to_string(StationaryHeadway::Kind kind) {
  switch (kind) {
    case StationaryHeadway::Kind::finite: return "finite";
    case StationaryHeadway::Kind::plus_infinity: return "+infinity";
    case StationaryHeadway::Kind::minus_infinity: return "-infinity";
    case StationaryHeadway::Kind::indeterminate: return "indeterminate";
  }
  return "unknown";
}

StationaryHeadway stationary_headway(const PwlLaw& law, double v1) {
  bool any_nonzero_slope = false;
  for (const auto& group : law.groups()) {
    for (const AffinePiece& p : group) {
      if (p.alpha != 0.0) any_nonzero_slope = true;
    }
  }
  if (!any_nonzero_slope) {
    // constant-speed law: every car moves at m regardless of spacing
    const double m = law.evaluate(0.0);
    if (std::abs(m - v1) <= kValueTol) {
      return {StationaryHeadway::Kind::indeterminate, 0.0};
    }
    return {m < v1 ? StationaryHeadway::Kind::plus_infinity
                   : StationaryHeadway::Kind::minus_infinity,
            0.0};
  }

  double best = -kInf;
  bool any_group = false;
  for (const auto& group : law.groups()) {
    double group_min = kInf;
    bool any_piece = false;
    for (const AffinePiece& p : group) {
      if (p.alpha == 0.0 && std::abs(p.beta - v1) <= kValueTol) continue;
      any_piece = true;
      double ratio;
      if (p.alpha == 0.0) {
        ratio = (p.beta < v1) ? kInf : -kInf;
      } else {
        ratio = (v1 - p.beta) / p.alpha;
      }
      group_min = std::min(group_min, ratio);
    }
    // a group made only of (0, v1) pieces is satisfied at every headway
    if (!any_piece) continue;
    any_group = true;
    best = std::max(best, group_min);
  }
  if (!any_group) return {StationaryHeadway::Kind::indeterminate, 0.0};
  if (best == kInf) return {StationaryHeadway::Kind::plus_infinity, 0.0};
  if (best == -kInf) return {StationaryHeadway::Kind::minus_infinity, 0.0};
  return {StationaryHeadway::Kind::finite, best};
}

EigenPair eigen_solution_open(const PwlLaw& law, double v1, int nu) {
  if (nu < 1) throw std::invalid_argument("eigen_solution_open: nu < 1");
  const StationaryHeadway headway = stationary_headway(law, v1);
  if (!headway.is_finite()) {
    throw ModelError("stationary headway is " + to_string(headway.kind) +
                     "; no finite stationary profile exists");
  }
  EigenPair pair;
  pair.v_bar = v1;
  pair.x.resize(static_cast<std::size_t>(nu));
  // gauge x_nu = 0
  pair.x.back() = 0.0L;
  for (std::size_t n = pair.x.size() - 1; n-- > 0;) {
    pair.x[n] = pair.x[n + 1] + static_cast<long double>(headway.value);
  }
  return pair;
}

double eigen_residual_open(const PwlLaw& law, double v1, const EigenPair& pair) {
  if (pair.x.empty()) throw std::invalid_argument("eigen_residual_open: empty profile");
  long double residual = std::abs(pair.v_bar - static_cast<long double>(v1));
  for (std::size_t n = 1; n < pair.x.size(); ++n) {
    const long double speed = law.evaluate(pair.x[n - 1] - pair.x[n]);
    residual = std::max(residual, std::abs(pair.v_bar - speed));
  }
  return static_cast<double>(residual);
}

std::vector<HysteresisPoint> hysteresis_series(
    const std::vector<OpenState>& trajectory, const LeadProfile& profile) {
  if (trajectory.empty() || trajectory.front().x.size() < 2) {
    throw std::invalid_argument("hysteresis_series: need at least two cars");
  }
  std::vector<HysteresisPoint> series;
  series.reserve(trajectory.size());
  for (std::size_t i = 0; i + 1 < trajectory.size(); ++i) {
    const OpenState& state = trajectory[i];
    double gap_sum = 0.0;
    for (std::size_t n = 1; n < state.x.size(); ++n) {
      gap_sum += state.x[n - 1] - state.x[n];
    }
    HysteresisPoint point;
    point.t = state.time_step;
    point.v1 = profile.v1_at(state.time_step);
    point.mean_headway = gap_sum / static_cast<double>(state.x.size() - 1);
    series.push_back(point);
  }
  return series;
}

namespace {

struct Curve {
  std::vector<std::pair<double, double>> points;  // (v1, mean headway), sorted

  double interpolate(double v) const {
    auto it = std::lower_bound(
        points.begin(), points.end(), v,
        [](const std::pair<double, double>& p, double lhs) { return p.first < lhs; });
    if (it == points.begin()) return it->second;
    if (it == points.end()) return points.back().second;
    const auto& [v1, h1] = *(it - 1);
    const auto& [v2, h2] = *it;
    if (v2 == v1) return h1;
    return h1 + (h2 - h1) * (v - v1) / (v2 - v1);
  }
};

Curve branch_curve(const std::vector<HysteresisPoint>& series,
                   std::int64_t begin, std::int64_t end) {
  Curve curve;
  for (const HysteresisPoint& p : series) {
    if (p.t >= begin && p.t < end) curve.points.emplace_back(p.v1, p.mean_headway);
  }
  if (curve.points.size() < 2) {
    throw std::invalid_argument("hysteresis_loop_gap: window has too few points");
  }
  std::sort(curve.points.begin(), curve.points.end());
  return curve;
}

}  // namespace

double hysteresis_loop_gap(const std::vector<HysteresisPoint>& series,
                           std::int64_t window_a_begin, std::int64_t window_a_end,
                           std::int64_t window_b_begin, std::int64_t window_b_end,
                           int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("hysteresis_loop_gap: grid too small");
  const Curve a = branch_curve(series, window_a_begin, window_a_end);
  const Curve b = branch_curve(series, window_b_begin, window_b_end);
  const double lo = std::max(a.points.front().first, b.points.front().first);
  const double hi = std::min(a.points.back().first, b.points.back().first);
  if (!(hi > lo)) return 0.0;
  double gap = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double v = lo + (hi - lo) * (static_cast<double>(i) + 0.5) /
                              static_cast<double>(grid_points);
    gap = std::max(gap, std::abs(a.interpolate(v) - b.interpolate(v)));
  }
  return gap;
}

}  // namespace pwlcf
