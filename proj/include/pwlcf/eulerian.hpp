#pragma once

#include <cstdint>
#include <vector>

// Dual Eulerian descriptions of a segmented 1-lane road without passing:
// cumulative counts n(t, x) under a min-plus recursion and passage times
// t(n, x) under the max-plus recursion obtained by inverting it.
//
// The road has K segments; segment x (1-based) spans positions (x-1, x] and
// holds a_x cars at time 0. Position 0 is the entry, position K the exit.
// Counts are passages: n(0, x) = 0 for interior positions, and the a_x cars
// initially inside segment x register their first passage of x at step 1
// when unblocked. Passage numbering in the time field is per position: the
// k-th passage of x need not be the k-th passage of x+1 (initial occupants
// shift the numbering).
//
// Boundaries: the arrival curve prescribes entry demand; actual entries are
// limited by the first segment's free space (a queue outside the road). The
// exit is an unbounded sink unless exit_open is false, in which case nothing
// ever leaves. Integer arithmetic throughout.

namespace pwlcf {

struct RoadSegment {
  std::int64_t a = 0;       // cars inside at time 0
  std::int64_t c = 1;       // capacity, cars
  std::int64_t tau = 1;     // free travel time, steps (>= 1)
  std::int64_t taubar = 0;  // reaction time, steps (>= 0)

  std::int64_t abar() const { return c - a; }  // free space at time 0
};

struct SegmentGrid {
  std::vector<RoadSegment> segments;
  bool exit_open = true;

  std::int64_t size() const {
    return static_cast<std::int64_t>(segments.size());
  }
  const RoadSegment& seg(std::int64_t x) const {  // 1-based
    return segments[static_cast<std::size_t>(x - 1)];
  }
  std::int64_t initial_cars() const;
};

/// Requires K >= 1, a >= 0, c >= max(a, 1), tau >= 1, taubar >= 0.
void validate(const SegmentGrid& grid);

/// Cumulative arrival demand A(t) at the entry, indexed by t from 0;
/// nondecreasing, A(t) for t beyond the vector clamps to the last value,
/// A(t < 0) = 0.
using ArrivalCurve = std::vector<std::int64_t>;

std::int64_t arrivals_at(const ArrivalCurve& arrivals, std::int64_t t);

/// Min-plus count field. Rows are computed one time step at a time:
///   n(t, x) = min{ a_x + n(t - tau_x, x-1),
///                  abar_{x+1} + n(t - taubar_{x+1}, x+1) }
/// with entry n(t, 0) = min{ A(t), abar_1 + n(t - taubar_1, 1) } and an
/// unconstrained (or closed) exit.
class CountField {
 public:
  CountField(SegmentGrid grid, ArrivalCurve arrivals);

  /// Computes the next row; monotonicity in t and the occupancy bounds
  /// 0 <= occupancy_x <= c_x are rechecked after every step.
  void step();

  std::int64_t time_computed() const { return time_; }
  /// n(t, x) for t <= time_computed(); t < 0 reads the initial profile.
  std::int64_t at(std::int64_t t, std::int64_t x) const;
  std::int64_t occupancy(std::int64_t t, std::int64_t x) const;  // segment x

  const SegmentGrid& grid() const { return grid_; }

 private:
  std::int64_t compute(std::int64_t t, std::int64_t x,
                       const std::vector<std::int64_t>& partial) const;

  SegmentGrid grid_;
  ArrivalCurve arrivals_;
  std::vector<std::vector<std::int64_t>> rows_;  // rows_[t][x]
  std::int64_t time_ = 0;
};

/// Stepwise form: advances the field to time t (which must be the next row).
void step_count(CountField& field, std::int64_t t);

CountField solve_counts(const SegmentGrid& grid, const ArrivalCurve& arrivals,
                        std::int64_t horizon);

// Passage time sentinels: kNever for events that cannot happen within the
// modeled supply, kBeforeStart for references to car indices <= 0.
inline constexpr std::int64_t kNever = (std::int64_t{1} << 60);
inline constexpr std::int64_t kBeforeStart = -(std::int64_t{1} << 60);

/// Max-plus passage-time field, the inversion of the count recursion:
///   t(n, x) = max{ tau_x + t(n - a_x, x-1),
///                  taubar_{x+1} + t(n - abar_{x+1}, x+1) }
/// floored at 1 for interior positions (initial occupants flush at the first
/// step, matching n(1, x) = a_x), with entry
///   t(n, 0) = max{ demand time of car n, taubar_1 + t(n - abar_1, 1) }.
class TimeField {
 public:
  /// car_count rows are computed; entry demand times beyond the arrival
  /// curve's total are kNever.
  TimeField(SegmentGrid grid, ArrivalCurve arrivals, std::int64_t horizon);

  /// Computes the row of the next passage index; monotonicity in n is
  /// rechecked after every step.
  void step();

  std::int64_t cars_computed() const { return car_; }
  std::int64_t car_count() const { return car_count_; }
  /// t(n, x) for 1 <= n <= cars_computed(); n <= 0 yields kBeforeStart.
  std::int64_t at(std::int64_t n, std::int64_t x) const;

  const SegmentGrid& grid() const { return grid_; }

 private:
  std::int64_t entry_demand(std::int64_t n) const;

  SegmentGrid grid_;
  ArrivalCurve arrivals_;
  std::int64_t horizon_ = 0;
  std::int64_t car_count_ = 0;
  std::vector<std::vector<std::int64_t>> rows_;  // rows_[n-1][x]
  std::int64_t car_ = 0;
};

/// Stepwise form: advances the field to passage index n (the next row).
void step_time(TimeField& field, std::int64_t n);

TimeField solve_times(const SegmentGrid& grid, const ArrivalCurve& arrivals,
                      std::int64_t horizon);

/// Runs both representations on the same data and returns
///   max over t in [0, horizon], x in [0, K] of
///   | n(t, x) - #{ k : t(k, x) <= t } |.
/// Reported, not asserted: zero is expected but not promised.
std::int64_t duality_check(const SegmentGrid& grid,
                           const ArrivalCurve& arrivals, std::int64_t horizon);

}  // namespace pwlcf
