#include "pwlcf/eulerian.hpp"

#include <algorithm>
#include <stdexcept>

namespace pwlcf {

namespace {

void validate_arrivals(const ArrivalCurve& arrivals) {
  std::int64_t prev = 0;
  for (std::int64_t a : arrivals) {
    if (a < prev) {
      throw std::invalid_argument("arrival curve must be nondecreasing and >= 0");
    }
    prev = a;
  }
}

// max-plus addition with the two sentinels absorbed
std::int64_t add_delay(std::int64_t delay, std::int64_t t) {
  if (t >= kNever) return kNever;
  if (t <= kBeforeStart) return kBeforeStart;
  return t + delay;
}

}  // namespace

std::int64_t SegmentGrid::initial_cars() const {
  std::int64_t total = 0;
  for (const RoadSegment& s : segments) total += s.a;
  return total;
}

void validate(const SegmentGrid& grid) {
  if (grid.segments.empty()) {
    throw std::invalid_argument("SegmentGrid: at least one segment required");
  }
  for (const RoadSegment& s : grid.segments) {
    if (s.a < 0) throw std::invalid_argument("SegmentGrid: a must be >= 0");
    if (s.c < 1 || s.c < s.a) {
      throw std::invalid_argument("SegmentGrid: capacity must satisfy c >= max(a, 1)");
    }
    if (s.tau < 1) throw std::invalid_argument("SegmentGrid: tau must be >= 1");
    if (s.taubar < 0) throw std::invalid_argument("SegmentGrid: taubar must be >= 0");
  }
}

std::int64_t arrivals_at(const ArrivalCurve& arrivals, std::int64_t t) {
  if (t < 0 || arrivals.empty()) return 0;
  const std::size_t i = static_cast<std::size_t>(t);
  return i < arrivals.size() ? arrivals[i] : arrivals.back();
}

// --- CountField ---------------------------------------------------------

CountField::CountField(SegmentGrid grid, ArrivalCurve arrivals)
    : grid_(std::move(grid)), arrivals_(std::move(arrivals)) {
  validate(grid_);
  validate_arrivals(arrivals_);
  const std::int64_t K = grid_.size();
  // initial profile: no interior passages at time 0; entry passages are the
  // time-0 demand limited by the first segment's free space
  std::vector<std::int64_t> row(static_cast<std::size_t>(K) + 1, 0);
  row[0] = compute(0, 0, row);
  rows_.push_back(std::move(row));
  time_ = 0;
}

std::int64_t CountField::at(std::int64_t t, std::int64_t x) const {
  if (x < 0 || x > grid_.size()) {
    throw std::invalid_argument("CountField: position out of range");
  }
  if (t < 0) return 0;  // nothing has passed before the start
  if (t > time_) throw std::invalid_argument("CountField: row not computed yet");
  return rows_[static_cast<std::size_t>(t)][static_cast<std::size_t>(x)];
}

std::int64_t CountField::compute(std::int64_t t, std::int64_t x,
                                 const std::vector<std::int64_t>& partial) const {
  const std::int64_t K = grid_.size();
  auto get = [&](std::int64_t tt, std::int64_t xx) -> std::int64_t {
    if (tt == t) return partial[static_cast<std::size_t>(xx)];
    return at(tt, xx);
  };
  if (x == 0) {
    const RoadSegment& first = grid_.seg(1);
    // entry demand, limited by the first segment's free space
    return std::min(arrivals_at(arrivals_, t),
                    first.abar() + get(t - first.taubar, 1));
  }
  if (x == K) {
    if (!grid_.exit_open) return 0;  // closed exit: nothing ever leaves
    const RoadSegment& last = grid_.seg(K);
    return last.a + get(t - last.tau, K - 1);
  }
  const RoadSegment& up = grid_.seg(x);
  const RoadSegment& down = grid_.seg(x + 1);
  return std::min(up.a + get(t - up.tau, x - 1),
                  down.abar() + get(t - down.taubar, x + 1));
}

void CountField::step() {
  const std::int64_t t = time_ + 1;
  const std::int64_t K = grid_.size();
  std::vector<std::int64_t> row(static_cast<std::size_t>(K) + 1, 0);
  // tau >= 1, so upstream references are strictly older; a zero taubar
  // references the current row downstream, available in a descending sweep
  for (std::int64_t x = K; x >= 0; --x) {
    row[static_cast<std::size_t>(x)] = compute(t, x, row);
  }
  const std::vector<std::int64_t>& prev = rows_.back();
  for (std::int64_t x = 0; x <= K; ++x) {
    if (row[static_cast<std::size_t>(x)] < prev[static_cast<std::size_t>(x)]) {
      throw std::logic_error("CountField: counts decreased in time");
    }
  }
  rows_.push_back(std::move(row));
  time_ = t;
  for (std::int64_t x = 1; x <= K; ++x) {
    const std::int64_t occ = occupancy(t, x);
    if (occ < 0 || occ > grid_.seg(x).c) {
      throw std::logic_error("CountField: segment occupancy out of [0, c]");
    }
  }
}

std::int64_t CountField::occupancy(std::int64_t t, std::int64_t x) const {
  return grid_.seg(x).a + at(t, x - 1) - at(t, x);
}

void step_count(CountField& field, std::int64_t t) {
  if (t != field.time_computed() + 1) {
    throw std::invalid_argument("step_count: history insufficient for requested time");
  }
  field.step();
}

CountField solve_counts(const SegmentGrid& grid, const ArrivalCurve& arrivals,
                        std::int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("solve_counts: horizon < 0");
  CountField field(grid, arrivals);
  while (field.time_computed() < horizon) field.step();
  return field;
}

// --- TimeField ----------------------------------------------------------

TimeField::TimeField(SegmentGrid grid, ArrivalCurve arrivals, std::int64_t horizon)
    : grid_(std::move(grid)), arrivals_(std::move(arrivals)), horizon_(horizon) {
  validate(grid_);
  validate_arrivals(arrivals_);
  if (horizon_ < 0) throw std::invalid_argument("TimeField: horizon < 0");
  car_count_ = arrivals_at(arrivals_, horizon_) + grid_.initial_cars();
}

std::int64_t TimeField::entry_demand(std::int64_t n) const {
  if (n > arrivals_at(arrivals_, horizon_)) return kNever;
  // smallest t in [0, horizon] with A(t) >= n
  std::int64_t lo = 0;
  std::int64_t hi = horizon_;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (arrivals_at(arrivals_, mid) >= n) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::int64_t TimeField::at(std::int64_t n, std::int64_t x) const {
  if (x < 0 || x > grid_.size()) {
    throw std::invalid_argument("TimeField: position out of range");
  }
  if (n <= 0) return kBeforeStart;
  if (n > car_) throw std::invalid_argument("TimeField: row not computed yet");
  return rows_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(x)];
}

void TimeField::step() {
  const std::int64_t n = car_ + 1;
  if (n > car_count_) throw std::invalid_argument("TimeField: all cars computed");
  const std::int64_t K = grid_.size();
  std::vector<std::int64_t> row(static_cast<std::size_t>(K) + 1, kBeforeStart);

  auto ref = [&](std::int64_t k, std::int64_t x) -> std::int64_t {
    if (k <= 0) return kBeforeStart;
    if (k == n) return row[static_cast<std::size_t>(x)];
    return at(k, x);
  };
  auto value_at = [&](std::int64_t x) -> std::int64_t {
    std::int64_t v = kBeforeStart;
    if (x == 0) {
      v = std::max(v, entry_demand(n));
      const RoadSegment& first = grid_.seg(1);
      v = std::max(v, add_delay(first.taubar, ref(n - first.abar(), 1)));
      return v;
    }
    const RoadSegment& up = grid_.seg(x);
    v = std::max(v, add_delay(up.tau, ref(n - up.a, x - 1)));
    if (x < K) {
      const RoadSegment& down = grid_.seg(x + 1);
      v = std::max(v, add_delay(down.taubar, ref(n - down.abar(), x + 1)));
    } else if (!grid_.exit_open) {
      return kNever;  // closed exit: the passage never happens
    }
    // interior passages cannot predate the first step; unblocked initial
    // occupants flush at t = 1, matching n(1, x) = a_x in the count field
    return std::max<std::int64_t>(v, 1);
  };

  // same-row references (a_x = 0 upstream, abar_{x+1} = 0 downstream) form a
  // cycle-free chain because c >= 1; alternate sweeps reach the fixed point
  bool changed = true;
  std::int64_t sweeps = 0;
  while (changed) {
    changed = false;
    for (std::int64_t x = K; x >= 0; --x) {
      const std::int64_t v = value_at(x);
      if (v != row[static_cast<std::size_t>(x)]) {
        row[static_cast<std::size_t>(x)] = v;
        changed = true;
      }
    }
    for (std::int64_t x = 0; x <= K; ++x) {
      const std::int64_t v = value_at(x);
      if (v != row[static_cast<std::size_t>(x)]) {
        row[static_cast<std::size_t>(x)] = v;
        changed = true;
      }
    }
    if (++sweeps > K + 2) {
      throw std::logic_error("TimeField: passage-time relaxation did not settle");
    }
  }

  if (!rows_.empty()) {
    const std::vector<std::int64_t>& prev = rows_.back();
    for (std::int64_t x = 0; x <= K; ++x) {
      if (row[static_cast<std::size_t>(x)] < prev[static_cast<std::size_t>(x)]) {
        throw std::logic_error("TimeField: passage times decreased in car index");
      }
    }
  }
  rows_.push_back(std::move(row));
  car_ = n;
}

void step_time(TimeField& field, std::int64_t n) {
  if (n != field.cars_computed() + 1) {
    throw std::invalid_argument("step_time: referenced passage rows are missing");
  }
  field.step();
}

TimeField solve_times(const SegmentGrid& grid, const ArrivalCurve& arrivals,
                      std::int64_t horizon) {
  TimeField field(grid, arrivals, horizon);
  while (field.cars_computed() < field.car_count()) field.step();
  return field;
}

// --- duality ------------------------------------------------------------

std::int64_t duality_check(const SegmentGrid& grid,
                           const ArrivalCurve& arrivals, std::int64_t horizon) {
  const CountField counts = solve_counts(grid, arrivals, horizon);
  const TimeField times = solve_times(grid, arrivals, horizon);
  const std::int64_t K = grid.size();
  std::int64_t worst = 0;
  for (std::int64_t x = 0; x <= K; ++x) {
    std::vector<std::int64_t> column;
    column.reserve(static_cast<std::size_t>(times.car_count()));
    for (std::int64_t n = 1; n <= times.car_count(); ++n) {
      column.push_back(times.at(n, x));
    }
    for (std::int64_t t = 0; t <= horizon; ++t) {
      const std::int64_t passed =
          std::upper_bound(column.begin(), column.end(), t) - column.begin();
      worst = std::max(worst, std::abs(counts.at(t, x) - passed));
    }
  }
  return worst;
}

}  // namespace pwlcf
