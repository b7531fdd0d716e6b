#include "pwlcf/law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pwlcf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kShapeTol = 1e-9;

}  // namespace

PwlLaw::PwlLaw(std::vector<Group> groups) : groups_(std::move(groups)) {
  if (groups_.empty()) {
    throw std::invalid_argument("PwlLaw: at least one group required");
  }
  for (const Group& group : groups_) {
    if (group.empty()) {
      throw std::invalid_argument("PwlLaw: every group must be nonempty");
    }
    for (const AffinePiece& p : group) {
      if (!std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
        throw std::invalid_argument("PwlLaw: coefficients must be finite");
      }
    }
  }
}

PwlLaw PwlLaw::from_min_pieces(const std::vector<AffinePiece>& pieces) {
  if (pieces.empty()) {
    throw std::invalid_argument("from_min_pieces: empty piece list");
  }
  std::vector<Group> groups;
  groups.reserve(pieces.size());
  for (const AffinePiece& p : pieces) groups.push_back(Group{p});
  return PwlLaw(std::move(groups));
}

double PwlLaw::evaluate(double y) const {
  double best = kInf;
  for (const Group& group : groups_) {
    double group_max = -kInf;
    for (const AffinePiece& p : group) {
      group_max = std::max(group_max, p.alpha * y + p.beta);
    }
    best = std::min(best, group_max);
  }
  return best;
}

long double PwlLaw::evaluate(long double y) const {
  long double best = std::numeric_limits<long double>::infinity();
  for (const Group& group : groups_) {
    long double group_max = -std::numeric_limits<long double>::infinity();
    for (const AffinePiece& p : group) {
      group_max = std::max(group_max,
                           static_cast<long double>(p.alpha) * y + p.beta);
    }
    best = std::min(best, group_max);
  }
  return best;
}

ActivePiece PwlLaw::argmin_argmax(double y) const {
  ActivePiece active;
  double best = kInf;
  for (std::size_t u = 0; u < groups_.size(); ++u) {
    double group_max = -kInf;
    std::size_t group_arg = 0;
    for (std::size_t w = 0; w < groups_[u].size(); ++w) {
      const AffinePiece& p = groups_[u][w];
      const double value = p.alpha * y + p.beta;
      if (value > group_max) {  // strict: ties keep the lowest index
        group_max = value;
        group_arg = w;
      }
    }
    if (group_max < best) {
      best = group_max;
      active = ActivePiece{u, group_arg};
    }
  }
  return active;
}

double PwlLaw::flow(double rho) const {
  double best = kInf;
  for (const Group& group : groups_) {
    double group_max = -kInf;
    for (const AffinePiece& p : group) {
      group_max = std::max(group_max, p.alpha + p.beta * rho);
    }
    best = std::min(best, group_max);
  }
  return best;
}

bool PwlLaw::stable() const {
  for (const Group& group : groups_) {
    for (const AffinePiece& p : group) {
      if (p.alpha < 0.0 || p.alpha > 1.0) return false;
    }
  }
  return true;
}

bool PwlLaw::connected() const {
  for (const Group& group : groups_) {
    for (const AffinePiece& p : group) {
      if (p.alpha > 0.0 && p.alpha <= 1.0) return true;
    }
  }
  return false;
}

bool PwlLaw::pure_min() const {
  return std::all_of(groups_.begin(), groups_.end(),
                     [](const Group& g) { return g.size() == 1; });
}

std::size_t PwlLaw::piece_count() const {
  std::size_t n = 0;
  for (const Group& group : groups_) n += group.size();
  return n;
}

bool check_stability(const PwlLaw& law) { return law.stable(); }
bool check_connected(const PwlLaw& law) { return law.connected(); }

bool shape_bound_check(const PwlLaw& law, double v0, double y_jam,
                       std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("shape_bound_check: empty grid");
  if (!(v0 > 0.0)) throw std::invalid_argument("shape_bound_check: v0 must be positive");
  if (y_jam < 0.0) throw std::invalid_argument("shape_bound_check: y_jam must be >= 0");
  for (double y : grid) {
    const double bound = std::max(0.0, std::min(v0, y - y_jam));
    if (law.evaluate(y) > bound + kShapeTol) return false;
  }
  return true;
}

namespace {

// Upper concave envelope of points sorted by y (distinct y): the subset of
// vertices with strictly decreasing edge slopes.
std::vector<Sample> upper_envelope(const std::vector<Sample>& pts) {
  std::vector<Sample> hull;
  for (const Sample& p : pts) {
    while (hull.size() >= 2) {
      const Sample& a = hull[hull.size() - 2];
      const Sample& b = hull[hull.size() - 1];
      // pop b when it lies on or below chord a--p
      if ((b.v - a.v) * (p.y - a.y) <= (p.v - a.v) * (b.y - a.y)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  return hull;
}

double envelope_value(const std::vector<Sample>& hull, double y) {
  if (hull.size() == 1) return hull.front().v;
  auto it = std::upper_bound(hull.begin(), hull.end(), y,
                             [](double lhs, const Sample& s) { return lhs < s.y; });
  std::size_t hi = static_cast<std::size_t>(it - hull.begin());
  if (hi == 0) hi = 1;
  if (hi == hull.size()) hi = hull.size() - 1;
  const Sample& a = hull[hi - 1];
  const Sample& b = hull[hi];
  const double slope = (b.v - a.v) / (b.y - a.y);
  return a.v + slope * (y - a.y);
}

AffinePiece supporting_line(const std::vector<Sample>& hull, double y) {
  auto it = std::upper_bound(hull.begin(), hull.end(), y,
                             [](double lhs, const Sample& s) { return lhs < s.y; });
  std::size_t hi = static_cast<std::size_t>(it - hull.begin());
  if (hi == 0) hi = 1;
  if (hi == hull.size()) hi = hull.size() - 1;
  const Sample& a = hull[hi - 1];
  const Sample& b = hull[hi];
  const double slope = (b.v - a.v) / (b.y - a.y);
  return AffinePiece{slope, a.v - slope * a.y};
}

}  // namespace

FitResult fit_concave(std::vector<Sample> samples, std::size_t piece_count) {
  if (piece_count < 1) {
    throw std::invalid_argument("fit_concave: piece_count must be >= 1");
  }
  for (const Sample& s : samples) {
    if (!std::isfinite(s.y) || !std::isfinite(s.v)) {
      throw std::invalid_argument("fit_concave: samples must be finite");
    }
  }
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
    return a.y < b.y || (a.y == b.y && a.v < b.v);
  });
  // collapse duplicate y, keeping the largest v (only the top matters)
  std::vector<Sample> pts;
  for (const Sample& s : samples) {
    if (!pts.empty() && pts.back().y == s.y) {
      pts.back().v = std::max(pts.back().v, s.v);
    } else {
      pts.push_back(s);
    }
  }
  if (pts.size() < 2) {
    throw std::invalid_argument("fit_concave: need >= 2 samples with distinct y");
  }

  const std::vector<Sample> hull = upper_envelope(pts);
  const double y_min = pts.front().y;
  const double y_max = pts.back().y;

  std::vector<AffinePiece> pieces;
  for (std::size_t i = 0; i < piece_count; ++i) {
    const double b =
        y_min + (static_cast<double>(i) + 0.5) * (y_max - y_min) /
                    static_cast<double>(piece_count);
    const AffinePiece line = supporting_line(hull, b);
    const bool duplicate =
        std::any_of(pieces.begin(), pieces.end(), [&](const AffinePiece& p) {
          return p.alpha == line.alpha && p.beta == line.beta;
        });
    if (!duplicate) pieces.push_back(line);
  }

  FitResult result{PwlLaw::from_min_pieces(pieces), 0.0, 0.0, piece_count,
                   pieces.size()};
  for (const Sample& s : pts) {
    const double fitted = result.law.evaluate(s.y);
    result.sup_error_envelope =
        std::max(result.sup_error_envelope,
                 std::abs(fitted - envelope_value(hull, s.y)));
    result.sup_error_samples = std::max(result.sup_error_samples, fitted - s.v);
  }
  return result;
}

double law_zero_crossing(const PwlLaw& law) {
  if (law.evaluate(0.0) > 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (law.evaluate(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 600) return kInf;  // law never becomes positive
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (law.evaluate(mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace pwlcf
