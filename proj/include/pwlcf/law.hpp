#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

// Piecewise-linear behavioral speed laws of min-of-maxes affine form and the
// fundamental diagrams they induce.
//
// Units throughout the library: distance in meters, one time step = half a
// second, speeds in meters per time step.

namespace pwlcf {

struct AffinePiece {
  double alpha = 0.0;  // sensitivity (slope, dimensionless per step)
  double beta = 0.0;   // intercept (meters per step)
};

// Index of the piece achieving the min-max value (lowest indices on ties).
struct ActivePiece {
  std::size_t group = 0;
  std::size_t piece = 0;
};

/// A speed law V(y) = min over groups of max over pieces of (alpha*y + beta).
/// Immutable after construction; all operations are pure.
class PwlLaw {
 public:
  using Group = std::vector<AffinePiece>;

  /// Throws std::invalid_argument on an empty group list, an empty group, or
  /// a non-finite coefficient.
  explicit PwlLaw(std::vector<Group> groups);

  /// Pure-min law: every piece becomes a singleton group.
  static PwlLaw from_min_pieces(const std::vector<AffinePiece>& pieces);

  /// V(y); total for all real y.
  double evaluate(double y) const;
  long double evaluate(long double y) const;
  double operator()(double y) const { return evaluate(y); }

  /// Lowest-index (group, piece) achieving evaluate(y).
  ActivePiece argmin_argmax(double y) const;

  /// Flow q(rho) = min over groups of max over pieces of (alpha + beta*rho).
  double flow(double rho) const;

  bool stable() const;     // every alpha in [0, 1]
  bool connected() const;  // some alpha in (0, 1]
  bool pure_min() const;   // all groups are singletons

  const std::vector<Group>& groups() const { return groups_; }
  std::size_t piece_count() const;

 private:
  std::vector<Group> groups_;
};

bool check_stability(const PwlLaw& law);
bool check_connected(const PwlLaw& law);

/// True iff evaluate(y) <= max(0, min(v0, y - y_jam)) + 1e-9 on every grid
/// point. Grid must be nonempty, v0 > 0, y_jam >= 0.
bool shape_bound_check(const PwlLaw& law, double v0, double y_jam,
                       std::span<const double> grid);

/// One point of the stationary diagrams.
struct DiagramPoint {
  double y_bar = 0.0;    // headway, m
  double v_bar = 0.0;    // speed, m per step
  double rho_bar = 0.0;  // density, cars per m
  double q_bar = 0.0;    // flow, cars per step
};

struct Sample {
  double y = 0.0;
  double v = 0.0;
};

struct FitResult {
  PwlLaw law;
  // Sup over sample abscissae of law(y_i) - envelope(y_i), where envelope is
  // the upper concave envelope of the samples. The law is a majorant of the
  // envelope, so this is >= 0.
  double sup_error_envelope = 0.0;
  // Sup over samples of law(y_i) - v_i. For non-concave data this includes
  // the concavity gap, not just the piecewise-linear selection error.
  double sup_error_samples = 0.0;
  std::size_t pieces_requested = 0;
  std::size_t pieces_selected = 0;
};

/// Concave piecewise-linear fit: upper concave envelope of the samples, then
/// supporting lines taken at piece_count breakpoints equally spaced over the
/// y-range (duplicate lines merged). Requires >= 2 distinct y values and
/// piece_count >= 1; throws std::invalid_argument otherwise.
FitResult fit_concave(std::vector<Sample> samples, std::size_t piece_count);

/// Largest y with evaluate(y) <= 0 (the fitted jam headway). Returns 0 when
/// evaluate(0) > 0 and +infinity when the law never becomes positive.
double law_zero_crossing(const PwlLaw& law);

}  // namespace pwlcf
