#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pwlcf/law.hpp"
#include "pwlcf/ring.hpp"

// Stationary regimes of the ring dynamics: closed-form additive eigenpairs,
// residual verification, and stationary fundamental diagrams.

namespace pwlcf {

/// Solution of v_bar + x = f(x). The profile x is fixed to the gauge x_1 = 0.
/// Extended precision: position profiles span the whole ring, and double
/// storage alone would quantize the recomputed headways near 1e-12 for the
/// largest rings.
struct EigenPair {
  long double v_bar = 0.0L;
  std::vector<long double> x;
};

/// Closed-form solution: y_bar = mu/nu, v_bar = V(y_bar), consecutive
/// positions y_bar apart. Throws ModelError when the law is unstable
/// (some alpha outside [0, 1]).
EigenPair eigen_solution_ring(const PwlLaw& law, const RingConfig& config);

/// max_n |v_bar + x_n - (x_n + V(y_n(x)))| with cyclic headways of x.
/// Zero exactly when the pair solves the eigenproblem.
double eigen_residual(const PwlLaw& law, const RingConfig& config,
                      const EigenPair& pair);

/// Speed/flow diagram points for positive headways. Throws
/// std::invalid_argument on a nonpositive headway.
std::vector<DiagramPoint> speed_diagram(const PwlLaw& law,
                                        std::span<const double> headways);

struct EmpiricalPoint {
  double rho = 0.0;
  double q = 0.0;
};

/// Simulated flow at each density: build a ring of nu cars with mu = nu/rho,
/// run horizon steps from a uniform (noise = 0) or noise-perturbed start, and
/// return q = rho * mean growth rate.
std::vector<EmpiricalPoint> empirical_diagram(const PwlLaw& law,
                                              std::span<const double> densities,
                                              int nu, std::int64_t horizon,
                                              std::uint64_t seed = 0,
                                              double noise = 0.0);

}  // namespace pwlcf
