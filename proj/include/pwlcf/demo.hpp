#pragma once

#include <vector>

#include "pwlcf/law.hpp"
#include "pwlcf/open_road.hpp"

// Built-in example data: the two-piece min-plus law, the six-segment
// approximation of the sigmoid equilibrium curve, and the default open-road
// demonstration scenario.

namespace pwlcf {
namespace demo {

/// min(y + offset... ) -- the two-phase law min(v0, y - sigma).
PwlLaw min_plus_law(double v0 = 2.0, double sigma = 1.0);

/// Six-segment approximation of the sigmoid curve below, grouped as
/// min{ max{seg1..seg5}, seg6 } with
///   alpha = [0, 0.54, 0.32, 0.13, 0.34, 0]
///   beta  = [0, -8.1, -1.47, 6.11, 10.6, 14].
/// It evaluates to 14 from y = 10 onward and inverts to a stationary headway
/// of 10 m at lead speed 14.
PwlLaw six_segment_law();

/// Sigmoid equilibrium speed
///   v0 * ( 1 / (1 + exp(1000/(gamma*y) - 10/2.1)) - 5.34e-9 ),
/// implemented verbatim including the small constant (negligible at these
/// scales, slightly negative at y = 0).
double sigmoid_speed(double y, double v0 = 14.0, double gamma = 7.5);

std::vector<Sample> sigmoid_samples(double y_min, double y_max, double step,
                                    double v0 = 14.0, double gamma = 7.5);

/// Lead profile of the demonstration run: sawtooth 0 -> 14 -> 4 -> 14 over
/// [0, 1000), constant 14 over [1000, 3000), constant 16 over [3000, 7200).
LeadProfile default_lead_profile();

/// 50 cars at 20 m gaps driven by default_lead_profile() under the
/// six-segment law, horizon 7200, seed 0.
OpenScenario default_open_scenario();

}  // namespace demo
}  // namespace pwlcf
