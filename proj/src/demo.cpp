#include "pwlcf/demo.hpp"

#include <cmath>

namespace pwlcf {
namespace demo {

PwlLaw min_plus_law(double v0, double sigma) {
  return PwlLaw::from_min_pieces({{0.0, v0}, {1.0, -sigma}});
}

PwlLaw six_segment_law() {
  return PwlLaw({{{0.0, 0.0},
                  {0.54, -8.1},
                  {0.32, -1.47},
                  {0.13, 6.11},
                  {0.34, 10.6}},
                 {{0.0, 14.0}}});
}

double sigmoid_speed(double y, double v0, double gamma) {
  // 1000/(gamma*0) = +inf and exp(+inf) = +inf give the y -> 0 limit
  const double z = 1000.0 / (gamma * y) - 10.0 / 2.1;
  return v0 * (1.0 / (1.0 + std::exp(z)) - 5.34e-9);
}

std::vector<Sample> sigmoid_samples(double y_min, double y_max, double step,
                                    double v0, double gamma) {
  std::vector<Sample> samples;
  for (int i = 0;; ++i) {
    const double y = y_min + step * i;
    if (y > y_max + 1e-12) break;
    samples.push_back(Sample{y, sigmoid_speed(y, v0, gamma)});
  }
  return samples;
}

LeadProfile default_lead_profile() {
  return LeadProfile({
      {0, 333, SegmentKind::linear_ramp, 0.0, 14.0},
      {333, 666, SegmentKind::linear_ramp, 14.0, 4.0},
      {666, 1000, SegmentKind::linear_ramp, 4.0, 14.0},
      {1000, 3000, SegmentKind::constant, 14.0, 14.0},
      {3000, 7200, SegmentKind::constant, 16.0, 16.0},
  });
}

OpenScenario default_open_scenario() {
  return OpenScenario{six_segment_law(), 50, 20.0, default_lead_profile(),
                      7200, 0};
}

}  // namespace demo
}  // namespace pwlcf
