#include "pwlcf/stationary.hpp"

#include <cmath>
#include <stdexcept>

#include "pwlcf/errors.hpp"

namespace pwlcf {

EigenPair eigen_solution_ring(const PwlLaw& law, const RingConfig& config) {
  validate(config);
  if (!law.stable()) {
    throw ModelError("stability condition alpha in [0,1] violated");
  }
  const long double y_bar =
      static_cast<long double>(config.mu) / static_cast<long double>(config.nu);
  EigenPair pair;
  pair.v_bar = law.evaluate(y_bar);
  pair.x.resize(static_cast<std::size_t>(config.nu));
  // gauge x_1 = 0; consecutive positions y_bar apart, car 1 ahead
  pair.x[0] = 0.0L;
  for (std::size_t n = 1; n < pair.x.size(); ++n) {
    pair.x[n] = pair.x[n - 1] - y_bar;
  }
  return pair;
}

double eigen_residual(const PwlLaw& law, const RingConfig& config,
                      const EigenPair& pair) {
  if (pair.x.size() != static_cast<std::size_t>(config.nu)) {
    throw std::invalid_argument("eigen_residual: profile length != nu");
  }
  const std::size_t nu = pair.x.size();
  long double residual = 0.0L;
  for (std::size_t n = 0; n < nu; ++n) {
    const long double y =
        (n == 0) ? pair.x[nu - 1] + static_cast<long double>(config.mu) - pair.x[0]
                 : pair.x[n - 1] - pair.x[n];
    residual = std::max(residual, std::abs(pair.v_bar - law.evaluate(y)));
  }
  return static_cast<double>(residual);
}

std::vector<DiagramPoint> speed_diagram(const PwlLaw& law,
                                        std::span<const double> headways) {
  std::vector<DiagramPoint> points;
  points.reserve(headways.size());
  for (double y : headways) {
    if (!(y > 0.0)) {
      throw std::invalid_argument("speed_diagram: headways must be positive");
    }
    DiagramPoint p;
    p.y_bar = y;
    p.v_bar = law.evaluate(y);
    p.rho_bar = 1.0 / y;
    p.q_bar = p.v_bar / y;
    points.push_back(p);
  }
  return points;
}

std::vector<EmpiricalPoint> empirical_diagram(const PwlLaw& law,
                                              std::span<const double> densities,
                                              int nu, std::int64_t horizon,
                                              std::uint64_t seed, double noise) {
  if (horizon < 1) throw std::invalid_argument("empirical_diagram: horizon < 1");
  std::vector<EmpiricalPoint> points;
  points.reserve(densities.size());
  for (double rho : densities) {
    if (!(rho > 0.0)) {
      throw std::invalid_argument("empirical_diagram: densities must be positive");
    }
    const RingConfig config{nu, static_cast<double>(nu) / rho};
    RingState start = (noise > 0.0) ? noisy_ring_state(config, noise, seed)
                                    : uniform_ring_state(config);
    const auto trajectory = simulate_ring(std::move(start), law, config, horizon);
    points.push_back(EmpiricalPoint{rho, rho * mean(growth_rate(trajectory))});
  }
  return points;
}

}  // namespace pwlcf
