#include "pwlcf/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace pwlcf {

void validate(const RingConfig& config) {
  if (config.nu < 1) throw std::invalid_argument("RingConfig: nu must be >= 1");
  if (!(config.mu > 0.0) || !std::isfinite(config.mu)) {
    throw std::invalid_argument("RingConfig: mu must be positive and finite");
  }
}

std::vector<double> ring_headways(const RingState& state,
                                  const RingConfig& config) {
  const std::size_t nu = state.x.size();
  if (nu != static_cast<std::size_t>(config.nu)) {
    throw std::invalid_argument("ring_headways: state size does not match nu");
  }
  std::vector<double> y(nu);
  y[0] = state.x[nu - 1] + config.mu - state.x[0];
  for (std::size_t n = 1; n < nu; ++n) y[n] = state.x[n - 1] - state.x[n];
  return y;
}

RingState step_ring(const RingState& state, const PwlLaw& law,
                    const RingConfig& config) {
  const std::vector<double> y = ring_headways(state, config);
  RingState next;
  next.x.resize(state.x.size());
  next.time_step = state.time_step + 1;
  for (std::size_t n = 0; n < state.x.size(); ++n) {
    next.x[n] = state.x[n] + law.evaluate(y[n]);
  }
  return next;
}

std::vector<RingState> simulate_ring(RingState initial, const PwlLaw& law,
                                     const RingConfig& config,
                                     std::int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("simulate_ring: horizon < 0");
  validate(config);
  std::vector<RingState> trajectory;
  trajectory.reserve(static_cast<std::size_t>(horizon) + 1);
  trajectory.push_back(std::move(initial));
  for (std::int64_t t = 0; t < horizon; ++t) {
    trajectory.push_back(step_ring(trajectory.back(), law, config));
  }
  return trajectory;
}

std::vector<double> growth_rate(const std::vector<RingState>& trajectory) {
  if (trajectory.size() < 2) {
    throw std::invalid_argument("growth_rate: need at least two states");
  }
  const RingState& first = trajectory.front();
  const RingState& last = trajectory.back();
  const double span = static_cast<double>(last.time_step - first.time_step);
  if (!(span > 0.0)) {
    throw std::invalid_argument("growth_rate: trajectory spans no time");
  }
  std::vector<double> chi(first.x.size());
  for (std::size_t n = 0; n < chi.size(); ++n) {
    chi[n] = (last.x[n] - first.x[n]) / span;
  }
  return chi;
}

double mean(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("mean: empty vector");
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

RingState uniform_ring_state(const RingConfig& config) {
  validate(config);
  const double y_bar = config.mean_headway();
  RingState state;
  state.x.resize(static_cast<std::size_t>(config.nu));
  // iterated addition from the rear car keeps consecutive gaps bit-identical
  state.x.back() = 0.0;
  for (std::size_t n = state.x.size() - 1; n-- > 0;) {
    state.x[n] = state.x[n + 1] + y_bar;
  }
  return state;
}

RingState noisy_ring_state(const RingConfig& config, double amplitude,
                           std::uint64_t seed) {
  RingState state = uniform_ring_state(config);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  for (double& xn : state.x) xn += noise(rng);
  return state;
}

namespace {

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

}  // namespace

std::optional<ExpansionWitness> find_expansion_witness(const PwlLaw& law,
                                                       const RingConfig& config,
                                                       int trials,
                                                       std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("find_expansion_witness: trials < 1");
  validate(config);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> position(0.0, config.mu);
  std::uniform_real_distribution<double> bump(1e-3, 1.0);
  std::uniform_int_distribution<std::size_t> coordinate(
      0, static_cast<std::size_t>(config.nu) - 1);

  for (int trial = 0; trial < trials; ++trial) {
    RingState a;
    a.x.resize(static_cast<std::size_t>(config.nu));
    for (double& xn : a.x) xn = position(rng);
    RingState b = a;
    if (trial % 2 == 0) {
      for (double& xn : b.x) xn = position(rng);
    } else {
      b.x[coordinate(rng)] += bump(rng);  // sparse perturbation
    }
    const double before = sup_distance(a.x, b.x);
    if (before == 0.0) continue;
    const RingState fa = step_ring(a, law, config);
    const RingState fb = step_ring(b, law, config);
    const double after = sup_distance(fa.x, fb.x);
    if (after > before + 1e-12) {
      return ExpansionWitness{a.x, b.x, after, before};
    }
  }
  return std::nullopt;
}

bool check_nonexpansive_empirical(const PwlLaw& law, const RingConfig& config,
                                  int trials, std::uint64_t seed) {
  return !find_expansion_witness(law, config, trials, seed).has_value();
}

bool connectedness(const PwlLaw& law) { return law.connected(); }

}  // namespace pwlcf
