#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pwlcf/law.hpp"

// Discrete-time dynamics of nu cars on a ring of length mu. Positions are
// cumulative (never wrapped); the ring enters only through the headway of
// car 1, y_1 = x_nu + mu - x_1. Headways of the other cars are
// y_n = x_{n-1} - x_n (the car with the lower index is ahead). A single car
// (nu = 1) sees the whole ring as its headway.

namespace pwlcf {

struct RingConfig {
  int nu = 1;       // car count
  double mu = 1.0;  // ring length, m

  double density() const { return static_cast<double>(nu) / mu; }
  double mean_headway() const { return mu / static_cast<double>(nu); }
};

void validate(const RingConfig& config);

struct RingState {
  std::vector<double> x;     // cumulative positions, m
  std::int64_t time_step = 0;
};

/// Cyclic headways (y_1 wraps through the ring length).
std::vector<double> ring_headways(const RingState& state,
                                  const RingConfig& config);

/// One step of x_n' = x_n + V(y_n).
RingState step_ring(const RingState& state, const PwlLaw& law,
                    const RingConfig& config);

/// Trajectory of length horizon + 1; element 0 is the initial state.
std::vector<RingState> simulate_ring(RingState initial, const PwlLaw& law,
                                     const RingConfig& config,
                                     std::int64_t horizon);

/// (x(T) - x(0)) / T componentwise. Requires at least two states.
std::vector<double> growth_rate(const std::vector<RingState>& trajectory);

double mean(const std::vector<double>& values);

/// Equally spaced cars, car 1 at position (nu-1)*y_bar, car nu at 0.
RingState uniform_ring_state(const RingConfig& config);

/// Uniform spacing plus i.i.d. position noise drawn from U(-amplitude,
/// +amplitude) with a seeded 64-bit generator.
RingState noisy_ring_state(const RingConfig& config, double amplitude,
                           std::uint64_t seed);

struct ExpansionWitness {
  std::vector<double> a;
  std::vector<double> b;
  double image_distance = 0.0;  // ||f(b) - f(a)||_inf
  double distance = 0.0;        // ||b - a||_inf
};

/// Random search for a pair violating sup-norm non-expansiveness (slack
/// 1e-12). Returns the first witness found, if any.
std::optional<ExpansionWitness> find_expansion_witness(const PwlLaw& law,
                                                       const RingConfig& config,
                                                       int trials,
                                                       std::uint64_t seed);

/// True iff no expansion witness is found in the given number of trials.
bool check_nonexpansive_empirical(const PwlLaw& law, const RingConfig& config,
                                  int trials, std::uint64_t seed = 0);

/// Influence-graph connectedness criterion: some piece with alpha in (0, 1].
bool connectedness(const PwlLaw& law);

}  // namespace pwlcf
