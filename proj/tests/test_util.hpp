#pragma once

// Shared test-only helpers: random law generators and the dense matrix-form
// evaluator used as an independent route for the ring update.

#include <cmath>
#include <random>
#include <vector>

#include "pwlcf/law.hpp"
#include "pwlcf/ring.hpp"

namespace pwlcf_test {

// 1-4 groups x 1-4 pieces, alpha ~ U[0,1], beta ~ U[-10,15]
inline pwlcf::PwlLaw random_stable_law(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> alpha(0.0, 1.0);
  std::uniform_real_distribution<double> beta(-10.0, 15.0);
  std::vector<pwlcf::PwlLaw::Group> groups(static_cast<std::size_t>(count(rng)));
  for (auto& group : groups) {
    group.resize(static_cast<std::size_t>(count(rng)));
    for (auto& piece : group) piece = pwlcf::AffinePiece{alpha(rng), beta(rng)};
  }
  return pwlcf::PwlLaw(std::move(groups));
}

// Increasing stable law with V = 0 on [0, y_jam], bounded by v0: groups
// max(0, piece) over a concave decreasing-slope sequence anchored at
// (y_jam, 0), plus the cap max(0, v0).
struct JamLaw {
  pwlcf::PwlLaw law;
  double v0;
  double y_jam;
};

inline JamLaw random_jam_law(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> y_jam_dist(0.5, 10.0);
  std::uniform_real_distribution<double> v0_dist(1.0, 15.0);
  std::uniform_int_distribution<int> piece_count(1, 4);
  std::uniform_real_distribution<double> unit(0.05, 1.0);

  const double y_jam = y_jam_dist(rng);
  const double v0 = v0_dist(rng);
  const int k = piece_count(rng);

  std::vector<double> slopes(static_cast<std::size_t>(k));
  for (double& s : slopes) s = unit(rng);
  std::sort(slopes.rbegin(), slopes.rend());

  std::vector<pwlcf::PwlLaw::Group> groups;
  double y_prev = y_jam;
  double v_prev = 0.0;
  for (double slope : slopes) {
    groups.push_back({pwlcf::AffinePiece{0.0, 0.0},
                      pwlcf::AffinePiece{slope, v_prev - slope * y_prev}});
    const double y_next = y_prev + 1.0 + 9.0 * unit(rng);
    v_prev = v_prev + slope * (y_next - y_prev);
    y_prev = y_next;
  }
  groups.push_back({pwlcf::AffinePiece{0.0, 0.0}, pwlcf::AffinePiece{0.0, v0}});
  return JamLaw{pwlcf::PwlLaw(std::move(groups)), v0, y_jam};
}

// Ring update through the dense matrix form: for each (u, w) build the nu x nu
// matrix M and offset c, apply them, then take min over groups of max over
// pieces. Independent route for cross-checking the headway-form update.
inline std::vector<double> ring_update_matrix_form(const pwlcf::PwlLaw& law,
                                                   const std::vector<double>& x,
                                                   double mu) {
  const std::size_t nu = x.size();
  std::vector<double> result(nu);
  for (std::size_t n = 0; n < nu; ++n) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& group : law.groups()) {
      double group_max = -std::numeric_limits<double>::infinity();
      for (const pwlcf::AffinePiece& p : group) {
        std::vector<double> row(nu, 0.0);
        row[n] = 1.0 - p.alpha;
        row[(n + nu - 1) % nu] += p.alpha;
        double value = 0.0;
        for (std::size_t j = 0; j < nu; ++j) value += row[j] * x[j];
        value += (n == 0) ? p.alpha * mu + p.beta : p.beta;
        group_max = std::max(group_max, value);
      }
      best = std::min(best, group_max);
    }
    result[n] = best;
  }
  return result;
}

inline double sup_norm_diff(const std::vector<double>& a,
                            const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace pwlcf_test
