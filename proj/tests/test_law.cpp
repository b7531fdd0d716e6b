#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "pwlcf/demo.hpp"
#include "pwlcf/law.hpp"
#include "test_util.hpp"

using namespace pwlcf;

TEST_CASE("evaluate: min-plus law") {
  const PwlLaw law = demo::min_plus_law(2.0, 1.0);
  CHECK(law.evaluate(5.0) == doctest::Approx(2.0));   // free flow
  CHECK(law.evaluate(2.0) == doctest::Approx(1.0));   // congested branch
  CHECK(law.evaluate(3.0) == doctest::Approx(2.0));   // kink, both pieces tie
}

TEST_CASE("evaluate: six-segment example law") {
  const PwlLaw law = demo::six_segment_law();
  CHECK(law.evaluate(10.0) == doctest::Approx(14.0));
  CHECK(law.evaluate(20.0) == doctest::Approx(14.0));  // plateau past 10
  // below the plateau the steepest ascending piece is active
  CHECK(law.evaluate(2.0) == doctest::Approx(0.34 * 2.0 + 10.6));
}

TEST_CASE("argmin_argmax resolves ties to the lowest index") {
  const PwlLaw min_plus = demo::min_plus_law(2.0, 1.0);
  const ActivePiece at_tie = min_plus.argmin_argmax(3.0);
  CHECK(at_tie.group == 0);
  CHECK(at_tie.piece == 0);

  const ActivePiece congested = min_plus.argmin_argmax(2.0);
  CHECK(congested.group == 1);  // the slope-1 branch is strictly lower

  const PwlLaw six = demo::six_segment_law();
  const ActivePiece at_ten = six.argmin_argmax(10.0);
  CHECK(at_ten.group == 0);
  CHECK(at_ten.piece == 4);  // (0.34, 10.6), tied with the (0, 14) group
  CHECK(six.groups()[at_ten.group][at_ten.piece].alpha == doctest::Approx(0.34));

  const PwlLaw single = PwlLaw::from_min_pieces({{0.5, 1.0}});
  const ActivePiece only = single.argmin_argmax(123.0);
  CHECK(only.group == 0);
  CHECK(only.piece == 0);
}

TEST_CASE("from_min_pieces") {
  const PwlLaw law = PwlLaw::from_min_pieces({{0.0, 2.0}, {1.0, -1.0}});
  CHECK(law.pure_min());
  CHECK(law.evaluate(5.0) == doctest::Approx(2.0));
  // matches the two-phase closed form on a grid
  for (double y = 0.0; y <= 8.0; y += 0.25) {
    CHECK(law.evaluate(y) == doctest::Approx(std::min(2.0, y - 1.0)));
  }
  CHECK_THROWS_AS(PwlLaw::from_min_pieces({}), std::invalid_argument);
}

TEST_CASE("law construction rejects bad input") {
  CHECK_THROWS_AS(PwlLaw({}), std::invalid_argument);
  CHECK_THROWS_AS(PwlLaw({PwlLaw::Group{}}), std::invalid_argument);
  CHECK_THROWS_AS(PwlLaw({{AffinePiece{std::nan(""), 0.0}}}), std::invalid_argument);
}

TEST_CASE("flow diagram") {
  const PwlLaw law = demo::min_plus_law(2.0, 1.0);
  CHECK(law.flow(0.2) == doctest::Approx(0.4));
  CHECK(law.flow(0.0) == doctest::Approx(0.0));  // min over groups of max alpha

  // q(rho) = rho * V(1/rho) for rho > 0
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rho_dist(0.01, 2.0);
  for (int i = 0; i < 200; ++i) {
    const PwlLaw random_law = pwlcf_test::random_stable_law(rng);
    const double rho = rho_dist(rng);
    const double direct = random_law.flow(rho);
    const double via_speed = rho * random_law.evaluate(1.0 / rho);
    CHECK(std::abs(direct - via_speed) <=
          1e-12 * std::max({1.0, std::abs(direct), std::abs(via_speed)}));
  }

  const PwlLaw six = demo::six_segment_law();
  CHECK(six.flow(0.1) == doctest::Approx(0.1 * six.evaluate(10.0)));
}

TEST_CASE("stability and connectedness checks") {
  CHECK(check_stability(demo::six_segment_law()));
  CHECK_FALSE(check_stability(PwlLaw::from_min_pieces({{1.5, 0.0}})));
  CHECK(check_stability(demo::min_plus_law()));  // boundary alphas 0 and 1

  CHECK_FALSE(check_connected(PwlLaw::from_min_pieces({{0.0, 1.0}, {0.0, 3.0}})));
  CHECK(check_connected(demo::min_plus_law()));
  CHECK(check_connected(demo::six_segment_law()));
}

TEST_CASE("shape bound check") {
  const std::vector<double> grid{0.5, 1.0, 2.0, 3.0, 5.0};
  CHECK(shape_bound_check(demo::min_plus_law(2.0, 1.0), 2.0, 1.0, grid));

  const PwlLaw too_steep = PwlLaw::from_min_pieces({{1.0, 0.0}});
  // at y = 0.5 the law gives 0.5 > max(0, min(v0, -0.5)) = 0
  CHECK_FALSE(shape_bound_check(too_steep, 2.0, 1.0, grid));

  const PwlLaw stopped = PwlLaw::from_min_pieces({{0.0, 0.0}});
  CHECK(shape_bound_check(stopped, 5.0, 2.0, grid));
}

TEST_CASE("evaluate is 1-Lipschitz and monotone for stable laws") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> y_dist(-50.0, 150.0);
  for (int i = 0; i < 100; ++i) {
    const PwlLaw law = pwlcf_test::random_stable_law(rng);
    for (int j = 0; j < 20; ++j) {
      const double y1 = y_dist(rng);
      const double y2 = y_dist(rng);
      CHECK(std::abs(law.evaluate(y1) - law.evaluate(y2)) <=
            std::abs(y1 - y2) + 1e-9);
      if (y1 <= y2) {
        CHECK(law.evaluate(y1) <= law.evaluate(y2) + 1e-9);
      } else {
        CHECK(law.evaluate(y2) <= law.evaluate(y1) + 1e-9);
      }
    }
  }
}

TEST_CASE("pure-min laws are concave") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> y_dist(-20.0, 120.0);
  std::uniform_real_distribution<double> alpha(0.0, 1.0);
  std::uniform_real_distribution<double> beta(-10.0, 15.0);
  std::uniform_int_distribution<int> count(1, 6);
  for (int i = 0; i < 100; ++i) {
    std::vector<AffinePiece> pieces(static_cast<std::size_t>(count(rng)));
    for (auto& p : pieces) p = AffinePiece{alpha(rng), beta(rng)};
    const PwlLaw law = PwlLaw::from_min_pieces(pieces);
    for (int j = 0; j < 20; ++j) {
      const double y1 = y_dist(rng);
      const double y2 = y_dist(rng);
      const double mid = law.evaluate(0.5 * (y1 + y2));
      CHECK(mid >= 0.5 * (law.evaluate(y1) + law.evaluate(y2)) - 1e-9);
    }
  }
}

TEST_CASE("fit_concave: affine data is reproduced exactly") {
  std::vector<Sample> samples;
  for (double y = 0.0; y <= 10.0; y += 1.0) samples.push_back({y, 0.5 * y + 1.0});
  const FitResult fit = fit_concave(samples, 1);
  CHECK(fit.pieces_selected == 1);
  CHECK(fit.law.groups()[0][0].alpha == doctest::Approx(0.5));
  CHECK(fit.law.groups()[0][0].beta == doctest::Approx(1.0));
  CHECK(fit.sup_error_envelope == doctest::Approx(0.0));
  CHECK(fit.sup_error_samples == doctest::Approx(0.0));
}

TEST_CASE("fit_concave: two samples, one piece") {
  const FitResult fit = fit_concave({{0.0, 0.0}, {10.0, 5.0}}, 1);
  CHECK(fit.law.groups()[0][0].alpha == doctest::Approx(0.5));
  CHECK(fit.law.groups()[0][0].beta == doctest::Approx(0.0));
}

TEST_CASE("fit_concave: sigmoid samples") {
  const std::vector<Sample> samples = demo::sigmoid_samples(0.0, 60.0, 0.5);
  const FitResult fit = fit_concave(samples, 6);
  CHECK(fit.pieces_selected >= 1);
  CHECK(fit.pieces_selected <= 6);
  CHECK(fit.law.pure_min());
  CHECK(fit.sup_error_envelope <= 1.0);

  // majorant property: law >= sample everywhere
  for (const Sample& s : samples) {
    CHECK(fit.law.evaluate(s.y) >= s.v - 1e-9);
  }
  // concavity of the fitted law
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> y_dist(0.0, 60.0);
  for (int i = 0; i < 200; ++i) {
    const double y1 = y_dist(rng);
    const double y2 = y_dist(rng);
    CHECK(fit.law.evaluate(0.5 * (y1 + y2)) >=
          0.5 * (fit.law.evaluate(y1) + fit.law.evaluate(y2)) - 1e-9);
  }
}

TEST_CASE("fit_concave: error handling") {
  CHECK_THROWS_AS(fit_concave({{1.0, 2.0}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(fit_concave({{1.0, 2.0}, {1.0, 3.0}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(fit_concave({{0.0, 0.0}, {1.0, 1.0}}, 0), std::invalid_argument);
}

TEST_CASE("law_zero_crossing") {
  CHECK(law_zero_crossing(demo::min_plus_law(2.0, 1.0)) == doctest::Approx(1.0));
  CHECK(law_zero_crossing(PwlLaw::from_min_pieces({{0.5, 1.0}})) ==
        doctest::Approx(0.0));
  CHECK(std::isinf(law_zero_crossing(PwlLaw::from_min_pieces({{0.0, 0.0}}))));
}
