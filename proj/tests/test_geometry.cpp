#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fblab/geometry.hpp"

using namespace fblab;

TEST_CASE("from_box snaps extents outward and keeps 0 on a node") {
  const Grid2 g = Grid2::from_box(-4.0, 4.0, -2.0, 6.0, 0.1);
  CHECK(g.nx() == 81);
  CHECK(g.ny() == 81);
  CHECK(g.xmin() == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(g.h() == doctest::Approx(0.1).epsilon(1e-14));
  // the box straddles both axes, so the origin must be a node
  int i, j;
  g.nearest({0.0, 0.0}, i, j);
  const Point2 p = g.node(i, j);
  CHECK(std::abs(p.x1) < 1e-12);
  CHECK(std::abs(p.x2) < 1e-12);

  // extents that are not multiples of h grow, never shrink
  const Grid2 s = Grid2::from_box(-0.55, 1.02, 0.0, 0.77, 0.25);
  CHECK(s.xmin() <= -0.55 + 1e-12);
  CHECK(s.xmax() >= 1.02 - 1e-12);
  CHECK(s.ymax() >= 0.77 - 1e-12);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid2(0.0, 1.0, 0.0, 2.0, 3, 3), std::invalid_argument);  // hx != hy
  CHECK_THROWS_AS(Grid2(1.0, 0.0, 0.0, 1.0, 3, 3), std::invalid_argument);  // empty box
  CHECK_THROWS_AS(Grid2(0.0, 1.0, 0.0, 1.0, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(Grid2::from_box(0.0, 1.0, 0.0, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("paraboloid membership") {
  const Paraboloid pb{1.0, 0.0};
  CHECK(paraboloid_contains(pb, {0.0, 0.0}));
  CHECK(paraboloid_contains(pb, {1.0, 1.0}));   // boundary point
  CHECK(!paraboloid_contains(pb, {1.0, 0.99}));
  CHECK(!paraboloid_contains(pb, {0.0, -1e-12}));
  const Paraboloid shifted{4.0, 1.0};          // |y1 + 1| <= 2 sqrt(y2)
  CHECK(paraboloid_contains(shifted, {-1.0, 0.0}));
  CHECK(paraboloid_contains(shifted, {1.0, 1.0}));
  CHECK(!paraboloid_contains(shifted, {1.1, 1.0}));
  CHECK_THROWS_AS(paraboloid_contains(Paraboloid{-1.0, 0.0}, {0.0, 0.0}), std::domain_error);
}

TEST_CASE("halfspace polynomial") {
  CHECK(halfspace_poly({2.0, 5.0}) == doctest::Approx(2.0));
  CHECK(halfspace_poly({-3.0, 1.0}) == 0.0);
  CHECK(halfspace_poly({0.0, 0.0}) == 0.0);
}

TEST_CASE("bilinear interpolation reproduces affine fields exactly") {
  const Grid2 g(0.0, 1.0, 0.0, 1.0, 11, 11);
  ScalarField f(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const Point2 p = g.node(i, j);
      f.at(i, j) = 3.0 * p.x1 - 2.0 * p.x2 + 0.5;
    }
  for (const Point2 q : {Point2{0.37, 0.84}, Point2{0.0, 0.0}, Point2{1.0, 1.0}}) {
    CHECK(bilinear_sample(f, q) == doctest::Approx(3.0 * q.x1 - 2.0 * q.x2 + 0.5).epsilon(1e-13));
    const Vec2 gr = bilinear_gradient(f, q);
    CHECK(gr.d1 == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(gr.d2 == doctest::Approx(-2.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(bilinear_sample(f, {1.5, 0.5}), std::domain_error);
}

TEST_CASE("circle rule: weights, offset, trigonometric exactness") {
  const CircleRule rule = circle_rule(2.0, 256);
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0 * std::numbers::pi * 2.0).epsilon(1e-13));
  for (const Point2& p : rule.nodes) {       // half-offset: never on the axes
    CHECK(std::abs(p.x1) > 1e-6);
    CHECK(std::abs(p.x2) > 1e-6);
  }
  // integral of cos^2 over the circle of radius r is pi*r
  double c2 = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    c2 += rule.weights[k] * std::cos(rule.angles[k]) * std::cos(rule.angles[k]);
  CHECK(c2 == doctest::Approx(std::numbers::pi * 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(circle_rule(0.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(circle_rule(1.0, 3), std::invalid_argument);
}

TEST_CASE("gauss rules integrate polynomials of degree 2n-1") {
  const auto& x = gauss_nodes(5);
  const auto& w = gauss_weights(5);
  double p9 = 0.0, p8 = 0.0;
  for (int k = 0; k < 5; ++k) {
    p9 += w[k] * std::pow(x[k], 9);
    p8 += w[k] * std::pow(x[k], 8);
  }
  CHECK(std::abs(p9) < 1e-14);                       // odd
  CHECK(p8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
  CHECK_THROWS_AS(gauss_nodes(0), std::invalid_argument);
}

TEST_CASE("field sampler gradient fallbacks") {
  const FieldSampler s([](Point2 p) { return p.x1 * p.x1 + 3.0 * p.x2; });
  CHECK_THROWS_AS(s.gradient({1.0, 1.0}), std::logic_error);
  const Vec2 g = s.gradient_or_fd({2.0, 1.0}, 1e-5);
  CHECK(g.d1 == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(g.d2 == doctest::Approx(3.0).epsilon(1e-8));

  const FieldSampler sa([](Point2 p) { return p.x1 * p.x2; },
                        [](Point2 p) { return Vec2{p.x2, p.x1}; });
  const Vec2 ga = sa.gradient_or_fd({5.0, 7.0}, 1e-5);  // analytic path: exact
  CHECK(ga.d1 == 7.0);
  CHECK(ga.d2 == 5.0);
}

TEST_CASE("bilinear sampler copies the field") {
  const Grid2 g(0.0, 1.0, 0.0, 1.0, 5, 5);
  FieldSampler s;
  {
    ScalarField f(g, 2.5);
    s = bilinear_sampler(f);
    f.at(2, 2) = -100.0;  // must not affect the sampler
  }
  CHECK(s({0.5, 0.5}) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(s.has_gradient());
}
