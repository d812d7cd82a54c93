#include <doctest.h>

#include <cmath>
#include <random>

#include "conespec/error.hpp"
#include "conespec/greens.hpp"

using namespace conespec;

namespace {

// Compactly supported f = (A, B) * bump on [lo, hi] together with g = D f in
// closed form. Since f vanishes near both ends, R (D f) = f exactly.
struct Manufactured {
  ModeBlock block;
  double lo, hi, amp_plus, amp_minus;

  double t(double r) const { return (2 * r - lo - hi) / (hi - lo); }
  double bump(double r) const {
    const double s = t(r);
    return std::abs(s) >= 1 ? 0.0 : std::exp(1 - 1 / (1 - s * s));
  }
  double bump_prime(double r) const {
    const double s = t(r);
    if (std::abs(s) >= 1) return 0.0;
    return bump(r) * (-2 * s / ((1 - s * s) * (1 - s * s))) * 2 / (hi - lo);
  }
  Vec2 f(double r) const { return {amp_plus * bump(r), amp_minus * bump(r)}; }
  Vec2 g(double r) const {
    const Vec2 v = f(r);
    const double b = bump_prime(r);
    return apply_mode_operator(block, r, v, {amp_plus * b, amp_minus * b});
  }
  SampledFunctionPair input() const {
    SampledFunctionPair p;
    p.a = lo;
    p.b = hi;
    p.plus = [*this](double r) { return g(r)[0]; };
    p.minus = [*this](double r) { return g(r)[1]; };
    return p;
  }
};

double max_error(const RightInverseResult& out, const Manufactured& mf) {
  double worst = 0.0;
  for (std::size_t i = 0; i < out.r.size(); ++i) {
    const Vec2 e = mf.f(out.r[i]);
    worst = std::max({worst, std::abs(out.f_plus[i] - e[0]), std::abs(out.f_minus[i] - e[1])});
  }
  return worst;
}

}  // namespace

TEST_CASE("right inverse recovers manufactured solutions in every regime") {
  const ModeBlock blocks[] = {
      {4, 1.3, 0.0, 0.0}, {3, -0.7, 0.0, 0.0}, {4, 0.0, 1.1, 0.0}, {6, 0.0, -2.0, 0.0},
      {4, 0.8, 1.5, 0.0}, {5, -2.2, -0.9, 0.0}, {2, 0.2, 3.0, 0.0}, {8, 4.0, 4.0, 0.0},
  };
  for (const auto& b : blocks) {
    CAPTURE(b.m);
    CAPTURE(b.lambda);
    CAPTURE(b.mu);
    const Manufactured mf{b, 1.0, 3.0, 0.7, -1.2};
    const auto out = apply_right_inverse(b, mf.input(), linear_spaced(0.5, 4.0, 36));
    CHECK(max_error(out, mf) < 1e-7);
  }
}

TEST_CASE("operator applied to the output reproduces the input") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> lam(-3, 3), mu(-3, 3), centre(1.5, 4.0), width(0.2, 0.6);
  for (int t = 0; t < 9; ++t) {
    ModeBlock b{2 + t % 6, lam(rng), mu(rng), 0.0};
    if (t % 3 == 0) b.mu = 0.0;
    if (t % 3 == 1) b.lambda = 0.0;
    const auto g = SampledFunctionPair::gaussian(centre(rng), width(rng), 1.0, -0.5);
    const auto report = verify_right_inverse(b, g, 32);
    CAPTURE(b.lambda);
    CAPTURE(b.mu);
    CHECK(report.max_residual < 1e-6);
    CHECK(report.boundary_coefficient < 1e-8);
    CHECK(report.calibration == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(report.points == 32);
  }
}

TEST_CASE("linearity") {
  const ModeBlock b{4, 0.6, -1.4, 0.0};
  const auto x = SampledFunctionPair::gaussian(2.0, 0.3, 1.0, 0.2);
  const auto y = SampledFunctionPair::smooth_bump(1.0, 4.0, -0.3, 0.8);
  const auto grid = linear_spaced(0.5, 5.0, 20);
  const auto rx = apply_right_inverse(b, x, grid), ry = apply_right_inverse(b, y, grid);
  const auto rc = apply_right_inverse(b, SampledFunctionPair::combine(2.0, x, -3.0, y), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(rc.f_plus[i] == doctest::Approx(2 * rx.f_plus[i] - 3 * ry.f_plus[i]).epsilon(1e-7).scale(1));
    CHECK(rc.f_minus[i] == doctest::Approx(2 * rx.f_minus[i] - 3 * ry.f_minus[i]).epsilon(1e-7).scale(1));
  }
  const auto zero = apply_right_inverse(b, SampledFunctionPair::zero(1, 2), grid);
  for (double v : zero.f_plus) CHECK(v == 0.0);
}

TEST_CASE("power regime support") {
  // f_+ integrates from zero and f_- from infinity, so each vanishes on one side.
  const ModeBlock b{4, 0.5, 0.0, 0.0};
  const auto g = SampledFunctionPair::smooth_bump(2.0, 3.0, 1.0, 1.0);
  const auto out = apply_right_inverse(b, g, {1.0, 1.9, 3.1, 6.0});
  CHECK(out.f_plus[0] == 0.0);
  CHECK(out.f_plus[1] == 0.0);
  CHECK(out.f_minus[2] == 0.0);
  CHECK(out.f_minus[3] == 0.0);
  CHECK(out.f_plus[3] > 0.0);
  CHECK(out.f_minus[0] < 0.0);
  // beyond the support f_+ is a multiple of r^{-p}
  CHECK(out.f_plus[3] / out.f_plus[2] == doctest::Approx(std::pow(6.0 / 3.1, -2.0)));
}

TEST_CASE("spline input") {
  std::vector<double> r, gp, gm;
  const auto ref = SampledFunctionPair::smooth_bump(1.0, 3.0, 1.0, -1.0);
  for (int i = 0; i <= 400; ++i) {
    const double x = 1.0 + 2.0 * i / 400;
    r.push_back(x);
    gp.push_back(ref(x)[0]);
    gm.push_back(ref(x)[1]);
  }
  const auto spline = SampledFunctionPair::from_samples(r, gp, gm);
  CHECK(spline.smoothness == "cubic-spline");
  const ModeBlock b{4, 1.0, 1.0, 0.0};
  const auto grid = linear_spaced(0.8, 3.5, 12);
  const auto a = apply_right_inverse(b, ref, grid), c = apply_right_inverse(b, spline, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(a.f_plus[i] - c.f_plus[i]) < 1e-6);

  CHECK_THROWS_AS(SampledFunctionPair::from_samples({1, 2}, {0, 0}, {0, 0}), Error);
  CHECK_THROWS_AS(SampledFunctionPair::from_samples({1, 2, 3}, {0, 0}, {0, 0, 0}), Error);
  CHECK_THROWS_AS(SampledFunctionPair::from_samples({1, 3, 2}, {0, 0, 0}, {0, 0, 0}), Error);
}

TEST_CASE("cubic spline interpolates") {
  const CubicSpline s({0, 1, 2, 3}, {0, 1, 8, 27});
  CHECK(s(2.0) == doctest::Approx(8.0));
  CHECK(s(0.0) == doctest::Approx(0.0));
}

TEST_CASE("sum over blocks") {
  const ModeBlock b1{4, 1.0, 0.0, 0.0}, b2{4, 0.0, 1.0, 0.0};
  const auto g = SampledFunctionPair::gaussian(2.0, 0.3, 1.0, 1.0);
  const std::vector<double> grid{1.5, 2.0, 2.5};
  const auto sum = apply_right_inverse_sum({{b1, g}, {b2, g}}, grid);
  const auto x = apply_right_inverse(b1, g, grid), y = apply_right_inverse(b2, g, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(sum.f_plus[i] == doctest::Approx(x.f_plus[i] + y.f_plus[i]));
}

TEST_CASE("argument checks") {
  const ModeBlock b{4, 1.0, 1.0, 0.0};
  const auto g = SampledFunctionPair::gaussian(2.0, 0.3, 1.0, 1.0);
  CHECK_THROWS_AS(apply_right_inverse(b, g, {1e-7}), Error);
  CHECK_THROWS_AS(SampledFunctionPair::gaussian(2.0, 0.0, 1, 1), Error);
  CHECK_THROWS_AS(SampledFunctionPair::zero(2.0, 1.0), Error);
  CHECK_THROWS_AS(verify_right_inverse(b, g, 0), Error);
  CHECK(SampledFunctionPair::gaussian(1.0, 0.5, 1, 1).a == 0.2);
}
