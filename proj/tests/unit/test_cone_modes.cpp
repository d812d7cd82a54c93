#include <doctest.h>

#include <cmath>
#include <random>

#include "conespec/cone_modes.hpp"
#include "conespec/error.hpp"

using namespace conespec;

namespace {

using Kind = ModeSolution::Kind;

double max_residual(const ModeBlock& b, const ModeSolution& s, const std::vector<double>& grid) {
  double worst = 0.0;
  for (double r : grid) worst = std::max(worst, relative_residual(b, r, s.evaluate(r), s.derivative(r)));
  return worst;
}

}  // namespace

TEST_CASE("regime classification") {
  CHECK(classify({4, 1.5, 0.0, 0.0}) == Regime::kPower);
  CHECK(classify({4, 0.0, 0.0, 0.0}) == Regime::kPower);
  CHECK(classify({4, 0.0, 2.0, 0.0}) == Regime::kExponential);
  CHECK(classify({4, 0.5, -2.0, 0.0}) == Regime::kBessel);
  CHECK(std::string(to_string(Regime::kBessel)) == "general");
}

TEST_CASE("block validation") {
  CHECK_THROWS_AS(ModeBlock({1, 0, 0, 0}).validate(), Error);
  CHECK_THROWS_AS(ModeBlock({4, NAN, 0, 0}).validate(), Error);
  CHECK_THROWS_AS(mode_operator({4, 1, 1, 0}, 0.0), Error);
  CHECK_THROWS_AS(ModeSolution({4, 1, 1, 0}, Kind::kPowerPlus), Error);
}

TEST_CASE("operator data") {
  const auto op = mode_operator({4, 2.0, 3.0, 0.0}, 0.5);
  CHECK(op.radial_coefficient == 3.0);
  CHECK(op.potential(0, 0) == 4.0);
  CHECK(op.potential(1, 1) == -4.0);
  CHECK(op.potential(0, 1) == 3.0);
  CHECK(op.potential(1, 0) == 3.0);
}

TEST_CASE("eigencurves") {
  const auto flat = mode_eigencurve(0.0, 2.0, {0.5, 1.0, 7.0});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(flat.plus[i] == doctest::Approx(2.0));
    CHECK(flat.minus[i] == doctest::Approx(-2.0));
  }
  const auto c = mode_eigencurve(3.0, 4.0, {1.0});
  CHECK(c.plus[0] == doctest::Approx(5.0));
  CHECK_THROWS_AS(mode_eigencurve(1, 1, {}), Error);
  CHECK_THROWS_AS(mode_eigencurve(1, 1, {-1.0}), Error);
}

TEST_CASE("power solutions are exact monomials") {
  const ModeBlock b{5, 1.25, 0.0, 0.0};
  const auto basis = kernel_basis(b);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].kind() == Kind::kPowerPlus);
  CHECK(basis[1].kind() == Kind::kPowerMinus);
  const double r = 2.5;
  CHECK(basis[0].evaluate(r)[0] == doctest::Approx(std::pow(r, -2.0 - 1.25)));
  CHECK(basis[0].evaluate(r)[1] == 0.0);
  CHECK(basis[1].evaluate(r)[1] == doctest::Approx(std::pow(r, -2.0 + 1.25)));
  CHECK(basis[0].exponent_at_zero() == doctest::Approx(-3.25));
  CHECK(basis[1].exponent_at_zero() == doctest::Approx(-0.75));
  CHECK(max_residual(b, basis[0], log_spaced(0.1, 10, 50)) < 1e-12);
  CHECK(max_residual(b, basis[1], log_spaced(0.1, 10, 50)) < 1e-12);
}

TEST_CASE("exponential solutions") {
  const ModeBlock b{4, 0.0, -1.5, 0.0};
  const auto basis = kernel_basis(b);
  REQUIRE(basis.size() == 2);
  const ModeSolution decay(b, Kind::kExponentialDecay);
  CHECK(decay.behaviour_at_infinity() == Asymptotic::kDecay);
  const double r = 2.0;
  const auto f = decay.evaluate(r);
  CHECK(f[0] == doctest::Approx(std::pow(r, -1.5) * std::exp(-1.5 * r)));
  CHECK(f[1] == doctest::Approx(-f[0]));
  CHECK(ModeSolution(b, Kind::kExponentialGrowth).behaviour_at_infinity() == Asymptotic::kGrowth);
  for (const auto& s : basis) CHECK(max_residual(b, s, log_spaced(0.1, 10, 50)) < 1e-12);
}

TEST_CASE("bessel solutions and asymptotics") {
  for (double lambda : {-2.3, -0.3, 0.0, 0.3, 1.0, 4.0}) {
    for (double mu : {-1.2, 0.7}) {
      const ModeBlock b{4, lambda, mu, 0.0};
      if (classify(b) != Regime::kBessel) continue;
      const ModeSolution i_sol(b, Kind::kBesselI), k_sol(b, Kind::kBesselK);
      CAPTURE(lambda);
      CAPTURE(mu);
      CHECK(max_residual(b, i_sol, log_spaced(0.1, 10, 40)) < 1e-10);
      CHECK(max_residual(b, k_sol, log_spaced(0.1, 10, 40)) < 1e-10);
      CHECK(i_sol.behaviour_at_infinity() == Asymptotic::kGrowth);
      CHECK(k_sol.behaviour_at_infinity() == Asymptotic::kDecay);
      // Observed small-r slope of log |f| matches the reported exponent.
      for (const auto* s : {&i_sol, &k_sol}) {
        auto norm = [&](double r) { const auto v = s->evaluate(r); return std::hypot(v[0], v[1]); };
        const double r1 = 1e-4, r2 = 2e-4;
        const double slope = std::log(norm(r2) / norm(r1)) / std::log(2.0);
        CHECK(slope == doctest::Approx(s->exponent_at_zero()).epsilon(1e-2));
      }
    }
  }
}

TEST_CASE("bessel orders") {
  const auto orders = ModeSolution::bessel_orders(2.0);
  CHECK(std::abs(orders[0]) == doctest::Approx(2.5));
  CHECK(std::abs(orders[1]) == doctest::Approx(1.5));
  const auto small = ModeSolution::bessel_orders(0.2);
  CHECK(std::abs(small[0]) + std::abs(small[1]) == doctest::Approx(1.0));
}

TEST_CASE("finite differences are accurate on smooth input") {
  const auto d = finite_difference_derivative([](double r) { return Vec2{std::sin(r), std::exp(r)}; }, 1.3);
  CHECK(d[0] == doctest::Approx(std::cos(1.3)).epsilon(1e-10));
  CHECK(d[1] == doctest::Approx(std::exp(1.3)).epsilon(1e-10));
}

TEST_CASE("kernel verification over random blocks") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> lam(-4.0, 4.0), mu(-3.0, 3.0);
  std::uniform_int_distribution<int> dim(2, 8);
  const auto grid = log_spaced(0.1, 10, 128);
  for (int t = 0; t < 12; ++t) {
    const ModeBlock b{dim(rng), lam(rng), t % 4 == 0 ? 0.0 : mu(rng), 0.0};
    CAPTURE(b.m);
    CAPTURE(b.lambda);
    CAPTURE(b.mu);
    const auto report = verify_kernel_basis(b, grid);
    CHECK(report.points == grid.size());
    CHECK(report.max_residual < 1e-8);
    CHECK(report.max_integrator_deviation < 1e-7);
  }
}

TEST_CASE("regime limits") {
  // A vanishing mu reproduces the power-law decay rate near r = 1.
  const ModeBlock b{4, 1.3, 1e-6, 0.0};
  const ModeSolution k_sol(b, Kind::kBesselK);
  const ModeSolution power(ModeBlock{4, 1.3, 0.0, 0.0}, Kind::kPowerPlus);
  const double h = 1e-3;
  auto log_slope = [&](const ModeSolution& s) {
    return (std::log(std::abs(s.evaluate(1 + h)[0])) - std::log(std::abs(s.evaluate(1 - h)[0]))) /
           (std::log(1 + h) - std::log(1 - h));
  };
  CHECK(log_slope(k_sol) == doctest::Approx(log_slope(power)).epsilon(1e-6));
  CHECK(log_slope(power) == doctest::Approx(-1.5 - 1.3).epsilon(1e-8));
}

TEST_CASE("grids") {
  const auto g = log_spaced(0.1, 10, 3);
  CHECK(g[1] == doctest::Approx(1.0));
  CHECK(linear_spaced(0, 1, 5)[2] == doctest::Approx(0.5));
  CHECK_THROWS_AS(log_spaced(0, 1, 4), Error);
  CHECK_THROWS_AS(linear_spaced(1, 1, 4), Error);
  CHECK_THROWS_AS(verify_kernel_basis({4, 1, 1, 0}, {1e-3}), Error);
}
