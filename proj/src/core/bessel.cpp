#include "conespec/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "conespec/error.hpp"

namespace conespec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
constexpr int kMaxIterations = 100000;
constexpr double kTemmeSwitch = 2.0;

// Coefficients of 1/Gamma(z) = sum c_k z^k (Abramowitz & Stegun 6.1.34),
// starting at c_2 = Euler's constant.
constexpr double kRecipGamma[] = {
    0.5772156649015329,  -0.6558780715202538, -0.0420026350340952, 0.1665386113822915,
    -0.0421977345555443, -0.0096219715278770, 0.0072189432466630,  -0.0011651675918591,
    -0.0002152416741149, 0.0001280502823882,  -0.0000201348547807, -0.0000012504934821,
    0.0000011330272320,  -0.0000002056338417};

struct TemmeGammas {
  double gam1;   // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
  double gam2;   // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
  double gampl;  // 1/Gamma(1+mu)
  double gammi;  // 1/Gamma(1-mu)
};

TemmeGammas temme_gammas(double mu) {
  TemmeGammas t{};
  t.gampl = 1.0 / std::tgamma(1.0 + mu);
  t.gammi = 1.0 / std::tgamma(1.0 - mu);
  t.gam2 = 0.5 * (t.gammi + t.gampl);
  if (std::abs(mu) >= 0.1) {
    t.gam1 = (t.gammi - t.gampl) / (2.0 * mu);
  } else {
    // 1/Gamma(1+mu) = sum_j c_{j+1} mu^j; gam1 collects the odd part with sign flipped
    const double mu2 = mu * mu;
    double power = 1.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < std::size(kRecipGamma); j += 2) {
      sum += kRecipGamma[j] * power;
      power *= mu2;
    }
    t.gam1 = -sum;
  }
  return t;
}

// NR-style evaluation for nu >= 0, x > 0, returning scaled values.
ScaledBessel bessel_nonnegative(double nu, double x) {
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  const double mu2 = mu * mu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;

  // CF1: f = I_nu' / I_nu
  double h = nu * xi;
  if (h < kTiny) h = kTiny;
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  int iter = 1;
  for (; iter <= kMaxIterations; ++iter) {
    b += xi2;
    d = 1.0 / (b + d);
    c = b + 1.0 / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  if (iter > kMaxIterations) fail(ErrorCode::kConvergence, "Bessel CF1 did not converge");

  // downward recurrence to order mu, unnormalised
  double ril = kTiny;
  double ripl = h * ril;
  const double ril1 = ril;
  const double rip1 = ripl;
  double fact = nu * xi;
  for (int l = nl - 1; l >= 0; --l) {
    const double ritemp = fact * ril + ripl;
    fact -= xi;
    ripl = fact * ritemp + ril;
    ril = ritemp;
  }
  const double f = ripl / ril;

  double rkmu = 0.0;  // e^x K_mu
  double rk1 = 0.0;   // e^x K_{mu+1}
  if (x < kTemmeSwitch) {
    const double x2 = 0.5 * x;
    const double pimu = std::numbers::pi * mu;
    const double fct = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    d = -std::log(x2);
    double e = mu * d;
    const double fct2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fct * (g.gam1 * std::cosh(e) + g.gam2 * fct2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIterations; ++i) {
      ff = (i * ff + p + q) / (i * i - mu2);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      const double del1 = c * (p - i * ff);
      sum1 += del1;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i > kMaxIterations) fail(ErrorCode::kConvergence, "Temme series did not converge");
    const double scale = std::exp(x);
    rkmu = sum * scale;
    rk1 = sum1 * xi2 * scale;
  } else {
    // Steed's CF2 with Thompson-Barnett summation
    b = 2.0 * (1.0 + x);
    d = 1.0 / b;
    double delh = d;
    h = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1;
    c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIterations; ++i) {
      a -= 2 * (i - 1);
      c = -a * c / i;
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < kEps) break;
    }
    if (i > kMaxIterations) fail(ErrorCode::kConvergence, "Bessel CF2 did not converge");
    h = a1 * h;
    rkmu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    rk1 = rkmu * (mu + x + 0.5 - h) * xi;
  }

  const double rkmup = mu * xi * rkmu - rk1;
  const double rimu = xi / (f * rkmu - rkmup);  // Wronskian; carries e^{-x}
  ScaledBessel out{};
  out.i = (rimu * ril1) / ril;
  out.ip = (rimu * rip1) / ril;
  for (int i = 1; i <= nl; ++i) {
    const double rktemp = (mu + i) * xi2 * rk1 + rkmu;
    rkmu = rk1;
    rk1 = rktemp;
  }
  out.k = rkmu;
  out.kp = nu * xi * rkmu - rk1;
  return out;
}

}  // namespace

ScaledBessel modified_bessel_scaled(double nu, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorCode::kDomain, "Bessel argument must be positive and finite");
  if (!std::isfinite(nu)) fail(ErrorCode::kDomain, "Bessel order must be finite");
  if (nu >= 0.0) return bessel_nonnegative(nu, x);

  const double order = -nu;
  ScaledBessel pos = bessel_nonnegative(order, x);
  const double frac = order - std::floor(order);
  if (frac == 0.0) return pos;  // integer order: I_{-n} = I_n
  // I_{-v} = I_v + (2/pi) sin(v pi) K_v, with the scalings e^{-x} and e^{x}
  const double weight = 2.0 / std::numbers::pi * std::sin(order * std::numbers::pi) * std::exp(-2.0 * x);
  pos.i += weight * pos.k;
  pos.ip += weight * pos.kp;
  return pos;
}

BesselValues modified_bessel(double nu, double x) {
  if (!(nu >= 0.0 && nu <= 50.0)) {
    fail(ErrorCode::kDomain, "Bessel order " + std::to_string(nu) + " outside [0, 50]");
  }
  if (!(x >= 1e-3 && x <= 50.0)) {
    fail(ErrorCode::kDomain, "Bessel argument " + std::to_string(x) + " outside [1e-3, 50]");
  }
  const ScaledBessel s = modified_bessel_scaled(nu, x);
  return {s.i * std::exp(x), s.k * std::exp(-x)};
}

}  // namespace conespec
