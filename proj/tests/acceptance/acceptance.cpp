// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "conespec/bessel.hpp"
#include "conespec/cone_modes.hpp"
#include "conespec/error.hpp"
#include "conespec/greens.hpp"
#include "conespec/rates.hpp"
#include "conespec/sphere_spectra.hpp"
#include "oracles.hpp"

using namespace conespec;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) detail << what;
    ok = ok && condition;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail << "exception: " << e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0 && seconds > time_limit) {
    out.require(false, "runtime limit exceeded");
  }
  std::printf("criterion %d %s %s (%.3f s)", id, out.ok ? "PASS" : "FAIL", title.c_str(), seconds);
  if (!out.ok) std::printf(": %s", out.detail.str().c_str());
  std::printf("\n");
  std::fflush(stdout);
  if (!out.ok) ++failures;
}

std::shared_ptr<const FiniteOrthogonalGroup> group(int m, const std::string& name,
                                                   std::map<std::string, std::vector<double>> params = {}) {
  return std::make_shared<const FiniteOrthogonalGroup>(build_group(GroupDescriptor::catalog(m, name, params)));
}

std::uint64_t round_multiplicity(int m, int r, int k) {
  return static_cast<std::uint64_t>(r) * (std::uint64_t{1} << ((m - 1) / 2)) * oracle::choose(k + m - 2, k);
}

// Coefficient of z^k in (1 - z)^{-3} + s (1 + z)^{-3}.
std::int64_t antipodal_series(int k, int s) {
  const auto c = static_cast<std::int64_t>(oracle::choose(k + 2, 2));
  return c + s * (k % 2 == 0 ? c : -c);
}

bool expect_code(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

int main() {
  criterion(1, "round-sphere Dirac multiplicities", 1.0, [](Outcome& out) {
    for (int m : {2, 3, 4, 7, 8}) {
      for (int r : {1, 2}) {
        const auto s = dirac_spectrum_round(m, r, 20);
        for (int k = 0; k <= 20; ++k) {
          const auto expected = round_multiplicity(m, r, k);
          out.require(s.plus.multiplicities[k] == expected && s.minus.multiplicities[k] == expected,
                      "mismatch at m=" + std::to_string(m) + " r=" + std::to_string(r) + " k=" + std::to_string(k));
        }
      }
    }
  });

  criterion(2, "generating function with trivial group", 5.0, [](Outcome& out) {
    for (int m : {2, 4, 6, 8}) {
      const auto lifts = enumerate_spin_structures(group(m, "trivial"));
      out.require(lifts.size() == 1, "trivial group should have one spin structure");
      QuotientDiagnostics diag;
      const auto s = dirac_spectrum_quotient(lifts.at(0), 1, 20, {}, &diag);
      for (int k = 0; k <= 20; ++k) {
        const auto expected = round_multiplicity(m, 1, k);
        out.require(s.plus.multiplicities[k] == expected && s.minus.multiplicities[k] == expected,
                    "mismatch at m=" + std::to_string(m) + " k=" + std::to_string(k));
      }
      out.require(diag.max_residue < 1e-9, "pre-rounding residue " + std::to_string(diag.max_residue));
    }
  });

  criterion(3, "antipodal quotient of S^3", 0, [](Outcome& out) {
    const auto lifts = enumerate_spin_structures(group(4, "antipodal"));
    out.require(lifts.size() == 2, "expected two spin structures");
    int matched_plus = 0, matched_minus = 0;
    for (const auto& lift : lifts) {
      const auto s = dirac_spectrum_quotient(lift, 1, 15);
      // One structure carries (1-z)^-3 + (1+z)^-3 on the positive side, the
      // other the difference; the negative side takes the opposite sign.
      for (int sign : {1, -1}) {
        bool plus_ok = true, minus_ok = true;
        for (int k = 0; k <= 15; ++k) {
          plus_ok = plus_ok && static_cast<std::int64_t>(s.plus.multiplicities[k]) == antipodal_series(k, sign);
          minus_ok = minus_ok && static_cast<std::int64_t>(s.minus.multiplicities[k]) == antipodal_series(k, -sign);
        }
        if (plus_ok && minus_ok) (sign > 0 ? matched_plus : matched_minus)++;
      }
      for (int k = 0; k <= 2; ++k) {
        const auto [sigma_plus, sigma_minus] = oracle::invariant_monogenic(lift, k);
        out.require(s.plus.multiplicities[k] == static_cast<std::uint64_t>(sigma_minus) &&
                        s.minus.multiplicities[k] == static_cast<std::uint64_t>(sigma_plus),
                    "brute-force count disagrees at k=" + std::to_string(k));
      }
    }
    out.require(matched_plus == 1 && matched_minus == 1, "series do not match (1-z)^-3 -/+ (1+z)^-3");
  });

  criterion(4, "spin-lift fidelity", 0, [](Outcome& out) {
    const std::shared_ptr<const FiniteOrthogonalGroup> groups[] = {
        group(4, "cyclic", {{"n", {8}}}), group(4, "quaternion"), group(4, "binary_tetrahedral")};
    for (const auto& g : groups) {
      double worst = 0.0;
      for (const auto& e : g->elements()) {
        worst = std::max(worst, (adjoint_matrix(spin_lift(e)) - e).cwiseAbs().maxCoeff());
      }
      out.require(worst < 1e-10, g->name() + ": Ad defect " + std::to_string(worst));
      const auto lifts = enumerate_spin_structures(g);
      out.require(!lifts.empty(), g->name() + ": no spin structures");
      for (const auto& lift : lifts) {
        const auto v = verify_lift_table(lift);
        out.require(v.ok && v.max_cover_defect < 1e-10, g->name() + ": lift table check failed");
      }
    }
  });

  criterion(5, "mode ODE closed forms", 30.0, [](Outcome& out) {
    std::mt19937 rng(20240515);
    std::uniform_int_distribution<int> dim(2, 8);
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    const auto grid = log_spaced(0.1, 10.0, 512);
    for (int t = 0; t < 50; ++t) {
      ModeBlock b{dim(rng), value(rng), value(rng), 0.0};
      if (t % 5 == 0) b.mu = 0.0;      // power regime
      if (t % 5 == 1) b.lambda = 0.0;  // exponential regime
      const auto report = verify_kernel_basis(b, grid);
      std::ostringstream id;
      id << "block (m=" << b.m << ", lambda=" << b.lambda << ", mu=" << b.mu << ")";
      out.require(report.max_residual < 1e-8, id.str() + " residual " + std::to_string(report.max_residual));
      out.require(report.max_integrator_deviation < 1e-7,
                  id.str() + " integrator deviation " + std::to_string(report.max_integrator_deviation));
    }
  });

  criterion(6, "modified Bessel accuracy", 0, [](Outcome& out) {
    const double pi = std::numbers::pi;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x = 0.01 + 0.3 * i;
      const double e = std::exp(-x);
      const auto half = modified_bessel_scaled(0.5, x);
      const auto neg = modified_bessel_scaled(-0.5, x);
      const auto three = modified_bessel_scaled(1.5, x);
      // Scaled closed forms avoid overflow of sinh/cosh.
      const double i_half = std::sqrt(2 / (pi * x)) * 0.5 * (1 - e * e);
      const double i_neg = std::sqrt(2 / (pi * x)) * 0.5 * (1 + e * e);
      const double k_half = std::sqrt(pi / (2 * x));
      const double i_three = std::sqrt(2 / (pi * x)) * 0.5 * ((1 + e * e) - (1 - e * e) / x);
      const double k_three = std::sqrt(pi / (2 * x)) * (1 + 1 / x);
      for (auto [got, want] : {std::pair{half.i, i_half}, {neg.i, i_neg}, {half.k, k_half}, {three.i, i_three},
                               {three.k, k_three}}) {
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
      }
    }
    out.require(worst < 1e-10, "closed-form deviation " + std::to_string(worst));
    double wronskian = 0.0;
    for (int a = 0; a <= 100; ++a) {
      const double nu = 0.1 * a;
      for (int b = 0; b <= 100; ++b) {
        const double x = 0.1 * std::pow(300.0, b / 100.0);
        const auto lo = modified_bessel_scaled(nu, x), hi = modified_bessel_scaled(nu + 1, x);
        wronskian = std::max(wronskian, std::abs(x * (lo.i * hi.k + hi.i * lo.k) - 1.0));
      }
    }
    out.require(wronskian < 1e-9, "Wronskian defect " + std::to_string(wronskian));
  });

  criterion(7, "right-inverse identity", 0, [](Outcome& out) {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> dim(2, 8);
    std::uniform_real_distribution<double> value(-3.0, 3.0), centre(1.0, 5.0), width(0.15, 0.6), amp(-1.0, 1.0);
    int per_regime[3] = {0, 0, 0};
    for (int t = 0; t < 20; ++t) {
      ModeBlock b{dim(rng), value(rng), value(rng), 0.0};
      if (t % 3 == 0) b.mu = 0.0;
      if (t % 3 == 1) b.lambda = 0.0;
      ++per_regime[static_cast<int>(classify(b))];
      const auto g = SampledFunctionPair::gaussian(centre(rng), width(rng), amp(rng), amp(rng));
      const auto report = verify_right_inverse(b, g, 64);
      std::ostringstream id;
      id << "block (m=" << b.m << ", lambda=" << b.lambda << ", mu=" << b.mu << ")";
      out.require(report.max_residual < 1e-6, id.str() + " residual " + std::to_string(report.max_residual));
      out.require(report.boundary_coefficient < 1e-8, id.str() + " h2 " + std::to_string(report.boundary_coefficient));
    }
    out.require(per_regime[0] > 0 && per_regime[1] > 0 && per_regime[2] > 0, "not every regime was exercised");
  });

  criterion(8, "critical rates against polynomial oracles", 0, [](Outcome& out) {
    const int k_max = 20;
    const auto dirac = critical_rates(dirac_eigenvalues(dirac_spectrum_round(4, 1, k_max)), 4, 0.0);
    const auto trivial = enumerate_spin_structures(group(4, "trivial")).at(0);
    out.require(dirac.size() == 2 * (k_max + 1), "unexpected Dirac rate count");
    for (const auto& r : dirac.rates()) {
      const bool homogeneous = r.beta >= 0 && r.beta == std::floor(r.beta);
      const bool decaying = r.beta <= -3 && r.beta == std::floor(r.beta);
      out.require(homogeneous || decaying, "unexpected Dirac rate " + std::to_string(r.beta));
    }
    for (int k = 0; k <= 3; ++k) {
      const auto [sigma_plus, sigma_minus] = oracle::invariant_monogenic(trivial, k);
      const auto up = dirac.find(k, 1e-12), down = dirac.find(-3 - k, 1e-12);
      out.require(up && dirac.rates()[*up].d == static_cast<std::uint64_t>(sigma_minus),
                  "rate " + std::to_string(k) + " has the wrong multiplicity");
      out.require(down && dirac.rates()[*down].d == static_cast<std::uint64_t>(sigma_plus),
                  "rate " + std::to_string(-3 - k) + " has the wrong multiplicity");
    }
    const auto laplace = laplace_critical_rates(4, 0, LaplaceSpectrumProvider::tabulated(4, 0), k_max);
    out.require(laplace.size() == 2 * (k_max + 1), "unexpected Laplace rate count");
    for (int k = 0; k <= k_max; ++k) {
      const auto up = laplace.find(k, 1e-12), down = laplace.find(-2 - k, 1e-12);
      const auto h = k <= 8 ? static_cast<std::uint64_t>(oracle::harmonic_count(4, k)) : harmonic_dimension(4, k);
      out.require(up && laplace.rates()[*up].d == h, "Laplace rate " + std::to_string(k) + " mismatch");
      out.require(down && laplace.rates()[*down].d == h, "Laplace rate " + std::to_string(-2 - k) + " mismatch");
    }
  });

  criterion(9, "wall-crossing telescoping and collisions", 0, [](Outcome& out) {
    const auto rates = critical_rates(dirac_eigenvalues(dirac_spectrum_round(4, 1, 20)), 4, 0.0);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    int triples = 0;
    while (triples < 1000) {
      double b[3] = {u(rng), u(rng), u(rng)};
      std::sort(b, b + 3);
      if (b[0] == b[1] || b[1] == b[2]) continue;
      bool off_rate = true;
      for (double x : b) off_rate = off_rate && !rates.find(x, 1e-9);
      if (!off_rate) continue;
      ++triples;
      const auto whole = wall_crossing_jump(rates, b[0], b[2]);
      const auto split = wall_crossing_jump(rates, b[0], b[1]) + wall_crossing_jump(rates, b[1], b[2]);
      out.require(whole == split, "telescoping failed");
    }
    for (const auto& r : rates.rates()) {
      out.require(expect_code(ErrorCode::kRateCollision, [&] { wall_crossing_jump(rates, r.beta, r.beta + 0.5); }),
                  "left endpoint on a rate accepted");
      out.require(
          expect_code(ErrorCode::kRateCollision, [&] { wall_crossing_jump(rates, r.beta - 0.5, r.beta + 5e-10); }),
          "right endpoint near a rate accepted");
    }
  });

  criterion(10, "gluing ledger exactness", 0, [](Outcome& out) {
    std::mt19937_64 rng(1010);
    std::uniform_int_distribution<std::int64_t> dim(0, 1000), index(-1000, 1000);
    int exact = 0;
    for (int t = 0; t < 10000; ++t) {
      std::array<std::int64_t, 4> d{dim(rng), dim(rng), dim(rng), dim(rng)};
      if (t % 2 == 0) {
        // Force half the tuples onto the exact locus when it is reachable.
        const std::int64_t coker = d[0] - d[1] + d[2];
        if (coker >= 0) d[3] = coker;
      }
      const std::int64_t cfs = index(rng), acf = index(rng);
      const auto result = gluing_index_ledger({cfs, acf, d});
      const bool direct = d[0] - d[1] + d[2] - d[3] == 0;
      exact += direct;
      out.require(result.exactness_ok == direct, "exactness flag disagrees");
      out.require(result.alternating_sum == d[0] - d[1] + d[2] - d[3], "alternating sum disagrees");
      out.require(result.total == cfs + acf, "total disagrees");
    }
    out.require(exact > 1000, "too few exact tuples sampled");
  });

  return failures == 0 ? 0 : 1;
}
