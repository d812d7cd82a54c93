#include "conespec/sphere_spectra.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "conespec/error.hpp"

namespace conespec {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // c * (n - k + i) / i == C(n - k + i, i), exact at every step
    c = c * (n - k + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      fail(ErrorCode::kOverflow, "C(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorCode::kOverflow, "multiplicity exceeds 64 bits");
  return out;
}

void check_series_args(int rank, int k_max) {
  if (rank < 1) fail(ErrorCode::kInvalidArgument, "twisting rank must be >= 1");
  if (k_max < 0) fail(ErrorCode::kInvalidArgument, "k_max must be >= 0");
}

}  // namespace

SpectrumPair dirac_spectrum_round(int m, int rank, int k_max) {
  if (m < 2) fail(ErrorCode::kInvalidArgument, "round-sphere spectrum needs m >= 2");
  check_series_args(rank, k_max);
  SpectrumPair out;
  out.plus = {m, Chirality::kPlus, rank, -1, {}};
  out.minus = {m, Chirality::kMinus, rank, -1, {}};
  const std::uint64_t spinor_rank = std::uint64_t{1} << ((m - 1) / 2);
  const std::uint64_t prefactor = checked_mul(static_cast<std::uint64_t>(rank), spinor_rank);
  for (int k = 0; k <= k_max; ++k) {
    const std::uint64_t mult =
        checked_mul(prefactor, binomial(static_cast<std::uint64_t>(k + m - 2), static_cast<std::uint64_t>(k)));
    out.plus.multiplicities.push_back(mult);
    out.minus.multiplicities.push_back(mult);
  }
  return out;
}

GeneratingSeries generating_series(const SpinLiftTable& lift, int rank, int k_max) {
  check_series_args(rank, k_max);
  if (!lift.group) fail(ErrorCode::kInvalidArgument, "lift table has no group");
  const auto& group = *lift.group;
  const std::size_t len = static_cast<std::size_t>(k_max) + 1;
  GeneratingSeries acc{std::vector<std::complex<double>>(len), std::vector<std::complex<double>>(len)};

  std::vector<std::complex<double>> denom(len);
  for (std::size_t i = 0; i < group.order(); ++i) {
    const HalfSpinCharacters chi = half_spin_characters(lift.lift(i));

    // 1 / det(1_m - z g) = prod over eigenvalues zeta of 1 / (1 - zeta z)
    std::fill(denom.begin(), denom.end(), std::complex<double>{});
    denom[0] = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> eig(group.element(i), false);
    if (eig.info() != Eigen::Success) fail(ErrorCode::kConvergence, "eigenvalue solver failed");
    for (Eigen::Index e = 0; e < eig.eigenvalues().size(); ++e) {
      const std::complex<double> zeta = eig.eigenvalues()(e);
      for (std::size_t k = 1; k < len; ++k) denom[k] += zeta * denom[k - 1];
    }

    for (std::size_t k = 0; k < len; ++k) {
      const std::complex<double> prev = k > 0 ? denom[k - 1] : std::complex<double>{};
      acc.plus[k] += chi.minus * denom[k] - chi.plus * prev;
      acc.minus[k] += chi.plus * denom[k] - chi.minus * prev;
    }
  }
  const double scale = static_cast<double>(rank) / static_cast<double>(group.order());
  for (auto& c : acc.plus) c *= scale;
  for (auto& c : acc.minus) c *= scale;
  return acc;
}

SpectrumPair dirac_spectrum_quotient(const SpinLiftTable& lift, int rank, int k_max, const Tolerances& tol,
                                     QuotientDiagnostics* diagnostics, int lift_id) {
  if (!lift.group) fail(ErrorCode::kInvalidArgument, "lift table has no group");
  const int m = lift.group->dimension();
  if (m % 2 != 0) fail(ErrorCode::kDomain, "quotient spectra need even m");
  const GeneratingSeries series = generating_series(lift, rank, k_max);

  QuotientDiagnostics diag;
  auto round_series = [&](const std::vector<std::complex<double>>& raw, Chirality chirality) {
    MultiplicitySeries out{m, chirality, rank, lift_id, {}};
    for (std::size_t k = 0; k < raw.size(); ++k) {
      const double re = raw[k].real();
      const double nearest = std::round(re);
      diag.max_residue = std::max(diag.max_residue, std::abs(re - nearest));
      diag.max_imaginary = std::max(diag.max_imaginary, std::abs(raw[k].imag()));
      if (std::abs(re - nearest) > tol.residue) {
        fail(ErrorCode::kTolerance, "series coefficient " + std::to_string(re) + " at k = " + std::to_string(k) +
                                        " is not an integer; lift may not be a homomorphism");
      }
      if (std::abs(raw[k].imag()) > tol.imaginary) {
        fail(ErrorCode::kTolerance, "series coefficient at k = " + std::to_string(k) + " has imaginary part " +
                                        std::to_string(raw[k].imag()));
      }
      if (nearest < 0) {
        fail(ErrorCode::kTolerance, "negative multiplicity at k = " + std::to_string(k));
      }
      out.multiplicities.push_back(static_cast<std::uint64_t>(nearest));
    }
    return out;
  };

  SpectrumPair out{round_series(series.plus, Chirality::kPlus), round_series(series.minus, Chirality::kMinus)};
  if (diagnostics) *diagnostics = diag;
  return out;
}

std::uint64_t harmonic_dimension(int m, int k) {
  if (m < 2 || k < 0) fail(ErrorCode::kInvalidArgument, "harmonic_dimension needs m >= 2, k >= 0");
  // homogeneous degree-k polynomials on R^m minus r^2 times degree k-2
  const std::uint64_t all = binomial(static_cast<std::uint64_t>(k + m - 1), static_cast<std::uint64_t>(m - 1));
  const std::uint64_t lower =
      k >= 2 ? binomial(static_cast<std::uint64_t>(k + m - 3), static_cast<std::uint64_t>(m - 1)) : 0;
  return all - lower;
}

namespace {

struct Family {
  const char* label;
  double (*eigenvalue)(double k, double q, double n);
};

double phi0(double k, double, double n) { return k * (k + n - 1); }
double phi_q0(double k, double q, double n) { return (k + q) * (k + n + 1 - q); }
double phi_q1(double k, double q, double n) { return (k + q + 1) * (k + n - q); }
double psi_q0_odd(double k, double q, double) { return (k + q) * (k + q + 1); }
double psi_q1_odd(double k, double q, double) { return (k + q + 1) * (k + q + 2); }
double theta(double k, double q, double) { return (k + q) * (k + q); }
double psi_even(double k, double q, double) { return (k + q - 1) * (k + q + 1); }

// m - 1 = 2n: SO(2n+1) families
std::vector<Family> odd_sphere_families(int q, int n) {
  if (q == 0) return {{"Phi^0", phi0}, {"Phi^{0,1}", phi_q1}};
  if (q >= 1 && q <= n - 2) return {{"Phi^{q,0}", phi_q0}, {"Phi^{q,1}", phi_q1}};
  if (q == n - 1) return {{"Phi^{q,0}", phi_q0}, {"Psi^{q,1}", psi_q1_odd}};
  if (q == n) return {{"Psi^{q,0}", psi_q0_odd}};
  return {};
}

// m - 1 = 2n - 1: SO(2n) families
std::vector<Family> even_sphere_families(int q, int n) {
  if (q == 0) return {{"Phi^0", phi0}, {"Phi^{0,1}", phi_q1}};
  if (q >= 1 && q <= n - 3) return {{"Phi^{q,0}", phi_q0}, {"Phi^{q,1}", phi_q1}};
  if (q == n - 2) return {{"Phi^{q,0}", phi_q0}, {"Psi^{q,1}", psi_even}};
  if (q == n - 1) return {{"theta^{q,0}", theta}, {"Psi^{q,0}", psi_even}, {"theta^{q,1}", theta}};
  return {};
}

}  // namespace

std::vector<FormSpectrumEntry> laplace_form_spectrum(int m, int q, int k) {
  if (m < 2) fail(ErrorCode::kInvalidArgument, "form spectrum needs m >= 2");
  if (q < 0 || q > m - 1) {
    fail(ErrorCode::kDomain, "form degree q = " + std::to_string(q) + " outside [0, " + std::to_string(m - 1) + "]");
  }
  if (k < 0) fail(ErrorCode::kInvalidArgument, "mode index k must be >= 0");

  const bool odd_sphere = (m - 1) % 2 == 0;  // m - 1 = 2n
  const int n = odd_sphere ? (m - 1) / 2 : m / 2;
  const int top = odd_sphere ? n : n - 1;
  const bool dual = q > top;
  const int table_q = dual ? m - 1 - q : q;

  std::vector<FormSpectrumEntry> out;
  const auto families = odd_sphere ? odd_sphere_families(table_q, n) : even_sphere_families(table_q, n);
  for (const auto& f : families) {
    FormSpectrumEntry e;
    e.m = m;
    e.q = q;
    e.table_q = table_q;
    e.k = k;
    e.label = f.label;
    e.printed_eigenvalue = f.eigenvalue(k, table_q, n);
    e.eigenvalue = e.printed_eigenvalue;
    if (e.label == "Phi^0") e.eigenvalue = static_cast<double>(k) * (k + m - 2);
    e.hodge_dual = dual;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace conespec
