#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conespec/sphere_spectra.hpp"

namespace conespec {

struct Rate {
  double beta = 0.0;
  std::uint64_t d = 0;
};

/// Critical rates with multiplicities: strictly increasing beta, every d >= 1,
/// duplicates merged by summing d.
class RateSet {
 public:
  static constexpr const char* kDiracConvention = "lambda-(m-1)/2+delta";
  static constexpr const char* kLaplaceConvention = "laplace-indicial";

  int m = 0;
  double delta = 0.0;
  std::string convention = kDiracConvention;
  std::string source;
  std::size_t dropped = 0;  // inputs discarded (negative radicand)

  void insert(double beta, std::uint64_t d);
  const std::vector<Rate>& rates() const noexcept { return rates_; }
  std::size_t size() const noexcept { return rates_.size(); }
  bool empty() const noexcept { return rates_.empty(); }
  /// Index of a stored rate within `tol` of beta.
  std::optional<std::size_t> find(double beta, double tol) const;

 private:
  std::vector<Rate> rates_;
};

using Eigenvalues = std::vector<std::pair<double, std::uint64_t>>;

/// beta = lambda - (m-1)/2 + delta with d = multiplicity of lambda.
RateSet critical_rates(const Eigenvalues& spectrum, int m, double delta = 0.0);

/// Both signs of a Dirac spectrum series.
Eigenvalues dirac_eigenvalues(const SpectrumPair& spectrum);

/// Sum of d over rates in the open interval (beta2, beta1). Throws
/// kRateCollision when an endpoint lies within `tol` of a rate and
/// kInvalidArgument unless beta2 < beta1.
std::int64_t wall_crossing_jump(const RateSet& rates, double beta2, double beta1, double tol = 1e-9);

/// The two index conventions print the difference in opposite orders:
/// CFS: ind_{beta2} - ind_{beta1} = +jump, ACF: = -jump.
enum class IndexConvention { kCFS, kACF };
const char* to_string(IndexConvention c);
std::int64_t index_difference(const RateSet& rates, double beta2, double beta1, IndexConvention convention,
                              double tol = 1e-9);

/// Eigenvalue lists of the q-form Laplacians entering the Laplace critical
/// rates, per mode index k. Empty callbacks contribute nothing.
struct LaplaceSpectrumProvider {
  std::function<Eigenvalues(int k)> previous;  // lambda_{q-1}
  std::function<Eigenvalues(int k)> mixed;     // lambda_{q-1,q}
  std::function<Eigenvalues(int k)> current;   // lambda_q

  /// Tabulated lambda_{q-1} and lambda_q with multiplicity 1 per occurrence;
  /// for q = 0 the function spectrum k(k+m-2) with harmonic-polynomial
  /// multiplicities. lambda_{q-1,q} has no table and is left empty. Throws
  /// kDomain for degrees the tables do not cover (q > n for m - 1 = 2n,
  /// q > n - 1 for m - 1 = 2n - 1).
  static LaplaceSpectrumProvider tabulated(int m, int q);
};

/// The four beta families
///   -(m-2)/2 +/- sqrt(((m-2)/2)^2 + (q-2)(m-q) + lambda_{q-1})
///   -m/2     +/- sqrt((m/2)^2 + q(m-q) + lambda_{q-1,q})
///   -(m-4)/2 +/- sqrt(((m-4)/2)^2 + (q-2)(m-q-2) + lambda_{q-1,q})
///   -(m-2)/2 +/- sqrt(((m-2)/2)^2 + (m-q-2)q + lambda_q)
/// over k = 0..k_max. Negative radicands are dropped and counted.
RateSet laplace_critical_rates(int m, int q, const LaplaceSpectrumProvider& provider, int k_max);

struct IndexLedger {
  std::int64_t ind_cfs = 0;
  std::int64_t ind_acf = 0;
  std::optional<std::array<std::int64_t, 4>> dims;  // ker, xker, xcoker, coker
};

struct LedgerResult {
  std::int64_t total = 0;
  bool has_dims = false;
  std::int64_t alternating_sum = 0;
  bool exactness_ok = true;
};

/// total = ind_cfs + ind_acf; exactness <=> ker - xker + xcoker - coker = 0.
LedgerResult gluing_index_ledger(const IndexLedger& ledger);

}  // namespace conespec
