#include "conespec/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "conespec/error.hpp"

namespace conespec {

namespace {

std::string show(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

bool same_rate(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) fail(ErrorCode::kOverflow, "integer overflow in index arithmetic");
  return out;
}

}  // namespace

void RateSet::insert(double beta, std::uint64_t d) {
  if (!std::isfinite(beta)) fail(ErrorCode::kInvalidArgument, "critical rate must be finite");
  if (d == 0) return;
  auto it = std::lower_bound(rates_.begin(), rates_.end(), beta,
                             [](const Rate& r, double b) { return r.beta < b && !same_rate(r.beta, b); });
  if (it != rates_.end() && same_rate(it->beta, beta)) {
    it->d += d;
  } else {
    rates_.insert(it, Rate{beta, d});
  }
}

std::optional<std::size_t> RateSet::find(double beta, double tol) const {
  auto it = std::lower_bound(rates_.begin(), rates_.end(), beta - tol,
                             [](const Rate& r, double b) { return r.beta < b; });
  if (it != rates_.end() && std::abs(it->beta - beta) <= tol) return static_cast<std::size_t>(it - rates_.begin());
  return std::nullopt;
}

RateSet critical_rates(const Eigenvalues& spectrum, int m, double delta) {
  if (m < 2) fail(ErrorCode::kInvalidArgument, "critical rates need m >= 2");
  if (!std::isfinite(delta)) fail(ErrorCode::kInvalidArgument, "delta must be finite");
  RateSet out;
  out.m = m;
  out.delta = delta;
  out.source = "spectrum";
  for (const auto& [lambda, mult] : spectrum) out.insert(lambda - 0.5 * (m - 1) + delta, mult);
  return out;
}

Eigenvalues dirac_eigenvalues(const SpectrumPair& spectrum) {
  Eigenvalues out;
  for (const auto* s : {&spectrum.plus, &spectrum.minus}) {
    for (std::size_t k = 0; k < s->multiplicities.size(); ++k) out.emplace_back(s->eigenvalue(k), s->multiplicities[k]);
  }
  return out;
}

std::int64_t wall_crossing_jump(const RateSet& rates, double beta2, double beta1, double tol) {
  if (!std::isfinite(beta2) || !std::isfinite(beta1) || !(beta2 < beta1)) {
    fail(ErrorCode::kInvalidArgument, "wall crossing needs finite beta2 < beta1");
  }
  for (double b : {beta2, beta1}) {
    if (rates.find(b, tol)) {
      fail(ErrorCode::kRateCollision, "weight " + show(b) + " lies within the collision tolerance of a critical rate");
    }
  }
  std::int64_t sum = 0;
  for (const Rate& r : rates.rates()) {
    if (r.beta > beta2 && r.beta < beta1) {
      if (r.d > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        fail(ErrorCode::kOverflow, "rate multiplicity exceeds 63 bits");
      }
      sum = checked_add(sum, static_cast<std::int64_t>(r.d));
    }
  }
  return sum;
}

const char* to_string(IndexConvention c) { return c == IndexConvention::kCFS ? "cfs" : "acf"; }

std::int64_t index_difference(const RateSet& rates, double beta2, double beta1, IndexConvention convention,
                              double tol) {
  const std::int64_t jump = wall_crossing_jump(rates, beta2, beta1, tol);
  return convention == IndexConvention::kCFS ? jump : -jump;
}

// ---------------------------------------------------------------------------

namespace {

using Table = std::function<Eigenvalues(int k)>;

Eigenvalues ones(std::initializer_list<double> values) {
  Eigenvalues out;
  for (double v : values) out.emplace_back(v, 1);
  return out;
}

// lambda_{q-1} (previous = true) or lambda_q, as tabulated; rows are matched
// in the printed order and the first match wins.
Table odd_sphere_table(int q, int n, bool previous) {
  if (previous) {
    if (q == 1) return [n](int k) { return ones({double(k) * (k + n - 1), double(k + 1) * (k + n)}); };
    if (q > 1 && q <= n - 2) {
      return [n, q](int k) { return ones({double(k + q - 1) * (k + n - q - 2), double(k + q) * (k + n - q + 1)}); };
    }
    if (q == n - 1) return [n](int k) { return ones({double(k + n - 2) * (k + 4), double(k + n - 1) * (k + 2)}); };
    if (q == n) return [n](int k) { return ones({double(k + n - 1) * (k + 2), double(k + n) * (k + n + 1)}); };
    return {};
  }
  if (q == 1) return [n](int k) { return ones({double(k + 1) * (k + n), double(k + 2) * (k + n - 1)}); };
  if (q > 1 && q <= n - 2) {
    return [n, q](int k) { return ones({double(k + q) * (k + n + 1 - q), double(k + q + 1) * (k + n - q)}); };
  }
  if (q == n - 1) return [n](int k) { return ones({double(k + n - 1) * (k + 2), double(k + n) * (k + n + 1)}); };
  if (q == n) return [n](int k) { return ones({double(k + n) * (k + n + 1)}); };
  return {};
}

Table even_sphere_table(int q, int n, bool previous) {
  if (previous) {
    if (q == 1) return [](int k) { return ones({double(k) * (k + 1), double(k + 1) * (k + 1)}); };
    if (q > 1 && q <= n - 3) {
      return [n, q](int k) { return ones({double(k + q - 1) * (k + n - q + 2), double(k + q) * (k + n - q + 1)}); };
    }
    if (q == n - 2) return [n](int k) { return ones({double(k + n - 3) * (k + 4), double(k + n - 2) * (k + 3)}); };
    if (q == n - 1) return [n](int k) { return ones({double(k + n - 2) * (k + 3), double(k + n - 3) * (k + n - 1)}); };
    return {};
  }
  if (q == 1) return [](int k) { return ones({double(k + 1) * (k + 2)}); };
  if (q > 1 && q <= n - 3) {
    return [n, q](int k) { return ones({double(k + q) * (k + n - q + 1), double(k + q + 1) * (k + n - q)}); };
  }
  if (q == n - 2) return [n](int k) { return ones({double(k + n - 2) * (k + n + 3), double(k + n - 3) * (k + n - 1)}); };
  if (q == n - 1) return [n](int k) { return ones({double(k + n - 1) * (k + n - 1), double(k + n - 2) * (k + n - 1)}); };
  return {};
}

}  // namespace

LaplaceSpectrumProvider LaplaceSpectrumProvider::tabulated(int m, int q) {
  if (m < 2) fail(ErrorCode::kInvalidArgument, "Laplace rates need m >= 2");
  if (q < 0 || q > m - 1) fail(ErrorCode::kDomain, "form degree q outside [0, m-1]");
  LaplaceSpectrumProvider p;
  if (q == 0) {
    p.current = [m](int k) { return Eigenvalues{{double(k) * (k + m - 2), harmonic_dimension(m, k)}}; };
    return p;
  }
  const bool odd_sphere = (m - 1) % 2 == 0;
  const int n = odd_sphere ? (m - 1) / 2 : m / 2;
  p.previous = odd_sphere ? odd_sphere_table(q, n, true) : even_sphere_table(q, n, true);
  p.current = odd_sphere ? odd_sphere_table(q, n, false) : even_sphere_table(q, n, false);
  if (!p.previous || !p.current) {
    fail(ErrorCode::kDomain, "no tabulated form spectrum for m = " + std::to_string(m) + ", q = " + std::to_string(q) +
                                 "; supply the eigenvalue lists explicitly");
  }
  return p;
}

RateSet laplace_critical_rates(int m, int q, const LaplaceSpectrumProvider& provider, int k_max) {
  if (m < 2) fail(ErrorCode::kInvalidArgument, "Laplace rates need m >= 2");
  if (q < 0 || q > m - 1) {
    fail(ErrorCode::kDomain, "form degree q = " + std::to_string(q) + " outside [0, " + std::to_string(m - 1) + "]");
  }
  if (k_max < 0) fail(ErrorCode::kInvalidArgument, "k_max must be >= 0");
  RateSet out;
  out.m = m;
  out.convention = RateSet::kLaplaceConvention;
  out.source = "laplace q=" + std::to_string(q);

  struct Family {
    const std::function<Eigenvalues(int)>* list;
    double centre;  // beta = -centre +/- sqrt(centre^2 + shift + lambda)
    double shift;
  };
  const double md = m, qd = q;
  const Family families[] = {
      {&provider.previous, 0.5 * (md - 2), (qd - 2) * (md - qd)},
      {&provider.mixed, 0.5 * md, qd * (md - qd)},
      {&provider.mixed, 0.5 * (md - 4), (qd - 2) * (md - qd - 2)},
      {&provider.current, 0.5 * (md - 2), (md - qd - 2) * qd},
  };
  for (const Family& f : families) {
    if (!*f.list) continue;
    for (int k = 0; k <= k_max; ++k) {
      for (const auto& [lambda, mult] : (*f.list)(k)) {
        const double radicand = f.centre * f.centre + f.shift + lambda;
        if (radicand < 0.0) {
          ++out.dropped;
          continue;
        }
        const double s = std::sqrt(radicand);
        out.insert(-f.centre + s, mult);
        if (s != 0.0) out.insert(-f.centre - s, mult);
      }
    }
  }
  return out;
}

LedgerResult gluing_index_ledger(const IndexLedger& ledger) {
  LedgerResult out;
  out.total = checked_add(ledger.ind_cfs, ledger.ind_acf);
  if (ledger.dims) {
    const auto& d = *ledger.dims;
    out.has_dims = true;
    std::int64_t diff1, diff2;
    if (__builtin_sub_overflow(d[0], d[1], &diff1) || __builtin_sub_overflow(d[2], d[3], &diff2)) {
      fail(ErrorCode::kOverflow, "integer overflow in ledger dimensions");
    }
    out.alternating_sum = checked_add(diff1, diff2);
    out.exactness_ok = out.alternating_sum == 0;
  }
  return out;
}

}  // namespace conespec
