#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "conespec/conespec.h"

TEST_CASE("version and status strings") {
  CHECK(std::string(cs_version()).size() > 0);
  CHECK(std::string(cs_status_string(CS_OK)) == "ok");
  CHECK(std::string(cs_status_string(CS_ERR_RATE_COLLISION)).size() > 0);
}

TEST_CASE("tolerances") {
  cs_tolerances t;
  REQUIRE(cs_tolerances_default(&t) == CS_OK);
  CHECK(t.matrix == 1e-10);
  REQUIRE(cs_tolerances_parse("residue=1e-3", &t) == CS_OK);
  CHECK(t.residue == 1e-3);
  CHECK(t.matrix == 1e-10);
  CHECK(cs_tolerances_parse("bogus=1", &t) == CS_ERR_PARSE);
  CHECK(std::string(cs_last_error()).find("bogus") != std::string::npos);
  CHECK(cs_tolerances_default(nullptr) == CS_ERR_NULL_POINTER);
  CHECK(std::string(cs_last_error()).size() > 0);
  REQUIRE(cs_tolerances_default(&t) == CS_OK);
  CHECK(std::string(cs_last_error()).empty());
}

TEST_CASE("round spectrum") {
  std::vector<uint64_t> plus(6), minus(6);
  REQUIRE(cs_dirac_spectrum_round(4, 1, 5, plus.data(), minus.data()) == CS_OK);
  CHECK(plus == std::vector<uint64_t>{2, 6, 12, 20, 30, 42});
  CHECK(cs_dirac_spectrum_round(1, 1, 5, plus.data(), minus.data()) == CS_ERR_INVALID_ARGUMENT);
  CHECK(cs_dirac_spectrum_round(4, 1, 5, nullptr, minus.data()) == CS_ERR_NULL_POINTER);
  uint64_t h = 0;
  REQUIRE(cs_harmonic_dimension(4, 2, &h) == CS_OK);
  CHECK(h == 9);
}

TEST_CASE("groups, spin structures and quotient spectra") {
  cs_group* g = nullptr;
  REQUIRE(cs_group_catalog(4, "antipodal", nullptr, nullptr, &g) == CS_OK);
  size_t order = 0;
  REQUIRE(cs_group_order(g, &order) == CS_OK);
  CHECK(order == 2);
  double entries[16];
  REQUIRE(cs_group_element(g, 1, entries) == CS_OK);
  CHECK(entries[0] == -1.0);
  CHECK(cs_group_element(g, 5, entries) != CS_OK);

  cs_spin_structures* s = nullptr;
  REQUIRE(cs_spin_structures_enumerate(g, nullptr, &s) == CS_OK);
  size_t count = 0;
  REQUIRE(cs_spin_structures_count(s, &count) == CS_OK);
  CHECK(count == 2);
  cs_lift_report report;
  REQUIRE(cs_spin_structure_verify(s, 0, nullptr, &report) == CS_OK);
  CHECK(report.ok);
  size_t n_signs = 0;
  REQUIRE(cs_spin_structure_generator_signs(s, 0, nullptr, 0, &n_signs) == CS_OK);
  CHECK(n_signs == 1);
  int sign = 0;
  REQUIRE(cs_spin_structure_generator_signs(s, 0, &sign, 1, &n_signs) == CS_OK);
  CHECK(std::abs(sign) == 1);

  std::vector<uint64_t> p0(5), m0(5), p1(5), m1(5);
  cs_quotient_diagnostics diag;
  REQUIRE(cs_dirac_spectrum_quotient(s, 0, 1, 4, nullptr, p0.data(), m0.data(), &diag) == CS_OK);
  REQUIRE(cs_dirac_spectrum_quotient(s, 1, 1, 4, nullptr, p1.data(), m1.data(), nullptr) == CS_OK);
  CHECK(diag.max_residue < 1e-9);
  for (int k = 0; k <= 4; ++k) CHECK(p0[k] + p1[k] == static_cast<uint64_t>((k + 1) * (k + 2)));
  CHECK(cs_dirac_spectrum_quotient(s, 7, 1, 4, nullptr, p0.data(), m0.data(), nullptr) == CS_ERR_INVALID_ARGUMENT);

  cs_spin_structures_free(s);
  cs_group_free(g);
  cs_group_free(nullptr);

  CHECK(cs_group_catalog(4, "cyclic", "{\"n\": 8}", nullptr, &g) == CS_OK);
  const char* name = nullptr;
  REQUIRE(cs_group_name(g, &name) == CS_OK);
  CHECK(std::string(name) == "cyclic(8)");
  cs_group_free(g);
  CHECK(cs_group_catalog(4, "cyclic", "{oops", nullptr, &g) == CS_ERR_PARSE);
  CHECK(cs_group_from_json("{\"m\": 3, \"kind\": \"matrices\", \"generators\": [[-1,0,0,0,1,0,0,0,1]]}", nullptr,
                           &g) == CS_ERR_NOT_SPECIAL_ORTHOGONAL);
}

TEST_CASE("form spectrum buffer protocol") {
  size_t count = 0;
  REQUIRE(cs_laplace_form_spectrum(4, 1, 2, nullptr, 0, &count) == CS_OK);
  REQUIRE(count > 0);
  std::vector<cs_form_entry> entries(count);
  if (count > 1) CHECK(cs_laplace_form_spectrum(4, 1, 2, entries.data(), 1, &count) == CS_ERR_BUFFER_TOO_SMALL);
  REQUIRE(cs_laplace_form_spectrum(4, 1, 2, entries.data(), entries.size(), &count) == CS_OK);
  CHECK(entries[0].q == 1);
  CHECK(std::strlen(entries[0].label) > 0);
}

TEST_CASE("rates, wall crossing and the ledger") {
  const double lambda[] = {1.5, -1.5};
  const uint64_t mult[] = {2, 2};
  cs_rate_set* rates = nullptr;
  REQUIRE(cs_rates_from_spectrum(lambda, mult, 2, 4, 0.0, &rates) == CS_OK);
  size_t n = 0;
  REQUIRE(cs_rate_set_size(rates, &n) == CS_OK);
  CHECK(n == 2);
  cs_rate r;
  REQUIRE(cs_rate_set_get(rates, 1, &r) == CS_OK);
  CHECK(r.beta == 0.0);
  CHECK(r.d == 2);
  int m = 0;
  double delta = 1;
  const char* convention = nullptr;
  REQUIRE(cs_rate_set_info(rates, &m, &delta, &convention) == CS_OK);
  CHECK(m == 4);
  CHECK(std::string(convention) == "lambda-(m-1)/2+delta");
  int64_t jump = 0;
  REQUIRE(cs_wall_crossing_jump(rates, -0.5, 0.5, 1e-9, &jump) == CS_OK);
  CHECK(jump == 2);
  CHECK(cs_wall_crossing_jump(rates, 0.0, 0.5, 1e-9, &jump) == CS_ERR_RATE_COLLISION);
  REQUIRE(cs_index_difference(rates, -0.5, 0.5, CS_CONVENTION_ACF, 1e-9, &jump) == CS_OK);
  CHECK(jump == -2);
  cs_rate_set_free(rates);

  REQUIRE(cs_rates_laplace(4, 0, 3, nullptr, nullptr, 0, &rates) == CS_OK);
  REQUIRE(cs_rate_set_size(rates, &n) == CS_OK);
  CHECK(n == 8);
  REQUIRE(cs_rate_set_get(rates, 0, &r) == CS_OK);
  CHECK(r.beta == -5.0);
  CHECK(r.d == 16);
  cs_rate_set_free(rates);
  CHECK(cs_rates_laplace(4, 9, 3, nullptr, nullptr, 0, &rates) == CS_ERR_DOMAIN);

  cs_ledger_result ledger;
  REQUIRE(cs_gluing_index_ledger(3, -1, nullptr, &ledger) == CS_OK);
  CHECK(ledger.total == 2);
  CHECK(!ledger.has_dims);
  const int64_t dims[] = {2, 5, 4, 1};
  REQUIRE(cs_gluing_index_ledger(0, 0, dims, &ledger) == CS_OK);
  CHECK(ledger.exactness_ok);
}

TEST_CASE("mode blocks") {
  const cs_mode_block block{4, 0.5, 1.0, 0.0};
  const char* regime = nullptr;
  REQUIRE(cs_mode_regime(&block, &regime) == CS_OK);
  CHECK(std::string(regime) == "general");
  double radial = 0, potential[4];
  REQUIRE(cs_mode_operator(&block, 1.0, &radial, potential) == CS_OK);
  CHECK(radial == 1.5);
  CHECK(potential[0] == 0.5);
  CHECK(cs_mode_operator(&block, -1.0, &radial, potential) == CS_ERR_DOMAIN);

  double i = 0, k = 0;
  REQUIRE(cs_modified_bessel(0.5, 1.0, &i, &k) == CS_OK);
  CHECK(k == doctest::Approx(std::sqrt(M_PI / 2) * std::exp(-1.0)));
  CHECK(cs_modified_bessel(60, 1.0, &i, &k) == CS_ERR_DOMAIN);

  cs_solution_info info;
  REQUIRE(cs_kernel_solution_info(&block, 1, &info) == CS_OK);
  CHECK(std::string(info.behaviour_at_infinity) == "decay");
  CHECK(cs_kernel_solution_info(&block, 2, &info) == CS_ERR_INVALID_ARGUMENT);

  std::vector<double> grid;
  for (int j = 0; j < 32; ++j) grid.push_back(0.1 * std::pow(100.0, j / 31.0));
  cs_kernel_report report;
  REQUIRE(cs_verify_kernel_basis(&block, grid.data(), grid.size(), 0.5, 5.0, &report) == CS_OK);
  CHECK(report.max_residual < 1e-8);
  CHECK(report.max_integrator_deviation < 1e-7);
  CHECK(report.points == 32);

  double plus[2], minus[2];
  const double r[] = {1.0, 2.0};
  REQUIRE(cs_mode_eigencurve(0.0, 2.0, r, 2, plus, minus) == CS_OK);
  CHECK(plus[1] == doctest::Approx(2.0));
  CHECK(minus[0] == doctest::Approx(-2.0));
}

namespace {

double bump_plus(double r, void* user) { return *static_cast<double*>(user) * std::exp(-(r - 2) * (r - 2) * 8); }

}  // namespace

TEST_CASE("right inverse through the C API") {
  const cs_mode_block block{4, 0.0, 1.5, 0.0};
  cs_function_pair* g = nullptr;
  REQUIRE(cs_function_pair_gaussian(2.0, 0.3, 1.0, 0.0, 0.2, &g) == CS_OK);
  double a = 0, b = 0;
  REQUIRE(cs_function_pair_support(g, &a, &b) == CS_OK);
  CHECK(a == doctest::Approx(0.2));
  CHECK(b == doctest::Approx(4.4));
  cs_greens_report report;
  REQUIRE(cs_verify_right_inverse(&block, g, 32, nullptr, &report) == CS_OK);
  CHECK(report.max_residual < 1e-6);
  CHECK(report.calibration == doctest::Approx(1.0));

  double scale = 2.0;
  cs_function_pair* cb = nullptr;
  REQUIRE(cs_function_pair_callback(1.0, 3.0, bump_plus, nullptr, &scale, &cb) == CS_OK);
  double value[2], minus[2];
  const double pts[] = {2.0, 5.0};
  REQUIRE(cs_function_pair_eval(cb, pts, 2, value, minus) == CS_OK);
  CHECK(value[0] == doctest::Approx(2.0));
  CHECK(value[1] == 0.0);
  CHECK(minus[0] == 0.0);

  cs_function_pair* both = nullptr;
  REQUIRE(cs_function_pair_combine(1.0, g, -1.0, cb, &both) == CS_OK);
  double f_plus[3], f_minus[3], c_inf[3], c_zero[3];
  const double r[] = {1.0, 2.0, 3.0};
  REQUIRE(cs_apply_right_inverse(&block, both, r, 3, nullptr, f_plus, f_minus, c_inf, c_zero) == CS_OK);
  REQUIRE(cs_apply_right_inverse(&block, both, r, 3, nullptr, f_plus, f_minus, nullptr, nullptr) == CS_OK);
  const double bad[] = {0.0};
  CHECK(cs_apply_right_inverse(&block, both, bad, 1, nullptr, f_plus, f_minus, nullptr, nullptr) == CS_ERR_DOMAIN);

  const double sr[] = {1, 2, 3, 4}, sp[] = {0, 1, 1, 0}, sm[] = {0, 0, 0, 0};
  cs_function_pair* samples = nullptr;
  REQUIRE(cs_function_pair_samples(sr, sp, sm, 4, &samples) == CS_OK);
  CHECK(cs_function_pair_samples(sr, sp, sm, 2, &samples) == CS_ERR_INVALID_ARGUMENT);

  cs_function_pair_free(samples);
  cs_function_pair_free(both);
  cs_function_pair_free(cb);
  cs_function_pair_free(g);
}
