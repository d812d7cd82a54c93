#include "conespec/conespec.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "conespec/bessel.hpp"
#include "conespec/cone_modes.hpp"
#include "conespec/error.hpp"
#include "conespec/greens.hpp"
#include "conespec/groups.hpp"
#include "conespec/rates.hpp"
#include "conespec/sphere_spectra.hpp"
#include "conespec/version.hpp"

struct cs_group {
  std::shared_ptr<const conespec::FiniteOrthogonalGroup> group;
};

struct cs_spin_structures {
  std::vector<conespec::SpinLiftTable> tables;
};

struct cs_rate_set {
  conespec::RateSet rates;
};

struct cs_function_pair {
  conespec::SampledFunctionPair g;
};

namespace {

thread_local std::string last_error;

cs_status map_code(conespec::ErrorCode code) {
  using conespec::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return CS_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDomain: return CS_ERR_DOMAIN;
    case ErrorCode::kDimensionMismatch: return CS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kNotOrthogonal: return CS_ERR_NOT_ORTHOGONAL;
    case ErrorCode::kNotSpecialOrthogonal: return CS_ERR_NOT_SPECIAL_ORTHOGONAL;
    case ErrorCode::kCapExceeded: return CS_ERR_CAP_EXCEEDED;
    case ErrorCode::kTolerance: return CS_ERR_TOLERANCE;
    case ErrorCode::kConvergence: return CS_ERR_CONVERGENCE;
    case ErrorCode::kRateCollision: return CS_ERR_RATE_COLLISION;
    case ErrorCode::kOverflow: return CS_ERR_OVERFLOW;
    case ErrorCode::kParse: return CS_ERR_PARSE;
  }
  return CS_ERR_INTERNAL;
}

struct NullPointer {
  const char* what;
};

struct BufferTooSmall {
  std::size_t required;
};

template <class F>
cs_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return CS_OK;
  } catch (const NullPointer& e) {
    last_error = std::string("null pointer: ") + e.what;
    return CS_ERR_NULL_POINTER;
  } catch (const BufferTooSmall& e) {
    last_error = "buffer too small, need " + std::to_string(e.required);
    return CS_ERR_BUFFER_TOO_SMALL;
  } catch (const conespec::Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return CS_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return CS_ERR_INTERNAL;
  }
}

template <class T>
void need(T* p, const char* what) {
  if (p == nullptr) throw NullPointer{what};
}

conespec::Tolerances tolerances(const cs_tolerances* t) {
  if (t == nullptr) return conespec::Tolerances::defaults();
  conespec::Tolerances out;
  out.matrix = t->matrix;
  out.coefficient = t->coefficient;
  out.residue = t->residue;
  out.imaginary = t->imaginary;
  out.rate_collision = t->rate_collision;
  out.quad_rel = t->quad_rel;
  out.quad_abs = t->quad_abs;
  return out;
}

void export_tolerances(const conespec::Tolerances& t, cs_tolerances* out) {
  *out = {t.matrix, t.coefficient, t.residue, t.imaginary, t.rate_collision, t.quad_rel, t.quad_abs};
}

conespec::ModeBlock mode_block(const cs_mode_block* b) {
  need(b, "block");
  conespec::ModeBlock out{b->m, b->lambda, b->mu, b->delta};
  out.validate();
  return out;
}

void copy_label(char* dst, std::size_t size, const std::string& src) {
  std::size_t n = std::min(size - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

const conespec::SpinLiftTable& table(const cs_spin_structures* s, std::size_t id) {
  need(s, "spin structures");
  if (id >= s->tables.size()) conespec::fail(conespec::ErrorCode::kInvalidArgument, "spin structure id out of range");
  return s->tables[id];
}

void copy_series(const conespec::SpectrumPair& pair, uint64_t* plus, uint64_t* minus) {
  std::copy(pair.plus.multiplicities.begin(), pair.plus.multiplicities.end(), plus);
  std::copy(pair.minus.multiplicities.begin(), pair.minus.multiplicities.end(), minus);
}

conespec::ModeSolution solution(const cs_mode_block* block, std::size_t index) {
  auto basis = conespec::kernel_basis(mode_block(block));
  if (index >= basis.size()) conespec::fail(conespec::ErrorCode::kInvalidArgument, "kernel solution index is 0 or 1");
  return basis[index];
}

}  // namespace

extern "C" {

const char* cs_version(void) { return conespec::kVersion; }

const char* cs_status_string(cs_status status) {
  switch (status) {
    case CS_OK: return "ok";
    case CS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CS_ERR_DOMAIN: return "domain error";
    case CS_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case CS_ERR_NOT_ORTHOGONAL: return "not orthogonal";
    case CS_ERR_NOT_SPECIAL_ORTHOGONAL: return "not special orthogonal";
    case CS_ERR_CAP_EXCEEDED: return "group order cap exceeded";
    case CS_ERR_TOLERANCE: return "tolerance exceeded";
    case CS_ERR_CONVERGENCE: return "no convergence";
    case CS_ERR_RATE_COLLISION: return "weight on a critical rate";
    case CS_ERR_OVERFLOW: return "overflow";
    case CS_ERR_PARSE: return "parse error";
    case CS_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case CS_ERR_NULL_POINTER: return "null pointer";
    case CS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cs_last_error(void) { return last_error.c_str(); }

cs_status cs_tolerances_default(cs_tolerances* out) {
  return guarded([&] {
    need(out, "out");
    export_tolerances(conespec::Tolerances::defaults(), out);
  });
}

cs_status cs_tolerances_from_env(cs_tolerances* out) {
  return guarded([&] {
    need(out, "out");
    export_tolerances(conespec::Tolerances::from_env(), out);
  });
}

cs_status cs_tolerances_parse(const char* spec, cs_tolerances* inout) {
  return guarded([&] {
    need(spec, "spec");
    need(inout, "inout");
    export_tolerances(conespec::Tolerances::parse(spec, tolerances(inout)), inout);
  });
}

// ---- groups -----------------------------------------------------------------

cs_status cs_group_catalog(int m, const char* name, const char* params_json, const cs_tolerances* tol,
                           cs_group** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = nullptr;
    std::map<std::string, std::vector<double>> params;
    if (params_json != nullptr && *params_json != '\0') {
      const auto doc = nlohmann::json::parse(params_json);
      if (!doc.is_object()) conespec::fail(conespec::ErrorCode::kParse, "group params must be a JSON object");
      for (const auto& [key, value] : doc.items()) {
        params[key] = value.is_array() ? value.get<std::vector<double>>() : std::vector<double>{value.get<double>()};
      }
    }
    auto group = conespec::build_group(conespec::GroupDescriptor::catalog(m, name, std::move(params)), tolerances(tol));
    *out = new cs_group{std::make_shared<const conespec::FiniteOrthogonalGroup>(std::move(group))};
  });
}

cs_status cs_group_from_json(const char* json, const cs_tolerances* tol, cs_group** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = nullptr;
    auto group = conespec::build_group(conespec::GroupDescriptor::from_json(json), tolerances(tol));
    *out = new cs_group{std::make_shared<const conespec::FiniteOrthogonalGroup>(std::move(group))};
  });
}

void cs_group_free(cs_group* group) { delete group; }

cs_status cs_group_order(const cs_group* group, size_t* out) {
  return guarded([&] {
    need(group, "group");
    need(out, "out");
    *out = group->group->order();
  });
}

cs_status cs_group_dimension(const cs_group* group, int* out) {
  return guarded([&] {
    need(group, "group");
    need(out, "out");
    *out = group->group->dimension();
  });
}

cs_status cs_group_name(const cs_group* group, const char** out) {
  return guarded([&] {
    need(group, "group");
    need(out, "out");
    *out = group->group->name().c_str();
  });
}

cs_status cs_group_element(const cs_group* group, size_t i, double* out) {
  return guarded([&] {
    need(group, "group");
    need(out, "out");
    if (i >= group->group->order()) conespec::fail(conespec::ErrorCode::kInvalidArgument, "element index out of range");
    const auto& g = group->group->element(i);
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      for (Eigen::Index c = 0; c < g.cols(); ++c) out[r * g.cols() + c] = g(r, c);
    }
  });
}

cs_status cs_spin_structures_enumerate(const cs_group* group, const cs_tolerances* tol, cs_spin_structures** out) {
  return guarded([&] {
    need(group, "group");
    need(out, "out");
    *out = nullptr;
    auto tables = conespec::enumerate_spin_structures(group->group, tolerances(tol));
    *out = new cs_spin_structures{std::move(tables)};
  });
}

void cs_spin_structures_free(cs_spin_structures* s) { delete s; }

cs_status cs_spin_structures_count(const cs_spin_structures* s, size_t* out) {
  return guarded([&] {
    need(s, "spin structures");
    need(out, "out");
    *out = s->tables.size();
  });
}

cs_status cs_spin_structure_verify(const cs_spin_structures* s, size_t id, const cs_tolerances* tol,
                                   cs_lift_report* out) {
  return guarded([&] {
    need(out, "out");
    const auto v = conespec::verify_lift_table(table(s, id), tolerances(tol));
    *out = {v.max_homomorphism_defect, v.max_cover_defect, v.max_norm_defect, v.ok ? 1 : 0};
  });
}

cs_status cs_spin_structure_generator_signs(const cs_spin_structures* s, size_t id, int* out, size_t capacity,
                                            size_t* count) {
  return guarded([&] {
    need(count, "count");
    const auto& signs = table(s, id).generator_signs;
    *count = signs.size();
    if (out == nullptr && capacity == 0) return;  // size query
    need(out, "out");
    if (capacity < signs.size()) throw BufferTooSmall{signs.size()};
    std::copy(signs.begin(), signs.end(), out);
  });
}

// ---- spectra ----------------------------------------------------------------

cs_status cs_dirac_spectrum_round(int m, int rank, int k_max, uint64_t* plus, uint64_t* minus) {
  return guarded([&] {
    need(plus, "plus");
    need(minus, "minus");
    copy_series(conespec::dirac_spectrum_round(m, rank, k_max), plus, minus);
  });
}

cs_status cs_dirac_spectrum_quotient(const cs_spin_structures* s, size_t id, int rank, int k_max,
                                     const cs_tolerances* tol, uint64_t* plus, uint64_t* minus,
                                     cs_quotient_diagnostics* diagnostics) {
  return guarded([&] {
    need(plus, "plus");
    need(minus, "minus");
    conespec::QuotientDiagnostics diag;
    const auto pair = conespec::dirac_spectrum_quotient(table(s, id), rank, k_max, tolerances(tol), &diag,
                                                        static_cast<int>(id));
    copy_series(pair, plus, minus);
    if (diagnostics) *diagnostics = {diag.max_residue, diag.max_imaginary};
  });
}

cs_status cs_harmonic_dimension(int m, int k, uint64_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = conespec::harmonic_dimension(m, k);
  });
}

cs_status cs_laplace_form_spectrum(int m, int q, int k, cs_form_entry* out, size_t capacity, size_t* count) {
  return guarded([&] {
    need(count, "count");
    const auto entries = conespec::laplace_form_spectrum(m, q, k);
    *count = entries.size();
    if (out == nullptr && capacity == 0) return;  // size query
    need(out, "out");
    if (capacity < entries.size()) throw BufferTooSmall{entries.size()};
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      out[i].m = e.m;
      out[i].q = e.q;
      out[i].table_q = e.table_q;
      out[i].k = e.k;
      copy_label(out[i].label, sizeof(out[i].label), e.label);
      out[i].eigenvalue = e.eigenvalue;
      out[i].printed_eigenvalue = e.printed_eigenvalue;
      out[i].hodge_dual = e.hodge_dual ? 1 : 0;
    }
  });
}

// ---- rates ------------------------------------------------------------------

cs_status cs_rates_from_spectrum(const double* lambda, const uint64_t* mult, size_t n, int m, double delta,
                                 cs_rate_set** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    if (n > 0) {
      need(lambda, "lambda");
      need(mult, "mult");
    }
    conespec::Eigenvalues spectrum;
    for (std::size_t i = 0; i < n; ++i) spectrum.emplace_back(lambda[i], mult[i]);
    *out = new cs_rate_set{conespec::critical_rates(spectrum, m, delta)};
  });
}

cs_status cs_rates_laplace(int m, int q, int k_max, const double* mixed_lambda, const uint64_t* mixed_mult,
                           size_t n_mixed, cs_rate_set** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    auto provider = conespec::LaplaceSpectrumProvider::tabulated(m, q);
    if (n_mixed > 0) {
      need(mixed_lambda, "mixed_lambda");
      conespec::Eigenvalues mixed;
      for (std::size_t i = 0; i < n_mixed; ++i) mixed.emplace_back(mixed_lambda[i], mixed_mult ? mixed_mult[i] : 1);
      // user data is not indexed by k; contribute it once
      provider.mixed = [mixed](int k) { return k == 0 ? mixed : conespec::Eigenvalues{}; };
    }
    *out = new cs_rate_set{conespec::laplace_critical_rates(m, q, provider, k_max)};
  });
}

void cs_rate_set_free(cs_rate_set* rates) { delete rates; }

cs_status cs_rate_set_size(const cs_rate_set* rates, size_t* out) {
  return guarded([&] {
    need(rates, "rates");
    need(out, "out");
    *out = rates->rates.size();
  });
}

cs_status cs_rate_set_get(const cs_rate_set* rates, size_t i, cs_rate* out) {
  return guarded([&] {
    need(rates, "rates");
    need(out, "out");
    if (i >= rates->rates.size()) conespec::fail(conespec::ErrorCode::kInvalidArgument, "rate index out of range");
    const auto& r = rates->rates.rates()[i];
    *out = {r.beta, r.d};
  });
}

cs_status cs_rate_set_dropped(const cs_rate_set* rates, size_t* out) {
  return guarded([&] {
    need(rates, "rates");
    need(out, "out");
    *out = rates->rates.dropped;
  });
}

cs_status cs_rate_set_info(const cs_rate_set* rates, int* m, double* delta, const char** convention) {
  return guarded([&] {
    need(rates, "rates");
    if (m) *m = rates->rates.m;
    if (delta) *delta = rates->rates.delta;
    if (convention) *convention = rates->rates.convention.c_str();
  });
}

cs_status cs_wall_crossing_jump(const cs_rate_set* rates, double beta2, double beta1, double tol, int64_t* out) {
  return guarded([&] {
    need(rates, "rates");
    need(out, "out");
    *out = conespec::wall_crossing_jump(rates->rates, beta2, beta1, tol);
  });
}

cs_status cs_index_difference(const cs_rate_set* rates, double beta2, double beta1, cs_index_convention convention,
                              double tol, int64_t* out) {
  return guarded([&] {
    need(rates, "rates");
    need(out, "out");
    const auto c = convention == CS_CONVENTION_ACF ? conespec::IndexConvention::kACF : conespec::IndexConvention::kCFS;
    *out = conespec::index_difference(rates->rates, beta2, beta1, c, tol);
  });
}

cs_status cs_gluing_index_ledger(int64_t ind_cfs, int64_t ind_acf, const int64_t* dims, cs_ledger_result* out) {
  return guarded([&] {
    need(out, "out");
    conespec::IndexLedger ledger{ind_cfs, ind_acf, std::nullopt};
    if (dims) ledger.dims = std::array<std::int64_t, 4>{dims[0], dims[1], dims[2], dims[3]};
    const auto r = conespec::gluing_index_ledger(ledger);
    *out = {r.total, r.has_dims ? 1 : 0, r.alternating_sum, r.exactness_ok ? 1 : 0};
  });
}

// ---- modes ------------------------------------------------------------------

cs_status cs_mode_regime(const cs_mode_block* block, const char** out) {
  return guarded([&] {
    need(out, "out");
    *out = conespec::to_string(conespec::classify(mode_block(block)));
  });
}

cs_status cs_mode_operator(const cs_mode_block* block, double r, double* radial, double* potential) {
  return guarded([&] {
    need(radial, "radial");
    need(potential, "potential");
    const auto op = conespec::mode_operator(mode_block(block), r);
    *radial = op.radial_coefficient;
    potential[0] = op.potential(0, 0);
    potential[1] = op.potential(0, 1);
    potential[2] = op.potential(1, 0);
    potential[3] = op.potential(1, 1);
  });
}

cs_status cs_mode_eigencurve(double lambda, double mu, const double* r, size_t n, double* plus, double* minus) {
  return guarded([&] {
    need(r, "r");
    need(plus, "plus");
    need(minus, "minus");
    const auto curve = conespec::mode_eigencurve(lambda, mu, std::vector<double>(r, r + n));
    std::copy(curve.plus.begin(), curve.plus.end(), plus);
    std::copy(curve.minus.begin(), curve.minus.end(), minus);
  });
}

cs_status cs_modified_bessel(double nu, double x, double* i, double* k) {
  return guarded([&] {
    need(i, "i");
    need(k, "k");
    const auto v = conespec::modified_bessel(nu, x);
    *i = v.i;
    *k = v.k;
  });
}

cs_status cs_kernel_solution_info(const cs_mode_block* block, size_t index, cs_solution_info* out) {
  return guarded([&] {
    need(out, "out");
    const auto sol = solution(block, index);
    copy_label(out->name, sizeof(out->name), sol.name());
    out->exponent_at_zero = sol.exponent_at_zero();
    out->exponent_at_infinity = sol.exponent_at_infinity();
    copy_label(out->behaviour_at_zero, sizeof(out->behaviour_at_zero), conespec::to_string(sol.behaviour_at_zero()));
    copy_label(out->behaviour_at_infinity, sizeof(out->behaviour_at_infinity),
               conespec::to_string(sol.behaviour_at_infinity()));
    out->degenerate = sol.degenerate() ? 1 : 0;
  });
}

cs_status cs_kernel_solution_eval(const cs_mode_block* block, size_t index, const double* r, size_t n,
                                  double* f_plus, double* f_minus) {
  return guarded([&] {
    need(r, "r");
    need(f_plus, "f_plus");
    need(f_minus, "f_minus");
    const auto sol = solution(block, index);
    for (std::size_t i = 0; i < n; ++i) {
      const auto f = sol.evaluate(r[i]);
      f_plus[i] = f[0];
      f_minus[i] = f[1];
    }
  });
}

cs_status cs_verify_kernel_basis(const cs_mode_block* block, const double* grid, size_t n, double integrator_lo,
                                 double integrator_hi, cs_kernel_report* out) {
  return guarded([&] {
    need(grid, "grid");
    need(out, "out");
    conespec::KernelVerificationOptions options;
    options.integrator_lo = integrator_lo;
    options.integrator_hi = integrator_hi;
    options.run_integrator = integrator_hi > integrator_lo;
    const auto v = conespec::verify_kernel_basis(mode_block(block), std::vector<double>(grid, grid + n), options);
    *out = {};
    out->max_residual = v.max_residual;
    out->max_integrator_deviation = v.max_integrator_deviation;
    for (std::size_t i = 0; i < 2 && i < v.residual_per_solution.size(); ++i) {
      out->residual[i] = v.residual_per_solution[i];
      out->deviation[i] = v.deviation_per_solution[i];
    }
    out->points = v.points;
  });
}

// ---- right inverse ------------------------------------------------------------

cs_status cs_function_pair_gaussian(double center, double width, double amp_plus, double amp_minus, double floor,
                                    cs_function_pair** out) {
  return guarded([&] {
    need(out, "out");
    *out = new cs_function_pair{conespec::SampledFunctionPair::gaussian(center, width, amp_plus, amp_minus, floor)};
  });
}

cs_status cs_function_pair_bump(double a, double b, double amp_plus, double amp_minus, cs_function_pair** out) {
  return guarded([&] {
    need(out, "out");
    *out = new cs_function_pair{conespec::SampledFunctionPair::smooth_bump(a, b, amp_plus, amp_minus)};
  });
}

cs_status cs_function_pair_samples(const double* r, const double* g_plus, const double* g_minus, size_t n,
                                   cs_function_pair** out) {
  return guarded([&] {
    need(r, "r");
    need(g_plus, "g_plus");
    need(g_minus, "g_minus");
    need(out, "out");
    *out = new cs_function_pair{conespec::SampledFunctionPair::from_samples(
        std::vector<double>(r, r + n), std::vector<double>(g_plus, g_plus + n), std::vector<double>(g_minus, g_minus + n))};
  });
}

cs_status cs_function_pair_callback(double a, double b, cs_scalar_fn plus, cs_scalar_fn minus, void* user,
                                    cs_function_pair** out) {
  return guarded([&] {
    need(out, "out");
    conespec::SampledFunctionPair g;
    g.a = a;
    g.b = b;
    g.validate();
    if (plus) g.plus = [plus, user](double r) { return plus(r, user); };
    if (minus) g.minus = [minus, user](double r) { return minus(r, user); };
    *out = new cs_function_pair{std::move(g)};
  });
}

cs_status cs_function_pair_combine(double alpha, const cs_function_pair* x, double beta, const cs_function_pair* y,
                                   cs_function_pair** out) {
  return guarded([&] {
    need(x, "x");
    need(y, "y");
    need(out, "out");
    *out = new cs_function_pair{conespec::SampledFunctionPair::combine(alpha, x->g, beta, y->g)};
  });
}

void cs_function_pair_free(cs_function_pair* g) { delete g; }

cs_status cs_function_pair_support(const cs_function_pair* g, double* a, double* b) {
  return guarded([&] {
    need(g, "g");
    need(a, "a");
    need(b, "b");
    *a = g->g.a;
    *b = g->g.b;
  });
}

cs_status cs_function_pair_eval(const cs_function_pair* g, const double* r, size_t n, double* g_plus,
                                double* g_minus) {
  return guarded([&] {
    need(g, "g");
    need(r, "r");
    need(g_plus, "g_plus");
    need(g_minus, "g_minus");
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = g->g(r[i]);
      g_plus[i] = v[0];
      g_minus[i] = v[1];
    }
  });
}

cs_status cs_apply_right_inverse(const cs_mode_block* block, const cs_function_pair* g, const double* r, size_t n,
                                 const cs_tolerances* tol, double* f_plus, double* f_minus,
                                 double* coeff_from_infinity, double* coeff_from_zero) {
  return guarded([&] {
    need(g, "g");
    need(r, "r");
    need(f_plus, "f_plus");
    need(f_minus, "f_minus");
    const auto res = conespec::apply_right_inverse(mode_block(block), g->g, std::vector<double>(r, r + n),
                                                   tolerances(tol));
    std::copy(res.f_plus.begin(), res.f_plus.end(), f_plus);
    std::copy(res.f_minus.begin(), res.f_minus.end(), f_minus);
    if (coeff_from_infinity) std::copy(res.coeff_from_infinity.begin(), res.coeff_from_infinity.end(), coeff_from_infinity);
    if (coeff_from_zero) std::copy(res.coeff_from_zero.begin(), res.coeff_from_zero.end(), coeff_from_zero);
  });
}

cs_status cs_verify_right_inverse(const cs_mode_block* block, const cs_function_pair* g, size_t points,
                                  const cs_tolerances* tol, cs_greens_report* out) {
  return guarded([&] {
    need(g, "g");
    need(out, "out");
    const auto rep = conespec::verify_right_inverse(mode_block(block), g->g, points, tolerances(tol));
    *out = {rep.max_residual, rep.max_g, rep.boundary_coefficient, rep.boundary_radius, rep.calibration, rep.points};
  });
}

}  // extern "C"
