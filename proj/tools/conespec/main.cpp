// conespec command-line front end. Links only the C API.
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "capi.hpp"
#include "schema_check.hpp"

using nlohmann::json;

namespace cli {

namespace {

struct Globals {
  bool csv = false;
  bool validate = false;
  bool pretty = false;
  bool compact = false;
  std::string tol;
};

struct Report {
  std::string command;
  json input = json::object();
  json results = json::object();
  json diagnostics = json::object();
  std::string csv;   // tabular form when the command has one
  int status = 0;    // 2 when a requested check failed
};

cs_tolerances load_tolerances(const Globals& g) {
  cs_tolerances t;
  check(cs_tolerances_from_env(&t));
  if (!g.tol.empty()) check(cs_tolerances_parse(g.tol.c_str(), &t));
  return t;
}

json tolerances_json(const cs_tolerances& t) {
  return {{"matrix", t.matrix},         {"coefficient", t.coefficient},
          {"residue", t.residue},       {"imaginary", t.imaginary},
          {"rate_collision", t.rate_collision}, {"quad_rel", t.quad_rel},
          {"quad_abs", t.quad_abs}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw Failure(1, "not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(to_double(item));
  return out;
}

// "a:b,c:d" -> {(a, b), (c, d)}
std::vector<std::pair<double, double>> parse_pairs(const std::string& s) {
  std::vector<std::pair<double, double>> out;
  for (const auto& item : split(s, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw Failure(1, "expected a:b, got '" + item + "'");
    out.emplace_back(to_double(parts[0]), to_double(parts[1]));
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure(1, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- group and spectrum sources -------------------------------------------------

struct GroupOptions {
  int m = 4;
  std::string name = "trivial";
  std::vector<std::string> params;
  std::string file;
  int rank = 1;
  int kmax = 10;
  int lift = -1;
  CLI::Option* name_option = nullptr;

  void add(CLI::App* app) {
    app->add_option("--m", m, "dimension of the cone (sphere S^{m-1})")->check(CLI::Range(2, 10));
    name_option = app->add_option("--group", name, "catalog group name");
    app->add_option("--param", params, "catalog parameter key=v1[,v2...] (repeatable)");
    app->add_option("--group-file", file, "group descriptor JSON");
    app->add_option("--r", rank, "rank of the flat twisting bundle")->check(CLI::PositiveNumber);
    app->add_option("--kmax", kmax, "largest mode index")->check(CLI::Range(0, 1000));
    app->add_option("--lift", lift, "spin structure id (default: all)");
  }

  bool use_file() const { return !file.empty() && name_option->count() == 0; }
  bool round() const { return !use_file() && name == "trivial"; }

  json echo() const {
    json j = {{"m", m}, {"group", name}, {"r", rank}, {"kmax", kmax}};
    if (!params.empty()) j["param"] = params;
    if (!file.empty()) j["group_file"] = file;
    if (lift >= 0) j["lift"] = lift;
    return j;
  }

  Group load(const cs_tolerances& tol) const {
    cs_group* g = nullptr;
    if (use_file()) {
      check(cs_group_from_json(read_file(file).c_str(), &tol, &g));
    } else {
      json p = json::object();
      for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Failure(1, "expected key=value, got '" + kv + "'");
        p[kv.substr(0, eq)] = parse_list(kv.substr(eq + 1));
      }
      check(cs_group_catalog(m, name.c_str(), p.dump().c_str(), &tol, &g));
    }
    return Group(g);
  }
};

struct Series {
  int lift_id;
  std::vector<uint64_t> plus, minus;
  cs_quotient_diagnostics diag{0.0, 0.0};
};

struct SpectrumData {
  json group;
  std::string method;
  int m = 0;
  std::vector<Series> series;
};

SpectrumData compute_spectrum(const GroupOptions& o, const cs_tolerances& tol, bool all_lifts) {
  SpectrumData out;
  const std::size_t n = static_cast<std::size_t>(o.kmax) + 1;
  if (o.round()) {
    out.m = o.m;
    out.method = "round";
    out.group = {{"name", "trivial"}, {"order", 1}, {"m", o.m}};
    Series s{-1, std::vector<uint64_t>(n), std::vector<uint64_t>(n)};
    check(cs_dirac_spectrum_round(o.m, o.rank, o.kmax, s.plus.data(), s.minus.data()));
    out.series.push_back(std::move(s));
    return out;
  }
  Group group = o.load(tol);
  std::size_t order = 0;
  const char* name = nullptr;
  check(cs_group_order(group.get(), &order));
  check(cs_group_name(group.get(), &name));
  check(cs_group_dimension(group.get(), &out.m));
  out.method = "quotient";
  out.group = {{"name", name}, {"order", order}, {"m", out.m}};

  cs_spin_structures* raw = nullptr;
  check(cs_spin_structures_enumerate(group.get(), &tol, &raw));
  SpinStructures structures(raw);
  std::size_t count = 0;
  check(cs_spin_structures_count(structures.get(), &count));
  if (count == 0) throw Failure(1, "the group admits no spin lift (no spin structure on the quotient)");
  std::vector<std::size_t> ids;
  if (o.lift >= 0) {
    if (static_cast<std::size_t>(o.lift) >= count) {
      throw Failure(1, "lift id " + std::to_string(o.lift) + " out of range, " + std::to_string(count) + " available");
    }
    ids.push_back(static_cast<std::size_t>(o.lift));
  } else if (all_lifts) {
    for (std::size_t i = 0; i < count; ++i) ids.push_back(i);
  } else {
    ids.push_back(0);
  }
  out.group["spin_structures"] = count;
  for (std::size_t id : ids) {
    Series s{static_cast<int>(id), std::vector<uint64_t>(n), std::vector<uint64_t>(n)};
    check(cs_dirac_spectrum_quotient(structures.get(), id, o.rank, o.kmax, &tol, s.plus.data(), s.minus.data(),
                                     &s.diag));
    out.series.push_back(std::move(s));
  }
  return out;
}

// ---- rate sources ---------------------------------------------------------------

struct RateOptions {
  GroupOptions group;
  std::string source = "dirac";
  double delta = 0.0;
  int q = 0;
  std::string spectrum;
  std::string mixed;

  void add(CLI::App* app) {
    group.add(app);
    app->add_option("--source", source, "dirac | laplace | list")->check(CLI::IsMember({"dirac", "laplace", "list"}));
    app->add_option("--delta", delta, "bundle degree");
    app->add_option("--q", q, "form degree (laplace source)");
    app->add_option("--spectrum", spectrum, "explicit spectrum lambda:mult,... (list source)");
    app->add_option("--mixed", mixed, "lambda_{q-1,q} values lambda:mult,... (laplace source)");
  }

  json echo() const {
    json j = group.echo();
    j["source"] = source;
    j["delta"] = delta;
    if (source == "laplace") j["q"] = q;
    if (!spectrum.empty()) j["spectrum"] = spectrum;
    if (!mixed.empty()) j["mixed"] = mixed;
    return j;
  }

  RateSet build(const cs_tolerances& tol, json& diagnostics) const {
    cs_rate_set* raw = nullptr;
    if (source == "laplace") {
      if (delta != 0.0) throw Failure(1, "--delta does not apply to Laplace rates");
      std::vector<double> lambda;
      std::vector<uint64_t> mult;
      for (const auto& [l, d] : parse_pairs(mixed)) {
        lambda.push_back(l);
        mult.push_back(static_cast<uint64_t>(d));
      }
      check(cs_rates_laplace(group.m, q, group.kmax, lambda.data(), mult.data(), lambda.size(), &raw));
    } else {
      std::vector<double> lambda;
      std::vector<uint64_t> mult;
      int m = group.m;
      if (source == "list") {
        if (spectrum.empty()) throw Failure(1, "--source list needs --spectrum");
        for (const auto& [l, d] : parse_pairs(spectrum)) {
          if (d < 0 || d != std::floor(d)) throw Failure(1, "multiplicities must be nonnegative integers");
          lambda.push_back(l);
          mult.push_back(static_cast<uint64_t>(d));
        }
      } else {
        const SpectrumData data = compute_spectrum(group, tol, false);
        m = data.m;
        const Series& s = data.series.front();
        for (std::size_t k = 0; k < s.plus.size(); ++k) {
          const double magnitude = 0.5 * (m - 1) + static_cast<double>(k);
          lambda.push_back(magnitude);
          mult.push_back(s.plus[k]);
          lambda.push_back(-magnitude);
          mult.push_back(s.minus[k]);
        }
        diagnostics["spectrum_method"] = data.method;
        diagnostics["lift_id"] = s.lift_id;
      }
      check(cs_rates_from_spectrum(lambda.data(), mult.data(), lambda.size(), m, delta, &raw));
    }
    RateSet rates(raw);
    std::size_t dropped = 0;
    check(cs_rate_set_dropped(rates.get(), &dropped));
    diagnostics["dropped"] = dropped;
    return rates;
  }
};

json rate_set_json(const cs_rate_set* rates) {
  int m = 0;
  double delta = 0.0;
  const char* convention = nullptr;
  std::size_t n = 0;
  check(cs_rate_set_info(rates, &m, &delta, &convention));
  check(cs_rate_set_size(rates, &n));
  json list = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    cs_rate r;
    check(cs_rate_set_get(rates, i, &r));
    list.push_back({{"beta", r.beta}, {"d", r.d}});
  }
  return {{"rates", list}, {"convention", convention}, {"m", m}, {"delta", delta}};
}

// ---- mode blocks -------------------------------------------------------------------

struct BlockOptions {
  cs_mode_block block{4, 0.0, 0.0, 0.0};

  void add(CLI::App* app) {
    app->add_option("--m", block.m, "dimension")->check(CLI::Range(2, 1000));
    app->add_option("--lambda", block.lambda, "vertical eigenvalue")->required();
    app->add_option("--mu", block.mu, "horizontal eigenvalue")->required();
    app->add_option("--delta", block.delta, "bundle degree");
  }

  json echo() const { return {{"m", block.m}, {"lambda", block.lambda}, {"mu", block.mu}, {"delta", block.delta}}; }
};

std::string regime(const cs_mode_block& b) {
  const char* name = nullptr;
  check(cs_mode_regime(&b, &name));
  return name;
}

std::vector<double> grid(double lo, double hi, int n, bool log_spaced) {
  if (n < 2) throw Failure(1, "grid needs at least 2 points");
  if (!(hi > lo) || (log_spaced && !(lo > 0.0))) throw Failure(1, "grid needs 0 < rmin < rmax");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    out[i] = log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

// ---- commands ---------------------------------------------------------------------

struct Command {
  CLI::App* app;
  std::function<Report(const cs_tolerances&)> run;
};

Report run_spectrum(const GroupOptions& o, const cs_tolerances& tol) {
  Report rep;
  rep.input = o.echo();
  const SpectrumData data = compute_spectrum(o, tol, true);
  json series = json::array();
  json residues = json::array();
  std::ostringstream csv;
  const bool multi = data.series.size() > 1;
  csv << (multi ? "lift_id," : "") << "k,lambda,mult_plus,mult_minus\n";
  for (const Series& s : data.series) {
    series.push_back({{"m", data.m}, {"chirality", "+"}, {"lift_id", s.lift_id}, {"multiplicities", s.plus}});
    series.push_back({{"m", data.m}, {"chirality", "-"}, {"lift_id", s.lift_id}, {"multiplicities", s.minus}});
    if (s.lift_id >= 0) {
      residues.push_back({{"lift_id", s.lift_id}, {"max_residue", s.diag.max_residue},
                          {"max_imaginary", s.diag.max_imaginary}});
    }
    for (std::size_t k = 0; k < s.plus.size(); ++k) {
      if (multi) csv << s.lift_id << ',';
      csv << k << ',' << fmt(0.5 * (data.m - 1) + static_cast<double>(k)) << ',' << s.plus[k] << ',' << s.minus[k]
          << '\n';
    }
  }
  rep.results = {{"group", data.group}, {"method", data.method}, {"series", series}};
  rep.diagnostics["eigenvalue"] = "+/-((m-1)/2 + k)";
  if (!residues.empty()) rep.diagnostics["rounding"] = residues;
  rep.csv = csv.str();
  return rep;
}

struct HodgeOptions {
  int m = 4, q = 0, kmax = 5;
};

Report run_hodge(const HodgeOptions& o) {
  Report rep;
  rep.input = {{"m", o.m}, {"q", o.q}, {"kmax", o.kmax}};
  json entries = json::array();
  std::ostringstream csv;
  csv << "k,label,eigenvalue,printed_eigenvalue\n";
  for (int k = 0; k <= o.kmax; ++k) {
    std::size_t count = 0;
    check(cs_laplace_form_spectrum(o.m, o.q, k, nullptr, 0, &count));
    std::vector<cs_form_entry> buf(count);
    check(cs_laplace_form_spectrum(o.m, o.q, k, buf.data(), buf.size(), &count));
    for (const auto& e : buf) {
      entries.push_back({{"m", e.m}, {"q", e.q}, {"table_q", e.table_q}, {"k", e.k}, {"label", e.label},
                         {"eigenvalue", e.eigenvalue}, {"printed_eigenvalue", e.printed_eigenvalue},
                         {"hodge_dual", e.hodge_dual != 0}});
      csv << k << ',' << e.label << ',' << fmt(e.eigenvalue) << ',' << fmt(e.printed_eigenvalue) << '\n';
    }
  }
  rep.results = {{"entries", entries}};
  rep.diagnostics["note"] = "Phi^0 eigenvalue uses k(k+m-2); printed_eigenvalue keeps the tabulated value";
  rep.csv = csv.str();
  return rep;
}

Report run_rates(const RateOptions& o, const cs_tolerances& tol) {
  Report rep;
  rep.input = o.echo();
  RateSet rates = o.build(tol, rep.diagnostics);
  rep.results = rate_set_json(rates.get());
  std::ostringstream csv;
  csv << "beta,d\n";
  for (const auto& r : rep.results["rates"]) csv << fmt(r["beta"].get<double>()) << ',' << r["d"].get<uint64_t>() << '\n';
  rep.csv = csv.str();
  return rep;
}

struct WallOptions {
  RateOptions rates;
  double beta2 = 0.0, beta1 = 0.0;
  std::string convention = "cfs";
};

Report run_wallcross(const WallOptions& o, const cs_tolerances& tol) {
  Report rep;
  rep.input = o.rates.echo();
  rep.input["beta2"] = o.beta2;
  rep.input["beta1"] = o.beta1;
  rep.input["convention"] = o.convention;
  RateSet rates = o.rates.build(tol, rep.diagnostics);
  int64_t jump = 0, diff = 0;
  check(cs_wall_crossing_jump(rates.get(), o.beta2, o.beta1, tol.rate_collision, &jump));
  check(cs_index_difference(rates.get(), o.beta2, o.beta1,
                            o.convention == "acf" ? CS_CONVENTION_ACF : CS_CONVENTION_CFS, tol.rate_collision, &diff));
  rep.results = {{"beta2", o.beta2}, {"beta1", o.beta1}, {"jump", jump}, {"index_difference", diff},
                 {"index_convention", o.convention}};
  rep.diagnostics["meaning"] = o.convention == "cfs" ? "ind_{beta2} - ind_{beta1} = +jump"
                                                     : "ind_{beta2} - ind_{beta1} = -jump";
  return rep;
}

struct CurveOptions {
  std::string pairs;
  double rmin = 0.05, rmax = 10.0;
  int n = 256;
  bool log = false;
  std::string out_dir = ".";
  std::string prefix = "curve";
};

Report run_curves(const CurveOptions& o) {
  Report rep;
  rep.input = {{"pairs", o.pairs}, {"rmin", o.rmin}, {"rmax", o.rmax}, {"n", o.n}, {"log", o.log},
               {"out_dir", o.out_dir}, {"prefix", o.prefix}};
  const auto pairs = parse_pairs(o.pairs);
  if (pairs.empty()) throw Failure(1, "--pairs is empty");
  const auto r = grid(o.rmin, o.rmax, o.n, o.log);
  std::filesystem::create_directories(o.out_dir);
  json curves = json::array();
  std::ostringstream all;
  all << "lambda,mu,r,plus_branch,minus_branch\n";
  for (const auto& [lambda, mu] : pairs) {
    std::vector<double> plus(r.size()), minus(r.size());
    check(cs_mode_eigencurve(lambda, mu, r.data(), r.size(), plus.data(), minus.data()));
    char name[128];
    std::snprintf(name, sizeof name, "%s_lambda%g_mu%g.csv", o.prefix.c_str(), lambda, mu);
    const std::string path = (std::filesystem::path(o.out_dir) / name).string();
    std::ofstream out(path);
    if (!out) throw Failure(1, "cannot write " + path);
    out << "r,plus_branch,minus_branch\n";
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << fmt(r[i]) << ',' << fmt(plus[i]) << ',' << fmt(minus[i]) << '\n';
      all << fmt(lambda) << ',' << fmt(mu) << ',' << fmt(r[i]) << ',' << fmt(plus[i]) << ',' << fmt(minus[i]) << '\n';
    }
    curves.push_back({{"lambda", lambda}, {"mu", mu}, {"file", path}, {"points", r.size()},
                      {"limit_at_infinity", std::abs(mu)}});
  }
  rep.results = {{"curves", curves}};
  rep.csv = all.str();
  return rep;
}

struct ModesOptions {
  BlockOptions block;
  double rmin = 0.1, rmax = 10.0;
  int n = 512;
  double ilo = 0.5, ihi = 5.0;
  int samples = 0;
  double max_residual = 1e-8, max_deviation = 1e-7;
};

Report run_modes(const ModesOptions& o) {
  Report rep;
  const cs_mode_block& b = o.block.block;
  rep.input = o.block.echo();
  rep.input.update({{"rmin", o.rmin}, {"rmax", o.rmax}, {"n", o.n}, {"integrator_lo", o.ilo},
                    {"integrator_hi", o.ihi}, {"samples", o.samples}});
  const auto r = grid(o.rmin, o.rmax, o.n, true);
  cs_kernel_report k;
  check(cs_verify_kernel_basis(&b, r.data(), r.size(), o.ilo, o.ihi, &k));

  json solutions = json::array();
  std::vector<std::vector<double>> columns;
  std::ostringstream header;
  header << "r";
  for (std::size_t i = 0; i < 2; ++i) {
    cs_solution_info info;
    check(cs_kernel_solution_info(&b, i, &info));
    json s = {{"name", info.name},
              {"exponent_at_zero", info.exponent_at_zero},
              {"exponent_at_infinity", info.exponent_at_infinity},
              {"behaviour_at_zero", info.behaviour_at_zero},
              {"behaviour_at_infinity", info.behaviour_at_infinity},
              {"degenerate", info.degenerate != 0},
              {"residual", k.residual[i]},
              {"integrator_deviation", k.deviation[i]}};
    const auto sample_r = o.samples > 1 ? grid(o.rmin, o.rmax, o.samples, true) : r;
    std::vector<double> fp(sample_r.size()), fm(sample_r.size());
    check(cs_kernel_solution_eval(&b, i, sample_r.data(), sample_r.size(), fp.data(), fm.data()));
    if (o.samples > 1) s["samples"] = {{"r", sample_r}, {"f_plus", fp}, {"f_minus", fm}};
    if (columns.empty()) columns.push_back(sample_r);
    columns.push_back(fp);
    columns.push_back(fm);
    header << ',' << info.name << "_plus," << info.name << "_minus";
    solutions.push_back(s);
  }
  rep.results = {{"block", o.block.echo()}, {"regime", regime(b)}, {"solutions", solutions},
                 {"max_residual", k.max_residual}, {"max_integrator_deviation", k.max_integrator_deviation}};
  rep.diagnostics["thresholds"] = {{"residual", o.max_residual}, {"integrator_deviation", o.max_deviation}};
  rep.diagnostics["grid"] = {{"points", k.points}, {"spacing", "log"}};
  if (k.max_residual > o.max_residual || k.max_integrator_deviation > o.max_deviation) {
    rep.status = 2;
    rep.diagnostics["check"] = "failed";
  } else {
    rep.diagnostics["check"] = "passed";
  }
  std::ostringstream csv;
  csv << header.str() << '\n';
  for (std::size_t i = 0; i < columns[0].size(); ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) csv << (c ? "," : "") << fmt(columns[c][i]);
    csv << '\n';
  }
  rep.csv = csv.str();
  return rep;
}

struct GreensOptions {
  BlockOptions block;
  std::string gaussian = "3:0.5";
  std::string bump;
  std::string samples_file;
  double amp_plus = 1.0, amp_minus = 0.0, floor = 0.2;
  std::string eval;
  int n = 64;
  bool verify = true;
  int points = 64;
  double max_residual = 1e-6;
  CLI::Option* gaussian_option = nullptr;
};

FunctionPair load_input(const GreensOptions& o, json& echo) {
  cs_function_pair* raw = nullptr;
  const int sources = (o.bump.empty() ? 0 : 1) + (o.samples_file.empty() ? 0 : 1) + (o.gaussian_option->count() ? 1 : 0);
  if (sources > 1) throw Failure(1, "choose one of --gaussian, --bump, --samples-file");
  if (!o.samples_file.empty()) {
    const json doc = json::parse(read_file(o.samples_file));
    const auto r = doc.at("r").get<std::vector<double>>();
    const auto gp = doc.at("f_plus").get<std::vector<double>>();
    const auto gm = doc.at("f_minus").get<std::vector<double>>();
    if (gp.size() != r.size() || gm.size() != r.size()) throw Failure(1, "sample arrays differ in length");
    check(cs_function_pair_samples(r.data(), gp.data(), gm.data(), r.size(), &raw));
    echo["input"] = {{"kind", "samples"}, {"file", o.samples_file}, {"points", r.size()}};
  } else if (!o.bump.empty()) {
    const auto p = parse_pairs(o.bump);
    if (p.size() != 1) throw Failure(1, "--bump expects a:b");
    check(cs_function_pair_bump(p[0].first, p[0].second, o.amp_plus, o.amp_minus, &raw));
    echo["input"] = {{"kind", "bump"}, {"a", p[0].first}, {"b", p[0].second}};
  } else {
    const auto p = parse_pairs(o.gaussian);
    if (p.size() != 1) throw Failure(1, "--gaussian expects center:width");
    check(cs_function_pair_gaussian(p[0].first, p[0].second, o.amp_plus, o.amp_minus, o.floor, &raw));
    echo["input"] = {{"kind", "gaussian"}, {"center", p[0].first}, {"width", p[0].second}, {"floor", o.floor}};
  }
  echo["input"]["amp_plus"] = o.amp_plus;
  echo["input"]["amp_minus"] = o.amp_minus;
  return FunctionPair(raw);
}

Report run_greens(const GreensOptions& o, const cs_tolerances& tol) {
  Report rep;
  const cs_mode_block& b = o.block.block;
  rep.input = o.block.echo();
  FunctionPair g = load_input(o, rep.input);
  double a = 0.0, bb = 0.0;
  check(cs_function_pair_support(g.get(), &a, &bb));
  std::vector<double> r = o.eval.empty() ? grid(a, bb, o.n, false) : parse_list(o.eval);
  rep.input.update({{"eval", o.eval}, {"n", o.n}, {"verify", o.verify}, {"points", o.points}});

  std::vector<double> fp(r.size()), fm(r.size());
  check(cs_apply_right_inverse(&b, g.get(), r.data(), r.size(), &tol, fp.data(), fm.data(), nullptr, nullptr));
  rep.results = {{"block", o.block.echo()}, {"regime", regime(b)}, {"support", {a, bb}},
                 {"r", r}, {"f_plus", fp}, {"f_minus", fm}};
  if (o.verify) {
    cs_greens_report v;
    check(cs_verify_right_inverse(&b, g.get(), static_cast<std::size_t>(o.points), &tol, &v));
    rep.results["verification"] = {{"max_residual", v.max_residual}, {"max_g", v.max_g},
                                   {"boundary_coefficient", v.boundary_coefficient},
                                   {"boundary_radius", v.boundary_radius}, {"calibration", v.calibration},
                                   {"points", v.points}};
    rep.diagnostics["thresholds"] = {{"residual", o.max_residual}};
    if (v.max_residual > o.max_residual) {
      rep.status = 2;
      rep.diagnostics["check"] = "failed";
    } else {
      rep.diagnostics["check"] = "passed";
    }
  }
  std::ostringstream csv;
  csv << "r,f_plus,f_minus\n";
  for (std::size_t i = 0; i < r.size(); ++i) csv << fmt(r[i]) << ',' << fmt(fp[i]) << ',' << fmt(fm[i]) << '\n';
  rep.csv = csv.str();
  return rep;
}

struct LedgerOptions {
  int64_t cfs = 0, acf = 0;
  std::string dims;
};

Report run_ledger(const LedgerOptions& o) {
  Report rep;
  rep.input = {{"ind_cfs", o.cfs}, {"ind_acf", o.acf}};
  std::vector<int64_t> dims;
  if (!o.dims.empty()) {
    for (double d : parse_list(o.dims)) {
      if (d != std::floor(d)) throw Failure(1, "--dims takes integers");
      dims.push_back(static_cast<int64_t>(d));
    }
    if (dims.size() != 4) throw Failure(1, "--dims takes ker,xker,xcoker,coker");
    rep.input["dims"] = dims;
  }
  cs_ledger_result res;
  check(cs_gluing_index_ledger(o.cfs, o.acf, dims.empty() ? nullptr : dims.data(), &res));
  rep.results = {{"total", res.total}};
  if (res.has_dims) {
    rep.results["exactness_ok"] = res.exactness_ok != 0;
    rep.results["alternating_sum"] = res.alternating_sum;
  }
  return rep;
}

// ---- output ---------------------------------------------------------------------

int emit(const Report& rep, const Globals& g, const cs_tolerances& tol) {
  json envelope = {{"command", rep.command}, {"input", rep.input}, {"version", cs_version()},
                   {"results", rep.results}, {"diagnostics", rep.diagnostics}};
  envelope["diagnostics"]["tolerances"] = tolerances_json(tol);

  const bool pretty = g.pretty || (!g.compact && isatty(STDOUT_FILENO));
  const std::string text = envelope.dump(pretty ? 2 : -1);
  int status = rep.status;
  if (g.validate) {
    const json again = json::parse(text);
    std::vector<std::string> errors;
    if (again != envelope || again.dump(pretty ? 2 : -1) != text) errors.push_back("round trip changed the payload");
    const char* schema_text = embedded_schema(rep.command);
    if (*schema_text == '\0') {
      errors.push_back("no schema for " + rep.command);
    } else {
      auto e = schema_errors(json::parse(schema_text), again);
      errors.insert(errors.end(), e.begin(), e.end());
    }
    for (const auto& e : errors) std::cerr << "validate: " << e << '\n';
    if (!errors.empty()) status = 2;
  }
  if (g.csv) {
    if (rep.csv.empty()) throw Failure(1, rep.command + " has no tabular output");
    std::cout << rep.csv;
  } else {
    std::cout << text << '\n';
  }
  return status;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Spectral data of cone and orbifold model operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cs_version());
  Globals globals;
  app.add_flag("--csv", globals.csv, "tabular output");
  app.add_flag("--validate", globals.validate, "re-parse the report and check it against its schema");
  app.add_flag("--pretty", globals.pretty, "indented JSON");
  app.add_flag("--compact", globals.compact, "single-line JSON");
  app.add_option("--tol", globals.tol, "tolerance overrides key=value,... (after CONE_SPECTRA_TOL)");
  app.fallthrough();

  std::vector<Command> commands;

  GroupOptions spectrum;
  auto* sc = app.add_subcommand("spectrum", "Dirac multiplicities on S^{m-1}/Gamma");
  spectrum.add(sc);
  commands.push_back({sc, [&](const cs_tolerances& t) { return run_spectrum(spectrum, t); }});

  HodgeOptions hodge;
  auto* hc = app.add_subcommand("hodge", "Hodge Laplacian families on q-forms of S^{m-1}");
  hc->add_option("--m", hodge.m)->check(CLI::Range(2, 1000));
  hc->add_option("--q", hodge.q)->required();
  hc->add_option("--kmax", hodge.kmax)->check(CLI::Range(0, 100000));
  commands.push_back({hc, [&](const cs_tolerances&) { return run_hodge(hodge); }});

  RateOptions rates;
  auto* rc = app.add_subcommand("rates", "critical rates");
  rates.add(rc);
  commands.push_back({rc, [&](const cs_tolerances& t) { return run_rates(rates, t); }});

  WallOptions wall;
  auto* wc = app.add_subcommand("wallcross", "index jump across an interval of weights");
  wall.rates.add(wc);
  wc->add_option("--beta2", wall.beta2, "lower weight")->required();
  wc->add_option("--beta1", wall.beta1, "upper weight")->required();
  wc->add_option("--convention", wall.convention, "cfs | acf")->check(CLI::IsMember({"cfs", "acf"}));
  commands.push_back({wc, [&](const cs_tolerances& t) { return run_wallcross(wall, t); }});

  CurveOptions curves;
  auto* cc = app.add_subcommand("curves", "eigenvalue curves of mode blocks, one CSV per pair");
  cc->add_option("--pairs", curves.pairs, "lambda:mu,...")->required();
  cc->add_option("--rmin", curves.rmin);
  cc->add_option("--rmax", curves.rmax);
  cc->add_option("--n", curves.n);
  cc->add_flag("--log", curves.log, "log-spaced grid");
  cc->add_option("--out-dir", curves.out_dir);
  cc->add_option("--prefix", curves.prefix);
  commands.push_back({cc, [&](const cs_tolerances&) { return run_curves(curves); }});

  ModesOptions modes;
  auto* mc = app.add_subcommand("modes", "kernel basis of a mode block with residual report");
  modes.block.add(mc);
  mc->add_option("--rmin", modes.rmin);
  mc->add_option("--rmax", modes.rmax);
  mc->add_option("--n", modes.n);
  mc->add_option("--ilo", modes.ilo, "integrator cross-check lower end");
  mc->add_option("--ihi", modes.ihi, "integrator cross-check upper end");
  mc->add_option("--samples", modes.samples, "emit solution samples on this many points");
  mc->add_option("--max-residual", modes.max_residual);
  mc->add_option("--max-deviation", modes.max_deviation);
  commands.push_back({mc, [&](const cs_tolerances&) { return run_modes(modes); }});

  GreensOptions greens;
  auto* gc = app.add_subcommand("greens", "apply and verify the right inverse of a mode block");
  greens.block.add(gc);
  greens.gaussian_option = gc->add_option("--gaussian", greens.gaussian, "center:width");
  gc->add_option("--bump", greens.bump, "a:b smooth compact bump");
  gc->add_option("--samples-file", greens.samples_file, "JSON {r, f_plus, f_minus}");
  gc->add_option("--amp-plus", greens.amp_plus);
  gc->add_option("--amp-minus", greens.amp_minus);
  gc->add_option("--floor", greens.floor, "left cut of the Gaussian support");
  gc->add_option("--eval", greens.eval, "evaluation radii r1,r2,...");
  gc->add_option("--n", greens.n, "evaluation points across the support");
  gc->add_flag("!--no-verify", greens.verify, "skip the identity check");
  gc->add_option("--points", greens.points, "identity check points");
  gc->add_option("--max-residual", greens.max_residual);
  commands.push_back({gc, [&](const cs_tolerances& t) { return run_greens(greens, t); }});

  LedgerOptions ledger;
  auto* lc = app.add_subcommand("ledger", "gluing index arithmetic");
  lc->add_option("--ind-cfs", ledger.cfs)->required();
  lc->add_option("--ind-acf", ledger.acf)->required();
  lc->add_option("--dims", ledger.dims, "ker,xker,xcoker,coker");
  commands.push_back({lc, [&](const cs_tolerances&) { return run_ledger(ledger); }});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const cs_tolerances tol = load_tolerances(globals);
    for (auto& c : commands) {
      if (!c.app->parsed()) continue;
      Report rep = c.run(tol);
      rep.command = c.app->get_name();
      return emit(rep, globals, tol);
    }
    return 1;
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cli

int main(int argc, char** argv) { return cli::run(argc, argv); }
