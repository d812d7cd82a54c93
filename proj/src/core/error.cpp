#include "conespec/error.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <string>

#include "conespec/tolerances.hpp"

namespace conespec {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kNotOrthogonal: return "matrix not orthogonal";
    case ErrorCode::kNotSpecialOrthogonal: return "determinant is not +1";
    case ErrorCode::kCapExceeded: return "group closure exceeds element cap";
    case ErrorCode::kTolerance: return "tolerance check failed";
    case ErrorCode::kConvergence: return "iteration did not converge";
    case ErrorCode::kRateCollision: return "interval endpoint coincides with a critical rate";
    case ErrorCode::kOverflow: return "integer overflow";
    case ErrorCode::kParse: return "parse error";
  }
  return "unknown error";
}

Tolerances Tolerances::parse(std::string_view spec, Tolerances base) {
  Tolerances t = base;
  while (!spec.empty()) {
    auto comma = spec.find(',');
    std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::kParse, "tolerance override '" + std::string(item) + "' is not key=value");
    }
    std::string key(item.substr(0, eq));
    std::string value(item.substr(eq + 1));
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(value.c_str(), &end);
    if (errno != 0 || end == value.c_str() || *end != '\0' || !(v > 0.0)) {
      fail(ErrorCode::kParse, "tolerance '" + key + "' needs a positive number, got '" + value + "'");
    }
    if (key == "matrix") t.matrix = v;
    else if (key == "coefficient") t.coefficient = v;
    else if (key == "residue") t.residue = v;
    else if (key == "imaginary") t.imaginary = v;
    else if (key == "rate_collision") t.rate_collision = v;
    else if (key == "quad_rel") t.quad_rel = v;
    else if (key == "quad_abs") t.quad_abs = v;
    else fail(ErrorCode::kParse, "unknown tolerance key '" + key + "'");
  }
  return t;
}

Tolerances Tolerances::from_env() {
  const char* env = std::getenv("CONE_SPECTRA_TOL");
  if (env == nullptr) return {};
  return parse(env);
}

}  // namespace conespec
