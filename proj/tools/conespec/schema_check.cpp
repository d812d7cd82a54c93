#include "schema_check.hpp"

namespace cli {

namespace {

bool has_type(const nlohmann::json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  if (type == "null") return v.is_null();
  return false;
}

}  // namespace

std::vector<std::string> schema_errors(const nlohmann::json& schema, const nlohmann::json& value,
                                       const std::string& path) {
  std::vector<std::string> errors;
  auto add = [&](const std::string& what) { errors.push_back(path + ": " + what); };

  if (auto t = schema.find("type"); t != schema.end() && !has_type(value, t->get<std::string>())) {
    add("expected " + t->get<std::string>());
    return errors;
  }
  if (auto e = schema.find("enum"); e != schema.end()) {
    bool found = false;
    for (const auto& option : *e) found = found || option == value;
    if (!found) add("value not in enum");
  }
  if (auto m = schema.find("minimum"); m != schema.end() && value.is_number() && value.get<double>() < m->get<double>()) {
    add("below minimum");
  }
  if (value.is_object()) {
    if (auto r = schema.find("required"); r != schema.end()) {
      for (const auto& key : *r) {
        if (!value.contains(key.get<std::string>())) add("missing required key '" + key.get<std::string>() + "'");
      }
    }
    if (auto p = schema.find("properties"); p != schema.end()) {
      for (const auto& [key, sub] : p->items()) {
        if (auto it = value.find(key); it != value.end()) {
          auto nested = schema_errors(sub, *it, path + "." + key);
          errors.insert(errors.end(), nested.begin(), nested.end());
        }
      }
    }
  }
  if (value.is_array()) {
    if (auto items = schema.find("items"); items != schema.end()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        auto nested = schema_errors(*items, value[i], path + "[" + std::to_string(i) + "]");
        errors.insert(errors.end(), nested.begin(), nested.end());
      }
    }
  }
  return errors;
}

}  // namespace cli
