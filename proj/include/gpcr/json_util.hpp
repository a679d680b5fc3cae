// Field readers for model files. Errors carry a JSON-pointer style path.

#ifndef GPCR_JSON_UTIL_HPP_
#define GPCR_JSON_UTIL_HPP_

#include <cmath>
#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpcr/error.hpp"

namespace gpcr::json_util {

using nlohmann::json;

inline json parse_document(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelError("", std::string("malformed or truncated model file: ") + e.what());
  }
}

inline const json& field(const json& obj, const std::string& name, const std::string& path) {
  if (!obj.is_object())
    throw ModelError(path, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end())
    throw ModelError(path + "/" + name, "missing field");
  return *it;
}

inline double real(const json& v, const std::string& path) {
  if (!v.is_number())
    throw ModelError(path, "expected a finite number");
  double d = v.get<double>();
  if (!std::isfinite(d))
    throw ModelError(path, "expected a finite number");
  return d;
}

inline std::vector<double> reals(const json& v, const std::string& path) {
  if (!v.is_array())
    throw ModelError(path, "expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(real(v[i], path + "/" + std::to_string(i)));
  return out;
}

inline void check_schema(const json& doc, const std::string& expected) {
  const json& s = field(doc, "schema", "");
  if (!s.is_string())
    throw ModelError("/schema", "expected a string");
  if (s.get<std::string>() != expected)
    throw ModelError("/schema", "unsupported schema version '" + s.get<std::string>() +
                                    "' (expected '" + expected + "')");
}

} // namespace gpcr::json_util

#endif
