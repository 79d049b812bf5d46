#pragma once

// JSON parameter files for the command-line tool.
//
//   {
//     "schema": 1,
//     "form": "normalized",            // or "raw"
//     "params": {"a20": "1/10", "b11": "-0.2", ...},
//     "options": {"order": 4, "rtol": 1e-12, "radii": [0.05, 0.1, 0.15], "tol": 1e-7}
//   }
//
// Coefficients are exact: fraction or decimal strings, or JSON integers.
// JSON floating-point numbers are read through their shortest round-trip
// decimal spelling. Missing coefficients are zero.

#include <charconv>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "centerkit/field.hpp"

namespace centerkit::cli {

class ParamFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int schema_version = 1;

struct RunOptions {
  int order = 4;
  double rtol = 1e-12;
  std::vector<double> radii{0.05, 0.1, 0.15};
  /// Center threshold on |d| for the numerical oracle.
  double tol = 1e-7;
  /// Focus threshold: some radius must exceed it.
  double focus_tol = 1e-5;
  unsigned threads = 1;
};

struct ParamFile {
  std::variant<ReversibleParams<Rational>, ReversibleParamsRaw<Rational>> params;
  RunOptions options;

  bool raw() const { return std::holds_alternative<ReversibleParamsRaw<Rational>>(params); }
};

inline Rational parse_coefficient(const nlohmann::json& v, std::string_view name) {
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
      return Rational::parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    }
  } catch (const std::invalid_argument& e) {
    throw ParamFileError("coefficient " + std::string(name) + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw ParamFileError("coefficient " + std::string(name) + ": " + e.what());
  }
  throw ParamFileError("coefficient " + std::string(name) + " must be a string or a number");
}

template <class Params>
Params parse_params(const nlohmann::json& obj) {
  if (!obj.is_object()) throw ParamFileError("\"params\" must be an object");
  Params p;
  for (const auto& [key, value] : obj.items()) {
    std::size_t idx = Params::size;
    for (std::size_t i = 0; i < Params::size; ++i)
      if (Params::names[i] == key) idx = i;
    if (idx == Params::size) throw ParamFileError("unknown coefficient \"" + key + "\"");
    p[idx] = parse_coefficient(value, key);
  }
  return p;
}

inline RunOptions parse_options(const nlohmann::json& obj) {
  RunOptions o;
  if (obj.is_null()) return o;
  if (!obj.is_object()) throw ParamFileError("\"options\" must be an object");
  try {
    for (const auto& [key, value] : obj.items()) {
      if (key == "order") o.order = value.get<int>();
      else if (key == "rtol") o.rtol = value.get<double>();
      else if (key == "radii") o.radii = value.get<std::vector<double>>();
      else if (key == "tol") o.tol = value.get<double>();
      else if (key == "focus_tol") o.focus_tol = value.get<double>();
      else if (key == "threads") o.threads = value.get<unsigned>();
      else throw ParamFileError("unknown option \"" + key + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParamFileError(std::string("bad option value: ") + e.what());
  }
  if (o.order < 2) throw ParamFileError("order must be >= 2");
  if (!(o.rtol > 0)) throw ParamFileError("rtol must be positive");
  if (o.radii.empty()) throw ParamFileError("radii must be nonempty");
  for (double r : o.radii)
    if (!(r > 0)) throw ParamFileError("radii must be positive");
  return o;
}

inline ParamFile parse_param_file(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParamFileError("parameter file must be a JSON object");
  const int schema = doc.value("schema", schema_version);
  if (schema != schema_version) throw ParamFileError("unsupported schema version " + std::to_string(schema));
  const std::string form = doc.value("form", std::string("normalized"));
  if (!doc.contains("params")) throw ParamFileError("missing \"params\"");
  ParamFile pf;
  if (form == "normalized") pf.params = parse_params<ReversibleParams<Rational>>(doc.at("params"));
  else if (form == "raw") pf.params = parse_params<ReversibleParamsRaw<Rational>>(doc.at("params"));
  else throw ParamFileError("form must be \"normalized\" or \"raw\"");
  pf.options = parse_options(doc.contains("options") ? doc.at("options") : nlohmann::json());
  return pf;
}

inline ParamFile parse_param_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParamFileError(std::string("invalid JSON: ") + e.what());
  }
  return parse_param_file(doc);
}

template <class Params>
nlohmann::json params_to_json(const Params& p) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < Params::size; ++i) out[std::string(Params::names[i])] = p[i].str();
  return out;
}

inline nlohmann::json options_to_json(const RunOptions& o) {
  return {{"order", o.order}, {"rtol", o.rtol}, {"radii", o.radii}, {"tol", o.tol},
          {"focus_tol", o.focus_tol}, {"threads", o.threads}};
}

/// Serialises back to the input schema; parse_param_file inverts it.
inline nlohmann::json to_json(const ParamFile& pf) {
  nlohmann::json out;
  out["schema"] = schema_version;
  if (pf.raw()) {
    out["form"] = "raw";
    out["params"] = params_to_json(std::get<ReversibleParamsRaw<Rational>>(pf.params));
  } else {
    out["form"] = "normalized";
    out["params"] = params_to_json(std::get<ReversibleParams<Rational>>(pf.params));
  }
  out["options"] = options_to_json(pf.options);
  return out;
}

}  // namespace centerkit::cli
