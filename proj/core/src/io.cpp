// Copyright 2026 The cvw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvw/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cvw/errors.hpp"
#include "json.hpp"

namespace cvw {
namespace {

using Json = nlohmann::ordered_json;

void write_value(const Json& j, std::string& out, int indent);

void newline(std::string& out, int indent) {
  out += '\n';
  out.append(static_cast<std::size_t>(indent), ' ');
}

bool is_flat_number_array(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& e : j) {
    if (!e.is_number()) return false;
  }
  return true;
}

void write_value(const Json& j, std::string& out, int indent) {
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      break;
    case Json::value_t::string:
      out += j.dump();
      break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      // Matrix rows stay on one line.
      const bool flat = is_flat_number_array(j);
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(out, indent + 2);
        write_value(e, out, indent + 2);
      }
      if (!flat) newline(out, indent);
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(out, indent + 2);
        out += Json(key).dump();
        out += ": ";
        write_value(value, out, indent + 2);
      }
      newline(out, indent);
      out += '}';
      break;
    }
    default:
      throw Error("json writer: unsupported value");
  }
}

std::string dump(const Json& j) {
  std::string out;
  write_value(j, out, 0);
  out += '\n';
  return out;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

std::optional<bool> read_optional_bool(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  if (j.at(key).is_null()) return std::nullopt;
  return field<bool>(j, key);
}

Json verdict_json(const CorrelationVerdict& v) {
  Json j;
  j["physical"] = v.physical;
  j["ppt"] = optional_bool(v.ppt);
  j["separable_necessary_met"] = optional_bool(v.separable_necessary_met);
  j["gaussian_separable"] =
      v.gaussian_separable ? Json(to_string(*v.gaussian_separable)) : Json(nullptr);
  j["steerable_a_to_b"] = optional_bool(v.steerable_a_to_b);
  j["steerable_b_to_a"] = optional_bool(v.steerable_b_to_a);
  Json w = Json::object();
  for (const auto& [name, value] : v.witnesses) w[name] = value;
  j["witnesses"] = w;
  return j;
}

CorrelationVerdict verdict_from(const Json& j) {
  CorrelationVerdict v;
  v.physical = field<bool>(j, "physical");
  v.ppt = read_optional_bool(j, "ppt");
  v.separable_necessary_met = read_optional_bool(j, "separable_necessary_met");
  if (!j.contains("gaussian_separable")) throw ParseError("missing field 'gaussian_separable'");
  if (!j.at("gaussian_separable").is_null()) {
    v.gaussian_separable = ternary_from_string(field<std::string>(j, "gaussian_separable"));
  }
  v.steerable_a_to_b = read_optional_bool(j, "steerable_a_to_b");
  v.steerable_b_to_a = read_optional_bool(j, "steerable_b_to_a");
  const Json& w = j.contains("witnesses") ? j.at("witnesses") : Json::object();
  if (!w.is_object()) throw ParseError("'witnesses' must be an object");
  for (const auto& [name, value] : w.items()) {
    if (!value.is_number()) throw ParseError("witness '" + name + "' is not a number");
    v.witnesses[name] = value.get<double>();
  }
  return v;
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) throw NonFiniteError("cannot serialise a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CovarianceMatrix cm_from_json(const std::string& text) {
  const Json j = parse(text);
  const int n = field<int>(j, "n_modes");
  const int n_alice = field<int>(j, "n_alice");
  const std::string ord = j.contains("ordering") ? field<std::string>(j, "ordering") : "interleaved";
  Ordering ordering;
  if (ord == "interleaved") {
    ordering = Ordering::interleaved;
  } else if (ord == "block") {
    ordering = Ordering::block;
  } else {
    throw ParseError("ordering must be 'interleaved' or 'block', got '" + ord + "'");
  }
  if (n < 1) throw DimensionError("n_modes must be >= 1");
  if (n_alice != n - 1) throw DimensionError("n_alice must equal n_modes - 1");

  if (!j.contains("matrix") || !j.at("matrix").is_array()) throw ParseError("missing 'matrix'");
  const Json& rows = j.at("matrix");
  const auto dim = static_cast<std::size_t>(2 * n);
  if (rows.size() != dim) throw DimensionError("matrix must have 2 n_modes rows");
  Eigen::MatrixXd m(2 * n, 2 * n);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!rows[r].is_array() || rows[r].size() != dim) {
      throw DimensionError("matrix row " + std::to_string(r) + " must have 2 n_modes entries");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      if (!rows[r][c].is_number()) throw ParseError("matrix entries must be numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c].get<double>();
    }
  }
  return CovarianceMatrix(m, ordering);
}

std::string cm_to_json(const CovarianceMatrix& v, Ordering ordering) {
  const Eigen::MatrixXd m = v.in_ordering(ordering);
  Json j;
  j["n_modes"] = v.n_modes();
  j["n_alice"] = v.n_alice();
  j["ordering"] = ordering == Ordering::interleaved ? "interleaved" : "block";
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return dump(j);
}

CovarianceMatrix read_cm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return cm_from_json(ss.str());
}

void write_cm_file(const std::string& path, const CovarianceMatrix& v) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << cm_to_json(v);
  if (!out) throw Error("write failed for '" + path + "'");
}

std::string verdict_to_json(const CorrelationVerdict& v) { return dump(verdict_json(v)); }

CorrelationVerdict verdict_from_json(const std::string& text) { return verdict_from(parse(text)); }

bool Report::operator==(const Report& other) const {
  return input_descriptor == other.input_descriptor && verdict == other.verdict &&
         timing_ms == other.timing_ms && tol == other.tol && gaussian == other.gaussian &&
         optimizer.tol == other.optimizer.tol && optimizer.max_iters == other.optimizer.max_iters &&
         optimizer.max_restarts == other.optimizer.max_restarts &&
         optimizer.positivity_floor == other.optimizer.positivity_floor &&
         optimizer.rng_seed == other.optimizer.rng_seed;
}

std::string report_to_json(const Report& r) {
  Json j;
  j["input_descriptor"] = r.input_descriptor;
  j["verdict"] = verdict_json(r.verdict);
  Json opt;
  opt["tol"] = r.optimizer.tol;
  opt["max_iters"] = r.optimizer.max_iters;
  opt["max_restarts"] = r.optimizer.max_restarts;
  opt["positivity_floor"] = r.optimizer.positivity_floor;
  opt["rng_seed"] = r.optimizer.rng_seed;
  Json echo;
  echo["tol"] = r.tol;
  echo["gaussian"] = r.gaussian;
  echo["optimizer"] = opt;
  j["config_echo"] = echo;
  if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
  return dump(j);
}

Report report_from_json(const std::string& text) {
  const Json j = parse(text);
  Report r;
  r.input_descriptor = field<std::string>(j, "input_descriptor");
  if (!j.contains("verdict")) throw ParseError("missing field 'verdict'");
  r.verdict = verdict_from(j.at("verdict"));
  if (!j.contains("config_echo")) throw ParseError("missing field 'config_echo'");
  const Json& echo = j.at("config_echo");
  r.tol = field<double>(echo, "tol");
  r.gaussian = field<bool>(echo, "gaussian");
  if (!echo.contains("optimizer")) throw ParseError("missing field 'optimizer'");
  const Json& opt = echo.at("optimizer");
  r.optimizer.tol = field<double>(opt, "tol");
  r.optimizer.max_iters = field<int>(opt, "max_iters");
  r.optimizer.max_restarts = field<int>(opt, "max_restarts");
  r.optimizer.positivity_floor = field<double>(opt, "positivity_floor");
  r.optimizer.rng_seed = field<std::uint64_t>(opt, "rng_seed");
  if (j.contains("timing_ms")) r.timing_ms = field<double>(j, "timing_ms");
  return r;
}

}  // namespace cvw
