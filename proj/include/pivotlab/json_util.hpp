#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "pivotlab/error.hpp"
#include "pivotlab/rational.hpp"

namespace pivotlab {

using Json = nlohmann::json;

/// Accepts "p/q" strings and, for hand-written files, plain JSON integers.
inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw Error(ErrorKind::Parse, "expected a \"p/q\" string, got " + j.dump());
}

inline Json rational_to_json(const Rational& q) { return to_string(q); }

inline Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_to_json(q));
  return out;
}

inline Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "expected an array of rationals");
  Vector v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace pivotlab
