#pragma once

#include <cstddef>
#include <string>

#include "pivotlab/error.hpp"
#include "pivotlab/json_util.hpp"
#include "pivotlab/lp/linear_program.hpp"
#include "pivotlab/lp/result.hpp"

namespace pivotlab::lp {

// {"d":int, "n":int, "c":["p/q",...], "A":[["p/q",...],...], "b":["p/q",...]}

inline Json to_json(const LinearProgram& lp) {
  Json a = Json::array();
  for (const auto& row : lp.matrix()) a.push_back(vector_to_json(row));
  return Json{{"d", lp.variables()},
              {"n", lp.rows()},
              {"c", vector_to_json(lp.objective())},
              {"A", std::move(a)},
              {"b", vector_to_json(lp.rhs())}};
}

inline LinearProgram linear_program_from_json(const Json& j) {
  try {
    Matrix a;
    for (const auto& row : j.at("A")) a.push_back(vector_from_json(row));
    LinearProgram lp(vector_from_json(j.at("c")), std::move(a), vector_from_json(j.at("b")));
    if (j.contains("d") && j.at("d").get<std::size_t>() != lp.variables())
      throw Error(ErrorKind::Parse, "field d disagrees with the length of c");
    if (j.contains("n") && j.at("n").get<std::size_t>() != lp.rows())
      throw Error(ErrorKind::Parse, "field n disagrees with the number of rows of A");
    return lp;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("linear program: ") + e.what());
  }
}

inline Json to_json(const SolveResult& r) {
  Json j{{"status", std::string(to_string(r.status))}, {"pivots", r.pivots}};
  if (r.vertex) j["vertex"] = vector_to_json(*r.vertex);
  if (r.value) j["value"] = rational_to_json(*r.value);
  if (r.unbounded_ray) j["ray"] = vector_to_json(*r.unbounded_ray);
  if (r.farkas) j["farkas"] = vector_to_json(*r.farkas);
  Json trace = Json::array();
  for (const auto& v : r.trace) trace.push_back(vector_to_json(v));
  j["trace"] = std::move(trace);
  j["trace_bases"] = r.trace_bases;
  if (r.facet_stats)
    j["facet_stats"] = {{"calls", r.facet_stats->calls},
                        {"max_depth", r.facet_stats->max_depth},
                        {"base_cases", r.facet_stats->base_cases}};
  return j;
}

}  // namespace pivotlab::lp
