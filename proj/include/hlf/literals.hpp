#pragma once

#include <json.hpp>

#include "hlf/verify.hpp"

namespace hlf {

using json = nlohmann::json;

// String literal grammars used by job files:
//   element  : nested Laurent syntax, e.g. "t2^-1*(1+t1) + t2^0*(t1^2)"
//   dist     : "dist(<elem>; <gamma>, <delta>)"
//   ball     : "ball(<elem>; <gamma>)"
//   box      : "box[<dist-or-ball>, ...]"
DistinguishedSet parse_dist_literal(const FieldRef& f, const std::string& text);
Ball parse_ball_literal(const FieldRef& f, const std::string& text);
DistBox parse_distbox_literal(const FieldRef& f, const std::string& text);

// Set expressions as JSON: a literal string, {"union": [...]}, or
// {"diff": [base, hole, ...]}.
SetExpr parse_set_expr(const FieldRef& f, const json& spec);

// Matrices as nested arrays of element strings.
MatF parse_matrix(const FieldRef& f, const json& spec);
IntMat parse_intmat(const json& spec);
ResMat parse_resmat(const ResRingPtr& ring, const json& spec);

// GL_n function literals:
//   { "kind": "cong"|"res0", "A": [[...]], "Gamma": [[...]], "level": m,
//     "profile": "full" | {"constant": "<laurent>"}
//               | {"values": [[<resmat>, "<laurent>"], ...]} }
BasicFn parse_basic_fn(const FieldRef& f, unsigned n, const json& spec,
                       unsigned default_level = 1);
HeckeElem parse_hecke(const FieldRef& f, unsigned n, const json& spec,
                      unsigned default_level = 1);
json render_hecke(const HeckeElem& h);

// Simple functions on F^n:
//   { "terms": [ { "a": ["<elem>", ...], "gamma": [..], "shift": k,
//                  "g": [ {"coeff": "<laurent>", "centers": ["<eelem>", ..],
//                          "levels": [..]} , ... ] } ] }
SimpleFn parse_simplefn(const FieldRef& f, unsigned n, const json& spec);

// Subgroup descriptors, serialized as
//   { "kind": ..., "Gamma": [[...]], "level": m, "H": [<resmat>, ...] }
json render_subgroup(const SubgroupDescriptor& d);

struct JobResult {
    json document;
    int exit_code = 0;
};

// Validates and runs one job object; deterministic output.
JobResult run_job(const json& job);

// Renders a job result in the requested format ("json", "text", "csv").
std::string render_result(const JobResult& r, const std::string& format);

} // namespace hlf
