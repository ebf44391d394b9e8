#pragma once

// JSON encodings of the exact types, used by scenario files and reports.
// Rationals are strings ("3", "-1/2"); Gaussian values are a rational or a
// [re, im] pair; Z[i] elements are [re, im] integer pairs.

#include <json.hpp>

#include "fockmod/dynamics.hpp"
#include "fockmod/error.hpp"
#include "fockmod/semicross.hpp"

namespace fockmod::json_io {

using nlohmann::json;

/// Integer, decimal-free string "p/q", or "p".
mpq_class parse_rational(const json& j);
json rational_json(const mpq_class& q);

GaussianRational parse_gaussian(const json& j);
json gaussian_json(const GaussianRational& g);

DomainElem parse_domain_elem(const json& j, Domain d);
json domain_elem_json(const DomainElem& r);

/// {"domain": "Z", "free_rank": a, "torsion": [...]} or, over Z[i],
/// {"domain": "Zi", "free_rank": n} for Z[i]^n, optionally with explicit
/// "torsion" and "i_action" on the underlying group.
ModulePresentation parse_module(const json& j);
json module_json(const ModulePresentation& m);

ModuleElem parse_module_elem(const json& j, const ModulePresentation& m);
json module_elem_json(const ModuleElem& x);

SubmoduleDesc parse_subgroup(const json& j, const ModulePresentation& m);
json subgroup_json(const SubmoduleDesc& n);

/// [{"element": [...], "coeff": [re_num, re_den, im_num, im_den]}, ...]
GroupAlgElem parse_group_alg(const json& j, const ModulePtr& m);
json group_alg_json(const GroupAlgElem& a);

/// [{"index": r, "coeff_poly": <group algebra element>}, ...]
SemicrossedElem parse_semicrossed(const json& j, const ModulePtr& m);
json semicrossed_json(const SemicrossedElem& x);

/// {"size": n, "sigma": [...]}
FiniteDynSystem parse_system(const json& j);
json system_json(const FiniteDynSystem& s);

FuncOnX parse_function(const json& j, std::size_t n);
json function_json(const FuncOnX& f);

/// Runs f, turning nlohmann type/key errors into ParseError.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace fockmod::json_io
