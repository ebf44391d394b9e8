#include "fockmod/json_io.hpp"

#include "fockmod/error.hpp"

namespace fockmod::json_io {

namespace {

[[noreturn]] void bad(const std::string& what, const json& j) {
  throw Error(ErrorKind::ParseError, what + ": " + j.dump());
}

mpz_class parse_integer(const json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) == 0) return z;
  }
  bad("expected an integer", j);
}

json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

}  // namespace

mpq_class parse_rational(const json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    mpq_class q;
    if (!s.empty() && s.find_first_not_of("0123456789-/+") == std::string::npos && q.set_str(s, 10) == 0 &&
        q.get_den() != 0) {
      q.canonicalize();
      return q;
    }
  }
  bad("expected an exact rational", j);
}

json rational_json(const mpq_class& q) { return q.get_str(); }

GaussianRational parse_gaussian(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) bad("expected [re, im]", j);
    return GaussianRational(parse_rational(j[0]), parse_rational(j[1]));
  }
  return GaussianRational(parse_rational(j));
}

json gaussian_json(const GaussianRational& g) {
  if (g.im() == 0) return rational_json(g.re());
  return json::array({rational_json(g.re()), rational_json(g.im())});
}

DomainElem parse_domain_elem(const json& j, Domain d) {
  if (j.is_array()) {
    if (j.size() != 2) bad("expected [re, im]", j);
    if (d == Domain::Z && parse_integer(j[1]) != 0) bad("Gaussian element given over Z", j);
    return DomainElem(d, parse_integer(j[0]), parse_integer(j[1]));
  }
  return DomainElem(d, parse_integer(j), 0);
}

json domain_elem_json(const DomainElem& r) {
  if (r.domain() == Domain::Z) return integer_json(r.re());
  return json::array({integer_json(r.re()), integer_json(r.im())});
}

ModulePresentation parse_module(const json& j) {
  return guarded([&] {
    if (!j.is_object()) bad("module must be an object", j);
    const Domain d = parse_domain(j.value("domain", std::string("Z")));
    const auto a = j.value("free_rank", std::size_t{0});
    IntVec torsion;
    for (const auto& t : j.value("torsion", json::array())) torsion.push_back(parse_integer(t));
    try {
      if (d == Domain::Z) return ModulePresentation::over_z(a, torsion);
      if (!j.contains("i_action")) {
        if (!torsion.empty()) bad("torsion over Z[i] needs an explicit i_action", j);
        return ModulePresentation::gaussian_free(a);
      }
      const auto& rows = j.at("i_action");
      const std::size_t n = a + torsion.size();
      if (rows.size() != n) bad("i_action must be square of size rank", j);
      IntMatrix act(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != n) bad("i_action must be square of size rank", j);
        for (std::size_t c = 0; c < n; ++c) act(r, c) = parse_integer(rows[r][c]);
      }
      return ModulePresentation(Domain::ZI, a, torsion, act);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError) throw;
      throw Error(ErrorKind::ParseError, std::string("invalid module: ") + e.what());
    }
  });
}

json module_json(const ModulePresentation& m) {
  json j{{"domain", std::string(to_string(m.domain()))}, {"free_rank", m.free_rank()}};
  json t = json::array();
  for (const auto& d : m.torsion()) t.push_back(integer_json(d));
  j["torsion"] = t;
  if (m.domain() == Domain::ZI && m.i_action()) {
    // free Z[i]^n is rebuilt from free_rank; ship the action otherwise
    if (!m.torsion().empty() || !(m == ModulePresentation::gaussian_free(m.free_rank() / 2))) {
      json rows = json::array();
      const auto& a = *m.i_action();
      for (std::size_t r = 0; r < a.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(integer_json(a(r, c)));
        rows.push_back(row);
      }
      j["i_action"] = rows;
    } else {
      j["free_rank"] = m.free_rank() / 2;
    }
  }
  return j;
}

ModuleElem parse_module_elem(const json& j, const ModulePresentation& m) {
  if (!j.is_array() || j.size() != m.rank()) bad("element needs " + std::to_string(m.rank()) + " coordinates", j);
  IntVec v;
  for (const auto& x : j) v.push_back(parse_integer(x));
  return m.element(std::move(v));
}

json module_elem_json(const ModuleElem& x) {
  json j = json::array();
  for (const auto& c : x.coords) j.push_back(integer_json(c));
  return j;
}

SubmoduleDesc parse_subgroup(const json& j, const ModulePresentation& m) {
  if (!j.is_array()) bad("subgroup must be a list of generators", j);
  SubmoduleDesc n;
  for (const auto& g : j) n.generators.push_back(parse_module_elem(g, m));
  return n;
}

json subgroup_json(const SubmoduleDesc& n) {
  json j = json::array();
  for (const auto& g : n.generators) j.push_back(module_elem_json(g));
  return j;
}

GroupAlgElem parse_group_alg(const json& j, const ModulePtr& m) {
  return guarded([&] {
    if (!j.is_array()) bad("group algebra element must be a list of terms", j);
    GroupAlgElem a(m);
    for (const auto& t : j) {
      const auto& c = t.at("coeff");
      GaussianRational coeff;
      if (c.is_array() && c.size() == 4)
        coeff = GaussianRational(mpq_class(parse_integer(c[0]), parse_integer(c[1])),
                                 mpq_class(parse_integer(c[2]), parse_integer(c[3])));
      else
        coeff = parse_gaussian(c);
      a.add_term(parse_module_elem(t.at("element"), *m), coeff);
    }
    return a;
  });
}

json group_alg_json(const GroupAlgElem& a) {
  json j = json::array();
  for (const auto& [x, c] : a.terms())
    j.push_back({{"element", module_elem_json(x)},
                 {"coeff", json::array({integer_json(c.re().get_num()), integer_json(c.re().get_den()),
                                        integer_json(c.im().get_num()), integer_json(c.im().get_den())})}});
  return j;
}

SemicrossedElem parse_semicrossed(const json& j, const ModulePtr& m) {
  return guarded([&] {
    if (!j.is_array()) bad("semicrossed element must be a list of terms", j);
    SemicrossedElem x(m);
    for (const auto& t : j) x.add_term(parse_domain_elem(t.at("index"), m->domain()), parse_group_alg(t.at("coeff_poly"), m));
    return x;
  });
}

json semicrossed_json(const SemicrossedElem& x) {
  json j = json::array();
  for (const auto& [r, a] : x.terms()) j.push_back({{"index", domain_elem_json(r)}, {"coeff_poly", group_alg_json(a)}});
  return j;
}

FiniteDynSystem parse_system(const json& j) {
  return guarded([&] {
    const auto n = j.at("size").get<std::size_t>();
    const auto sigma = j.at("sigma").get<std::vector<std::size_t>>();
    if (sigma.size() != n) bad("sigma must list one image per point", j);
    try {
      return FiniteDynSystem(sigma);
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
  });
}

json system_json(const FiniteDynSystem& s) { return {{"size", s.size()}, {"sigma", s.table()}}; }

FuncOnX parse_function(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) bad("function needs " + std::to_string(n) + " values", j);
  FuncOnX f;
  for (const auto& v : j) f.values.push_back(parse_gaussian(v));
  return f;
}

json function_json(const FuncOnX& f) {
  json j = json::array();
  for (const auto& v : f.values) j.push_back(gaussian_json(v));
  return j;
}

}  // namespace fockmod::json_io
