#include "fockmod/scenario.hpp"

#include <toml.hpp>

#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "fockmod/error.hpp"
#include "fockmod/fock.hpp"
#include "fockmod/json_io.hpp"

namespace fockmod {

using nlohmann::json;
using namespace json_io;

nlohmann::json parse_scenario_text(const std::string& text, bool toml) {
  if (toml) {
    try {
      toml::table tbl = toml::parse(text);
      std::ostringstream os;
      os << toml::json_formatter{tbl};
      return json::parse(os.str());
    } catch (const toml::parse_error& e) {
      throw Error(ErrorKind::ParseError, std::string("TOML: ") + std::string(e.description()));
    }
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("JSON: ") + e.what());
  }
}

nlohmann::json load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path.extension() == ".toml");
}

namespace {

struct Context {
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  bool parallel = false;
};

class Checks {
public:
  void add(const std::string& name, bool pass) {
    list_.push_back({{"name", name}, {"pass", pass}});
    all_ = all_ && pass;
  }
  const json& list() const { return list_; }
  bool all() const { return all_ && !list_.empty(); }

private:
  json list_ = json::array();
  bool all_ = true;
};

long pick(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

ModuleElem random_element(std::mt19937_64& rng, const ModulePresentation& m, long box) {
  IntVec v(m.rank());
  for (std::size_t j = 0; j < v.size(); ++j)
    v[j] = j < m.free_rank() ? pick(rng, -box, box) : pick(rng, 0, m.torsion()[j - m.free_rank()].get_si() - 1);
  return m.element(std::move(v));
}

GaussianRational random_coeff(std::mt19937_64& rng) {
  return GaussianRational(mpq_class(pick(rng, -4, 4), pick(rng, 1, 3)), mpq_class(pick(rng, -2, 2)));
}

FockWindow parse_window(const json& j) {
  FockWindow w;
  if (j.contains("module_radius") && !j.at("module_radius").is_null()) w.module_radius = j.at("module_radius").get<long>();
  w.semigroup_bound = j.at("semigroup_bound").get<long>();
  return w;
}

std::vector<DomainElem> parse_r_sample(const json& s, Domain d) {
  std::vector<DomainElem> out;
  if (s.contains("r_sample")) {
    for (const auto& r : s.at("r_sample")) out.push_back(parse_domain_elem(r, d));
    return out;
  }
  if (d == Domain::Z) return {DomainElem::integer(1), DomainElem::integer(-1), DomainElem::integer(2), DomainElem::integer(3)};
  return {DomainElem::gaussian(1, 0), DomainElem::gaussian(0, 1), DomainElem::gaussian(1, 1)};
}

// Every coordinate vector in [-b, b]^rank, reduced and deduplicated.
std::vector<ModuleElem> coordinate_box(const ModulePresentation& m, long b) {
  std::set<ModuleElem> seen;
  std::vector<long> cur(m.rank(), -b);
  for (;;) {
    seen.insert(m.element(IntVec(cur.begin(), cur.end())));
    std::size_t j = 0;
    while (j < cur.size() && cur[j] == b) cur[j++] = -b;
    if (j == cur.size()) break;
    ++cur[j];
  }
  return {seen.begin(), seen.end()};
}

ModulePtr module_param(const json& s) { return share(parse_module(s.at("module"))); }

// fock-verify ---------------------------------------------------------------

void run_fock_verify(const json& s, const Context& ctx, Checks& checks, json& details) {
  const ModulePtr m = module_param(s);
  const FockWindow w = parse_window(s.at("window"));
  std::vector<ModuleElem> ms;
  if (s.contains("m_sample"))
    for (const auto& x : s.at("m_sample")) ms.push_back(parse_module_elem(x, *m));
  else
    ms = coordinate_box(*m, s.value("m_box", 2L));
  const auto rs = parse_r_sample(s, m->domain());
  const auto min_interior = s.value("min_interior", std::size_t{50});
  const auto product_samples = s.value("product_samples", 0);

  const FockRep rep = build_fock(m, w);
  details["dimension"] = rep.dim();
  details["sites"] = rep.sites().size();
  details["semigroup_window"] = rep.semigroup().size();
  details["m_sample_size"] = ms.size();
  const PropositionReport report = verify_proposition(rep, ms, rs, ctx.tol, ctx.parallel);
  json ids = json::array();
  for (const auto& id : report.identities) {
    const bool pass = id.pass && id.interior_count >= min_interior;
    ids.push_back({{"name", id.name},
                   {"instances", id.instances},
                   {"interior_count", id.interior_count},
                   {"max_residual", id.max_residual},
                   {"pass", pass}});
    checks.add(id.name, pass);
  }
  details["identities"] = ids;

  if (product_samples > 0) {
    std::mt19937_64 rng(ctx.seed);
    double worst = 0;
    std::size_t covered = 0;
    auto sample = [&]() {
      SemicrossedElem x(m);
      for (int k = 0; k < 2; ++k)
        x.add_term(rs[rng() % rs.size()], GroupAlgElem::monomial(m, ms[rng() % ms.size()], random_coeff(rng)));
      return x;
    };
    for (int t = 0; t < product_samples; ++t) {
      const SemicrossedElem x = sample(), y = sample(), xy = x * y;
      auto in = interior_of_product(rep, {x, y});
      const auto in2 = interior_of_product(rep, {xy});
      for (std::size_t j = 0; j < in.size(); ++j) in[j] = in[j] && in2[j];
      covered += static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
      const SparseMatrix p = represent_semicrossed(rep, x) * represent_semicrossed(rep, y);
      worst = std::max(worst, max_column_residual(p, represent_semicrossed(rep, xy), in));
    }
    details["products"] = {{"samples", product_samples}, {"interior_count", covered}, {"max_residual", worst}};
    checks.add("symbolic_numeric_products", covered > 0 && worst <= ctx.tol);
  }
}

// envelope ------------------------------------------------------------------

void run_envelope(const json& s, const Context& ctx, Checks& checks, json& details) {
  const ModulePtr m = module_param(s);
  const int samples = s.value("samples", 20);
  const long r_bound = s.value("r_bound", 10L);

  const TorsionInfo info = torsion_decomposition(*m);
  const Localization loc = localize(*m);
  json inv = json::array();
  for (const auto& d : info.invariant_factors) inv.push_back(d.get_str());
  details["invariant_factors"] = inv;
  details["free_rank"] = info.free_rank;
  details["kernel"] = subgroup_json(loc.kernel);
  details["dimension"] = loc.module.dimension();

  checks.add("kernel_is_torsion", same_subgroup(*m, loc.kernel, info.torsion));
  checks.add("injective_iff_torsion_free", loc.injective() == !info.has_torsion());
  const std::size_t expected_dim = m->domain() == Domain::ZI ? m->free_rank() / 2 : m->free_rank();
  checks.add("dimension", loc.module.dimension() == expected_dim);

  std::mt19937_64 rng(ctx.seed);
  std::vector<DomainElem> rs;
  for (int t = 0; t < samples; ++t) {
    DomainElem r;
    do {
      r = DomainElem(m->domain(), pick(rng, -r_bound, r_bound), m->domain() == Domain::ZI ? pick(rng, -r_bound, r_bound) : 0);
    } while (r.is_zero());
    rs.push_back(r);
  }
  json rj = json::array();
  for (const auto& r : rs) rj.push_back(domain_elem_json(r));
  details["r_sample"] = rj;

  bool some_non_injective = false;
  for (const auto& r : rs) some_non_injective = some_non_injective || !is_injective_action(r, *m);
  if (info.exponent)
    some_non_injective = some_non_injective || !is_injective_action(DomainElem(m->domain(), *info.exponent, 0), *m);
  checks.add("torsion_criterion", some_non_injective == info.has_torsion());

  bool bijective = true;
  const std::size_t q = loc.module.q_dim();
  for (const auto& r : rs)
    for (std::size_t j = 0; j < q; ++j) {
      std::vector<mpq_class> e(q, 0);
      e[j] = 1;
      auto x = loc.module.solve_action(r, e);
      bijective = bijective && x && loc.module.act(r, *x) == e;
    }
  checks.add("bijective_actions", bijective);

  if (info.has_torsion()) {
    bool rejected = false;
    try {
      (void)envelope_module(*m);
    } catch (const Error& e) {
      rejected = e.kind() == ErrorKind::TorsionPresent;
    }
    checks.add("envelope_rejects_torsion", rejected);
  } else {
    checks.add("envelope_defined", envelope_module(*m).injective());
  }
}

// submodule-test ------------------------------------------------------------

void run_submodule_test(const json& s, const Context& ctx, Checks& checks, json& details) {
  const ModulePtr m = module_param(s);
  SubmoduleDesc n = parse_subgroup(s.at("subgroup"), *m);
  const std::string closure = s.value("closure", std::string("group"));
  if (closure == "module") n = generated_submodule(*m, n.generators);
  else if (closure != "group") throw Error(ErrorKind::ParseError, "closure must be 'group' or 'module'");
  const auto rs = parse_r_sample(s, m->domain());
  const FockWindow w = parse_window(s.at("window"));

  const auto res = quotient_covariance_test(m, n, rs, w, ctx.tol);
  details["is_submodule"] = res.is_submodule;
  details["covariance"] = res.covariant;
  details["agree"] = res.agree;
  details["interior_count"] = res.interior_count;
  details["max_triviality_residual"] = res.max_triviality_residual;
  details["max_covariance_residual"] = res.max_covariance_residual;
  checks.add("verdicts_agree", res.agree);
  if (s.contains("expect_submodule")) checks.add("expected_verdict", res.is_submodule == s.at("expect_submodule").get<bool>());
}

// trivialize ----------------------------------------------------------------

Representation parse_representation(const json& j, const ModulePtr& m) {
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "evaluation") {
      if (!(*m == ModulePresentation::over_z(1))) throw Error(ErrorKind::ParseError, "evaluation needs M = Z");
      const long q = j.at("q").get<long>();
      if (q <= 0) throw Error(ErrorKind::ParseError, "evaluation needs q > 0");
      return CharacterRep::evaluation(m, j.at("p").get<long>(), q);
    }
    if (type == "character") {
      std::vector<mpq_class> rot;
      for (const auto& t : j.at("rotations")) rot.push_back(parse_rational(t));
      return CharacterRep(m, std::move(rot));
    }
    if (type == "quotient") return QuotientRep{m, parse_subgroup(j.at("subgroup"), *m)};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, std::string("bad representation: ") + e.what());
  }
  throw Error(ErrorKind::ParseError, "unknown representation type '" + type + "'");
}

bool trivial_at(const Representation& rep, const ModuleElem& g, const std::optional<QuotientModule>& q) {
  if (const auto* chi = std::get_if<CharacterRep>(&rep)) return chi->rotation(g) == 0;
  return q->project(g).is_zero();
}

bool kills(const Representation& rep, const GroupAlgElem& x, const std::optional<QuotientModule>& q) {
  if (const auto* chi = std::get_if<CharacterRep>(&rep)) return chi->evaluate(x).is_zero();
  return quotient_push(*q, share(q->quotient), x).is_zero();
}

void run_trivialize(const json& s, const Context&, Checks& checks, json& details) {
  const ModulePtr m = module_param(s);
  std::vector<Representation> reps;
  for (const auto& r : s.at("representations")) reps.push_back(parse_representation(r, m));
  std::optional<SubmoduleDesc> expected;
  if (s.contains("expected")) expected = parse_subgroup(s.at("expected"), *m);
  const long box = s.value("check_box", 12L);

  std::vector<std::optional<QuotientModule>> quotients;
  for (const auto& r : reps) {
    if (const auto* qr = std::get_if<QuotientRep>(&r)) quotients.push_back(quotient_module(*m, qr->subgroup, QuotientLevel::Group));
    else quotients.emplace_back();
  }
  const std::vector<ModuleElem> universe = m->is_finite() ? m->enumerate() : coordinate_box(*m, box);
  json kernels = json::array();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const SubmoduleDesc k = kernel_group(reps[i]);
    kernels.push_back(subgroup_json(k));
    bool exact = true;
    for (const auto& g : universe) exact = exact && submodule_membership(*m, k, g) == trivial_at(reps[i], g, quotients[i]);
    checks.add("kernel_" + std::to_string(i) + "_matches_enumeration", exact);
  }
  details["kernels"] = kernels;
  if (reps.empty()) throw Error(ErrorKind::EmptyList, "no representations");
  const SubmoduleDesc k = intersect_kernel_groups(reps);
  details["intersection"] = subgroup_json(k);
  if (expected) checks.add("intersection_matches_expected", same_subgroup(*m, k, *expected));

  if (s.value("span_caveat", true)) {
    std::optional<ModuleElem> kk, g;
    for (const auto& x : k.generators)
      if (!x.is_zero()) {
        kk = x;
        break;
      }
    for (std::size_t j = 0; j < m->rank() && !g; ++j)
      if (!submodule_membership(*m, k, m->basis(j))) g = m->basis(j);
    if (kk && g) {
      // U^{g+k} - U^g lies outside C[K] yet every representation sends it to 0
      GroupAlgElem x = GroupAlgElem::monomial(m, m->add(*g, *kk)) - GroupAlgElem::monomial(m, *g);
      bool all_zero = true;
      for (std::size_t i = 0; i < reps.size(); ++i) all_zero = all_zero && kills(reps[i], x, quotients[i]);
      details["span_caveat"] = {{"witness", group_alg_json(x)}, {"maps_to_zero", all_zero}};
      checks.add("span_caveat", !x.is_zero() && !(conditional_expectation(k, x) == x) && all_zero);
    } else {
      details["span_caveat"] = nullptr;
    }
  }
}

// product-decomp ------------------------------------------------------------

void run_product_decomp(const json& s, const Context& ctx, Checks& checks, json& details) {
  const ModulePtr m = module_param(s);
  const auto parts = s.value("split", std::vector<std::string>{"units", "positives"});
  if (parts.size() != 2) throw Error(ErrorKind::ParseError, "split needs two factors");
  const Split split{parse_split_kind(parts[0]), parse_split_kind(parts[1])};
  DecompositionOptions opts;
  opts.seed = ctx.seed;
  if (s.contains("index_pool")) opts.index_pool = s.at("index_pool").get<std::vector<long>>();
  opts.terms_per_coeff = s.value("terms_per_coeff", 2);
  const int samples = s.value("samples", 100);
  const int diag_samples = s.value("diagonal_samples", 50);

  details["split"] = parts;
  details["index_pool"] = opts.index_pool;
  checks.add("structure_constants", product_decomposition_check(m, split, samples, opts));

  std::mt19937_64 rng(ctx.seed + 1);
  const auto us = units(m->domain());
  auto diagonal = [&]() {
    SemicrossedElem x(m);
    for (int k = 0; k < 3; ++k) x.add_term(us[rng() % us.size()], GroupAlgElem::monomial(m, random_element(rng, *m, 4), random_coeff(rng)));
    return x;
  };
  bool mult = true;
  for (int t = 0; t < diag_samples; ++t) {
    const SemicrossedElem x = diagonal(), y = diagonal();
    mult = mult && diagonal_part(x) == x && diagonal_part(x * y) == x * y;
  }
  details["diagonal_samples"] = diag_samples;
  if (diag_samples > 0) checks.add("diagonal_multiplicative", mult);
}

// dynamics ------------------------------------------------------------------

json functions_json(const std::vector<FuncOnX>& fs) {
  json j = json::array();
  for (const auto& f : fs) j.push_back(function_json(f));
  return j;
}

void run_dynamics(const json& s, const Context&, Checks& checks, json& details) {
  const FiniteDynSystem sys = parse_system(s.at("system"));
  const std::size_t n = sys.size();
  std::vector<FuncOnX> candidates;
  if (s.contains("candidates"))
    for (const auto& f : s.at("candidates")) candidates.push_back(parse_function(f, n));
  else
    candidates = default_candidates(n);

  const auto comps = orbit_components(sys);
  details["components"] = comps;

  std::optional<SpanBasis> best;
  std::size_t best_dim = 0;
  for (const auto& f : candidates) {
    SpanBasis span = cyclic_subspace(sys, f);
    if (!best || span.dim() > best_dim) {
      best_dim = span.dim();
      best = std::move(span);
    }
  }
  const auto witness = is_cyclic_witness(sys, candidates);
  details["cyclic"] = {{"dimension", best_dim},
                       {"basis", best ? functions_json(best->basis()) : json::array()},
                       {"witness", witness ? function_json(*witness) : json(nullptr)},
                       {"certified", witness.has_value()}};
  if (s.contains("expect_cyclic")) checks.add("cyclic_expectation", witness.has_value() == s.at("expect_cyclic").get<bool>());
  if (sys.table() == FiniteDynSystem::identity(n).table()) checks.add("identity_dimension_bound", best_dim <= 2);

  const auto dense = dense_orbit_generation(sys);
  details["dense_orbit"] = dense ? function_json(*dense) : json(nullptr);
  if (dense) checks.add("dense_orbit_certified", cyclic_subspace(sys, *dense).dim() == n);

  const OrbitGenerators gens = generators_from_orbits(sys);
  details["orbit_generators"] = {{"points", gens.points},
                                 {"count", gens.generators.size()},
                                 {"component_count", gens.component_count},
                                 {"certified_by_components", gens.certified_by_components},
                                 {"fallback_used", gens.fallback_used},
                                 {"dimension", gens.dimension},
                                 {"certified", gens.certified}};
  checks.add("orbit_generators_certified", gens.certified);
  checks.add("generator_count_bound", gens.generators.size() <= n);

  if (s.contains("multi_span")) {
    std::vector<FuncOnX> fs;
    for (const auto& f : s.at("multi_span")) fs.push_back(parse_function(f, n));
    const SpanBasis span = multi_span(sys, fs);
    bool contains = span.contains(FuncOnX::constant(n, 1));
    for (const auto& f : fs)
      for (const auto& b : cyclic_subspace(sys, f).basis()) contains = contains && span.contains(b);
    details["multi_span"] = {{"dimension", span.dim()}, {"basis", functions_json(span.basis())}};
    checks.add("multi_span_contains_factors", contains);
  }

  if (s.contains("pushforward")) {
    const auto& p = s.at("pushforward");
    const FiniteDynSystem target = parse_system(p.at("target"));
    const auto pi = p.at("pi").get<std::vector<std::size_t>>();
    std::vector<FuncOnX> fs = gens.generators;
    if (p.contains("functions")) {
      fs.clear();
      for (const auto& f : p.at("functions")) fs.push_back(parse_function(f, n));
    }
    const auto res = pushforward_generators(sys, target, pi, fs);
    details["pushforward"] = {{"generators", functions_json(res.generators)},
                              {"fiber_averaged", res.fiber_averaged},
                              {"dimension", res.dimension},
                              {"certified", res.certified}};
    if (p.value("expect_certified", true)) checks.add("pushforward_certified", res.certified);
  }
}

// poly-example --------------------------------------------------------------

json poly_json(const std::vector<mpq_class>& c) {
  json j = json::array();
  for (const auto& x : c) j.push_back(rational_json(x));
  return j;
}

std::vector<mpq_class> parse_poly(const json& j) {
  std::vector<mpq_class> c;
  for (const auto& x : j) c.push_back(parse_rational(x));
  return c;
}

void run_poly_example(const json& s, const Context&, Checks& checks, json& details) {
  const auto fc = s.contains("f") ? parse_poly(s.at("f")) : std::vector<mpq_class>{0, 1};
  const auto depth = s.value("depth", std::size_t{3});
  const auto cap = s.value("cap", std::size_t{8});
  const PolySpan span = poly_cyclic_subspace(PolyFunc(fc, cap), depth, cap);

  json gens = json::array();
  for (const auto& g : span.generators) gens.push_back(poly_json(g.coeffs()));
  json rows = json::array();
  for (const auto& r : span.echelon.rows()) rows.push_back(poly_json(r));
  details["generators"] = gens;
  details["basis"] = rows;
  details["pivot_degrees"] = span.echelon.pivots();
  details["dimension"] = span.echelon.dim();

  bool even = true;
  for (std::size_t i = 2; i < span.generators.size(); ++i) even = even && span.generators[i].is_even();
  checks.add("pullbacks_even", even);

  json memberships = json::array();
  if (s.contains("queries")) {
    std::size_t i = 0;
    for (const auto& q : s.at("queries")) {
      const PolyFunc g(parse_poly(q.at("poly")), std::max<std::size_t>(cap, q.at("poly").size()));
      const bool in = span.contains(g);
      memberships.push_back({{"poly", q.at("poly")}, {"member", in}});
      if (q.contains("expect")) checks.add("query_" + std::to_string(i), in == q.at("expect").get<bool>());
      ++i;
    }
  }
  details["queries"] = memberships;

  // a product of two spanning pullbacks that leaves the span
  json witness = nullptr;
  for (std::size_t i = 1; i < span.generators.size() && witness.is_null(); ++i)
    for (std::size_t j = i; j < span.generators.size() && witness.is_null(); ++j) {
      const auto& a = span.generators[i].coeffs();
      const auto& b = span.generators[j].coeffs();
      if (a.empty() || b.empty() || a.size() + b.size() - 2 > cap) continue;
      std::vector<mpq_class> prod(a.size() + b.size() - 1, 0);
      for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < b.size(); ++y) prod[x + y] += a[x] * b[y];
      if (!span.contains(PolyFunc(prod, cap)))
        witness = {{"left", poly_json(a)}, {"right", poly_json(b)}, {"product", poly_json(PolyFunc(prod, cap).coeffs())}};
    }
  details["product_witness"] = witness;
  if (s.contains("expect_not_algebra"))
    checks.add("not_an_algebra", !witness.is_null() == s.at("expect_not_algebra").get<bool>());
}

// registry ------------------------------------------------------------------

using Handler = std::function<void(const json&, const Context&, Checks&, json&)>;

struct KindInfo {
  const char* name;
  Handler run;
  const char* description;
  json params;
};

const std::vector<KindInfo>& registry() {
  static const std::vector<KindInfo> kinds = [] {
    const json module{{"type", "module"}, {"required", true}};
    const json window{{"type", "{module_radius?: int, semigroup_bound: int}"}, {"required", true}};
    const json r_sample{{"type", "list of domain elements"}, {"default", "[1,-1,2,3] over Z; [1,i,1+i] over Z[i]"}};
    return std::vector<KindInfo>{
        {"fock-verify", run_fock_verify, "generator identities of the Fock representation on interior vectors",
         {{"module", module},
          {"window", window},
          {"m_box", {{"type", "int"}, {"default", 2}}},
          {"m_sample", {{"type", "list of elements"}, {"default", "coordinate box of radius m_box"}}},
          {"r_sample", r_sample},
          {"min_interior", {{"type", "int"}, {"default", 50}}},
          {"product_samples", {{"type", "int"}, {"default", 0}}}}},
        {"envelope", run_envelope, "localization, torsion kernel and bijective actions on the envelope module",
         {{"module", module}, {"samples", {{"type", "int"}, {"default", 20}}}, {"r_bound", {{"type", "int"}, {"default", 10}}}}},
        {"submodule-test", run_submodule_test, "quotient Fock covariance against the submodule test",
         {{"module", module},
          {"subgroup", {{"type", "list of elements"}, {"required", true}}},
          {"closure", {{"type", "\"group\" | \"module\""}, {"default", "group"}}},
          {"r_sample", r_sample},
          {"window", window},
          {"expect_submodule", {{"type", "bool"}, {"default", nullptr}}}}},
        {"trivialize", run_trivialize, "kernel groups of representations and their intersection",
         {{"module", module},
          {"representations", {{"type", "list of {type: evaluation|character|quotient, ...}"}, {"required", true}}},
          {"expected", {{"type", "list of elements"}, {"default", nullptr}}},
          {"check_box", {{"type", "int"}, {"default", 12}}},
          {"span_caveat", {{"type", "bool"}, {"default", true}}}}},
        {"product-decomp", run_product_decomp, "iterated semicrossed products against the flat product",
         {{"module", module},
          {"split", {{"type", "[first, second] of units|positives|all|trivial"}, {"default", json::array({"units", "positives"})}}},
          {"samples", {{"type", "int"}, {"default", 100}}},
          {"index_pool", {{"type", "list of int"}, {"default", json::array({1, -1, 2, -2, 3, -3, 6, -6})}}},
          {"terms_per_coeff", {{"type", "int"}, {"default", 2}}},
          {"diagonal_samples", {{"type", "int"}, {"default", 50}}}}},
        {"dynamics", run_dynamics, "orbit components, cyclic subspaces and generation of finite systems",
         {{"system", {{"type", "{size: int, sigma: [int]}"}, {"required", true}}},
          {"candidates", {{"type", "list of value arrays"}, {"default", "characteristic functions + distinct primes"}}},
          {"expect_cyclic", {{"type", "bool"}, {"default", nullptr}}},
          {"multi_span", {{"type", "list of value arrays"}, {"default", nullptr}}},
          {"pushforward", {{"type", "{target: system, pi: [int], functions?: [...], expect_certified?: bool}"}, {"default", nullptr}}}}},
        {"poly-example", run_poly_example, "pullback spans for sigma(t) = t^2 on polynomials",
         {{"f", {{"type", "list of rationals"}, {"default", json::array({"0", "1"})}}},
          {"depth", {{"type", "int"}, {"default", 3}}},
          {"cap", {{"type", "int"}, {"default", 8}}},
          {"queries", {{"type", "list of {poly: [rationals], expect?: bool}"}, {"default", json::array()}}},
          {"expect_not_algebra", {{"type", "bool"}, {"default", nullptr}}}}},
    };
  }();
  return kinds;
}

const json common_params{{"kind", {{"type", "string"}, {"required", true}}},
                         {"seed", {{"type", "int"}, {"default", 0}}},
                         {"tol", {{"type", "float"}, {"default", kDefaultTol}}},
                         {"expect_error", {{"type", "error kind name"}, {"default", nullptr}}}};

}  // namespace

std::vector<std::string> scenario_kinds() {
  std::vector<std::string> out;
  for (const auto& k : registry()) out.emplace_back(k.name);
  return out;
}

nlohmann::json scenario_catalog() {
  json kinds = json::array();
  for (const auto& k : registry()) kinds.push_back({{"kind", k.name}, {"description", k.description}, {"parameters", k.params}});
  return {{"report_version", kReportVersion}, {"common_parameters", common_params}, {"kinds", kinds}};
}

ScenarioOutcome run_scenario(const nlohmann::json& scenario, const RunOptions& opts) {
  if (!scenario.is_object()) throw Error(ErrorKind::ParseError, "scenario must be an object");
  const std::string kind = guarded([&] { return scenario.at("kind").get<std::string>(); });
  const KindInfo* info = nullptr;
  for (const auto& k : registry())
    if (kind == k.name) info = &k;
  if (!info) throw Error(ErrorKind::UnsupportedKind, "unknown scenario kind '" + kind + "'");

  Context ctx;
  guarded([&] {
    ctx.seed = opts.seed.value_or(scenario.value("seed", std::uint64_t{0}));
    ctx.tol = opts.tol.value_or(scenario.value("tol", kDefaultTol));
    return 0;
  });
  ctx.parallel = opts.parallel;
  const std::optional<std::string> expect_error =
      scenario.contains("expect_error") ? std::optional(guarded([&] { return scenario.at("expect_error").get<std::string>(); }))
                                        : std::nullopt;

  Checks checks;
  json details = json::object();
  std::optional<Error> failure;
  try {
    guarded([&] {
      info->run(scenario, ctx, checks, details);
      return 0;
    });
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::UnsupportedKind) throw;
    failure = e;
  }
  if (failure) details["error"] = {{"kind", std::string(to_string(failure->kind()))}, {"message", failure->what()}};
  if (expect_error) checks.add("expected_error", failure && to_string(failure->kind()) == *expect_error);
  else if (failure) checks.add("completed", false);

  ScenarioOutcome out;
  out.pass = checks.all();
  out.report = {{"report_version", kReportVersion}, {"kind", kind},    {"seed", ctx.seed},
                {"tol", ctx.tol},                   {"pass", out.pass}, {"checks", checks.list()},
                {"details", details}};
  if (scenario.contains("name")) out.report["name"] = scenario.at("name");
  for (const auto& c : checks.list())
    out.lines.push_back(std::string(c.at("pass").get<bool>() ? "PASS " : "FAIL ") + c.at("name").get<std::string>());
  if (failure) out.lines.push_back(std::string("error: ") + failure->what());
  out.lines.push_back(kind + ": " + (out.pass ? "PASS" : "FAIL"));
  return out;
}

}  // namespace fockmod
