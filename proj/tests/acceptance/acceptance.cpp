// Acceptance criteria, one PASS/FAIL line each. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "fockmod/dynamics.hpp"
#include "fockmod/error.hpp"
#include "fockmod/fock.hpp"
#include "fockmod/groupalg.hpp"
#include "fockmod/scenario.hpp"
#include "fockmod/semicross.hpp"

using namespace fockmod;

namespace {

// failures inside a criterion are collected here, with a short reason
struct Log {
  std::vector<std::string> problems;
  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

DomainElem z(long v) { return DomainElem::integer(v); }
DomainElem zi(long a, long b) { return DomainElem::gaussian(a, b); }

ModuleElem el(const ModulePtr& m, std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return m->element(std::move(v));
}

GaussianRational coeff(std::mt19937_64& rng) {
  return GaussianRational(mpq_class(uniform(rng, -5, 5), uniform(rng, 1, 3)), mpq_class(uniform(rng, -3, 3), uniform(rng, 1, 2)));
}

std::vector<ModuleElem> box(const ModulePtr& m, long b) {
  std::set<ModuleElem> out;
  std::vector<long> cur(m->rank(), -b);
  for (;;) {
    out.insert(m->element(IntVec(cur.begin(), cur.end())));
    std::size_t j = 0;
    while (j < cur.size() && cur[j] == b) cur[j++] = -b;
    if (j == cur.size()) break;
    ++cur[j];
  }
  return {out.begin(), out.end()};
}

// 1 -------------------------------------------------------------------------
void fock_identities(Log& log) {
  const std::vector<std::pair<std::string, ModulePtr>> modules{
      {"Z", share(ModulePresentation::over_z(1))},
      {"Z/6", share(ModulePresentation::over_z(0, {6}))},
      {"Z+Z/4", share(ModulePresentation::over_z(1, {4}))}};
  const std::vector<DomainElem> rs{z(1), z(-1), z(2), z(3)};
  for (const auto& [name, m] : modules) {
    const FockRep rep = build_fock(m, {64, 12});
    const auto report = verify_proposition(rep, box(m, 2), rs, 1e-9, false);
    log.require(report.identities.size() == 8, name + ": expected eight identity groups");
    for (const auto& id : report.identities) {
      log.require(id.max_residual <= 1e-9, name + " " + id.name + " residual " + std::to_string(id.max_residual));
      log.require(id.interior_count >= 50, name + " " + id.name + " has only " + std::to_string(id.interior_count) + " interior vectors");
    }
  }
}

// 2 -------------------------------------------------------------------------
void symbolic_numeric(Log& log) {
  auto z6 = share(ModulePresentation::over_z(0, {6}));
  const FockRep rep = build_fock(z6, {std::nullopt, 12});
  auto u1 = GroupAlgElem::monomial(z6, el(z6, {1}));
  auto x = SemicrossedElem::monomial(z(2), u1), y = SemicrossedElem::monomial(z(3), u1);
  log.require(x * y == SemicrossedElem::monomial(z(6), GroupAlgElem::monomial(z6, el(z6, {4}))), "(S2 U1)(S3 U1) != S6 U4");

  std::mt19937_64 rng(2);
  const std::vector<long> pool{1, -1, 2, -2, 3};
  auto sample = [&] {
    SemicrossedElem s(z6);
    for (int k = 0; k < 3; ++k) s.add_term(z(pool[rng() % pool.size()]), GroupAlgElem::monomial(z6, el(z6, {uniform(rng, 0, 5)}), coeff(rng)));
    return s;
  };
  std::vector<std::pair<SemicrossedElem, SemicrossedElem>> pairs{{x, y}};
  for (int t = 0; t < 100; ++t) pairs.emplace_back(sample(), sample());
  double worst = 0;
  std::size_t covered = 0;
  for (const auto& [a, b] : pairs) {
    const auto ab = sc_multiply(a, b);
    auto in = interior_of_product(rep, {a, b});
    const auto in2 = interior_of_product(rep, {ab});
    for (std::size_t j = 0; j < in.size(); ++j) in[j] = in[j] && in2[j];
    covered += static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
    const SparseMatrix p = represent_semicrossed(rep, a) * represent_semicrossed(rep, b);
    worst = std::max(worst, max_column_residual(p, represent_semicrossed(rep, ab), in));
  }
  log.require(covered > 0, "no interior vectors");
  log.require(worst <= 1e-9, "residual " + std::to_string(worst));
}

// 3 -------------------------------------------------------------------------
void torsion_criterion(Log& log) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const bool gaussian = t % 5 == 4;
    ModulePresentation m = ModulePresentation::over_z(0);
    bool has_torsion = false;
    mpz_class order = 1;
    if (gaussian) {
      m = ModulePresentation::gaussian_free(static_cast<std::size_t>(uniform(rng, 1, 2)));
    } else {
      IntVec tors;
      // invariant factors d1 | d2
      for (long k = uniform(rng, 0, 2); k > 0; --k) {
        tors.emplace_back(tors.empty() ? mpz_class(uniform(rng, 2, 9)) : mpz_class(tors.back() * uniform(rng, 1, 3)));
        order *= tors.back();
      }
      has_torsion = !tors.empty();
      m = ModulePresentation::over_z(static_cast<std::size_t>(uniform(rng, has_torsion ? 0 : 1, 2)), tors);
    }
    std::vector<DomainElem> rs;
    for (long r = 2; r <= 12; ++r) rs.push_back(DomainElem(m.domain(), r, gaussian ? r % 3 : 0));
    rs.push_back(DomainElem(m.domain(), order, 0));
    bool non_injective = false;
    for (const auto& r : rs) non_injective = non_injective || !is_injective_action(r, m);
    log.require(non_injective == has_torsion, m.str() + ": torsion criterion disagrees");
  }
}

// 4 -------------------------------------------------------------------------
void envelope(Log& log) {
  std::mt19937_64 rng(4);
  for (std::size_t a = 1; a <= 3; ++a) {
    const auto env = envelope_module(ModulePresentation::over_z(a));
    log.require(env.module.dimension() == a, "dimension of Q^" + std::to_string(a));
    log.require(env.injective(), "i not injective on Z^" + std::to_string(a));
    for (int t = 0; t < 20; ++t) {
      long r = 0;
      while (r == 0) r = uniform(rng, -50, 50);
      for (std::size_t j = 0; j < a; ++j) {
        std::vector<mpq_class> e(a, 0);
        e[j] = 1;
        const auto x = env.module.solve_action(z(r), e);
        log.require(x && env.module.act(z(r), *x) == e, "r = " + std::to_string(r) + " not onto");
        // injective: the preimage is r^{-1} e, nothing else
        if (x)
          for (std::size_t i = 0; i < a; ++i) log.require((*x)[i] == (i == j ? mpq_class(1) / r : mpq_class(0)), "preimage is not e/r");
      }
    }
  }
  const auto m = ModulePresentation::over_z(1, {6});
  const auto loc = localize(m);
  log.require(same_subgroup(m, loc.kernel, SubmoduleDesc{{m.element({0, 1})}}), "kernel of Z+Z/6 is not the torsion part");
  try {
    (void)envelope_module(m);
    log.require(false, "envelope of a torsion module accepted");
  } catch (const Error& e) {
    log.require(e.kind() == ErrorKind::TorsionPresent, "wrong error for torsion");
  }
}

// 5 -------------------------------------------------------------------------
void trivialization(Log& log) {
  auto zz = share(ModulePresentation::over_z(1));
  for (long m = 1; m <= 8; ++m) {
    const SubmoduleDesc n{{el(zz, {m})}};
    log.require(same_subgroup(*zz, kernel_group(QuotientRep{zz, n}), n), "quotient by " + std::to_string(m) + "Z");
    const Representation ev = CharacterRep::evaluation(zz, 1, m);
    log.require(same_subgroup(*zz, kernel_group(ev), n), "evaluation at 1/" + std::to_string(m));
    // m | k exactly when the rotation k/m is an integer
    const auto& chi = std::get<CharacterRep>(ev);
    for (long k = -40; k <= 40; ++k) log.require((chi.rotation(el(zz, {k})) == 0) == (k % m == 0), "rotation scan");
  }
  auto z12 = share(ModulePresentation::over_z(0, {12}));
  for (long d = 0; d < 12; ++d) {
    const SubmoduleDesc n{{el(z12, {d})}};
    const auto k = kernel_group(QuotientRep{z12, n});
    // enumeration oracle: the subgroup generated by d is the multiples of gcd(d, 12)
    const long g = std::gcd(d, 12L);
    for (long x = 0; x < 12; ++x)
      log.require(submodule_membership(*z12, k, el(z12, {x})) == (x % g == 0), "Z/12 subgroup <" + std::to_string(d) + ">");
  }
  const Representation quarter = CharacterRep::evaluation(zz, 1, 4);
  const SubmoduleDesc four{{el(zz, {4})}};
  log.require(same_subgroup(*zz, kernel_group(quarter), four), "evaluation at 1/4 kernel");
  const GroupAlgElem x = GroupAlgElem::monomial(zz, el(zz, {5})) - GroupAlgElem::monomial(zz, el(zz, {1}));
  log.require(std::get<CharacterRep>(quarter).evaluate(x).is_zero(), "U^5 - U^1 not killed");
  log.require(!(conditional_expectation(four, x) == x), "U^5 - U^1 lies in C[4Z]");
}

// 6 -------------------------------------------------------------------------
void submodule_covariance(Log& log) {
  auto g = share(ModulePresentation::gaussian_free(1));
  const std::vector<DomainElem> rs{zi(1, 0), zi(0, 1), zi(1, 1)};
  const FockWindow w{6, 2};
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) {
      if (a == 0 && b == 0) continue;
      const SubmoduleDesc cyclic{{el(g, {a, b})}};
      const auto res = quotient_covariance_test(g, cyclic, rs, w, 1e-9);
      // i(a + bi) = -b + ai is never an integer multiple of a nonzero a + bi
      log.require(!res.is_submodule && res.covariant == res.is_submodule, "cyclic <" + std::to_string(a) + "," + std::to_string(b) + ">");
    }
  const auto reals = quotient_covariance_test(g, SubmoduleDesc{{el(g, {1, 0})}}, rs, w, 1e-9);
  log.require(!reals.is_submodule && !reals.covariant && reals.agree, "N = Z");
  const auto two = quotient_covariance_test(g, SubmoduleDesc{{el(g, {2, 0}), el(g, {0, 2})}}, rs, w, 1e-9);
  log.require(two.is_submodule && two.covariant && two.agree, "N = 2Z[i]");
}

// 7 -------------------------------------------------------------------------
void product_decomposition(Log& log) {
  const Split split{SplitKind::Units, SplitKind::Positives};
  std::mt19937_64 rng(7);
  for (const auto& m : {share(ModulePresentation::over_z(0, {5})), share(ModulePresentation::over_z(1))}) {
    log.require(product_decomposition_check(m, split, 100, {{1, -1, 2, -2, 3, -3, 6, -6}, 7, 2}), m->str() + " structure constants");
    auto sample = [&] {
      SemicrossedElem s(m);
      for (int k = 0; k < 4; ++k) s.add_term(z(std::vector<long>{1, -1, 2, -3}[rng() % 4]), GroupAlgElem::monomial(m, el(m, {uniform(rng, -4, 4)}), coeff(rng)));
      return s;
    };
    for (int t = 0; t < 50; ++t) {
      // rs is a unit of Z only when r and s are
      const auto x = sample(), y = sample();
      log.require(diagonal_part(x * y) == diagonal_part(x) * diagonal_part(y), m->str() + " diagonal part not multiplicative");
    }
  }
}

// 8 -------------------------------------------------------------------------
void conditional_expectation_laws(Log& log) {
  std::mt19937_64 rng(8);
  const std::vector<std::pair<ModulePtr, long>> cases{{share(ModulePresentation::over_z(0, {12})), 3}, {share(ModulePresentation::over_z(1)), 2}};
  for (const auto& [m, step] : cases) {
    const SubmoduleDesc n{{el(m, {step})}};
    log.require(conditional_expectation(n, GroupAlgElem::one(m)) == GroupAlgElem::one(m), "E(1) != 1");
    for (int t = 0; t < 100; ++t) {
      GroupAlgElem a(m), x(m), y(m), filtered(m);
      for (int k = 0; k < 5; ++k) a.add_term(el(m, {uniform(rng, -12, 12)}), coeff(rng));
      for (int k = 0; k < 2; ++k) {
        x.add_term(el(m, {step * uniform(rng, -3, 3)}), coeff(rng));
        y.add_term(el(m, {step * uniform(rng, -3, 3)}), coeff(rng));
      }
      for (const auto& [g, c] : a.terms())
        if (g.coords[0] % step == 0) filtered.add_term(g, c);
      const auto ea = conditional_expectation(n, a);
      log.require(ea == filtered, "E is not the restriction of coefficients");
      log.require(conditional_expectation(n, ea) == ea, "E not idempotent");
      log.require(conditional_expectation(n, x * a * y) == x * ea * y, "E not bimodular");
    }
  }
}

// 9 -------------------------------------------------------------------------
void dynamics(Log& log) {
  std::mt19937_64 rng(9);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto id = FiniteDynSystem::identity(n);
    auto cands = default_candidates(n);
    for (int t = 0; t < 10; ++t) {
      FuncOnX f;
      for (std::size_t x = 0; x < n; ++x) f.values.emplace_back(mpq_class(uniform(rng, -9, 9)));
      cands.push_back(f);
    }
    std::size_t best = 0;
    for (const auto& f : cands) best = std::max(best, cyclic_subspace(id, f).dim());
    log.require(best <= 2, "identity span above 2");
    log.require(is_cyclic_witness(id, cands).has_value() == (n <= 2), "identity on " + std::to_string(n) + " points");
  }
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto sh = FiniteDynSystem::shift(n);
    const auto chi1 = FuncOnX::indicator(n, 1);
    log.require(is_cyclic_witness(sh, {chi1}) == std::optional(chi1), "shift on " + std::to_string(n) + " points");
  }
  const FiniteDynSystem two({1, 0, 3, 2});
  const auto gens = generators_from_orbits(two);
  log.require(gens.generators.size() == 2 && gens.certified && gens.dimension == 4, "two 2-cycles");
  log.require(!is_cyclic_witness(two).has_value(), "two 2-cycles reported cyclic");
  for (int t = 0; t < 40; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 9));
    std::vector<std::size_t> sigma(n);
    for (auto& s : sigma) s = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    const FiniteDynSystem sys(sigma);
    const auto og = generators_from_orbits(sys);
    bool indicators = true;
    for (const auto& f : og.generators)
      indicators = indicators && std::count(f.values.begin(), f.values.end(), GaussianRational(1)) == 1 &&
                   std::count(f.values.begin(), f.values.end(), GaussianRational(0)) == static_cast<long>(n) - 1;
    log.require(og.certified && og.generators.size() <= n && indicators, "random system of size " + std::to_string(n));
    log.require(multi_span(sys, og.generators).dim() == n, "generators do not span");
  }
}

// 10 ------------------------------------------------------------------------
void polynomial(Log& log) {
  const auto span = poly_cyclic_subspace(PolyFunc({0, 1}, 8), 3, 8);
  log.require(span.echelon.pivots() == std::vector<std::size_t>{0, 1, 2, 4, 8}, "pivots are not {0,1,2,4,8}");
  for (std::size_t k = 0; k <= 8; ++k) {
    const bool expect = k == 0 || k == 1 || k == 2 || k == 4 || k == 8;
    log.require(span.contains(PolyFunc::monomial(k, 8)) == expect, "membership of t^" + std::to_string(k));
  }
  // t * t^2 leaves the span although both factors lie in it
  const auto a = PolyFunc::monomial(1, 8).dense(), b = PolyFunc::monomial(2, 8).dense();
  std::vector<mpq_class> prod(9, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < prod.size() && j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  log.require(prod == PolyFunc::monomial(3, 8).dense(), "t * t^2 != t^3");
  log.require(span.contains(PolyFunc::monomial(1, 8)) && span.contains(PolyFunc::monomial(2, 8)) && !span.contains(PolyFunc(prod, 8)),
              "product of span elements stays in the span");
}

// 11 ------------------------------------------------------------------------
void fourier(Log& log) {
  auto z6 = share(ModulePresentation::over_z(0, {6}));
  std::mt19937_64 rng(11);
  auto sample = [&] {
    GroupAlgElem a(z6);
    for (int k = 0; k < 4; ++k) a.add_term(el(z6, {uniform(rng, 0, 5)}), coeff(rng));
    return a;
  };
  for (int t = 0; t < 50; ++t) {
    const auto a = sample(), b = sample();
    const auto fa = fourier_transform(a, FourierMode::Float), fb = fourier_transform(b, FourierMode::Float);
    const auto fab = fourier_transform(a * b, FourierMode::Float);
    double err = 0, lhs = 0, rhs = 0;
    for (std::size_t k = 0; k < 6; ++k) {
      std::complex<double> direct = 0;
      for (const auto& [m, c] : a.terms())
        direct += c.to_complex() * std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) * m.coords[0].get_d() / 6.0);
      err = std::max({err, std::abs(fab.values[k] - fa.values[k] * fb.values[k]), std::abs(fa.values[k] - direct)});
      rhs += std::norm(fa.values[k]) / 6.0;
    }
    for (const auto& [m, c] : a.terms()) lhs += std::norm(c.to_complex());
    log.require(err <= 1e-9, "convolution theorem");
    log.require(std::abs(lhs - rhs) <= 1e-9, "Parseval");
  }
  for (long m = 0; m < 6; ++m) {
    const auto um = GroupAlgElem::monomial(z6, el(z6, {m}));
    const auto b = sample();
    const auto t = fourier_transform(um, FourierMode::Exact), tb = fourier_transform(b, FourierMode::Exact),
               tub = fourier_transform(um * b, FourierMode::Exact);
    for (long k = 0; k < 6; ++k) {
      const auto chi = Cyclotomic::root(6, k * m);
      const auto ku = static_cast<std::size_t>(k);
      log.require((*t.exact)[ku] == chi, "character value of U^" + std::to_string(m));
      log.require((*tub.exact)[ku] == chi * (*tb.exact)[ku], "U^" + std::to_string(m) + " not diagonal");
    }
  }
}

// 12 ------------------------------------------------------------------------
std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(Log& log) {
  const std::filesystem::path dir(FOCKMOD_SCENARIOS);
  const auto tmp = std::filesystem::temp_directory_path() / "fockmod_acceptance";
  std::filesystem::create_directories(tmp);
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  log.require(!files.empty(), "no scenarios found");
  for (const auto& f : files) {
    std::string out[2];
    for (int i = 0; i < 2; ++i) {
      const auto target = tmp / (f.filename().string() + "." + std::to_string(i) + ".json");
      const std::string cmd = std::string("\"") + FOCKMOD_CLI + "\" run \"" + f.string() + "\" --quiet --json \"" + target.string() + "\"";
      const int rc = std::system(cmd.c_str());
      log.require(rc == 0, f.filename().string() + " exited with " + std::to_string(rc));
      out[i] = read_file(target);
    }
    log.require(!out[0].empty() && out[0] == out[1], f.filename().string() + " reports differ");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Log&)>>> criteria{
      {"1 Fock identities on Z, Z/6, Z+Z/4", fock_identities},
      {"2 symbolic and numeric products agree", symbolic_numeric},
      {"3 torsion criterion", torsion_criterion},
      {"4 envelope module and torsion kernel", envelope},
      {"5 trivialization and the span caveat", trivialization},
      {"6 submodule iff covariance on Z[i]", submodule_covariance},
      {"7 product decomposition and diagonal part", product_decomposition},
      {"8 conditional expectation", conditional_expectation_laws},
      {"9 cyclic generation of finite systems", dynamics},
      {"10 polynomial span is not an algebra", polynomial},
      {"11 Fourier transform on Z/6", fourier},
      {"12 deterministic CLI reports", determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Log log;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(log);
    } catch (const std::exception& e) {
      log.problems.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = log.problems.empty();
    failures += pass ? 0 : 1;
    std::printf("%s  %s  (%.2fs)\n", pass ? "PASS" : "FAIL", name.c_str(), secs);
    for (std::size_t i = 0; i < log.problems.size() && i < 5; ++i) std::printf("      %s\n", log.problems[i].c_str());
  }
  std::fflush(stdout);
  return failures;
}
