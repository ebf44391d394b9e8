#include <numeric>
#include <set>

#include "doctest.h"
#include "fockmod/error.hpp"
#include "fockmod/modules.hpp"
#include "test_support.hpp"

using namespace fockmod;
using fockmod::testing::random_nonzero;
using fockmod::testing::uniform;

namespace {

DomainElem z(long v) { return DomainElem::integer(v); }
DomainElem zi(long a, long b) { return DomainElem::gaussian(a, b); }

ModuleElem el(const ModulePresentation& m, std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return m.element(std::move(v));
}

// Determinantal-divisor oracle: d_k = D_k / D_{k-1}, D_k = gcd of k x k minors.
IntVec invariant_factors_by_minors(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntVec out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    mpz_class g = 0;
    std::vector<bool> rsel(m, false), csel(n, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
      do {
        IntMatrix sub(k, k);
        std::size_t ri = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (!rsel[i]) continue;
          std::size_t ci = 0;
          for (std::size_t j = 0; j < n; ++j)
            if (csel[j]) sub(ri, ci++) = a(i, j);
          ++ri;
        }
        mpz_class det = abs(sub.determinant());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Subgroup generated by gens in a finite module, by closure.
std::set<ModuleElem> closure(const ModulePresentation& m, const std::vector<ModuleElem>& gens) {
  std::set<ModuleElem> seen{m.zero()};
  std::vector<ModuleElem> frontier{m.zero()};
  while (!frontier.empty()) {
    ModuleElem x = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      ModuleElem y = m.add(x, g);
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return seen;
}

ModulePresentation gaussian_mod(long d, IntMatrix i_action, std::size_t copies) {
  IntVec t(copies, d);
  return ModulePresentation(Domain::ZI, 0, t, std::move(i_action));
}

}  // namespace

TEST_CASE("smith normal form examples") {
  IntMatrix a{{2, 4}, {6, 8}};
  auto s = smith_normal_form(a);
  CHECK(s.D == IntMatrix({{2, 0}, {0, 4}}));
  CHECK(invariant_factors_by_minors(a) == IntVec{2, 4});
  CHECK(abs(a.determinant()) == 8);
  CHECK(s.U * a * s.V == s.D);

  auto id = smith_normal_form(IntMatrix::identity(3));
  CHECK(id.D == IntMatrix::identity(3));

  auto zero = smith_normal_form(IntMatrix{{0}});
  CHECK(zero.D == IntMatrix{{0}});
  CHECK(zero.rank == 0);

  auto empty = smith_normal_form(IntMatrix());
  CHECK(empty.D.rows() == 0);
  CHECK(empty.U.rows() == 0);

  auto tall = smith_normal_form(IntMatrix(3, 0));
  CHECK(tall.U == IntMatrix::identity(3));
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t m = static_cast<std::size_t>(uniform(rng, 1, 6));
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 6));
    IntMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = uniform(rng, -20, 20);
    auto s = smith_normal_form(a);
    REQUIRE(s.U * a * s.V == s.D);
    CHECK(abs(s.U.determinant()) == 1);
    CHECK(abs(s.V.determinant()) == 1);
    CHECK(s.U * s.U_inv == IntMatrix::identity(m));
    CHECK(s.V * s.V_inv == IntMatrix::identity(n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) CHECK(s.D(i, j) == 0);
    IntVec diag;
    for (std::size_t i = 0; i < s.rank; ++i) {
      CHECK(s.D(i, i) > 0);
      if (i > 0) CHECK(mpz_divisible_p(s.D(i, i).get_mpz_t(), s.D(i - 1, i - 1).get_mpz_t()));
      diag.push_back(s.D(i, i));
    }
    for (std::size_t i = s.rank; i < std::min(m, n); ++i) CHECK(s.D(i, i) == 0);
    if (m <= 5 && n <= 5) CHECK(diag == invariant_factors_by_minors(a));
  }
}

TEST_CASE("integer kernel and solve") {
  IntMatrix a{{2, 4, 6}};
  auto ker = integer_kernel(a);
  CHECK(ker.size() == 2);
  for (const auto& v : ker) CHECK(a.apply(v) == IntVec{0});
  CHECK(solve_integer(a, {IntVec{4}}).has_value());
  CHECK_FALSE(solve_integer(a, {IntVec{3}}).has_value());
}

TEST_CASE("presentation validation") {
  CHECK_THROWS_AS(ModulePresentation::over_z(0, {4, 6}), Error);
  CHECK_THROWS_AS(ModulePresentation::over_z(0, {1}), Error);
  CHECK_NOTHROW(ModulePresentation::over_z(1, {4, 12}));
  // i acting as the identity does not square to -1 over Z
  CHECK_THROWS_AS(ModulePresentation(Domain::ZI, 2, {}, IntMatrix::identity(2)), Error);
  CHECK_THROWS_AS(ModulePresentation(Domain::ZI, 1, {}), Error);
  CHECK_NOTHROW(gaussian_mod(2, IntMatrix{{0, 1}, {1, 0}}, 2));
  CHECK_NOTHROW(gaussian_mod(5, IntMatrix{{3}}, 1));
  // zero module and rank-0 presentations are legal
  auto zero = ModulePresentation::over_z(0);
  CHECK(zero.enumerate().size() == 1);
}

TEST_CASE("scalar_action examples") {
  auto m = ModulePresentation::over_z(1, {4});
  CHECK(scalar_action(m, z(3), el(m, {1, 3})) == el(m, {3, 1}));
  auto c6 = ModulePresentation::over_z(0, {6});
  CHECK(scalar_action(c6, z(5), el(c6, {2})) == el(c6, {4}));
  auto gi = ModulePresentation::gaussian_free(1);
  CHECK(scalar_action(gi, zi(1, 1), el(gi, {1, 0})) == el(gi, {1, 1}));
  // complex multiplication oracle: (a+bi)(c+di)
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      if (a == 0 && b == 0) continue;
      DomainElem prod = zi(a, b) * zi(2, -5);
      CHECK(scalar_action(gi, zi(a, b), el(gi, {2, -5})) == el(gi, {prod.re().get_si(), prod.im().get_si()}));
    }
  CHECK_THROWS_AS(scalar_action(c6, z(0), el(c6, {1})), Error);
}

TEST_CASE("scalar action is an action, exhaustively on small modules") {
  std::vector<ModulePresentation> mods = {
      ModulePresentation::over_z(0, {12}),      ModulePresentation::over_z(0, {2, 4}),
      ModulePresentation::over_z(0, {6, 12}),   gaussian_mod(2, IntMatrix{{0, 1}, {1, 0}}, 2),
      gaussian_mod(3, IntMatrix{{0, 2}, {1, 0}}, 2),
  };
  std::vector<DomainElem> zs = {z(1), z(-1), z(2), z(3), z(-5), z(7)};
  std::vector<DomainElem> gs = {zi(1, 0), zi(0, 1), zi(1, 1), zi(2, -1), zi(-3, 2)};
  for (const auto& m : mods) {
    const auto& rs = m.domain() == Domain::Z ? zs : gs;
    auto elems = m.enumerate();
    REQUIRE(elems.size() <= 144);
    for (const auto& r : rs)
      for (const auto& s : rs)
        for (const auto& x : elems) {
          CHECK(scalar_action(m, r, scalar_action(m, s, x)) == scalar_action(m, r * s, x));
        }
    for (const auto& r : rs)
      for (const auto& x : elems)
        for (const auto& y : elems)
          CHECK(scalar_action(m, r, m.add(x, y)) == m.add(scalar_action(m, r, x), scalar_action(m, r, y)));
  }
}

TEST_CASE("action_kernel against brute force") {
  auto c6 = ModulePresentation::over_z(0, {6});
  auto k = action_kernel(z(2), c6);
  std::set<ModuleElem> brute;
  for (const auto& x : c6.enumerate())
    if (scalar_action(c6, z(2), x).is_zero()) brute.insert(x);
  CHECK(closure(c6, k.generators) == brute);
  CHECK(brute == std::set<ModuleElem>{el(c6, {0}), el(c6, {3})});

  auto zz = ModulePresentation::over_z(1);
  CHECK(action_kernel(z(7), zz).generators.empty());

  auto c5 = ModulePresentation::over_z(0, {5});
  CHECK(action_kernel(z(2), c5).generators.empty());
  CHECK(is_bijective_action(z(2), c5));
  CHECK_FALSE(z(2).is_unit());
  CHECK_FALSE(is_surjective_action(z(2), zz));
  CHECK(is_bijective_action(z(-1), zz));
  CHECK_THROWS_AS(action_kernel(z(0), zz), Error);

  // exhaustive agreement on finite modules
  std::vector<ModulePresentation> mods = {ModulePresentation::over_z(0, {12}), ModulePresentation::over_z(0, {2, 4}),
                                          gaussian_mod(3, IntMatrix{{0, 2}, {1, 0}}, 2)};
  for (const auto& m : mods) {
    std::vector<DomainElem> rs = m.domain() == Domain::Z
                                     ? std::vector<DomainElem>{z(2), z(3), z(4), z(5), z(6)}
                                     : std::vector<DomainElem>{zi(1, 1), zi(3, 0), zi(2, 1), zi(0, 1)};
    for (const auto& r : rs) {
      std::set<ModuleElem> ker;
      std::set<ModuleElem> image;
      for (const auto& x : m.enumerate()) {
        if (scalar_action(m, r, x).is_zero()) ker.insert(x);
        image.insert(scalar_action(m, r, x));
      }
      CHECK(closure(m, action_kernel(r, m).generators) == ker);
      CHECK(is_surjective_action(r, m) == (image.size() == m.enumerate().size()));
    }
  }
}

TEST_CASE("submodule membership examples") {
  auto z2 = ModulePresentation::over_z(2);
  SubmoduleDesc n{{el(z2, {2, 0}), el(z2, {0, 3})}};
  CHECK(submodule_membership(z2, n, el(z2, {4, 3})));
  CHECK_FALSE(submodule_membership(z2, n, el(z2, {1, 0})));
  auto c12 = ModulePresentation::over_z(0, {12});
  CHECK(submodule_membership(c12, SubmoduleDesc{{el(c12, {4})}}, el(c12, {8})));
  CHECK_THROWS_AS(submodule_membership(c12, n, el(c12, {1})), Error);
}

TEST_CASE("membership agrees with enumeration on all subgroups") {
  for (const auto& m : {ModulePresentation::over_z(0, {12}), ModulePresentation::over_z(0, {2, 4})}) {
    auto elems = m.enumerate();
    // every subgroup of these groups is generated by at most two elements
    for (const auto& a : elems)
      for (const auto& b : elems) {
        SubmoduleDesc n{{a, b}};
        auto sub = closure(m, n.generators);
        for (const auto& x : elems) CHECK(submodule_membership(m, n, x) == (sub.count(x) == 1));
      }
  }
}

TEST_CASE("is_submodule examples") {
  auto gi = ModulePresentation::gaussian_free(1);
  CHECK_FALSE(is_submodule(gi, SubmoduleDesc{{el(gi, {1, 0})}}));
  CHECK(is_submodule(gi, SubmoduleDesc{{el(gi, {2, 0}), el(gi, {0, 2})}}));
  auto m = ModulePresentation::over_z(1, {4});
  for (const auto& g : {el(m, {1, 1}), el(m, {0, 2}), el(m, {3, 0})}) CHECK(is_submodule(m, SubmoduleDesc{{g}}));
  CHECK(is_submodule(gi, generated_submodule(gi, {el(gi, {1, 0})})));
  CHECK(is_submodule(gi, SubmoduleDesc{}));
}

TEST_CASE("quotient_module examples") {
  auto zz = ModulePresentation::over_z(1);
  auto q1 = quotient_module(zz, SubmoduleDesc{{el(zz, {6})}});
  CHECK(q1.quotient == ModulePresentation::over_z(0, {6}));

  auto z2 = ModulePresentation::over_z(2);
  auto q2 = quotient_module(z2, SubmoduleDesc{{el(z2, {2, 0}), el(z2, {0, 3})}});
  CHECK(q2.quotient == ModulePresentation::over_z(0, {6}));  // Z/2 + Z/3 = Z/6
  CHECK(q2.project(el(z2, {2, 0})).is_zero());
  CHECK(q2.project(el(z2, {0, 3})).is_zero());
  CHECK_FALSE(q2.project(el(z2, {1, 0})).is_zero());

  auto m = ModulePresentation::over_z(1, {4});
  auto q3 = quotient_module(m, SubmoduleDesc{{el(m, {0, 2})}});
  CHECK(q3.quotient == ModulePresentation::over_z(1, {2}));

  auto q4 = quotient_module(z2, SubmoduleDesc{{el(z2, {2, 4})}});
  auto t = torsion_decomposition(q4.quotient);
  CHECK(t.free_rank == 1);
  CHECK(t.invariant_factors == IntVec{2});

  auto gi = ModulePresentation::gaussian_free(1);
  CHECK_THROWS_AS(quotient_module(gi, SubmoduleDesc{{el(gi, {1, 0})}}), Error);
  auto qg = quotient_module(gi, SubmoduleDesc{{el(gi, {1, 0})}}, QuotientLevel::Group);
  CHECK_FALSE(qg.module_level);
  CHECK(qg.quotient == ModulePresentation::over_z(1));
  auto qm = quotient_module(gi, SubmoduleDesc{{el(gi, {2, 0}), el(gi, {0, 2})}});
  CHECK(qm.module_level);
  CHECK(qm.quotient.domain() == Domain::ZI);
  CHECK(*qm.quotient.order() == 4);
  // the induced i-action intertwines the projection
  for (const auto& x : {el(gi, {1, 0}), el(gi, {3, -1}), el(gi, {0, 5})})
    CHECK(qm.project(scalar_action(gi, zi(0, 1), x)) ==
          scalar_action(qm.quotient, zi(0, 1), qm.project(x)));
}

TEST_CASE("quotient projection: kernel is N, surjective, Lagrange on finite modules") {
  for (const auto& m : {ModulePresentation::over_z(0, {12}), ModulePresentation::over_z(0, {2, 4}),
                        ModulePresentation::over_z(0, {6, 12})}) {
    auto elems = m.enumerate();
    for (std::size_t ia = 0; ia < elems.size(); ia += 3)
      for (std::size_t ib = 0; ib < elems.size(); ib += 5) {
        SubmoduleDesc n{{elems[ia], elems[ib]}};
        auto q = quotient_module(m, n, QuotientLevel::Group);
        auto sub = closure(m, n.generators);
        std::set<ModuleElem> image;
        for (const auto& x : elems) {
          image.insert(q.project(x));
          CHECK(q.project(x).is_zero() == (sub.count(x) == 1));
        }
        CHECK(mpz_class(image.size()) == *q.quotient.order());
        CHECK(mpz_class(image.size() * sub.size()) == *m.order());
        for (const auto& g : n.generators) CHECK(q.project(g).is_zero());
      }
  }
}

TEST_CASE("torsion_decomposition examples") {
  auto t1 = torsion_decomposition(ModulePresentation::over_z(2));
  CHECK_FALSE(t1.has_torsion());
  CHECK(t1.free_rank == 2);
  CHECK_FALSE(t1.exponent.has_value());
  auto m = ModulePresentation::over_z(1, {4, 12});
  auto t2 = torsion_decomposition(m);
  CHECK(t2.invariant_factors == IntVec{4, 12});
  CHECK(*t2.exponent == 12);
  // exponent kills the torsion submodule
  for (const auto& g : t2.torsion.generators) CHECK(scalar_action(m, z(12), g).is_zero());
  auto k = action_kernel(z(12), m);
  for (const auto& g : t2.torsion.generators) CHECK(submodule_membership(m, k, g));
}

TEST_CASE("intersections of subgroups") {
  auto zz = ModulePresentation::over_z(1);
  auto i = intersect_subgroups(zz, {SubmoduleDesc{{el(zz, {4})}}, SubmoduleDesc{{el(zz, {6})}}});
  CHECK(same_subgroup(zz, i, SubmoduleDesc{{el(zz, {12})}}));
  auto c12 = ModulePresentation::over_z(0, {12});
  auto j = intersect_subgroups(c12, {SubmoduleDesc{{el(c12, {2})}}, SubmoduleDesc{{el(c12, {3})}}});
  CHECK(closure(c12, j.generators) == std::set<ModuleElem>{el(c12, {0}), el(c12, {6})});
  CHECK_THROWS_AS(intersect_subgroups(zz, {}), Error);
  auto single = intersect_subgroups(zz, {SubmoduleDesc{{el(zz, {5})}}});
  CHECK(same_subgroup(zz, single, SubmoduleDesc{{el(zz, {5})}}));

  auto m = ModulePresentation::over_z(0, {2, 4});
  auto elems = m.enumerate();
  for (const auto& a : elems)
    for (const auto& b : elems) {
      auto sa = closure(m, {a}), sb = closure(m, {b});
      std::set<ModuleElem> both;
      for (const auto& x : sa)
        if (sb.count(x)) both.insert(x);
      CHECK(closure(m, intersect_subgroups(m, {SubmoduleDesc{{a}}, SubmoduleDesc{{b}}}).generators) == both);
    }
}

TEST_CASE("intrinsic presentation of a submodule") {
  auto gi = ModulePresentation::gaussian_free(1);
  SubmoduleDesc n{{el(gi, {1, 1})}};
  auto closed = generated_submodule(gi, n.generators);
  auto p = present_submodule(gi, closed);
  CHECK(p.presentation.domain() == Domain::ZI);
  CHECK(p.presentation.rank() == 2);
  for (const auto& x : {el(gi, {1, 1}), el(gi, {2, 0}), el(gi, {-3, 1})}) {
    auto own = pull_back(gi, closed, p, x);
    CHECK(p.include(gi, own) == x);
    CHECK(p.include(gi, scalar_action(p.presentation, zi(0, 1), own)) == scalar_action(gi, zi(0, 1), x));
  }
  CHECK_THROWS_AS(present_submodule(gi, SubmoduleDesc{{el(gi, {1, 0})}}), Error);

  auto c12 = ModulePresentation::over_z(0, {12});
  auto p12 = present_submodule(c12, SubmoduleDesc{{el(c12, {3})}});
  CHECK(p12.presentation == ModulePresentation::over_z(0, {4}));
}

TEST_CASE("localize examples") {
  auto m = ModulePresentation::over_z(1, {6});
  auto loc = localize(m);
  CHECK(loc.module.dimension() == 1);
  CHECK(same_subgroup(m, loc.kernel, SubmoduleDesc{{el(m, {0, 1})}}));
  CHECK_FALSE(loc.injective());
  // kernel of i is exactly the torsion part, checked on a box
  for (long a = -4; a <= 4; ++a)
    for (long b = 0; b < 6; ++b) {
      auto x = el(m, {a, b});
      auto image = loc.map(x);
      bool killed = std::all_of(image.begin(), image.end(), [](const mpq_class& q) { return q == 0; });
      CHECK(killed == (a == 0));
      CHECK(killed == submodule_membership(m, loc.kernel, x));
    }

  auto z2 = localize(ModulePresentation::over_z(2));
  CHECK(z2.module.dimension() == 2);
  CHECK(z2.injective());

  auto c4 = ModulePresentation::over_z(0, {4});
  auto l4 = localize(c4);
  CHECK(l4.module.dimension() == 0);
  for (const auto& x : c4.enumerate()) CHECK(submodule_membership(c4, l4.kernel, x));
}

TEST_CASE("localization is R-linear") {
  std::mt19937_64 rng(21);
  IntMatrix i3{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
  std::vector<ModulePresentation> mods = {ModulePresentation::over_z(2, {6}),
                                          ModulePresentation(Domain::ZI, 2, {2}, i3)};
  for (const auto& m : mods) {
    auto loc = localize(m);
    for (int k = 0; k < 200; ++k) {
      DomainElem r = random_nonzero(rng, m.domain(), 7);
      IntVec v(m.rank());
      for (auto& c : v) c = uniform(rng, -9, 9);
      auto x = m.element(v);
      CHECK(loc.map(scalar_action(m, r, x)) == loc.module.act(r, loc.map(x)));
      // m/r then times r returns i(m)
      auto back = loc.module.act(Fraction(r), loc.module.act(Fraction(DomainElem::one(m.domain()), r), loc.map(x)));
      CHECK(back == loc.map(x));
    }
    CHECK(loc.module.dimension() == (m.domain() == Domain::ZI ? 1u : 2u));
  }
}

TEST_CASE("direct-limit equivalence matches equality in the localization") {
  std::mt19937_64 rng(22);
  auto m = ModulePresentation::over_z(1, {4});
  auto loc = localize(m);
  int equivalent = 0;
  for (int k = 0; k < 400; ++k) {
    DomainElem r = random_nonzero(rng, Domain::Z, 4), s = random_nonzero(rng, Domain::Z, 4);
    auto x = el(m, {uniform(rng, -4, 4), uniform(rng, 0, 3)});
    // bias towards equivalent pairs: y = (s/r) x when possible
    ModuleElem y = el(m, {uniform(rng, -4, 4), uniform(rng, 0, 3)});
    if (k % 2 == 0) {
      y = scalar_action(m, s, x);
      r = r * DomainElem::one(Domain::Z);
      // x/1 ~ s x / s
      bool eq = fractions_equivalent(m, x, DomainElem::one(Domain::Z), y, s);
      CHECK(eq);
    }
    auto lhs = loc.module.act(Fraction(DomainElem::one(Domain::Z), r), loc.map(x));
    auto rhs = loc.module.act(Fraction(DomainElem::one(Domain::Z), s), loc.map(y));
    bool eq = fractions_equivalent(m, x, r, y, s);
    CHECK(eq == (lhs == rhs));
    equivalent += eq;
  }
  CHECK(equivalent > 0);
}

TEST_CASE("envelope module") {
  auto zz = ModulePresentation::over_z(1);
  auto e = envelope_module(zz);
  CHECK(e.module.dimension() == 1);
  CHECK(e.injective());
  CHECK(e.map(el(zz, {5})) == std::vector<mpq_class>{5});
  CHECK(envelope_module(ModulePresentation::over_z(3)).module.dimension() == 3);
  CHECK_THROWS_AS(envelope_module(ModulePresentation::over_z(1, {2})), Error);
  try {
    envelope_module(ModulePresentation::over_z(1, {2}));
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::TorsionPresent);
  }

  std::mt19937_64 rng(23);
  for (const auto& m : {ModulePresentation::over_z(3), ModulePresentation::gaussian_free(2)}) {
    auto env = envelope_module(m);
    for (int k = 0; k < 20; ++k) {
      DomainElem r = random_nonzero(rng, m.domain(), 9);
      for (std::size_t j = 0; j < env.module.q_dim(); ++j) {
        std::vector<mpq_class> v(env.module.q_dim());
        v[j] = 1;
        auto x = env.module.solve_action(r, v);
        REQUIRE(x.has_value());
        CHECK(env.module.act(r, *x) == v);
      }
    }
  }
}
