#include "fockmod/semicross.hpp"

#include <set>

#include "fockmod/error.hpp"

namespace fockmod {

SemicrossedElem::SemicrossedElem(ModulePtr ambient) : ambient_(std::move(ambient)) {
  if (!ambient_) throw Error(ErrorKind::InvalidInput, "semicrossed element without an ambient module");
}

SemicrossedElem SemicrossedElem::monomial(const DomainElem& r, const GroupAlgElem& a) {
  SemicrossedElem x(a.ambient());
  x.add_term(r, a);
  return x;
}

SemicrossedElem SemicrossedElem::generator(ModulePtr ambient, const DomainElem& r) {
  return monomial(r, GroupAlgElem::one(std::move(ambient)));
}

SemicrossedElem SemicrossedElem::from_poly(const GroupAlgElem& a) {
  return monomial(DomainElem::one(a.module().domain()), a);
}

SemicrossedElem SemicrossedElem::one(ModulePtr ambient) {
  return from_poly(GroupAlgElem::one(std::move(ambient)));
}

GroupAlgElem SemicrossedElem::coeff(const DomainElem& r) const {
  auto it = terms_.find(r);
  return it == terms_.end() ? GroupAlgElem(ambient_) : it->second;
}

void SemicrossedElem::add_term(const DomainElem& r, const GroupAlgElem& a) {
  if (r.domain() != domain())
    throw Error(ErrorKind::DomainMismatch, "index " + r.str() + " is not in " + std::string(to_string(domain())));
  if (r.is_zero()) throw Error(ErrorKind::ZeroElement, "S_0 is not a generator");
  require_same_ambient(ambient_, a.ambient());
  if (a.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(r, a);
  if (inserted) return;
  it->second += a;
  if (it->second.is_zero()) terms_.erase(it);
}

SemicrossedElem& SemicrossedElem::operator+=(const SemicrossedElem& o) {
  for (const auto& [r, a] : o.terms_) add_term(r, a);
  return *this;
}

SemicrossedElem& SemicrossedElem::operator-=(const SemicrossedElem& o) {
  for (const auto& [r, a] : o.terms_) add_term(r, GaussianRational(-1) * a);
  return *this;
}

SemicrossedElem operator*(const SemicrossedElem& x, const SemicrossedElem& y) { return sc_multiply(x, y); }

bool operator==(const SemicrossedElem& a, const SemicrossedElem& b) {
  return same_ambient(a.ambient_, b.ambient_) && a.terms_ == b.terms_;
}

std::string SemicrossedElem::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [r, a] : terms_) {
    if (!s.empty()) s += " + ";
    s += "S_" + r.str() + "[" + a.str() + "]";
  }
  return s;
}

SemicrossedElem sc_multiply(const SemicrossedElem& x, const SemicrossedElem& y) {
  require_same_ambient(x.ambient(), y.ambient());
  SemicrossedElem out(x.ambient());
  for (const auto& [r, a] : x.terms())
    for (const auto& [s, b] : y.terms()) out.add_term(r * s, alpha_endo(s, a) * b);
  return out;
}

GroupAlgElem sc_compress(const DomainElem& r, const GroupAlgElem& a) { return alpha_endo(r, a); }

SemicrossedElem induced_quotient_map(const QuotientModule& q, const ModulePtr& target, const SemicrossedElem& x) {
  if (!q.module_level) throw Error(ErrorKind::NotSubmodule, "the actions only intertwine on a module-level quotient");
  SemicrossedElem out(target);
  for (const auto& [r, a] : x.terms()) out.add_term(r, quotient_push(q, target, a));
  return out;
}

SemicrossedElem induced_quotient_map(const SubmoduleDesc& n, const SemicrossedElem& x) {
  const auto& m = *x.ambient();
  for (const auto& g : n.generators)
    if (!m.contains(g)) throw Error(ErrorKind::AmbientMismatch, g.str() + " is not an element of " + m.str());
  QuotientModule q = quotient_module(m, n, QuotientLevel::Module);
  return induced_quotient_map(q, share(q.quotient), x);
}

namespace {

using SmallTerms = std::map<DomainElem, GroupAlgElem>;

void accumulate(SmallTerms& t, const DomainElem& r, const GroupAlgElem& a) {
  auto [it, inserted] = t.try_emplace(r, a);
  if (!inserted) it->second += a;
  if (it->second.is_zero()) t.erase(it);
}

}  // namespace

bool invariant_subalgebra_check(const ModulePtr& m, const SubmoduleDesc& n, const std::vector<DomainElem>& r_sample,
                                const std::vector<std::pair<SemicrossedElem, SemicrossedElem>>& x_sample) {
  for (const auto& g : n.generators)
    if (!m->contains(g)) throw Error(ErrorKind::AmbientMismatch, g.str() + " is not an element of " + m->str());

  std::set<DomainElem> indices(r_sample.begin(), r_sample.end());
  for (const auto& [x, y] : x_sample) {
    require_same_ambient(m, x.ambient());
    require_same_ambient(m, y.ambient());
    for (const auto& [r, a] : x.terms()) indices.insert(r);
    for (const auto& [r, a] : y.terms()) indices.insert(r);
  }
  for (const auto& r : indices)
    for (const auto& g : n.generators)
      if (!submodule_membership(*m, n, scalar_action(*m, r, g))) return false;

  // N in its own coordinates, as a group; the actions of the sampled r are
  // transported through the inclusion.
  const ModulePresentation zview = ModulePresentation::over_z(m->free_rank(), m->torsion());
  const SubmodulePresentation p = present_submodule(zview, n);
  const ModulePtr small = share(p.presentation);

  auto pull = [&](const GroupAlgElem& a) {
    GroupAlgElem out(small);
    for (const auto& [x, c] : a.terms()) {
      if (!submodule_membership(*m, n, x))
        throw Error(ErrorKind::InvalidInput, "sample element " + x.str() + " is not supported on N");
      out.add_term(pull_back(zview, n, p, x), c);
    }
    return out;
  };
  auto push = [&](const GroupAlgElem& a) {
    GroupAlgElem out(m);
    for (const auto& [y, c] : a.terms()) out.add_term(p.include(zview, y), c);
    return out;
  };
  auto small_alpha = [&](const DomainElem& r, const GroupAlgElem& a) {
    GroupAlgElem out(small);
    for (const auto& [y, c] : a.terms())
      out.add_term(pull_back(zview, n, p, scalar_action(*m, r, p.include(zview, y))), c);
    return out;
  };

  for (const auto& [x, y] : x_sample) {
    SmallTerms prod;
    for (const auto& [r, a] : x.terms()) {
      GroupAlgElem sa = pull(a);
      for (const auto& [s, b] : y.terms()) accumulate(prod, r * s, small_alpha(s, sa) * pull(b));
    }
    SemicrossedElem transported(m);
    for (const auto& [r, a] : prod) transported.add_term(r, push(a));
    if (!(transported == sc_multiply(x, y))) return false;
  }
  return true;
}

SemicrossedElem diagonal_part(const SemicrossedElem& x) {
  SemicrossedElem out(x.ambient());
  for (const auto& [r, a] : x.terms())
    if (canonical_associate(r).positive_part.is_one()) out.add_term(r, a);
  return out;
}

std::string_view to_string(SplitKind k) {
  switch (k) {
    case SplitKind::Units: return "units";
    case SplitKind::Positives: return "positives";
    case SplitKind::AllNonzero: return "all";
    case SplitKind::Trivial: return "trivial";
  }
  return "?";
}

SplitKind parse_split_kind(std::string_view s) {
  for (auto k : {SplitKind::Units, SplitKind::Positives, SplitKind::AllNonzero, SplitKind::Trivial})
    if (to_string(k) == s) return k;
  throw Error(ErrorKind::ParseError, "unknown split factor '" + std::string(s) + "'");
}

bool split_contains(SplitKind k, const DomainElem& r) {
  if (r.domain() != Domain::Z) throw Error(ErrorKind::UnsupportedDomain, "product splits are implemented for Z");
  switch (k) {
    case SplitKind::Units: return r.is_unit();
    case SplitKind::Positives: return r.re() > 0;
    case SplitKind::AllNonzero: return !r.is_zero();
    case SplitKind::Trivial: return r.is_one();
  }
  return false;
}

std::pair<DomainElem, DomainElem> split_index(const Split& split, const DomainElem& s) {
  if (s.domain() != Domain::Z) throw Error(ErrorKind::UnsupportedDomain, "product splits are implemented for Z");
  if (s.is_zero()) throw Error(ErrorKind::ZeroElement, "0 is not in the semigroup");
  const mpz_class a = abs(s.re());
  std::vector<std::pair<DomainElem, DomainElem>> found;
  for (mpz_class d = 1; d <= a; ++d) {
    if (a % d != 0) continue;
    for (int sign : {1, -1}) {
      DomainElem s1 = DomainElem::integer(sign * d);
      DomainElem s2 = DomainElem::integer(s.re() / s1.re());
      if (split_contains(split.first, s1) && split_contains(split.second, s2)) found.emplace_back(s1, s2);
    }
  }
  if (found.size() != 1)
    throw Error(ErrorKind::NotADirectProduct, s.str() + " has " + std::to_string(found.size()) + " factorizations in " +
                                                  std::string(to_string(split.first)) + " x " +
                                                  std::string(to_string(split.second)));
  return found.front();
}

IteratedSemicrossedElem::IteratedSemicrossedElem(ModulePtr ambient, Bracketing bracketing)
    : ambient_(std::move(ambient)), bracketing_(bracketing) {}

void IteratedSemicrossedElem::add_term(const Key& k, const GroupAlgElem& a) {
  require_same_ambient(ambient_, a.ambient());
  if (a.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, a);
  if (inserted) return;
  it->second += a;
  if (it->second.is_zero()) terms_.erase(it);
}

namespace {

const DomainElem& inner_of(Bracketing b, const IteratedSemicrossedElem::Key& k) {
  return b == Bracketing::FirstInner ? k.first : k.second;
}
const DomainElem& outer_of(Bracketing b, const IteratedSemicrossedElem::Key& k) {
  return b == Bracketing::FirstInner ? k.second : k.first;
}
IteratedSemicrossedElem::Key make_key(Bracketing b, const DomainElem& inner, const DomainElem& outer) {
  return b == Bracketing::FirstInner ? IteratedSemicrossedElem::Key{inner, outer}
                                     : IteratedSemicrossedElem::Key{outer, inner};
}

// Groups by outer index: sum_t T_t X_t with X_t in the inner algebra.
std::map<DomainElem, SemicrossedElem> by_outer(const IteratedSemicrossedElem& x) {
  std::map<DomainElem, SemicrossedElem> out;
  for (const auto& [k, a] : x.terms()) {
    auto it = out.try_emplace(outer_of(x.bracketing(), k), x.ambient()).first;
    it->second.add_term(inner_of(x.bracketing(), k), a);
  }
  return out;
}

// beta_u on the inner algebra: alpha_u on coefficients, inner generators fixed.
SemicrossedElem beta(const DomainElem& u, const SemicrossedElem& x) {
  SemicrossedElem out(x.ambient());
  for (const auto& [r, a] : x.terms()) out.add_term(r, alpha_endo(u, a));
  return out;
}

}  // namespace

IteratedSemicrossedElem operator*(const IteratedSemicrossedElem& x, const IteratedSemicrossedElem& y) {
  if (x.bracketing_ != y.bracketing_) throw Error(ErrorKind::InvalidInput, "mixed bracketings");
  require_same_ambient(x.ambient_, y.ambient_);
  IteratedSemicrossedElem out(x.ambient_, x.bracketing_);
  const auto xs = by_outer(x), ys = by_outer(y);
  for (const auto& [t, xt] : xs)
    for (const auto& [u, yu] : ys) {
      SemicrossedElem inner = sc_multiply(beta(u, xt), yu);
      for (const auto& [r, a] : inner.terms()) out.add_term(make_key(x.bracketing_, r, t * u), a);
    }
  return out;
}

bool operator==(const IteratedSemicrossedElem& a, const IteratedSemicrossedElem& b) {
  return a.bracketing_ == b.bracketing_ && same_ambient(a.ambient_, b.ambient_) && a.terms_ == b.terms_;
}

std::string IteratedSemicrossedElem::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, a] : terms_) {
    if (!s.empty()) s += " + ";
    s += "S_(" + k.first.str() + "," + k.second.str() + ")[" + a.str() + "]";
  }
  return s;
}

IteratedSemicrossedElem to_iterated(const SemicrossedElem& x, const Split& split, Bracketing b) {
  IteratedSemicrossedElem out(x.ambient(), b);
  for (const auto& [s, a] : x.terms()) out.add_term(split_index(split, s), a);
  return out;
}

SemicrossedElem from_iterated(const IteratedSemicrossedElem& x) {
  SemicrossedElem out(x.ambient());
  for (const auto& [k, a] : x.terms()) out.add_term(k.first * k.second, a);
  return out;
}

bool product_decomposition_check(const ModulePtr& m, const Split& split, int samples, const DecompositionOptions& opts) {
  if (m->domain() != Domain::Z) throw Error(ErrorKind::UnsupportedDomain, "product decomposition is checked over Z");
  if (opts.index_pool.empty()) throw Error(ErrorKind::EmptyList, "empty index pool");
  for (long s : opts.index_pool) split_index(split, DomainElem::integer(s));

  std::mt19937_64 rng(opts.seed);
  auto pick = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto random_coord = [&](std::size_t j) -> mpz_class {
    if (j < m->free_rank()) return pick(-4, 4);
    return pick(0, m->torsion()[j - m->free_rank()].get_si() - 1);
  };
  auto random_monomial = [&]() {
    const DomainElem s = DomainElem::integer(opts.index_pool[rng() % opts.index_pool.size()]);
    GroupAlgElem a(m);
    for (int t = 0; t < opts.terms_per_coeff; ++t) {
      IntVec v(m->rank());
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = random_coord(j);
      a.add_term(m->element(std::move(v)), GaussianRational(mpq_class(pick(-3, 3)), mpq_class(pick(-3, 3))));
    }
    if (a.is_zero()) a = GroupAlgElem::one(m);
    return SemicrossedElem::monomial(s, a);
  };

  for (int i = 0; i < samples; ++i) {
    const SemicrossedElem x = random_monomial(), y = random_monomial();
    const SemicrossedElem xy = sc_multiply(x, y);
    for (Bracketing b : {Bracketing::FirstInner, Bracketing::SecondInner}) {
      const auto product = to_iterated(x, split, b) * to_iterated(y, split, b);
      if (!(to_iterated(xy, split, b) == product)) return false;
      if (!(from_iterated(product) == xy)) return false;
    }
  }
  return true;
}

namespace {

// Everything except the normal-form pair S U rewrites.
bool is_redex(const WordLetter& a, const WordLetter& b) {
  return !(a.kind == WordLetter::Kind::S && b.kind == WordLetter::Kind::U);
}

}  // namespace

SemicrossedElem normalize_word(const ModulePtr& ambient, const std::vector<WordLetter>& word, const GaussianRational& c,
                               RewriteStrategy strategy, std::mt19937_64* rng) {
  using K = WordLetter::Kind;
  if (strategy == RewriteStrategy::Random && rng == nullptr)
    throw Error(ErrorKind::InvalidInput, "random rewriting needs a generator");
  const auto& m = *ambient;
  std::vector<WordLetter> w = word;
  for (const auto& l : w) {
    if (l.kind == K::S && (l.r.is_zero() || l.r.domain() != m.domain()))
      throw Error(ErrorKind::InvalidInput, "bad semigroup letter " + l.r.str());
    if (l.kind == K::U && !m.contains(l.m)) throw Error(ErrorKind::AmbientMismatch, l.m.str());
  }
  for (;;) {
    std::vector<std::size_t> redexes;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (is_redex(w[i], w[i + 1])) redexes.push_back(i);
    if (redexes.empty()) break;
    std::size_t i = redexes.front();
    if (strategy == RewriteStrategy::Rightmost) i = redexes.back();
    if (strategy == RewriteStrategy::Random) i = redexes[(*rng)() % redexes.size()];
    WordLetter& a = w[i];
    WordLetter& b = w[i + 1];
    if (a.kind == K::U && b.kind == K::S) {
      // U^m S_r = S_r U^{rm}
      WordLetter s = b;
      WordLetter u{K::U, {}, scalar_action(m, b.r, a.m)};
      a = s;
      b = u;
    } else if (a.kind == K::S) {
      a.r = a.r * b.r;
      w.erase(w.begin() + static_cast<long>(i) + 1);
    } else {
      a.m = m.add(a.m, b.m);
      w.erase(w.begin() + static_cast<long>(i) + 1);
    }
  }
  DomainElem r = DomainElem::one(m.domain());
  ModuleElem x = m.zero();
  for (const auto& l : w) {
    if (l.kind == K::S) r = l.r;
    else x = l.m;
  }
  return SemicrossedElem::monomial(r, GroupAlgElem::monomial(ambient, x, c));
}

}  // namespace fockmod
