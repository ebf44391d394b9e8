#include "fockmod/groupalg.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "fockmod/error.hpp"

namespace fockmod {

GroupAlgElem::GroupAlgElem(ModulePtr ambient) : ambient_(std::move(ambient)) {
  if (!ambient_) throw Error(ErrorKind::InvalidInput, "group algebra without an ambient module");
}

GroupAlgElem GroupAlgElem::monomial(ModulePtr ambient, const ModuleElem& m, const GaussianRational& c) {
  GroupAlgElem a(std::move(ambient));
  a.add_term(m, c);
  return a;
}

GroupAlgElem GroupAlgElem::one(ModulePtr ambient) {
  ModuleElem z = ambient->zero();
  return monomial(std::move(ambient), z);
}

GaussianRational GroupAlgElem::coeff(const ModuleElem& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void GroupAlgElem::add_term(const ModuleElem& m, const GaussianRational& c) {
  if (!ambient_->contains(m)) throw Error(ErrorKind::AmbientMismatch, m.str() + " is not a reduced element of " + ambient_->str());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

GroupAlgElem& GroupAlgElem::operator+=(const GroupAlgElem& o) {
  require_same_ambient(ambient_, o.ambient_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GroupAlgElem& GroupAlgElem::operator-=(const GroupAlgElem& o) {
  require_same_ambient(ambient_, o.ambient_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GroupAlgElem operator*(const GaussianRational& c, const GroupAlgElem& a) {
  GroupAlgElem out(a.ambient_);
  for (const auto& [m, x] : a.terms_) out.add_term(m, c * x);
  return out;
}

GroupAlgElem operator*(const GroupAlgElem& a, const GroupAlgElem& b) { return convolve(a, b); }

bool operator==(const GroupAlgElem& a, const GroupAlgElem& b) {
  return same_ambient(a.ambient_, b.ambient_) && a.terms_ == b.terms_;
}

std::string GroupAlgElem::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")U^" + m.str();
  }
  return s;
}

bool same_ambient(const ModulePtr& a, const ModulePtr& b) { return a == b || *a == *b; }

void require_same_ambient(const ModulePtr& a, const ModulePtr& b) {
  if (!same_ambient(a, b)) throw Error(ErrorKind::AmbientMismatch, a->str() + " vs " + b->str());
}

GroupAlgElem convolve(const GroupAlgElem& a, const GroupAlgElem& b) {
  require_same_ambient(a.ambient(), b.ambient());
  const auto& m = a.module();
  GroupAlgElem out(a.ambient());
  for (const auto& [x, c] : a.terms())
    for (const auto& [y, d] : b.terms()) out.add_term(m.add(x, y), c * d);
  return out;
}

GroupAlgElem involution(const GroupAlgElem& a) {
  GroupAlgElem out(a.ambient());
  for (const auto& [x, c] : a.terms()) out.add_term(a.module().neg(x), c.conj());
  return out;
}

GroupAlgElem alpha_endo(const DomainElem& r, const GroupAlgElem& a) {
  if (r.is_zero()) throw Error(ErrorKind::ZeroScalar, "alpha_0 is not defined");
  GroupAlgElem out(a.ambient());
  for (const auto& [x, c] : a.terms()) out.add_term(scalar_action(a.module(), r, x), c);
  return out;
}

namespace {

void require_generators_in(const ModulePresentation& m, const SubmoduleDesc& n, ErrorKind kind) {
  for (const auto& g : n.generators)
    if (!m.contains(g)) throw Error(kind, g.str() + " is not an element of " + m.str());
}

}  // namespace

GroupAlgElem conditional_expectation(const SubmoduleDesc& n, const GroupAlgElem& a) {
  require_generators_in(a.module(), n, ErrorKind::AmbientMismatch);
  GroupAlgElem out(a.ambient());
  for (const auto& [x, c] : a.terms())
    if (submodule_membership(a.module(), n, x)) out.add_term(x, c);
  return out;
}

GroupAlgElem quotient_push(const QuotientModule& q, const ModulePtr& target, const GroupAlgElem& a) {
  if (!(*target == q.quotient)) throw Error(ErrorKind::AmbientMismatch, "target is not the quotient module");
  GroupAlgElem out(target);
  for (const auto& [x, c] : a.terms()) out.add_term(q.project(x), c);
  return out;
}

GroupAlgElem quotient_push(const SubmoduleDesc& n, const GroupAlgElem& a) {
  require_generators_in(a.module(), n, ErrorKind::NotSubgroup);
  QuotientModule q = quotient_module(a.module(), n, QuotientLevel::Group);
  return quotient_push(q, share(q.quotient), a);
}

namespace {

mpq_class frac_part(const mpq_class& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - fl;
}

}  // namespace

CharacterRep::CharacterRep(ModulePtr ambient, std::vector<mpq_class> rotations)
    : ambient_(std::move(ambient)), rotations_(std::move(rotations)) {
  const auto& m = *ambient_;
  if (rotations_.size() != m.rank()) throw Error(ErrorKind::DimensionMismatch, "one rotation per coordinate");
  for (auto& t : rotations_) {
    t.canonicalize();
    t = frac_part(t);
  }
  for (std::size_t j = 0; j < m.torsion().size(); ++j) {
    mpq_class v = rotations_[m.free_rank() + j] * m.torsion()[j];
    if (v.get_den() != 1)
      throw Error(ErrorKind::InvalidInput, "rotation on a torsion coordinate must be a multiple of 1/d");
  }
}

CharacterRep CharacterRep::evaluation(const ModulePtr& integers, long p, long q) {
  if (q <= 0) throw Error(ErrorKind::InvalidInput, "evaluation point needs q > 0");
  return CharacterRep(integers, {mpq_class(p, q)});
}

CharacterRep CharacterRep::dual(const ModulePtr& finite, const ModuleElem& k) {
  if (!finite->is_finite()) throw Error(ErrorKind::InfiniteGroup, "dual characters need a finite module");
  std::vector<mpq_class> rot;
  for (std::size_t j = 0; j < finite->rank(); ++j) rot.emplace_back(k.coords.at(j), finite->torsion()[j]);
  return CharacterRep(finite, std::move(rot));
}

mpq_class CharacterRep::rotation(const ModuleElem& m) const {
  mpq_class t = 0;
  for (std::size_t j = 0; j < rotations_.size(); ++j) t += rotations_[j] * m.coords.at(j);
  return frac_part(t);
}

unsigned long CharacterRep::conductor() const {
  unsigned long q = 1;
  for (const auto& t : rotations_) q = std::lcm(q, t.get_den().get_ui());
  return q;
}

Cyclotomic CharacterRep::value(const ModuleElem& m) const {
  const unsigned long q = conductor();
  mpq_class k = rotation(m) * q;
  return Cyclotomic::root(q, k.get_num().get_si());
}

Cyclotomic CharacterRep::evaluate(const GroupAlgElem& a) const {
  require_same_ambient(ambient_, a.ambient());
  const unsigned long q = conductor();
  Cyclotomic acc(q);
  for (const auto& [m, c] : a.terms()) acc += Cyclotomic(q, c) * value(m);
  return acc;
}

SubmoduleDesc kernel_group(const Representation& rep) {
  if (const auto* chi = std::get_if<CharacterRep>(&rep)) {
    const auto& m = *chi->ambient();
    const unsigned long q = chi->conductor();
    if (q == 1) {
      SubmoduleDesc all;
      for (std::size_t j = 0; j < m.rank(); ++j) all.generators.push_back(m.basis(j));
      return all;
    }
    IntMatrix row(1, m.rank());
    for (std::size_t j = 0; j < m.rank(); ++j) {
      mpq_class c = chi->rotations()[j] * q;
      row(0, j) = c.get_num();
    }
    return hom_kernel(m, row, ModulePresentation::over_z(0, {mpz_class(q)}));
  }
  const auto& qr = std::get<QuotientRep>(rep);
  QuotientModule q = quotient_module(*qr.ambient, qr.subgroup, QuotientLevel::Group);
  return hom_kernel(*qr.ambient, q.projection, q.quotient);
}

SubmoduleDesc intersect_kernel_groups(const std::vector<Representation>& reps) {
  if (reps.empty()) throw Error(ErrorKind::EmptyList, "no representations to intersect");
  auto ambient_of = [](const Representation& r) {
    return std::visit([](const auto& x) -> ModulePtr {
      if constexpr (std::is_same_v<std::decay_t<decltype(x)>, CharacterRep>)
        return x.ambient();
      else
        return x.ambient;
    }, r);
  };
  ModulePtr m = ambient_of(reps.front());
  std::vector<SubmoduleDesc> kernels;
  for (const auto& r : reps) {
    require_same_ambient(m, ambient_of(r));
    kernels.push_back(kernel_group(r));
  }
  return intersect_subgroups(*m, kernels);
}

namespace {

mpq_class dual_pairing(const ModulePresentation& m, const ModuleElem& k, const ModuleElem& x) {
  mpq_class t = 0;
  for (std::size_t j = 0; j < m.rank(); ++j) t += mpq_class(k.coords[j] * x.coords[j], m.torsion()[j]);
  return frac_part(t);
}

unsigned long exponent_of(const ModulePresentation& m) {
  return m.torsion().empty() ? 1UL : m.torsion().back().get_ui();
}

}  // namespace

FourierTransform fourier_transform(const GroupAlgElem& a, FourierMode mode) {
  const auto& m = a.module();
  if (!m.is_finite()) throw Error(ErrorKind::InfiniteGroup, "Fourier transform needs a finite module");
  FourierTransform t{a.ambient(), m.enumerate(), std::nullopt, {}};
  const unsigned long e = exponent_of(m);
  const bool exact = mode == FourierMode::Exact ||
                     (mode == FourierMode::Auto && std::lcm(e, 4UL) <= kExactFourierOrderLimit);
  if (exact) {
    std::vector<Cyclotomic> vals;
    vals.reserve(t.characters.size());
    for (const auto& k : t.characters) {
      Cyclotomic acc(e);
      for (const auto& [x, c] : a.terms()) {
        mpq_class rot = dual_pairing(m, k, x) * e;
        acc += Cyclotomic(e, c) * Cyclotomic::root(e, rot.get_num().get_si());
      }
      t.values.push_back(acc.to_complex());
      vals.push_back(std::move(acc));
    }
    t.exact = std::move(vals);
    return t;
  }
  for (const auto& k : t.characters) {
    std::complex<double> acc = 0;
    for (const auto& [x, c] : a.terms())
      acc += c.to_complex() * std::polar(1.0, 2.0 * std::numbers::pi * dual_pairing(m, k, x).get_d());
    t.values.push_back(acc);
  }
  return t;
}

GroupAlgElem inverse_fourier_exact(const FourierTransform& t) {
  if (!t.exact) throw Error(ErrorKind::InvalidInput, "transform was computed on the floating-point path");
  const auto& m = *t.ambient;
  const unsigned long e = exponent_of(m);
  const GaussianRational scale(mpq_class(1, static_cast<unsigned long>(t.characters.size())));
  GroupAlgElem out(t.ambient);
  for (const auto& x : m.enumerate()) {
    Cyclotomic acc(e);
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
      mpq_class rot = dual_pairing(m, t.characters[i], x) * e;
      acc += (*t.exact)[i] * Cyclotomic::root(e, -rot.get_num().get_si());
    }
    auto g = acc.to_gaussian();
    if (!g) throw Error(ErrorKind::InvalidInput, "inverse transform left Q(i)");
    out.add_term(x, scale * *g);
  }
  return out;
}

std::vector<std::complex<double>> inverse_fourier_values(const FourierTransform& t) {
  const auto& m = *t.ambient;
  std::vector<std::complex<double>> out;
  const double n = static_cast<double>(t.characters.size());
  for (const auto& x : m.enumerate()) {
    std::complex<double> acc = 0;
    for (std::size_t i = 0; i < t.characters.size(); ++i)
      acc += t.values[i] * std::polar(1.0, -2.0 * std::numbers::pi * dual_pairing(m, t.characters[i], x).get_d());
    out.push_back(acc / n);
  }
  return out;
}

}  // namespace fockmod
