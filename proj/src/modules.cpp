#include "fockmod/modules.hpp"

#include <algorithm>
#include <sstream>

#include "fockmod/error.hpp"
#include "fockmod/exact_linalg.hpp"

namespace fockmod {

bool ModuleElem::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const mpz_class& v) { return v == 0; });
}

std::string ModuleElem::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + coords[i].get_str();
  return s + ")";
}

ModulePresentation::ModulePresentation(Domain domain, std::size_t free_rank, IntVec torsion,
                                       std::optional<IntMatrix> i_action)
    : domain_(domain), free_rank_(free_rank), torsion_(std::move(torsion)), i_action_(std::move(i_action)) {
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    if (torsion_[j] <= 1)
      throw Error(ErrorKind::InvalidInput, "invariant factor " + torsion_[j].get_str() + " must exceed 1");
    if (j > 0 && !mpz_divisible_p(torsion_[j].get_mpz_t(), torsion_[j - 1].get_mpz_t()))
      throw Error(ErrorKind::InvalidInput, "invariant factors must form a divisibility chain");
  }
  const std::size_t n = rank();
  if (domain_ == Domain::Z) {
    if (i_action_) throw Error(ErrorKind::InvalidInput, "i_action given for a Z-module");
    return;
  }
  if (!i_action_) throw Error(ErrorKind::InvalidInput, "Z[i]-module needs an i_action matrix");
  if (i_action_->rows() != n || i_action_->cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "i_action must be " + std::to_string(n) + "x" + std::to_string(n));
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    IntVec col = i_action_->column(free_rank_ + j);
    for (auto& c : col) c *= torsion_[j];
    if (!ModuleElem{reduce(col)}.is_zero())
      throw Error(ErrorKind::InvalidInput, "i_action is not well defined modulo the relations");
  }
  for (std::size_t j = 0; j < n; ++j) {
    IntVec sq = reduce(i_action_->apply(reduce(i_action_->column(j))));
    sq[j] += 1;
    if (!ModuleElem{reduce(sq)}.is_zero())
      throw Error(ErrorKind::InvalidInput, "i_action does not square to -1");
  }
}

ModulePresentation ModulePresentation::over_z(std::size_t free_rank, IntVec torsion) {
  return {Domain::Z, free_rank, std::move(torsion)};
}

ModulePresentation ModulePresentation::gaussian_free(std::size_t n) {
  IntMatrix i_mat(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    i_mat(2 * k, 2 * k + 1) = -1;
    i_mat(2 * k + 1, 2 * k) = 1;
  }
  return {Domain::ZI, 2 * n, {}, std::move(i_mat)};
}

std::optional<mpz_class> ModulePresentation::order() const {
  if (!is_finite()) return std::nullopt;
  mpz_class o = 1;
  for (const auto& d : torsion_) o *= d;
  return o;
}

IntVec ModulePresentation::reduce(IntVec v) const {
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    mpz_class& c = v[free_rank_ + j];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), torsion_[j].get_mpz_t());
  }
  return v;
}

ModuleElem ModulePresentation::element(IntVec coords) const {
  if (coords.size() != rank())
    throw Error(ErrorKind::DimensionMismatch,
                "element has " + std::to_string(coords.size()) + " coordinates, module has " +
                    std::to_string(rank()));
  return {reduce(std::move(coords))};
}

ModuleElem ModulePresentation::zero() const { return {IntVec(rank())}; }

ModuleElem ModulePresentation::basis(std::size_t j) const {
  IntVec v(rank());
  v.at(j) = 1;
  return element(std::move(v));
}

bool ModulePresentation::contains(const ModuleElem& a) const {
  if (a.coords.size() != rank()) return false;
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    const mpz_class& c = a.coords[free_rank_ + j];
    if (c < 0 || c >= torsion_[j]) return false;
  }
  return true;
}

ModuleElem ModulePresentation::add(const ModuleElem& a, const ModuleElem& b) const {
  IntVec v(rank());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coords.at(i) + b.coords.at(i);
  return element(std::move(v));
}

ModuleElem ModulePresentation::sub(const ModuleElem& a, const ModuleElem& b) const {
  IntVec v(rank());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coords.at(i) - b.coords.at(i);
  return element(std::move(v));
}

ModuleElem ModulePresentation::neg(const ModuleElem& a) const { return sub(zero(), a); }

ModuleElem ModulePresentation::times(const mpz_class& k, const ModuleElem& a) const {
  IntVec v = a.coords;
  for (auto& c : v) c *= k;
  return element(std::move(v));
}

IntMatrix ModulePresentation::relation_matrix() const {
  IntMatrix d(rank(), torsion_.size());
  for (std::size_t j = 0; j < torsion_.size(); ++j) d(free_rank_ + j, j) = torsion_[j];
  return d;
}

IntMatrix ModulePresentation::action_matrix(const DomainElem& r) const {
  if (r.im() != 0 && domain_ != Domain::ZI)
    throw Error(ErrorKind::DomainMismatch, "Gaussian scalar " + r.str() + " on a Z-module");
  const std::size_t n = rank();
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = r.re();
  if (r.im() != 0)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) += r.im() * (*i_action_)(i, j);
  return a;
}

std::vector<ModuleElem> ModulePresentation::enumerate() const {
  if (!is_finite()) throw Error(ErrorKind::InfiniteGroup, "cannot enumerate " + str());
  std::vector<ModuleElem> out;
  IntVec cur(rank());
  for (;;) {
    out.push_back({cur});
    std::size_t k = cur.size();
    for (;;) {
      if (k == 0) return out;
      --k;
      cur[k] += 1;
      if (cur[k] < torsion_[k]) break;
      cur[k] = 0;
    }
  }
}

std::string ModulePresentation::str() const {
  std::ostringstream os;
  os << to_string(domain_) << "-module Z^" << free_rank_;
  for (const auto& d : torsion_) os << " + Z/" << d.get_str();
  if (i_action_) os << " i=" << i_action_->str();
  return os.str();
}

bool operator==(const ModulePresentation& a, const ModulePresentation& b) {
  return a.domain_ == b.domain_ && a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_ &&
         a.i_action_ == b.i_action_;
}

ModuleElem scalar_action(const ModulePresentation& m, const DomainElem& r, const ModuleElem& x) {
  if (r.is_zero()) throw Error(ErrorKind::ZeroScalar, "scalar action by 0");
  if (x.coords.size() != m.rank()) throw Error(ErrorKind::DimensionMismatch, "element not in module");
  if (r.im() == 0) return m.times(r.re(), x);
  return m.element(m.action_matrix(r).apply(x.coords));
}

namespace {

// Sign-normalise (first nonzero free coordinate positive), drop zeros and
// duplicates while keeping first-seen order.
std::vector<ModuleElem> tidy(const ModulePresentation& m, const std::vector<IntVec>& raw) {
  std::vector<ModuleElem> out;
  for (const auto& v : raw) {
    ModuleElem e = m.element(v);
    if (e.is_zero()) continue;
    for (std::size_t i = 0; i < m.free_rank(); ++i) {
      if (e.coords[i] == 0) continue;
      if (e.coords[i] < 0) e = m.neg(e);
      break;
    }
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(std::move(e));
  }
  return out;
}

IntMatrix generator_matrix(const ModulePresentation& m, const SubmoduleDesc& n) {
  for (const auto& g : n.generators)
    if (g.coords.size() != m.rank())
      throw Error(ErrorKind::DimensionMismatch, "generator " + g.str() + " not in " + m.str());
  std::vector<IntVec> cols;
  cols.reserve(n.generators.size());
  for (const auto& g : n.generators) cols.push_back(g.coords);
  return IntMatrix::from_columns(m.rank(), cols);
}

}  // namespace

SubmoduleDesc hom_kernel(const ModulePresentation& src, const IntMatrix& map, const ModulePresentation& dst) {
  if (map.cols() != src.rank() || map.rows() != dst.rank())
    throw Error(ErrorKind::DimensionMismatch, "hom_kernel map shape");
  const std::size_t n = src.rank();
  std::vector<IntVec> raw;
  for (const auto& z : integer_kernel(map.hcat(dst.relation_matrix())))
    raw.emplace_back(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n));
  return {tidy(src, raw)};
}

SubmoduleDesc action_kernel(const DomainElem& r, const ModulePresentation& m) {
  if (r.is_zero()) throw Error(ErrorKind::ZeroScalar, "action_kernel of 0");
  return hom_kernel(m, m.action_matrix(r), m);
}

bool is_injective_action(const DomainElem& r, const ModulePresentation& m) {
  return action_kernel(r, m).generators.empty();
}

bool is_surjective_action(const DomainElem& r, const ModulePresentation& m) {
  if (r.is_zero()) throw Error(ErrorKind::ZeroScalar, "is_surjective_action of 0");
  IntMatrix sys = m.action_matrix(r).hcat(m.relation_matrix());
  for (std::size_t j = 0; j < m.rank(); ++j)
    if (!solve_integer(sys, m.basis(j).coords)) return false;
  return true;
}

bool is_bijective_action(const DomainElem& r, const ModulePresentation& m) {
  return is_injective_action(r, m) && is_surjective_action(r, m);
}

std::optional<IntVec> membership_coefficients(const ModulePresentation& m, const SubmoduleDesc& n,
                                              const ModuleElem& x) {
  if (x.coords.size() != m.rank()) throw Error(ErrorKind::DimensionMismatch, "element not in module");
  IntMatrix g = generator_matrix(m, n);
  auto sol = solve_integer(g.hcat(m.relation_matrix()), x.coords);
  if (!sol) return std::nullopt;
  sol->resize(n.generators.size());
  return sol;
}

bool submodule_membership(const ModulePresentation& m, const SubmoduleDesc& n, const ModuleElem& x) {
  return membership_coefficients(m, n, x).has_value();
}

bool is_submodule(const ModulePresentation& m, const SubmoduleDesc& n) {
  generator_matrix(m, n);
  if (m.domain() == Domain::Z) return true;
  const DomainElem i = DomainElem::gaussian(0, 1);
  for (const auto& g : n.generators)
    if (!submodule_membership(m, n, scalar_action(m, i, g))) return false;
  return true;
}

SubmoduleDesc generated_submodule(const ModulePresentation& m, std::vector<ModuleElem> gens) {
  if (m.domain() == Domain::ZI) {
    const DomainElem i = DomainElem::gaussian(0, 1);
    const std::size_t k = gens.size();
    for (std::size_t j = 0; j < k; ++j) gens.push_back(scalar_action(m, i, gens[j]));
  }
  std::vector<IntVec> raw;
  for (auto& g : gens) raw.push_back(std::move(g.coords));
  return {tidy(m, raw)};
}

bool same_subgroup(const ModulePresentation& m, const SubmoduleDesc& a, const SubmoduleDesc& b) {
  for (const auto& g : a.generators)
    if (!submodule_membership(m, b, g)) return false;
  for (const auto& g : b.generators)
    if (!submodule_membership(m, a, g)) return false;
  return true;
}

SubmoduleDesc intersect_subgroups(const ModulePresentation& m, const std::vector<SubmoduleDesc>& ns) {
  if (ns.empty()) throw Error(ErrorKind::EmptyList, "intersection of no subgroups");
  SubmoduleDesc acc = ns.front();
  for (std::size_t k = 1; k < ns.size(); ++k) {
    // G1 a - G2 c + D b = 0  =>  G1 a lies in both
    IntMatrix g1 = generator_matrix(m, acc);
    IntMatrix g2 = generator_matrix(m, ns[k]);
    for (std::size_t i = 0; i < g2.rows(); ++i)
      for (std::size_t j = 0; j < g2.cols(); ++j) g2(i, j) = -g2(i, j);
    const std::size_t na = g1.cols();
    std::vector<IntVec> raw;
    for (const auto& z : integer_kernel(g1.hcat(g2).hcat(m.relation_matrix()))) {
      IntVec a(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(na));
      raw.push_back(g1.apply(a));
    }
    acc = {tidy(m, raw)};
  }
  return acc;
}

Cokernel present_cokernel(const IntMatrix& relations) {
  const std::size_t n = relations.rows();
  SmithForm s = smith_normal_form(relations);
  std::vector<std::size_t> keep;
  IntVec torsion;
  for (std::size_t i = s.rank; i < n; ++i) keep.push_back(i);
  const std::size_t free_rank = keep.size();
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.D(i, i) == 1) continue;
    keep.push_back(i);
    torsion.push_back(s.D(i, i));
  }
  IntMatrix proj(keep.size(), n), sec(n, keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) {
      proj(r, c) = s.U(keep[r], c);
      sec(c, r) = s.U_inv(c, keep[r]);
    }
  return {ModulePresentation::over_z(free_rank, std::move(torsion)), std::move(proj), std::move(sec)};
}

ModuleElem QuotientModule::project(const ModuleElem& x) const {
  return quotient.element(projection.apply(x.coords));
}

ModuleElem QuotientModule::lift(const ModuleElem& y) const { return {section.apply(y.coords)}; }

namespace {

// Transports the i-action of m along (projection, section) onto target.
ModulePresentation with_induced_i(const ModulePresentation& m, const ModulePresentation& target,
                                  const IntMatrix& projection, const IntMatrix& section) {
  const std::size_t nq = target.rank();
  std::vector<IntVec> cols;
  const DomainElem i = DomainElem::gaussian(0, 1);
  for (std::size_t j = 0; j < nq; ++j) {
    ModuleElem pre = m.element(section.column(j));
    cols.push_back(target.element(projection.apply(scalar_action(m, i, pre).coords)).coords);
  }
  return {Domain::ZI, target.free_rank(), target.torsion(), IntMatrix::from_columns(nq, cols)};
}

}  // namespace

QuotientModule quotient_module(const ModulePresentation& m, const SubmoduleDesc& n, QuotientLevel level) {
  const bool submodule = is_submodule(m, n);
  if (level == QuotientLevel::Module && !submodule)
    throw Error(ErrorKind::NotSubmodule, "subgroup is not closed under the ring action");
  Cokernel c = present_cokernel(m.relation_matrix().hcat(generator_matrix(m, n)));
  QuotientModule q{std::move(c.presentation), std::move(c.projection), std::move(c.section), submodule};
  if (submodule && m.domain() == Domain::ZI)
    q.quotient = with_induced_i(m, q.quotient, q.projection, q.section);
  return q;
}

ModuleElem SubmodulePresentation::include(const ModulePresentation& ambient, const ModuleElem& y) const {
  return ambient.element(inclusion.apply(y.coords));
}

SubmodulePresentation present_submodule(const ModulePresentation& m, const SubmoduleDesc& n) {
  if (m.domain() == Domain::ZI && !is_submodule(m, n))
    throw Error(ErrorKind::NotSubmodule, "intrinsic Z[i]-presentation needs a submodule");
  IntMatrix g = generator_matrix(m, n);
  const std::size_t ng = g.cols();
  std::vector<IntVec> rel;
  for (const auto& z : integer_kernel(g.hcat(m.relation_matrix())))
    rel.emplace_back(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(ng));
  Cokernel c = present_cokernel(IntMatrix::from_columns(ng, rel));
  IntMatrix inc = g * c.section;
  SubmodulePresentation p{std::move(c.presentation), std::move(inc), std::move(c.projection)};
  if (m.domain() == Domain::ZI) {
    const DomainElem i = DomainElem::gaussian(0, 1);
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < p.presentation.rank(); ++j) {
      ModuleElem img = scalar_action(m, i, p.include(m, p.presentation.basis(j)));
      cols.push_back(pull_back(m, n, p, img).coords);
    }
    const ModulePresentation& own = p.presentation;
    p.presentation = ModulePresentation(Domain::ZI, own.free_rank(), own.torsion(),
                                        IntMatrix::from_columns(own.rank(), cols));
  }
  return p;
}

ModuleElem pull_back(const ModulePresentation& m, const SubmoduleDesc& n, const SubmodulePresentation& p,
                     const ModuleElem& x) {
  auto c = membership_coefficients(m, n, x);
  if (!c) throw Error(ErrorKind::InvalidInput, x.str() + " is not in the subgroup");
  return p.presentation.element(p.generator_projection.apply(*c));
}

TorsionInfo torsion_decomposition(const ModulePresentation& m) {
  TorsionInfo t;
  t.free_rank = m.free_rank();
  t.invariant_factors = m.torsion();
  for (std::size_t j = 0; j < m.torsion().size(); ++j)
    t.torsion.generators.push_back(m.basis(m.free_rank() + j));
  if (!m.torsion().empty()) t.exponent = m.torsion().back();
  return t;
}

LocalizedModule::LocalizedModule(Domain domain, std::size_t q_dim, std::optional<IntMatrix> i_block)
    : domain_(domain), q_dim_(q_dim), i_block_(std::move(i_block)) {}

namespace {

std::vector<std::vector<mpq_class>> rational_action(Domain domain, std::size_t n,
                                                   const std::optional<IntMatrix>& i_block,
                                                   const DomainElem& r) {
  if (r.im() != 0 && domain != Domain::ZI)
    throw Error(ErrorKind::DomainMismatch, "Gaussian scalar on a Q-vector space");
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = r.re();
    if (r.im() != 0)
      for (std::size_t j = 0; j < n; ++j) a[i][j] += mpq_class(r.im() * (*i_block)(i, j));
  }
  return a;
}

}  // namespace

std::vector<mpq_class> LocalizedModule::act(const DomainElem& r, const std::vector<mpq_class>& v) const {
  if (v.size() != q_dim_) throw Error(ErrorKind::DimensionMismatch, "vector not in localized module");
  auto a = rational_action(domain_, q_dim_, i_block_, r);
  std::vector<mpq_class> out(q_dim_);
  for (std::size_t i = 0; i < q_dim_; ++i)
    for (std::size_t j = 0; j < q_dim_; ++j) out[i] += a[i][j] * v[j];
  return out;
}

std::vector<mpq_class> LocalizedModule::act(const Fraction& q, const std::vector<mpq_class>& v) const {
  if (q.is_zero()) throw Error(ErrorKind::ZeroScalar, "action of 0 in Q(R)");
  auto x = solve_action(q.den(), act(q.num(), v));
  if (!x) throw Error(ErrorKind::InvalidInput, "denominator does not act invertibly");
  return *x;
}

std::optional<std::vector<mpq_class>> LocalizedModule::solve_action(const DomainElem& r,
                                                                    const std::vector<mpq_class>& v) const {
  if (r.is_zero()) throw Error(ErrorKind::ZeroScalar, "solve_action with 0");
  if (v.size() != q_dim_) throw Error(ErrorKind::DimensionMismatch, "vector not in localized module");
  return solve_unique(rational_action(domain_, q_dim_, i_block_, r), v);
}

std::vector<mpq_class> Localization::map(const ModuleElem& x) const {
  std::vector<mpq_class> v(free_rank);
  for (std::size_t i = 0; i < free_rank; ++i) v[i] = x.coords.at(i);
  return v;
}

Localization localize(const ModulePresentation& m) {
  const std::size_t a = m.free_rank();
  std::optional<IntMatrix> block;
  if (m.domain() == Domain::ZI) {
    IntMatrix b(a, a);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < a; ++j) b(i, j) = (*m.i_action())(i, j);
    block = std::move(b);
  }
  return {LocalizedModule(m.domain(), a, std::move(block)), torsion_decomposition(m).torsion, a};
}

Localization envelope_module(const ModulePresentation& m) {
  if (!m.torsion().empty())
    throw Error(ErrorKind::TorsionPresent, m.str() + " has torsion; the envelope needs a torsion-free module");
  return localize(m);
}

bool fractions_equivalent(const ModulePresentation& m, const ModuleElem& x, const DomainElem& r,
                          const ModuleElem& y, const DomainElem& s) {
  if (r.is_zero() || s.is_zero()) throw Error(ErrorKind::ZeroScalar, "fraction with zero denominator");
  ModuleElem w = m.sub(scalar_action(m, s, x), scalar_action(m, r, y));
  for (std::size_t i = 0; i < m.free_rank(); ++i)
    if (w.coords[i] != 0) return false;
  return true;
}

}  // namespace fockmod
