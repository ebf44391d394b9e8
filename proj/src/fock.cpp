#include "fockmod/fock.hpp"

#include <future>
#include <iomanip>

#include "fockmod/error.hpp"

namespace fockmod {

std::string FockOp::str() const {
  switch (kind) {
    case Kind::U: return "U(" + m.str() + ")";
    case Kind::S: return "S(" + r.str() + ")";
    case Kind::Sstar: return "T(" + r.str() + ")";
    case Kind::UAdj: return "U(" + m.str() + ")*";
    case Kind::SAdj: return "S(" + r.str() + ")*";
  }
  return "?";
}

namespace {

std::vector<DomainElem> semigroup_window(Domain d, long bound) {
  std::vector<DomainElem> out;
  if (d == Domain::Z) {
    for (long r = -bound; r <= bound; ++r)
      if (r != 0) out.push_back(DomainElem::integer(r));
    return out;
  }
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b)
      if ((a != 0 || b != 0) && a * a + b * b <= bound) out.push_back(DomainElem::gaussian(a, b));
  return out;
}

// Lexicographic odometer over the box x torsion.
std::vector<ModuleElem> box_sites(const ModulePresentation& s, long radius) {
  const std::size_t a = s.free_rank(), n = s.rank();
  std::vector<long> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = j < a ? -radius : 0;
    hi[j] = j < a ? radius : s.torsion()[j - a].get_si() - 1;
  }
  std::vector<ModuleElem> out;
  std::vector<long> cur = lo;
  for (;;) {
    IntVec v(cur.begin(), cur.end());
    out.push_back(s.element(std::move(v)));
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (cur[j] < hi[j]) {
        ++cur[j];
        break;
      }
      cur[j] = lo[j];
      if (j == 0) return out;
    }
    if (n == 0) return out;
  }
}

void validate_window(const FockWindow& w) {
  if (w.semigroup_bound < 1) throw Error(ErrorKind::WindowTooSmall, "semigroup window does not contain 1");
  if (w.module_radius && *w.module_radius < 0) throw Error(ErrorKind::WindowTooSmall, "module window does not contain 0");
}

}  // namespace

void FockRep::populate(std::vector<ModuleElem> sites) {
  sites_ = std::move(sites);
  semigroup_ = semigroup_window(module_->domain(), window_.semigroup_bound);
  for (std::size_t i = 0; i < sites_.size(); ++i) site_index_.emplace(sites_[i], i);
  for (std::size_t i = 0; i < semigroup_.size(); ++i) semigroup_index_.emplace(semigroup_[i], i);
}

FockRep build_fock(const ModulePtr& m, const FockWindow& w) {
  validate_window(w);
  if (m->free_rank() > 0 && !w.module_radius)
    throw Error(ErrorKind::WindowTooSmall, "free coordinates need a box radius");
  FockRep rep;
  rep.module_ = m;
  rep.sites_module_ = m;
  rep.window_ = w;
  rep.populate(box_sites(*m, w.module_radius.value_or(0)));
  return rep;
}

FockRep build_quotient_fock(const ModulePtr& m, const SubmoduleDesc& n, const FockWindow& w) {
  validate_window(w);
  FockRep rep;
  rep.module_ = m;
  rep.quotient_ = quotient_module(*m, n, QuotientLevel::Group);
  rep.sites_module_ = share(rep.quotient_->quotient);
  if (rep.sites_module_->free_rank() > 0 && !w.module_radius)
    throw Error(ErrorKind::InfiniteQuotient, m->str() + " / N is infinite and no box was given");
  rep.window_ = w;
  rep.populate(box_sites(*rep.sites_module_, w.module_radius.value_or(0)));
  return rep;
}

std::pair<ModuleElem, DomainElem> FockRep::basis(std::size_t j) const {
  const std::size_t ns = semigroup_.size();
  return {sites_.at(j / ns), semigroup_.at(j % ns)};
}

std::optional<std::size_t> FockRep::index(const ModuleElem& site, const DomainElem& r) const {
  auto a = site_index_.find(site);
  auto b = semigroup_index_.find(r);
  if (a == site_index_.end() || b == semigroup_index_.end()) return std::nullopt;
  return a->second * semigroup_.size() + b->second;
}

bool FockRep::in_module_window(const ModuleElem& m) const {
  if (is_quotient()) return module_->contains(m);
  return site_index_.contains(m);
}

bool FockRep::in_semigroup_window(const DomainElem& r) const { return semigroup_index_.contains(r); }

std::optional<std::size_t> FockRep::shift_site(std::size_t g, const DomainElem& s, const ModuleElem& m) const {
  ModuleElem delta = scalar_action(*module_, s, m);
  if (quotient_) delta = quotient_->project(delta);
  auto it = site_index_.find(sites_module_->add(sites_[g], delta));
  if (it == site_index_.end()) return std::nullopt;
  return it->second;
}

OpTable FockRep::table(const FockOp& op) const {
  const std::size_t ns = semigroup_.size(), n = dim();
  OpTable t{std::vector<long>(n, OpTable::kZero)};
  auto invert = [&](const OpTable& fwd, long missing) {
    OpTable inv{std::vector<long>(n, missing)};
    for (std::size_t j = 0; j < n; ++j)
      if (fwd.target[j] >= 0) inv.target[static_cast<std::size_t>(fwd.target[j])] = static_cast<long>(j);
    return inv;
  };
  switch (op.kind) {
    case FockOp::Kind::U: {
      if (!module_->contains(op.m)) throw Error(ErrorKind::AmbientMismatch, op.m.str() + " is not in " + module_->str());
      for (std::size_t si = 0; si < ns; ++si) {
        ModuleElem delta = scalar_action(*module_, semigroup_[si], op.m);
        if (quotient_) delta = quotient_->project(delta);
        for (std::size_t g = 0; g < sites_.size(); ++g) {
          auto it = site_index_.find(sites_module_->add(sites_[g], delta));
          t.target[g * ns + si] = it == site_index_.end() ? OpTable::kEscaped : static_cast<long>(it->second * ns + si);
        }
      }
      return t;
    }
    case FockOp::Kind::S: {
      if (op.r.is_zero()) throw Error(ErrorKind::ZeroScalar, "S(0)");
      for (std::size_t si = 0; si < ns; ++si) {
        auto it = semigroup_index_.find(op.r * semigroup_[si]);
        for (std::size_t g = 0; g < sites_.size(); ++g)
          t.target[g * ns + si] = it == semigroup_index_.end() ? OpTable::kEscaped : static_cast<long>(g * ns + it->second);
      }
      return t;
    }
    case FockOp::Kind::Sstar: {
      if (op.r.is_zero()) throw Error(ErrorKind::ZeroScalar, "T(0)");
      for (std::size_t si = 0; si < ns; ++si) {
        auto q = divides(op.r, semigroup_[si]);
        // |t| <= |s|, so a quotient is always inside the window
        std::optional<std::size_t> ti;
        if (q) ti = semigroup_index_.at(*q);
        for (std::size_t g = 0; g < sites_.size(); ++g)
          t.target[g * ns + si] = ti ? static_cast<long>(g * ns + *ti) : OpTable::kZero;
      }
      return t;
    }
    case FockOp::Kind::UAdj:
      // U(m) is a bijection of the untruncated basis; a missing preimage lies outside the window
      return invert(table(FockOp::u(op.m)), OpTable::kEscaped);
    case FockOp::Kind::SAdj:
      // a preimage under S(r) is never larger than its image, so a missing one is a true zero
      return invert(table(FockOp::s(op.r)), OpTable::kZero);
  }
  return t;
}

namespace {

SparseMatrix from_table(const OpTable& t) {
  const auto n = static_cast<Eigen::Index>(t.target.size());
  std::vector<Eigen::Triplet<std::complex<double>>> trips;
  for (Eigen::Index j = 0; j < n; ++j)
    if (long k = t.target[static_cast<std::size_t>(j)]; k >= 0) trips.emplace_back(k, j, 1.0);
  SparseMatrix a(n, n);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

SparseMatrix identity(std::size_t n) {
  SparseMatrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  a.setIdentity();
  return a;
}

}  // namespace

SparseMatrix FockRep::matrix(const FockOp& op) const {
  switch (op.kind) {
    case FockOp::Kind::UAdj: return SparseMatrix(matrix(FockOp::u(op.m)).adjoint());
    case FockOp::Kind::SAdj: return SparseMatrix(matrix(FockOp::s(op.r)).adjoint());
    default: return from_table(table(op));
  }
}

namespace {

void check_op_window(const FockRep& rep, const FockOp& op) {
  switch (op.kind) {
    case FockOp::Kind::U:
    case FockOp::Kind::UAdj:
      if (!rep.in_module_window(op.m)) throw Error(ErrorKind::OutOfWindow, op.str() + " is outside the module window");
      return;
    default:
      if (!rep.in_semigroup_window(op.r))
        throw Error(ErrorKind::OutOfWindow, op.str() + " is outside the semigroup window");
  }
}

}  // namespace

SparseMatrix op_matrix(const FockRep& rep, const FockOp& op) {
  check_op_window(rep, op);
  return rep.matrix(op);
}

std::vector<bool> interior_of_word(const FockRep& rep, const FockWord& w) {
  std::vector<OpTable> tables;
  for (const auto& op : w) tables.push_back(rep.table(op));
  std::vector<bool> out(rep.dim(), true);
  for (std::size_t j = 0; j < rep.dim(); ++j) {
    long cur = static_cast<long>(j);
    for (auto it = tables.rbegin(); it != tables.rend() && cur >= 0; ++it) {
      cur = it->target[static_cast<std::size_t>(cur)];
      if (cur == OpTable::kEscaped) out[j] = false;
    }
  }
  return out;
}

SparseMatrix word_matrix(const FockRep& rep, const FockWord& w) {
  SparseMatrix acc = identity(rep.dim());
  for (const auto& op : w) acc = SparseMatrix(acc * rep.matrix(op));
  return acc;
}

double max_column_residual(const SparseMatrix& a, const SparseMatrix& b, const std::vector<bool>& columns) {
  const SparseMatrix d = a - b;
  double worst = 0;
  for (Eigen::Index j = 0; j < d.outerSize(); ++j) {
    if (!columns[static_cast<std::size_t>(j)]) continue;
    double s = 0;
    for (SparseMatrix::InnerIterator it(d, j); it; ++it) s += std::norm(it.value());
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

bool PropositionReport::pass() const {
  return std::all_of(identities.begin(), identities.end(), [](const auto& r) { return r.pass; });
}

namespace {

struct Instance {
  FockWord lhs, rhs;
};

// Tables and matrices of every generator an identity suite touches, built
// once up front and read-only afterwards.
class OpCache {
public:
  OpCache(const FockRep& rep, const std::vector<std::pair<std::string, std::vector<Instance>>>& groups, bool parallel)
      : rep_(rep) {
    for (const auto& g : groups)
      for (const auto& in : g.second) {
        for (const auto& op : in.lhs) keys_.try_emplace(op.str(), op);
        for (const auto& op : in.rhs) keys_.try_emplace(op.str(), op);
      }
    std::vector<std::pair<std::string, FockOp>> todo(keys_.begin(), keys_.end());
    std::vector<Entry> built(todo.size());
    auto build = [&](std::size_t i) {
      const FockOp& op = todo[i].second;
      OpTable t = rep_.table(op);
      const bool adj = op.kind == FockOp::Kind::UAdj || op.kind == FockOp::Kind::SAdj;
      SparseMatrix m = adj ? rep_.matrix(op) : from_table(t);
      built[i] = {std::move(t), std::move(m)};
    };
    if (parallel) {
      std::vector<std::future<void>> futs;
      for (std::size_t i = 0; i < todo.size(); ++i) futs.push_back(std::async(std::launch::async, build, i));
      for (auto& f : futs) f.get();
    } else {
      for (std::size_t i = 0; i < todo.size(); ++i) build(i);
    }
    for (std::size_t i = 0; i < todo.size(); ++i) entries_.emplace(todo[i].first, std::move(built[i]));
  }

  std::vector<bool> interior(const FockWord& w) const {
    std::vector<const OpTable*> tables;
    for (auto it = w.rbegin(); it != w.rend(); ++it) tables.push_back(&entries_.at(it->str()).table);
    std::vector<bool> out(rep_.dim(), true);
    for (std::size_t j = 0; j < rep_.dim(); ++j) {
      long cur = static_cast<long>(j);
      for (auto t = tables.begin(); t != tables.end() && cur >= 0; ++t) {
        cur = (*t)->target[static_cast<std::size_t>(cur)];
        if (cur == OpTable::kEscaped) out[j] = false;
      }
    }
    return out;
  }

  using Column = std::vector<std::pair<long, std::complex<double>>>;

  // Column j of the word's matrix, applying the factors right to left.
  static void column(const std::vector<const SparseMatrix*>& w, long j, Column& cur, Column& next) {
    cur.assign(1, {j, 1.0});
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      next.clear();
      for (const auto& [k, v] : cur)
        for (SparseMatrix::InnerIterator e(**it, k); e; ++e) next.emplace_back(e.row(), e.value() * v);
      std::swap(cur, next);
    }
  }

  double residual(const FockWord& lhs, const FockWord& rhs, const std::vector<bool>& columns) const {
    std::vector<const SparseMatrix*> l, r;
    for (const auto& op : lhs) l.push_back(&entries_.at(op.str()).matrix);
    for (const auto& op : rhs) r.push_back(&entries_.at(op.str()).matrix);
    std::vector<std::complex<double>> diff(rep_.dim());
    Column a, b, scratch;
    double worst = 0;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (!columns[j]) continue;
      column(l, static_cast<long>(j), a, scratch);
      column(r, static_cast<long>(j), b, scratch);
      for (const auto& [k, v] : a) diff[static_cast<std::size_t>(k)] += v;
      for (const auto& [k, v] : b) diff[static_cast<std::size_t>(k)] -= v;
      double s = 0;
      for (const auto* c : {&a, &b})
        for (const auto& [k, v] : *c) {
          s += std::norm(diff[static_cast<std::size_t>(k)]);
          diff[static_cast<std::size_t>(k)] = 0;
        }
      worst = std::max(worst, std::sqrt(s));
    }
    return worst;
  }

private:
  struct Entry {
    OpTable table;
    SparseMatrix matrix;
  };
  const FockRep& rep_;
  std::map<std::string, FockOp> keys_;
  std::map<std::string, Entry> entries_;
};

IdentityResult run_identity(const OpCache& cache, std::string name, const std::vector<Instance>& instances, double tol) {
  IdentityResult res;
  res.name = std::move(name);
  res.instances = instances.size();
  for (const auto& in : instances) {
    auto a = cache.interior(in.lhs), b = cache.interior(in.rhs);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = a[j] && b[j];
    const auto count = static_cast<std::size_t>(std::count(a.begin(), a.end(), true));
    if (count == 0) continue;
    res.interior_count += count;
    res.max_residual = std::max(res.max_residual, cache.residual(in.lhs, in.rhs, a));
  }
  if (!instances.empty() && res.interior_count == 0)
    throw Error(ErrorKind::EmptyInterior, res.name + " has no interior vector in this window");
  res.pass = res.max_residual <= tol;
  return res;
}

}  // namespace

PropositionReport verify_proposition(const FockRep& rep, const std::vector<ModuleElem>& m_sample,
                                     const std::vector<DomainElem>& r_sample, double tol, bool parallel) {
  for (const auto& m : m_sample) check_op_window(rep, FockOp::u(m));
  for (const auto& r : r_sample) check_op_window(rep, FockOp::s(r));
  const auto& mod = *rep.module();
  using Op = FockOp;
  std::vector<std::pair<std::string, std::vector<Instance>>> groups(8);

  groups[0].first = "unitary";
  for (const auto& m : m_sample) {
    groups[0].second.push_back({{Op::u_adj(m), Op::u(m)}, {}});
    groups[0].second.push_back({{Op::u(m), Op::u_adj(m)}, {}});
    groups[0].second.push_back({{Op::u_adj(m)}, {Op::u(mod.neg(m))}});
  }
  groups[1].first = "isometry";
  for (const auto& r : r_sample) {
    groups[1].second.push_back({{Op::s_adj(r), Op::s(r)}, {}});
    groups[1].second.push_back({{Op::s_adj(r)}, {Op::sstar(r)}});
    if (r.is_unit()) groups[1].second.push_back({{Op::s(r), Op::s_adj(r)}, {}});
  }
  groups[2].first = "group_representation";
  for (const auto& m : m_sample)
    for (const auto& n : m_sample) groups[2].second.push_back({{Op::u(m), Op::u(n)}, {Op::u(mod.add(m, n))}});
  groups[3].first = "semigroup_representation";
  for (const auto& r : r_sample)
    for (const auto& s : r_sample) groups[3].second.push_back({{Op::s(r), Op::s(s)}, {Op::s(r * s)}});
  groups[4].first = "covariance";
  for (const auto& m : m_sample)
    for (const auto& r : r_sample)
      groups[4].second.push_back({{Op::u(m), Op::s(r)}, {Op::s(r), Op::u(scalar_action(mod, r, m))}});
  groups[5].first = "additive_covariance";
  for (const auto& m : m_sample)
    for (const auto& r : r_sample)
      for (const auto& s : r_sample) {
        const DomainElem t = r + s;
        if (t.is_zero()) continue;
        groups[5].second.push_back({{Op::u(m), Op::s(t)},
                                    {Op::s(t), Op::u(scalar_action(mod, r, m)), Op::u(scalar_action(mod, s, m))}});
      }
  groups[6].first = "module_covariance";
  for (const auto& m : m_sample)
    for (const auto& n : m_sample)
      for (const auto& r : r_sample)
        groups[6].second.push_back({{Op::u(mod.add(m, n)), Op::s(r)},
                                    {Op::s(r), Op::u(scalar_action(mod, r, m)), Op::u(scalar_action(mod, r, n))}});
  groups[7].first = "units";
  groups[7].second.push_back({{Op::s(DomainElem::one(mod.domain()))}, {}});
  groups[7].second.push_back({{Op::u(mod.zero())}, {}});

  const OpCache cache(rep, groups, parallel);
  PropositionReport report;
  report.tol = tol;
  if (parallel) {
    std::vector<std::future<IdentityResult>> futs;
    for (const auto& [name, inst] : groups)
      futs.push_back(std::async(std::launch::async, [&cache, &name, &inst, tol] { return run_identity(cache, name, inst, tol); }));
    for (auto& f : futs) report.identities.push_back(f.get());
  } else {
    for (const auto& [name, inst] : groups) report.identities.push_back(run_identity(cache, name, inst, tol));
  }
  return report;
}

SparseMatrix represent_semicrossed(const FockRep& rep, const SemicrossedElem& x) {
  require_same_ambient(rep.module(), x.ambient());
  const auto n = static_cast<Eigen::Index>(rep.dim());
  SparseMatrix out(n, n);
  for (const auto& [r, a] : x.terms()) {
    SparseMatrix poly(n, n);
    for (const auto& [m, c] : a.terms()) poly += SparseMatrix(c.to_complex() * op_matrix(rep, FockOp::u(m)));
    out += SparseMatrix(op_matrix(rep, FockOp::s(r)) * poly);
  }
  out.prune(std::complex<double>(0.0));
  return out;
}

std::vector<bool> interior_of_product(const FockRep& rep, const std::vector<SemicrossedElem>& factors) {
  struct Step {
    OpTable u, s;
  };
  std::vector<std::vector<Step>> steps;
  for (const auto& x : factors) {
    require_same_ambient(rep.module(), x.ambient());
    std::vector<Step> st;
    for (const auto& [r, a] : x.terms()) {
      OpTable s = rep.table(FockOp::s(r));
      for (const auto& [m, c] : a.terms()) st.push_back({rep.table(FockOp::u(m)), s});
    }
    steps.push_back(std::move(st));
  }
  std::vector<bool> out(rep.dim(), true);
  for (std::size_t j = 0; j < rep.dim() ; ++j) {
    std::vector<long> frontier{static_cast<long>(j)};
    for (auto f = steps.rbegin(); f != steps.rend() && out[j]; ++f) {
      std::vector<long> next;
      for (long v : frontier)
        for (const auto& st : *f) {
          long k = st.u.target[static_cast<std::size_t>(v)];
          if (k >= 0) k = st.s.target[static_cast<std::size_t>(k)];
          if (k == OpTable::kEscaped) out[j] = false;
          if (k >= 0) next.push_back(k);
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      frontier = std::move(next);
    }
  }
  return out;
}

QuotientCovarianceReport quotient_covariance_test(const ModulePtr& m, const SubmoduleDesc& n,
                                                  const std::vector<DomainElem>& r_sample, const FockWindow& w,
                                                  double tol) {
  const FockRep rep = build_quotient_fock(m, n, w);
  QuotientCovarianceReport out;
  out.is_submodule = is_submodule(*m, n);
  const SparseMatrix one = identity(rep.dim());
  for (const auto& g : n.generators)
    for (const auto& r : r_sample) {
      FockWord word{FockOp::u(scalar_action(*m, r, g))};
      auto interior = interior_of_word(rep, word);
      out.interior_count += static_cast<std::size_t>(std::count(interior.begin(), interior.end(), true));
      out.max_triviality_residual =
          std::max(out.max_triviality_residual, max_column_residual(word_matrix(rep, word), one, interior));
    }
  for (std::size_t j = 0; j < m->rank(); ++j)
    for (const auto& r : r_sample) {
      if (!rep.in_semigroup_window(r)) throw Error(ErrorKind::OutOfWindow, r.str() + " is outside the semigroup window");
      const ModuleElem b = m->basis(j);
      FockWord lhs{FockOp::u(b), FockOp::s(r)}, rhs{FockOp::s(r), FockOp::u(scalar_action(*m, r, b))};
      auto a = interior_of_word(rep, lhs), c = interior_of_word(rep, rhs);
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = a[k] && c[k];
      out.interior_count += static_cast<std::size_t>(std::count(a.begin(), a.end(), true));
      out.max_covariance_residual =
          std::max(out.max_covariance_residual, max_column_residual(word_matrix(rep, lhs), word_matrix(rep, rhs), a));
    }
  if (out.interior_count == 0) throw Error(ErrorKind::EmptyInterior, "no interior vector for the quotient operators");
  out.covariant = out.max_triviality_residual <= tol && out.max_covariance_residual <= tol;
  out.agree = out.covariant == out.is_submodule;
  return out;
}

void write_matrix_coo(std::ostream& os, const SparseMatrix& a) {
  const auto flags = os.flags();
  os << std::setprecision(17);
  for (Eigen::Index j = 0; j < a.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(a, j); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' ' << it.value().imag() << '\n';
  os.flags(flags);
}

}  // namespace fockmod
