#pragma once

// Finite windows of the Fock representation on l2(M) (x) l2(R^x), where
// U^m (v_n (x) u_r) = v_{mr+n} (x) u_r and S_r (v_n (x) u_s) = v_n (x) u_{rs}.
// The same machinery realizes the quotient operators for a pair (M, N):
// sites are then cosets g + N and U^m moves g to g + r m + N.

#include <Eigen/SparseCore>

#include <complex>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fockmod/semicross.hpp"

namespace fockmod {

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>>;

struct FockWindow {
  /// Box radius on free coordinates; torsion coordinates are always complete.
  std::optional<long> module_radius;
  /// 0 < |r| <= bound over Z, 0 < N(r) <= bound over Z[i].
  long semigroup_bound = 0;
};

struct FockOp {
  enum class Kind { U, S, Sstar, UAdj, SAdj };
  Kind kind;
  ModuleElem m;
  DomainElem r;

  static FockOp u(ModuleElem m) { return {Kind::U, std::move(m), {}}; }
  static FockOp s(DomainElem r) { return {Kind::S, {}, std::move(r)}; }
  /// The explicitly constructed T_r: v_m (x) u_{rt} -> v_m (x) u_t.
  static FockOp sstar(DomainElem r) { return {Kind::Sstar, {}, std::move(r)}; }
  /// Matrix adjoints of the truncated U(m) and S(r).
  static FockOp u_adj(ModuleElem m) { return {Kind::UAdj, std::move(m), {}}; }
  static FockOp s_adj(DomainElem r) { return {Kind::SAdj, {}, std::move(r)}; }

  std::string str() const;
};

/// Image of each basis vector under a generator: an index, kZero for an
/// exact zero, or kEscaped when the true image leaves the window.
struct OpTable {
  static constexpr long kZero = -1;
  static constexpr long kEscaped = -2;
  std::vector<long> target;
};

class FockRep {
public:
  const ModulePtr& module() const noexcept { return module_; }
  /// The module whose elements label sites: M itself, or M/N.
  const ModulePresentation& site_module() const noexcept { return *sites_module_; }
  const FockWindow& window() const noexcept { return window_; }
  bool is_quotient() const noexcept { return quotient_.has_value(); }

  const std::vector<ModuleElem>& sites() const noexcept { return sites_; }
  const std::vector<DomainElem>& semigroup() const noexcept { return semigroup_; }
  std::size_t dim() const noexcept { return sites_.size() * semigroup_.size(); }
  std::pair<ModuleElem, DomainElem> basis(std::size_t j) const;
  std::optional<std::size_t> index(const ModuleElem& site, const DomainElem& r) const;

  /// Table for any generator, with no window check on its label.
  OpTable table(const FockOp& op) const;
  /// Sparse matrix of the truncated generator; UAdj/SAdj are true adjoints.
  SparseMatrix matrix(const FockOp& op) const;

  /// Site reached from g by U^m at semigroup index s, if it is in the window.
  std::optional<std::size_t> shift_site(std::size_t g, const DomainElem& s, const ModuleElem& m) const;

  bool in_module_window(const ModuleElem& m) const;
  bool in_semigroup_window(const DomainElem& r) const;

private:
  friend FockRep build_fock(const ModulePtr& m, const FockWindow& w);
  friend FockRep build_quotient_fock(const ModulePtr& m, const SubmoduleDesc& n, const FockWindow& w);
  void populate(std::vector<ModuleElem> sites);

  ModulePtr module_;
  std::shared_ptr<const ModulePresentation> sites_module_;
  std::optional<QuotientModule> quotient_;
  FockWindow window_;
  std::vector<ModuleElem> sites_;
  std::vector<DomainElem> semigroup_;
  std::map<ModuleElem, std::size_t> site_index_;
  std::map<DomainElem, std::size_t> semigroup_index_;
};

/// Basis ordered lexicographically by (site coordinates, semigroup element).
FockRep build_fock(const ModulePtr& m, const FockWindow& w);
/// Sites are the cosets M/N (all of them when finite, else boxed).
FockRep build_quotient_fock(const ModulePtr& m, const SubmoduleDesc& n, const FockWindow& w);

/// op_matrix with window checks (OutOfWindow).
SparseMatrix op_matrix(const FockRep& rep, const FockOp& op);

/// A product of generators, leftmost applied last. Empty means identity.
using FockWord = std::vector<FockOp>;

/// Basis vectors whose whole image chain under the word stays in the window.
std::vector<bool> interior_of_word(const FockRep& rep, const FockWord& w);
SparseMatrix word_matrix(const FockRep& rep, const FockWord& w);

/// Largest column norm of a - b over the flagged columns.
double max_column_residual(const SparseMatrix& a, const SparseMatrix& b, const std::vector<bool>& columns);

struct IdentityResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t interior_count = 0;
  double max_residual = 0;
  bool pass = true;
};

struct PropositionReport {
  std::vector<IdentityResult> identities;
  double tol = 0;
  bool pass() const;
};

/// The eight generator identities on interior vectors. Throws EmptyInterior
/// when some identity has no interior vector across all its instances.
PropositionReport verify_proposition(const FockRep& rep, const std::vector<ModuleElem>& m_sample,
                                     const std::vector<DomainElem>& r_sample, double tol, bool parallel = false);

/// sum_r S(r) sum_m a_r(m) U(m).
SparseMatrix represent_semicrossed(const FockRep& rep, const SemicrossedElem& x);
/// Vectors v such that every term of each factor, applied right to left
/// starting from v, stays in the window.
std::vector<bool> interior_of_product(const FockRep& rep, const std::vector<SemicrossedElem>& factors);

struct QuotientCovarianceReport {
  bool covariant = false;
  bool is_submodule = false;
  bool agree = false;
  std::size_t interior_count = 0;
  double max_triviality_residual = 0;   // U(r n) against the identity
  double max_covariance_residual = 0;   // U(m) S(r) against S(r) U(r m)
};

QuotientCovarianceReport quotient_covariance_test(const ModulePtr& m, const SubmoduleDesc& n,
                                                  const std::vector<DomainElem>& r_sample,
                                                  const FockWindow& w, double tol);

/// One "row col re im" line per stored entry, column-major.
void write_matrix_coo(std::ostream& os, const SparseMatrix& a);

}  // namespace fockmod
