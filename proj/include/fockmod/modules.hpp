#pragma once

// Finitely generated modules over Z and Z[i] in invariant-factor
// coordinates. A Z[i]-module is carried as its underlying abelian group
// Z^a + Z/d_1 + ... + Z/d_k together with the integer matrix by which i acts.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <vector>

#include "fockmod/domains.hpp"
#include "fockmod/smith.hpp"

namespace fockmod {

struct ModuleElem {
  IntVec coords;

  friend bool operator==(const ModuleElem& a, const ModuleElem& b) { return a.coords == b.coords; }
  friend bool operator<(const ModuleElem& a, const ModuleElem& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                        b.coords.end());
  }
  bool is_zero() const;
  std::string str() const;
};

class ModulePresentation {
public:
  /// Validates the divisibility chain (each d_i > 1, d_i | d_{i+1}); for
  /// Z[i] also checks that i_action is well defined modulo the relations
  /// and squares to -1.
  ModulePresentation(Domain domain, std::size_t free_rank, IntVec torsion,
                     std::optional<IntMatrix> i_action = std::nullopt);

  /// Z^a + Z/d_1 + ... as a Z-module.
  static ModulePresentation over_z(std::size_t free_rank, IntVec torsion = {});
  /// Z[i]^n as a Z[i]-module: underlying group Z^{2n} with i acting by
  /// (x, y) -> (-y, x) on each pair.
  static ModulePresentation gaussian_free(std::size_t n);

  Domain domain() const noexcept { return domain_; }
  std::size_t free_rank() const noexcept { return free_rank_; }
  const IntVec& torsion() const noexcept { return torsion_; }
  const std::optional<IntMatrix>& i_action() const noexcept { return i_action_; }
  /// Number of coordinates, a + k.
  std::size_t rank() const noexcept { return free_rank_ + torsion_.size(); }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  /// |M| for finite M.
  std::optional<mpz_class> order() const;

  ModuleElem element(IntVec coords) const;
  ModuleElem zero() const;
  ModuleElem basis(std::size_t j) const;
  ModuleElem add(const ModuleElem& a, const ModuleElem& b) const;
  ModuleElem sub(const ModuleElem& a, const ModuleElem& b) const;
  ModuleElem neg(const ModuleElem& a) const;
  ModuleElem times(const mpz_class& k, const ModuleElem& a) const;
  bool contains(const ModuleElem& a) const;

  /// n x k matrix whose columns d_j e_{a+j} span the relation lattice.
  IntMatrix relation_matrix() const;
  /// Integer matrix of m -> r*m on coordinate vectors.
  IntMatrix action_matrix(const DomainElem& r) const;
  /// All elements, lexicographic in coordinates (finite M only).
  std::vector<ModuleElem> enumerate() const;

  std::string str() const;

  friend bool operator==(const ModulePresentation& a, const ModulePresentation& b);

private:
  IntVec reduce(IntVec v) const;

  Domain domain_;
  std::size_t free_rank_;
  IntVec torsion_;
  std::optional<IntMatrix> i_action_;
};

using ModulePtr = std::shared_ptr<const ModulePresentation>;

inline ModulePtr share(ModulePresentation m) {
  return std::make_shared<const ModulePresentation>(std::move(m));
}

/// The subgroup generated (over Z) by a list of elements. Whether it is an
/// R-submodule is a separate question answered by is_submodule.
struct SubmoduleDesc {
  std::vector<ModuleElem> generators;
};

ModuleElem scalar_action(const ModulePresentation& m, const DomainElem& r, const ModuleElem& x);

/// Kernel of x -> map*x from `src` to `dst`; map must be well defined on
/// the quotients (it sends src relations into dst relations).
SubmoduleDesc hom_kernel(const ModulePresentation& src, const IntMatrix& map,
                         const ModulePresentation& dst);

SubmoduleDesc action_kernel(const DomainElem& r, const ModulePresentation& m);
bool is_injective_action(const DomainElem& r, const ModulePresentation& m);
bool is_surjective_action(const DomainElem& r, const ModulePresentation& m);
bool is_bijective_action(const DomainElem& r, const ModulePresentation& m);

/// Integer coefficients c with sum c_j g_j = x in M, if any.
std::optional<IntVec> membership_coefficients(const ModulePresentation& m, const SubmoduleDesc& n,
                                              const ModuleElem& x);
bool submodule_membership(const ModulePresentation& m, const SubmoduleDesc& n, const ModuleElem& x);
bool is_submodule(const ModulePresentation& m, const SubmoduleDesc& n);
/// The R-submodule generated by gens (adds i-images over Z[i]).
SubmoduleDesc generated_submodule(const ModulePresentation& m, std::vector<ModuleElem> gens);
bool same_subgroup(const ModulePresentation& m, const SubmoduleDesc& a, const SubmoduleDesc& b);
/// Exact intersection of subgroups; throws EmptyList on an empty list.
SubmoduleDesc intersect_subgroups(const ModulePresentation& m, const std::vector<SubmoduleDesc>& ns);

/// Result of presenting Z^n / (relations) in invariant-factor form.
struct Cokernel {
  ModulePresentation presentation;
  IntMatrix projection;  // n' x n, x -> new coordinates
  IntMatrix section;     // n x n', projection * section = identity
};

/// Z^n / colspan(relations), presented over Z.
Cokernel present_cokernel(const IntMatrix& relations);

enum class QuotientLevel { Module, Group };

struct QuotientModule {
  ModulePresentation quotient;
  IntMatrix projection;
  IntMatrix section;
  /// False for a group-level quotient by a subgroup that is not an
  /// R-submodule; the quotient is then presented over Z only.
  bool module_level = true;

  ModuleElem project(const ModuleElem& x) const;
  ModuleElem lift(const ModuleElem& y) const;
};

/// M/N. Module level requires N to be an R-submodule (NotSubmodule
/// otherwise) and carries the induced i-action; group level never throws.
QuotientModule quotient_module(const ModulePresentation& m, const SubmoduleDesc& n,
                               QuotientLevel level = QuotientLevel::Module);

/// N as a module in its own coordinates, with the inclusion into M.
struct SubmodulePresentation {
  ModulePresentation presentation;
  IntMatrix inclusion;             // n x n_N
  IntMatrix generator_projection;  // n_N x g: generator coefficients -> own coordinates

  ModuleElem include(const ModulePresentation& ambient, const ModuleElem& y) const;
};

SubmodulePresentation present_submodule(const ModulePresentation& m, const SubmoduleDesc& n);
/// Coordinates of x in the intrinsic presentation of N (x must lie in N).
ModuleElem pull_back(const ModulePresentation& m, const SubmoduleDesc& n,
                     const SubmodulePresentation& p, const ModuleElem& x);

struct TorsionInfo {
  std::size_t free_rank = 0;
  IntVec invariant_factors;
  SubmoduleDesc torsion;
  std::optional<mpz_class> exponent;

  bool has_torsion() const { return !invariant_factors.empty(); }
};

TorsionInfo torsion_decomposition(const ModulePresentation& m);

/// M localized at R \ {0}: a Q(R)-vector space carried as Q^a (a = free
/// rank over Z) together with the rational action of i for Z[i].
class LocalizedModule {
public:
  LocalizedModule(Domain domain, std::size_t q_dim, std::optional<IntMatrix> i_block);

  Domain domain() const noexcept { return domain_; }
  /// Number of rational coordinates.
  std::size_t q_dim() const noexcept { return q_dim_; }
  /// Dimension over Q(R): q_dim for Z, q_dim / 2 for Z[i].
  std::size_t dimension() const noexcept { return domain_ == Domain::ZI ? q_dim_ / 2 : q_dim_; }

  std::vector<mpq_class> act(const DomainElem& r, const std::vector<mpq_class>& v) const;
  /// Action of a nonzero element of Q(R); den^{-1} is applied by solving.
  std::vector<mpq_class> act(const Fraction& q, const std::vector<mpq_class>& v) const;
  /// The unique x with r x = v, or empty when r does not act bijectively.
  std::optional<std::vector<mpq_class>> solve_action(const DomainElem& r,
                                                     const std::vector<mpq_class>& v) const;

private:
  Domain domain_;
  std::size_t q_dim_;
  std::optional<IntMatrix> i_block_;
};

struct Localization {
  LocalizedModule module;
  SubmoduleDesc kernel;
  std::size_t free_rank = 0;

  /// The map i: M -> N.
  std::vector<mpq_class> map(const ModuleElem& x) const;
  bool injective() const { return kernel.generators.empty(); }
};

Localization localize(const ModulePresentation& m);
/// localize() for torsion-free M; TorsionPresent otherwise.
Localization envelope_module(const ModulePresentation& m);

/// m/r ~ m2/r2 in the direct-limit sense: some t != 0 kills r2*m - r*m2.
bool fractions_equivalent(const ModulePresentation& m, const ModuleElem& x, const DomainElem& r,
                          const ModuleElem& y, const DomainElem& s);

}  // namespace fockmod
