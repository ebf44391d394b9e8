#pragma once

// The polynomial level of C*(M): finitely supported Q(i)-valued functions
// on a module, written sum c_m U^m.

#include <complex>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "fockmod/cyclotomic.hpp"
#include "fockmod/gaussian_rational.hpp"
#include "fockmod/modules.hpp"

namespace fockmod {

class GroupAlgElem {
public:
  using Terms = std::map<ModuleElem, GaussianRational>;

  explicit GroupAlgElem(ModulePtr ambient);
  static GroupAlgElem monomial(ModulePtr ambient, const ModuleElem& m, const GaussianRational& c = 1);
  /// U^0.
  static GroupAlgElem one(ModulePtr ambient);

  const ModulePtr& ambient() const noexcept { return ambient_; }
  const ModulePresentation& module() const noexcept { return *ambient_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  GaussianRational coeff(const ModuleElem& m) const;

  /// Adds c U^m, dropping the term if it cancels.
  void add_term(const ModuleElem& m, const GaussianRational& c);

  GroupAlgElem& operator+=(const GroupAlgElem& o);
  GroupAlgElem& operator-=(const GroupAlgElem& o);
  friend GroupAlgElem operator+(GroupAlgElem a, const GroupAlgElem& b) { return a += b; }
  friend GroupAlgElem operator-(GroupAlgElem a, const GroupAlgElem& b) { return a -= b; }
  friend GroupAlgElem operator*(const GaussianRational& c, const GroupAlgElem& a);
  friend GroupAlgElem operator*(const GroupAlgElem& a, const GroupAlgElem& b);
  friend bool operator==(const GroupAlgElem& a, const GroupAlgElem& b);

  std::string str() const;

private:
  ModulePtr ambient_;
  Terms terms_;
};

bool same_ambient(const ModulePtr& a, const ModulePtr& b);
void require_same_ambient(const ModulePtr& a, const ModulePtr& b);

/// (a*b)(g) = sum_{m+n=g} a(m) b(n).
GroupAlgElem convolve(const GroupAlgElem& a, const GroupAlgElem& b);
/// a*(g) = conj(a(-g)).
GroupAlgElem involution(const GroupAlgElem& a);
/// sum c_m U^m -> sum c_m U^{r m}; colliding images add.
GroupAlgElem alpha_endo(const DomainElem& r, const GroupAlgElem& a);
/// Keeps the coefficients supported on the subgroup N.
GroupAlgElem conditional_expectation(const SubmoduleDesc& n, const GroupAlgElem& a);

/// U^m -> U^{m+N} into C[M/N] given a precomputed quotient.
GroupAlgElem quotient_push(const QuotientModule& q, const ModulePtr& target, const GroupAlgElem& a);
/// Convenience form computing the (group-level) quotient M/N.
GroupAlgElem quotient_push(const SubmoduleDesc& n, const GroupAlgElem& a);

/// A one-dimensional representation of C[M]: U^m -> exp(2 pi i <theta, m>)
/// where theta assigns a rational rotation to each coordinate. Torsion
/// coordinates need d_j * theta_j to be an integer.
class CharacterRep {
public:
  CharacterRep(ModulePtr ambient, std::vector<mpq_class> rotations);

  /// Evaluation of C[Z] = C(T) at exp(2 pi i p/q).
  static CharacterRep evaluation(const ModulePtr& integers, long p, long q);
  /// The dual-group character chi_k(m) = exp(2 pi i sum k_j m_j / d_j) of finite M.
  static CharacterRep dual(const ModulePtr& finite, const ModuleElem& k);

  const ModulePtr& ambient() const noexcept { return ambient_; }
  const std::vector<mpq_class>& rotations() const noexcept { return rotations_; }

  /// Rotation of chi(m) in [0, 1).
  mpq_class rotation(const ModuleElem& m) const;
  /// Least common denominator of the rotations.
  unsigned long conductor() const;
  Cyclotomic value(const ModuleElem& m) const;
  Cyclotomic evaluate(const GroupAlgElem& a) const;

private:
  ModulePtr ambient_;
  std::vector<mpq_class> rotations_;
};

/// The quotient map C[M] -> C[M/N].
struct QuotientRep {
  ModulePtr ambient;
  SubmoduleDesc subgroup;
};

using Representation = std::variant<CharacterRep, QuotientRep>;

/// {g : rep(U^g) = 1}, exactly.
SubmoduleDesc kernel_group(const Representation& rep);
SubmoduleDesc intersect_kernel_groups(const std::vector<Representation>& reps);

enum class FourierMode { Auto, Exact, Float };

/// Largest cyclotomic order handled exactly in FourierMode::Auto.
inline constexpr unsigned long kExactFourierOrderLimit = 240;

struct FourierTransform {
  ModulePtr ambient;
  std::vector<ModuleElem> characters;  // dual index k, same order as enumerate()
  std::optional<std::vector<Cyclotomic>> exact;
  std::vector<std::complex<double>> values;
};

/// a^(chi_k) = sum_m a(m) chi_k(m) over the |M| characters of finite M.
FourierTransform fourier_transform(const GroupAlgElem& a, FourierMode mode = FourierMode::Auto);
/// a(m) = |M|^{-1} sum_k a^(chi_k) conj(chi_k(m)), exact path only.
GroupAlgElem inverse_fourier_exact(const FourierTransform& t);
/// Same in floating point, indexed like ambient->enumerate().
std::vector<std::complex<double>> inverse_fourier_values(const FourierTransform& t);

}  // namespace fockmod
