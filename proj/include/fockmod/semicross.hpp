#pragma once

// The dense algebra of the semicrossed product C*(M) x_F R^x: finite sums
// sum_r S_r a_r with S_r on the left and a_r in C[M].

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "fockmod/groupalg.hpp"

namespace fockmod {

class SemicrossedElem {
public:
  using Terms = std::map<DomainElem, GroupAlgElem>;

  explicit SemicrossedElem(ModulePtr ambient);
  /// S_r a.
  static SemicrossedElem monomial(const DomainElem& r, const GroupAlgElem& a);
  /// S_r = S_r U^0.
  static SemicrossedElem generator(ModulePtr ambient, const DomainElem& r);
  /// S_1 a, the copy of C[M].
  static SemicrossedElem from_poly(const GroupAlgElem& a);
  static SemicrossedElem one(ModulePtr ambient);

  const ModulePtr& ambient() const noexcept { return ambient_; }
  Domain domain() const noexcept { return ambient_->domain(); }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// a_r, zero when r is absent.
  GroupAlgElem coeff(const DomainElem& r) const;

  void add_term(const DomainElem& r, const GroupAlgElem& a);

  SemicrossedElem& operator+=(const SemicrossedElem& o);
  SemicrossedElem& operator-=(const SemicrossedElem& o);
  friend SemicrossedElem operator+(SemicrossedElem a, const SemicrossedElem& b) { return a += b; }
  friend SemicrossedElem operator-(SemicrossedElem a, const SemicrossedElem& b) { return a -= b; }
  friend SemicrossedElem operator*(const SemicrossedElem& x, const SemicrossedElem& y);
  friend bool operator==(const SemicrossedElem& a, const SemicrossedElem& b);

  std::string str() const;

private:
  ModulePtr ambient_;
  Terms terms_;
};

/// (S_r a)(S_s b) = S_{rs} alpha_s(a) b.
SemicrossedElem sc_multiply(const SemicrossedElem& x, const SemicrossedElem& y);
/// S_r^* a S_r, which is alpha_r(a).
GroupAlgElem sc_compress(const DomainElem& r, const GroupAlgElem& a);

/// Pushes each coefficient to C[M/N]; N must be an R-submodule.
SemicrossedElem induced_quotient_map(const SubmoduleDesc& n, const SemicrossedElem& x);
/// Same with a precomputed module-level quotient and its shared target.
SemicrossedElem induced_quotient_map(const QuotientModule& q, const ModulePtr& target,
                                     const SemicrossedElem& x);

/// True when r N is inside N for every sampled r (and every index occurring
/// in the samples), and products of the sampled pairs computed in
/// C[N] x_F R^x, transported back to M, agree with the products in M.
/// Sample elements must be supported on N (InvalidInput otherwise).
bool invariant_subalgebra_check(const ModulePtr& m, const SubmoduleDesc& n,
                                const std::vector<DomainElem>& r_sample,
                                const std::vector<std::pair<SemicrossedElem, SemicrossedElem>>& x_sample);

/// Keeps the unit indices.
SemicrossedElem diagonal_part(const SemicrossedElem& x);

// Iterated semicrossed products over R = Z.

enum class SplitKind { Units, Positives, AllNonzero, Trivial };

std::string_view to_string(SplitKind k);
SplitKind parse_split_kind(std::string_view s);
bool split_contains(SplitKind k, const DomainElem& r);

struct Split {
  SplitKind first;
  SplitKind second;
};

/// The unique (s1, s2) with s1 s2 = s, s1 in the first factor and s2 in the
/// second; throws NotADirectProduct when there is none or more than one.
std::pair<DomainElem, DomainElem> split_index(const Split& split, const DomainElem& s);

enum class Bracketing {
  FirstInner,   // (A x_F S1) x_F S2
  SecondInner,  // (A x_F S2) x_F S1
};

/// sum over (s1, s2) of outer-S(outer index) inner-S(inner index) a.
class IteratedSemicrossedElem {
public:
  using Key = std::pair<DomainElem, DomainElem>;  // (s1, s2)
  using Terms = std::map<Key, GroupAlgElem>;

  IteratedSemicrossedElem(ModulePtr ambient, Bracketing bracketing);

  const ModulePtr& ambient() const noexcept { return ambient_; }
  Bracketing bracketing() const noexcept { return bracketing_; }
  const Terms& terms() const noexcept { return terms_; }

  void add_term(const Key& k, const GroupAlgElem& a);

  friend IteratedSemicrossedElem operator*(const IteratedSemicrossedElem& x, const IteratedSemicrossedElem& y);
  friend bool operator==(const IteratedSemicrossedElem& a, const IteratedSemicrossedElem& b);

  std::string str() const;

private:
  ModulePtr ambient_;
  Bracketing bracketing_;
  Terms terms_;
};

/// The monomial bijection S_s a -> S_{s2}(S_{s1} a).
IteratedSemicrossedElem to_iterated(const SemicrossedElem& x, const Split& split, Bracketing b);
SemicrossedElem from_iterated(const IteratedSemicrossedElem& x);

struct DecompositionOptions {
  std::vector<long> index_pool{1, -1, 2, -2, 3, -3, 6, -6};
  std::uint64_t seed = 0;
  /// Number of monomials U^m per sampled coefficient.
  int terms_per_coeff = 2;
};

/// Samples monomial pairs S_s a, S_t b with indices from the pool and checks
/// phi(xy) = phi(x) phi(y) for both bracketings, exactly. Z-modules only.
bool product_decomposition_check(const ModulePtr& m, const Split& split, int samples,
                                 const DecompositionOptions& opts = {});

// Covariance rewriting on words in the generators.

struct WordLetter {
  enum class Kind { S, U } kind;
  DomainElem r;  // for S
  ModuleElem m;  // for U
};

enum class RewriteStrategy { Leftmost, Rightmost, Random };

/// Rewrites U^m S_r -> S_r U^{rm}, S_r S_s -> S_{rs}, U^m U^n -> U^{m+n}
/// until the word is S_r U^m, returning c S_r U^m.
SemicrossedElem normalize_word(const ModulePtr& ambient, const std::vector<WordLetter>& word,
                               const GaussianRational& c, RewriteStrategy strategy, std::mt19937_64* rng = nullptr);

}  // namespace fockmod
