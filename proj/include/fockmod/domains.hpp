#pragma once

// Exact arithmetic in the integral domains Z and Z[i], their fraction
// fields, and the unit/associate structure of the multiplicative semigroup.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fockmod {

enum class Domain { Z, ZI };

std::string_view to_string(Domain d);
Domain parse_domain(std::string_view s);

/// An element of Z or of Z[i]. For Z the imaginary part is always zero.
class DomainElem {
public:
  DomainElem() = default;
  DomainElem(Domain d, mpz_class re, mpz_class im = 0);

  static DomainElem integer(const mpz_class& v) { return {Domain::Z, v, 0}; }
  static DomainElem gaussian(const mpz_class& re, const mpz_class& im) {
    return {Domain::ZI, re, im};
  }
  static DomainElem zero(Domain d) { return {d, 0, 0}; }
  static DomainElem one(Domain d) { return {d, 1, 0}; }

  Domain domain() const noexcept { return domain_; }
  const mpz_class& re() const noexcept { return re_; }
  const mpz_class& im() const noexcept { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_unit() const;
  mpz_class norm() const;
  DomainElem conj() const { return {domain_, re_, -im_}; }

  /// Integer value; throws InvalidInput when the element is not rational.
  mpz_class as_integer() const;

  /// "-6" for Z, "[2,-1]" for Z[i].
  std::string str() const;

  DomainElem operator-() const { return {domain_, -re_, -im_}; }
  friend DomainElem operator+(const DomainElem& a, const DomainElem& b);
  friend DomainElem operator-(const DomainElem& a, const DomainElem& b);
  friend DomainElem operator*(const DomainElem& a, const DomainElem& b);

  friend bool operator==(const DomainElem& a, const DomainElem& b) {
    return a.domain_ == b.domain_ && a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Lexicographic on (domain, re, im); this is the canonical order used for
  /// map keys and basis enumeration.
  friend bool operator<(const DomainElem& a, const DomainElem& b);

private:
  Domain domain_ = Domain::Z;
  mpz_class re_ = 0;
  mpz_class im_ = 0;
};

void require_same_domain(const DomainElem& a, const DomainElem& b);

/// The unit group R_u: {1, -1} for Z, {1, i, -1, -i} for Z[i].
std::vector<DomainElem> units(Domain d);

struct UnitsDecomposition {
  DomainElem unit;
  DomainElem positive_part;
};

/// r = unit * positive_part with positive_part > 0 (Z) or in the half-open
/// first quadrant Re > 0, Im >= 0 (Z[i]).
UnitsDecomposition canonical_associate(const DomainElem& r);

struct DivMod {
  DomainElem quotient;
  DomainElem remainder;
};

/// Euclidean division a = q*b + rem with norm(rem) < norm(b). Over Z the
/// quotient is floored; over Z[i] each coordinate of a/b is rounded to the
/// nearest integer with exact halves rounded down.
DivMod euclid_divmod(const DomainElem& a, const DomainElem& b);

/// Exact quotient s / r when r divides s in R, else empty.
std::optional<DomainElem> divides(const DomainElem& r, const DomainElem& s);

/// Canonical (positive / first-quadrant) gcd; gcd(0, 0) = 0.
DomainElem gcd(const DomainElem& a, const DomainElem& b);

/// Prime factors of n >= 1 over Z in ascending order, with multiplicity.
std::vector<DomainElem> factor_positive(const DomainElem& n);

/// Element of the fraction field Q(R), kept as num/den with gcd a unit and
/// den the canonical associate.
class Fraction {
public:
  explicit Fraction(Domain d = Domain::Z);
  explicit Fraction(DomainElem num);
  Fraction(DomainElem num, DomainElem den);

  const DomainElem& num() const noexcept { return num_; }
  const DomainElem& den() const noexcept { return den_; }
  Domain domain() const noexcept { return num_.domain(); }
  bool is_zero() const { return num_.is_zero(); }

  Fraction inv() const;
  Fraction operator-() const { return Fraction(-num_, den_); }
  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str() const;

private:
  DomainElem num_;
  DomainElem den_;
};

enum class FractionOp { Add, Mul, Inv };

/// Dispatching form of the field operations; `b` is ignored for Inv.
Fraction fraction_arithmetic(const Fraction& a, const Fraction& b, FractionOp op);

}  // namespace fockmod
