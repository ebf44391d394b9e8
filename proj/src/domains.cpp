#include "fockmod/domains.hpp"

#include "fockmod/error.hpp"

namespace fockmod {

std::string_view to_string(Domain d) { return d == Domain::Z ? "Z" : "Zi"; }

Domain parse_domain(std::string_view s) {
  if (s == "Z") return Domain::Z;
  if (s == "Zi" || s == "Z[i]") return Domain::ZI;
  throw Error(ErrorKind::ParseError, "unknown domain '" + std::string(s) + "'");
}

DomainElem::DomainElem(Domain d, mpz_class re, mpz_class im)
    : domain_(d), re_(std::move(re)), im_(std::move(im)) {
  if (d == Domain::Z && im_ != 0)
    throw Error(ErrorKind::InvalidInput, "integer with nonzero imaginary part");
}

bool DomainElem::is_unit() const { return norm() == 1; }

mpz_class DomainElem::norm() const { return re_ * re_ + im_ * im_; }

mpz_class DomainElem::as_integer() const {
  if (im_ != 0) throw Error(ErrorKind::InvalidInput, str() + " is not an integer");
  return re_;
}

std::string DomainElem::str() const {
  if (domain_ == Domain::Z) return re_.get_str();
  return "[" + re_.get_str() + "," + im_.get_str() + "]";
}

void require_same_domain(const DomainElem& a, const DomainElem& b) {
  if (a.domain() != b.domain())
    throw Error(ErrorKind::DomainMismatch, a.str() + " vs " + b.str());
}

DomainElem operator+(const DomainElem& a, const DomainElem& b) {
  require_same_domain(a, b);
  return {a.domain_, a.re_ + b.re_, a.im_ + b.im_};
}

DomainElem operator-(const DomainElem& a, const DomainElem& b) {
  require_same_domain(a, b);
  return {a.domain_, a.re_ - b.re_, a.im_ - b.im_};
}

DomainElem operator*(const DomainElem& a, const DomainElem& b) {
  require_same_domain(a, b);
  return {a.domain_, a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

bool operator<(const DomainElem& a, const DomainElem& b) {
  if (a.domain_ != b.domain_) return a.domain_ < b.domain_;
  if (a.re_ != b.re_) return a.re_ < b.re_;
  return a.im_ < b.im_;
}

std::vector<DomainElem> units(Domain d) {
  if (d == Domain::Z) return {DomainElem::integer(1), DomainElem::integer(-1)};
  return {DomainElem::gaussian(1, 0), DomainElem::gaussian(0, 1), DomainElem::gaussian(-1, 0),
          DomainElem::gaussian(0, -1)};
}

UnitsDecomposition canonical_associate(const DomainElem& r) {
  if (r.is_zero()) throw Error(ErrorKind::ZeroElement, "canonical_associate(0)");
  for (const auto& u : units(r.domain())) {
    // u^{-1} = conj(u) for every unit
    DomainElem p = r * u.conj();
    if (p.re() > 0 && p.im() >= 0) return {u, p};
  }
  throw Error(ErrorKind::InvalidInput, "no canonical associate for " + r.str());
}

namespace {

// Nearest integer to num/den (den > 0), halves rounded down.
mpz_class round_half_down(const mpz_class& num, const mpz_class& den) {
  mpz_class q;
  mpz_class top = 2 * num - den;
  mpz_class bottom = 2 * den;
  mpz_cdiv_q(q.get_mpz_t(), top.get_mpz_t(), bottom.get_mpz_t());
  return q;
}

}  // namespace

DivMod euclid_divmod(const DomainElem& a, const DomainElem& b) {
  require_same_domain(a, b);
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "euclid_divmod by 0");
  if (a.domain() == Domain::Z) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.re().get_mpz_t(), b.re().get_mpz_t());
    return {DomainElem::integer(q), DomainElem::integer(r)};
  }
  DomainElem num = a * b.conj();
  mpz_class n = b.norm();
  DomainElem q = DomainElem::gaussian(round_half_down(num.re(), n), round_half_down(num.im(), n));
  return {q, a - q * b};
}

std::optional<DomainElem> divides(const DomainElem& r, const DomainElem& s) {
  require_same_domain(r, s);
  if (r.is_zero()) throw Error(ErrorKind::ZeroElement, "divides by 0");
  DomainElem num = s * r.conj();
  mpz_class n = r.norm();
  if (!mpz_divisible_p(num.re().get_mpz_t(), n.get_mpz_t()) ||
      !mpz_divisible_p(num.im().get_mpz_t(), n.get_mpz_t()))
    return std::nullopt;
  mpz_class qr = num.re() / n;
  mpz_class qi = num.im() / n;
  return DomainElem(r.domain(), qr, qi);
}

DomainElem gcd(const DomainElem& a, const DomainElem& b) {
  require_same_domain(a, b);
  DomainElem x = a, y = b;
  while (!y.is_zero()) {
    DomainElem rem = euclid_divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(rem);
  }
  if (x.is_zero()) return x;
  return canonical_associate(x).positive_part;
}

std::vector<DomainElem> factor_positive(const DomainElem& n) {
  if (n.domain() != Domain::Z)
    throw Error(ErrorKind::UnsupportedDomain, "factor_positive is defined over Z only");
  if (n.re() < 1) throw Error(ErrorKind::InvalidInput, "factor_positive needs n >= 1");
  std::vector<DomainElem> out;
  mpz_class m = n.re();
  for (mpz_class p = 2; p * p <= m; ++p) {
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      out.push_back(DomainElem::integer(p));
      m /= p;
    }
  }
  if (m > 1) out.push_back(DomainElem::integer(m));
  return out;
}

Fraction::Fraction(Domain d) : num_(DomainElem::zero(d)), den_(DomainElem::one(d)) {}

Fraction::Fraction(DomainElem num) : num_(std::move(num)), den_(DomainElem::one(num_.domain())) {}

Fraction::Fraction(DomainElem num, DomainElem den) {
  require_same_domain(num, den);
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "fraction with zero denominator");
  if (num.is_zero()) {
    num_ = DomainElem::zero(num.domain());
    den_ = DomainElem::one(num.domain());
    return;
  }
  DomainElem g = gcd(num, den);
  num = *divides(g, num);
  den = *divides(g, den);
  auto [u, p] = canonical_associate(den);
  // num/den = num/(u p) = (num u^{-1}) / p
  num_ = num * u.conj();
  den_ = p;
}

Fraction Fraction::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of 0");
  return Fraction(den_, num_);
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }

Fraction operator*(const Fraction& a, const Fraction& b) {
  return Fraction(a.num_ * b.num_, a.den_ * b.den_);
}

Fraction operator/(const Fraction& a, const Fraction& b) { return a * b.inv(); }

std::string Fraction::str() const {
  if (den_.is_one()) return num_.str();
  return num_.str() + "/" + den_.str();
}

Fraction fraction_arithmetic(const Fraction& a, const Fraction& b, FractionOp op) {
  switch (op) {
    case FractionOp::Add: return a + b;
    case FractionOp::Mul: return a * b;
    case FractionOp::Inv: return a.inv();
  }
  throw Error(ErrorKind::InvalidInput, "unknown fraction op");
}

}  // namespace fockmod
