#include "fockmod/cyclotomic.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>

#include "fockmod/error.hpp"

namespace fockmod {

namespace {

unsigned long with_four(unsigned long order) {
  if (order == 0) throw Error(ErrorKind::InvalidInput, "cyclotomic order 0");
  return std::lcm(order, 4UL);
}

// Exact division of integer polynomials by a monic divisor.
std::vector<long> divide_monic(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    long c = num[k + dn];
    q[k] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[k + j] -= c * den[j];
  }
  return q;
}

}  // namespace

const std::vector<long>& Cyclotomic::cyclotomic_polynomial(unsigned long order) {
  static std::map<unsigned long, std::vector<long>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::function<const std::vector<long>&(unsigned long)> phi = [&](unsigned long n) -> const std::vector<long>& {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<long> p(n + 1, 0);  // x^n - 1
    p[0] = -1;
    p[n] = 1;
    for (unsigned long d = 1; d < n; ++d)
      if (n % d == 0) p = divide_monic(p, phi(d));
    return cache.emplace(n, std::move(p)).first->second;
  };
  return phi(order);
}

Cyclotomic::Cyclotomic(unsigned long order) : order_(with_four(order)) {
  coeffs_.assign(cyclotomic_polynomial(order_).size() - 1, mpq_class(0));
}

Cyclotomic::Cyclotomic(unsigned long order, const GaussianRational& c) : Cyclotomic(order) {
  std::vector<mpq_class> poly(order_ / 4 + 1);
  poly[0] = c.re();
  poly[order_ / 4] += c.im();
  reduce(std::move(poly));
}

Cyclotomic Cyclotomic::root(unsigned long order, long k) {
  Cyclotomic out(order);
  const long e = static_cast<long>(out.order_);
  // exponent is taken mod the requested order, then scaled to order_
  long n = static_cast<long>(order);
  long r = ((k % n) + n) % n;
  long power = r * (e / n);
  std::vector<mpq_class> poly(static_cast<std::size_t>(power) + 1);
  poly[static_cast<std::size_t>(power)] = 1;
  out.reduce(std::move(poly));
  return out;
}

void Cyclotomic::reduce(std::vector<mpq_class> poly) {
  const auto& m = cyclotomic_polynomial(order_);
  const std::size_t deg = m.size() - 1;
  for (std::size_t k = poly.size(); k-- > deg;) {
    if (poly[k] == 0) continue;
    mpq_class c = poly[k];
    for (std::size_t j = 0; j <= deg; ++j)
      if (m[j] != 0) poly[k - deg + j] -= c * m[j];
  }
  poly.resize(deg);
  coeffs_ = std::move(poly);
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

Cyclotomic Cyclotomic::conj() const {
  // zeta^j -> zeta^{order - j}
  std::vector<mpq_class> poly(order_ + 1);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) poly[j == 0 ? 0 : order_ - j] += coeffs_[j];
  Cyclotomic out(order_);
  out.reduce(std::move(poly));
  return out;
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> acc = 0;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(order_);
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    if (coeffs_[j] != 0) acc += coeffs_[j].get_d() * std::polar(1.0, step * static_cast<double>(j));
  return acc;
}

std::optional<GaussianRational> Cyclotomic::to_gaussian() const {
  Cyclotomic unit_i(order_, GaussianRational(0, 1));
  // i is irrational over Q, so its representation has a nonzero entry off degree 0
  std::size_t p = 1;
  while (p < unit_i.coeffs_.size() && unit_i.coeffs_[p] == 0) ++p;
  mpq_class im = coeffs_[p] / unit_i.coeffs_[p];
  mpq_class re = coeffs_[0] - im * unit_i.coeffs_[0];
  GaussianRational g(re, im);
  if (Cyclotomic(order_, g) == *this) return g;
  return std::nullopt;
}

std::string Cyclotomic::str() const {
  std::string s;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    if (!s.empty()) s += " + ";
    s += coeffs_[j].get_str() + (j ? "*z^" + std::to_string(j) : "");
  }
  return s.empty() ? "0" : s;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.order_ != order_) throw Error(ErrorKind::InvalidInput, "cyclotomic order mismatch");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  if (o.order_ != order_) throw Error(ErrorKind::InvalidInput, "cyclotomic order mismatch");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ != b.order_) throw Error(ErrorKind::InvalidInput, "cyclotomic order mismatch");
  std::vector<mpq_class> poly(a.coeffs_.size() + b.coeffs_.size());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      if (b.coeffs_[j] != 0) poly[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  Cyclotomic out(a.order_);
  out.reduce(std::move(poly));
  return out;
}

}  // namespace fockmod
