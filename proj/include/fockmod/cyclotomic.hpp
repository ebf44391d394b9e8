#pragma once

// Exact arithmetic in Q(zeta_E) for E divisible by 4, so that Q(i) embeds
// via i = zeta_E^{E/4}. Elements are kept as their remainder modulo the
// E-th cyclotomic polynomial, which makes equality a coefficient compare.

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fockmod/gaussian_rational.hpp"

namespace fockmod {

class Cyclotomic {
public:
  /// Zero in Q(zeta_order); order is rounded up to lcm(order, 4).
  explicit Cyclotomic(unsigned long order);
  Cyclotomic(unsigned long order, const GaussianRational& c);

  /// zeta_order^k for any integer k.
  static Cyclotomic root(unsigned long order, long k);

  unsigned long order() const noexcept { return order_; }
  const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const;

  Cyclotomic conj() const;
  std::complex<double> to_complex() const;
  /// Exact value when the element lies in Q(i).
  std::optional<GaussianRational> to_gaussian() const;
  std::string str() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

  /// Integer coefficients of the order-th cyclotomic polynomial, low degree first.
  static const std::vector<long>& cyclotomic_polynomial(unsigned long order);

private:
  void reduce(std::vector<mpq_class> poly);

  unsigned long order_;
  std::vector<mpq_class> coeffs_;  // length phi(order)
};

}  // namespace fockmod
