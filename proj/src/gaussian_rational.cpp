#include "fockmod/gaussian_rational.hpp"

#include "fockmod/error.hpp"

namespace fockmod {

GaussianRational GaussianRational::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in Q(i)");
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

std::string GaussianRational::str() const {
  if (im_ == 0) return re_.get_str();
  if (re_ == 0) return im_.get_str() + "i";
  std::string sign = im_ < 0 ? "-" : "+";
  mpq_class a = abs(im_);
  return re_.get_str() + sign + a.get_str() + "i";
}

}  // namespace fockmod
