#pragma once

// Finite dynamical systems (X, sigma) and spans of pullbacks f o sigma^n in
// C(X), plus the polynomial model X = [-1, 1], sigma(t) = t^2.

#include <cstddef>
#include <optional>
#include <vector>

#include "fockmod/exact_linalg.hpp"
#include "fockmod/gaussian_rational.hpp"

namespace fockmod {

class FiniteDynSystem {
public:
  /// Throws InvalidInput unless every image lies in {0, ..., size - 1}.
  explicit FiniteDynSystem(std::vector<std::size_t> sigma);

  static FiniteDynSystem identity(std::size_t n);
  /// x -> x + 1 mod n.
  static FiniteDynSystem shift(std::size_t n);

  std::size_t size() const noexcept { return sigma_.size(); }
  std::size_t operator()(std::size_t x) const { return sigma_.at(x); }
  const std::vector<std::size_t>& table() const noexcept { return sigma_; }

  /// x, sigma(x), sigma^2(x), ... without repetition.
  std::vector<std::size_t> forward_orbit(std::size_t x) const;

private:
  std::vector<std::size_t> sigma_;
};

struct FuncOnX {
  std::vector<GaussianRational> values;

  static FuncOnX constant(std::size_t n, const GaussianRational& c);
  static FuncOnX indicator(std::size_t n, std::size_t x);

  std::size_t size() const noexcept { return values.size(); }
  friend FuncOnX operator*(const FuncOnX& a, const FuncOnX& b);
  friend bool operator==(const FuncOnX& a, const FuncOnX& b) = default;
};

/// f o sigma.
FuncOnX pullback(const FiniteDynSystem& sys, const FuncOnX& f);

struct SpanBasis {
  RowEchelon<GaussianRational> echelon;
  /// dimension after adding each further pullback (cyclic spans only)
  std::vector<std::size_t> depth_dims;

  explicit SpanBasis(std::size_t width) : echelon(width) {}
  std::size_t dim() const noexcept { return echelon.dim(); }
  bool contains(const FuncOnX& f) const { return echelon.contains(f.values); }
  std::vector<FuncOnX> basis() const;
};

/// Components of the functional graph, each sorted, ordered by least element.
std::vector<std::vector<std::size_t>> orbit_components(const FiniteDynSystem& sys);

/// span{1, f, f o sigma, ...}, iterated until the dimension stops growing.
SpanBasis cyclic_subspace(const FiniteDynSystem& sys, const FuncOnX& f);

/// Characteristic functions of every point, then one function with distinct prime values.
std::vector<FuncOnX> default_candidates(std::size_t n);
/// First candidate f with dim <<f>> = |X|; empty means none of them worked.
std::optional<FuncOnX> is_cyclic_witness(const FiniteDynSystem& sys, const std::vector<FuncOnX>& candidates);
std::optional<FuncOnX> is_cyclic_witness(const FiniteDynSystem& sys);

/// chi_z for the first z whose forward orbit misses at most one point and
/// whose cyclic span is certified to be all of C(X).
std::optional<FuncOnX> dense_orbit_generation(const FiniteDynSystem& sys);

/// Span of all products g_1 ... g_n with g_i in <<f_i>>. Throws EmptyFamily.
SpanBasis multi_span(const FiniteDynSystem& sys, const std::vector<FuncOnX>& fs);

struct OrbitGenerators {
  std::vector<FuncOnX> generators;
  std::vector<std::size_t> points;   // the x of each chi_x, in order
  std::size_t component_count = 0;
  bool certified_by_components = false;
  bool fallback_used = false;
  std::size_t dimension = 0;
  bool certified = false;
};

/// One chi per component (least element); components whose restriction of
/// the resulting span is deficient receive a chi for each of their points.
OrbitGenerators generators_from_orbits(const FiniteDynSystem& sys);

struct PushforwardResult {
  std::vector<FuncOnX> generators;
  bool fiber_averaged = false;
  std::size_t dimension = 0;
  bool certified = false;
};

/// Functions on X pushed to Y through pi by averaging over fibers.
PushforwardResult pushforward_generators(const FiniteDynSystem& x, const FiniteDynSystem& y,
                                         const std::vector<std::size_t>& pi, const std::vector<FuncOnX>& fs);

class PolyFunc {
public:
  /// Coefficients low degree first; throws DegreeOverflow above the cap.
  PolyFunc(std::vector<mpq_class> coeffs, std::size_t cap);

  static PolyFunc monomial(std::size_t k, std::size_t cap);

  const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }
  std::size_t cap() const noexcept { return cap_; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_even() const;
  /// f(t^2); DegreeOverflow beyond the cap.
  PolyFunc compose_square() const;
  /// Dense coefficients of length cap + 1.
  std::vector<mpq_class> dense() const;

  friend bool operator==(const PolyFunc& a, const PolyFunc& b) = default;

private:
  std::vector<mpq_class> coeffs_;
  std::size_t cap_;
};

struct PolySpan {
  RowEchelon<mpq_class> echelon;
  std::vector<PolyFunc> generators;  // 1, f, f o sigma, ...

  bool contains(const PolyFunc& g) const;
};

/// span{1, f, f(t^2), ..., f(t^{2^depth})} in monomial coordinates.
PolySpan poly_cyclic_subspace(const PolyFunc& f, std::size_t depth, std::size_t cap);

}  // namespace fockmod
