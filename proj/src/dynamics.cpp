#include "fockmod/dynamics.hpp"

#include <algorithm>
#include <numeric>

#include "fockmod/error.hpp"

namespace fockmod {

FiniteDynSystem::FiniteDynSystem(std::vector<std::size_t> sigma) : sigma_(std::move(sigma)) {
  for (std::size_t x = 0; x < sigma_.size(); ++x)
    if (sigma_[x] >= sigma_.size())
      throw Error(ErrorKind::InvalidInput, "sigma(" + std::to_string(x) + ") = " + std::to_string(sigma_[x]) +
                                               " is outside X");
}

FiniteDynSystem FiniteDynSystem::identity(std::size_t n) {
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), 0);
  return FiniteDynSystem(std::move(s));
}

FiniteDynSystem FiniteDynSystem::shift(std::size_t n) {
  std::vector<std::size_t> s(n);
  for (std::size_t x = 0; x < n; ++x) s[x] = (x + 1) % n;
  return FiniteDynSystem(std::move(s));
}

std::vector<std::size_t> FiniteDynSystem::forward_orbit(std::size_t x) const {
  std::vector<bool> seen(size(), false);
  std::vector<std::size_t> out;
  while (!seen.at(x)) {
    seen[x] = true;
    out.push_back(x);
    x = sigma_[x];
  }
  return out;
}

FuncOnX FuncOnX::constant(std::size_t n, const GaussianRational& c) { return {std::vector<GaussianRational>(n, c)}; }

FuncOnX FuncOnX::indicator(std::size_t n, std::size_t x) {
  FuncOnX f = constant(n, 0);
  f.values.at(x) = 1;
  return f;
}

FuncOnX operator*(const FuncOnX& a, const FuncOnX& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "functions on different sets");
  FuncOnX out = a;
  for (std::size_t x = 0; x < a.size(); ++x) out.values[x] = a.values[x] * b.values[x];
  return out;
}

FuncOnX pullback(const FiniteDynSystem& sys, const FuncOnX& f) {
  if (f.size() != sys.size()) throw Error(ErrorKind::DimensionMismatch, "function length differs from |X|");
  FuncOnX out = f;
  for (std::size_t x = 0; x < sys.size(); ++x) out.values[x] = f.values[sys(x)];
  return out;
}

std::vector<FuncOnX> SpanBasis::basis() const {
  std::vector<FuncOnX> out;
  for (const auto& row : echelon.rows()) out.push_back({row});
  return out;
}

std::vector<std::vector<std::size_t>> orbit_components(const FiniteDynSystem& sys) {
  const std::size_t n = sys.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t a = find(x), b = find(sys(x));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<long> slot(n, -1);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t root = find(x);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[root])].push_back(x);
  }
  return out;
}

SpanBasis cyclic_subspace(const FiniteDynSystem& sys, const FuncOnX& f) {
  if (f.size() != sys.size()) throw Error(ErrorKind::DimensionMismatch, "function length differs from |X|");
  SpanBasis span(sys.size());
  span.echelon.insert(FuncOnX::constant(sys.size(), 1).values);
  // once f o sigma^k is dependent on the earlier ones, pulling the relation
  // back shows every later pullback is too
  FuncOnX g = f;
  while (span.echelon.insert(g.values)) {
    span.depth_dims.push_back(span.dim());
    g = pullback(sys, g);
  }
  span.depth_dims.push_back(span.dim());
  return span;
}

std::vector<FuncOnX> default_candidates(std::size_t n) {
  std::vector<FuncOnX> out;
  for (std::size_t x = 0; x < n; ++x) out.push_back(FuncOnX::indicator(n, x));
  FuncOnX primes = FuncOnX::constant(n, 0);
  long p = 1;
  for (std::size_t x = 0; x < n; ++x) {
    for (bool prime = false; !prime;) {
      ++p;
      prime = true;
      for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) prime = false;
    }
    primes.values[x] = p;
  }
  out.push_back(std::move(primes));
  return out;
}

std::optional<FuncOnX> is_cyclic_witness(const FiniteDynSystem& sys, const std::vector<FuncOnX>& candidates) {
  for (const auto& f : candidates)
    if (cyclic_subspace(sys, f).dim() == sys.size()) return f;
  return std::nullopt;
}

std::optional<FuncOnX> is_cyclic_witness(const FiniteDynSystem& sys) {
  return is_cyclic_witness(sys, default_candidates(sys.size()));
}

std::optional<FuncOnX> dense_orbit_generation(const FiniteDynSystem& sys) {
  const std::size_t n = sys.size();
  for (std::size_t z = 0; z < n; ++z) {
    if (sys.forward_orbit(z).size() + 1 < n) continue;
    FuncOnX chi = FuncOnX::indicator(n, z);
    if (cyclic_subspace(sys, chi).dim() == n) return chi;
  }
  return std::nullopt;
}

SpanBasis multi_span(const FiniteDynSystem& sys, const std::vector<FuncOnX>& fs) {
  if (fs.empty()) throw Error(ErrorKind::EmptyFamily, "multi_span needs at least one function");
  SpanBasis acc = cyclic_subspace(sys, fs.front());
  acc.depth_dims.clear();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    const auto factor = cyclic_subspace(sys, fs[i]).basis();
    SpanBasis next(sys.size());
    for (const auto& a : acc.basis())
      for (const auto& b : factor) next.echelon.insert((a * b).values);
    acc = std::move(next);
  }
  return acc;
}

namespace {

// The span is all of C(X) on a component when it holds every chi_x there.
bool covers_component(const SpanBasis& span, std::size_t n, const std::vector<std::size_t>& comp) {
  return std::all_of(comp.begin(), comp.end(), [&](std::size_t x) { return span.contains(FuncOnX::indicator(n, x)); });
}

}  // namespace

OrbitGenerators generators_from_orbits(const FiniteDynSystem& sys) {
  const std::size_t n = sys.size();
  OrbitGenerators out;
  if (n == 0) {
    out.certified = out.certified_by_components = true;
    return out;
  }
  const auto comps = orbit_components(sys);
  out.component_count = comps.size();
  for (const auto& c : comps) {
    out.points.push_back(c.front());
    out.generators.push_back(FuncOnX::indicator(n, c.front()));
  }
  SpanBasis span = multi_span(sys, out.generators);
  out.certified_by_components = span.dim() == n;
  if (!out.certified_by_components) {
    out.fallback_used = true;
    for (const auto& c : comps) {
      if (covers_component(span, n, c)) continue;
      for (std::size_t k = 1; k < c.size(); ++k) {
        out.points.push_back(c[k]);
        out.generators.push_back(FuncOnX::indicator(n, c[k]));
      }
    }
    span = multi_span(sys, out.generators);
  }
  out.dimension = span.dim();
  out.certified = out.dimension == n;
  return out;
}

PushforwardResult pushforward_generators(const FiniteDynSystem& x, const FiniteDynSystem& y,
                                         const std::vector<std::size_t>& pi, const std::vector<FuncOnX>& fs) {
  if (pi.size() != x.size()) throw Error(ErrorKind::DimensionMismatch, "pi must be defined on all of X");
  std::vector<std::size_t> fiber_size(y.size(), 0);
  for (std::size_t p : pi) {
    if (p >= y.size()) throw Error(ErrorKind::InvalidInput, "pi maps outside Y");
    ++fiber_size[p];
  }
  for (std::size_t v = 0; v < y.size(); ++v)
    if (fiber_size[v] == 0) throw Error(ErrorKind::NotSurjective, std::to_string(v) + " is not in the image of pi");
  for (std::size_t a = 0; a < x.size(); ++a)
    if (pi[x(a)] != y(pi[a]))
      throw Error(ErrorKind::NotEquivariant, "pi(sigma(" + std::to_string(a) + ")) != sigma(pi(" + std::to_string(a) + "))");

  PushforwardResult out;
  for (const auto& f : fs) {
    if (f.size() != x.size()) throw Error(ErrorKind::DimensionMismatch, "function length differs from |X|");
    FuncOnX g = FuncOnX::constant(y.size(), 0);
    std::vector<std::optional<GaussianRational>> first(y.size());
    for (std::size_t a = 0; a < x.size(); ++a) {
      g.values[pi[a]] += f.values[a];
      if (!first[pi[a]]) first[pi[a]] = f.values[a];
      else if (!(*first[pi[a]] == f.values[a])) out.fiber_averaged = true;
    }
    for (std::size_t v = 0; v < y.size(); ++v)
      g.values[v] = g.values[v] * GaussianRational(mpq_class(1, static_cast<unsigned long>(fiber_size[v])));
    out.generators.push_back(std::move(g));
  }
  if (!out.generators.empty()) out.dimension = multi_span(y, out.generators).dim();
  out.certified = out.dimension == y.size();
  return out;
}

PolyFunc::PolyFunc(std::vector<mpq_class> coeffs, std::size_t cap) : coeffs_(std::move(coeffs)), cap_(cap) {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (degree() > static_cast<long>(cap_))
    throw Error(ErrorKind::DegreeOverflow, "degree " + std::to_string(degree()) + " exceeds cap " + std::to_string(cap_));
}

PolyFunc PolyFunc::monomial(std::size_t k, std::size_t cap) {
  std::vector<mpq_class> c(k + 1, 0);
  c[k] = 1;
  return PolyFunc(std::move(c), cap);
}

bool PolyFunc::is_even() const {
  for (std::size_t k = 1; k < coeffs_.size(); k += 2)
    if (coeffs_[k] != 0) return false;
  return true;
}

PolyFunc PolyFunc::compose_square() const {
  if (coeffs_.empty()) return *this;
  std::vector<mpq_class> c(2 * coeffs_.size() - 1, 0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[2 * k] = coeffs_[k];
  return PolyFunc(std::move(c), cap_);
}

std::vector<mpq_class> PolyFunc::dense() const {
  std::vector<mpq_class> d(cap_ + 1, 0);
  std::copy(coeffs_.begin(), coeffs_.end(), d.begin());
  return d;
}

bool PolySpan::contains(const PolyFunc& g) const {
  if (g.degree() >= static_cast<long>(echelon.width())) return false;
  std::vector<mpq_class> d(echelon.width(), 0);
  std::copy(g.coeffs().begin(), g.coeffs().end(), d.begin());
  return echelon.contains(d);
}

PolySpan poly_cyclic_subspace(const PolyFunc& f, std::size_t depth, std::size_t cap) {
  PolySpan span{RowEchelon<mpq_class>(cap + 1), {}};
  PolyFunc g(f.coeffs(), cap);
  span.generators.push_back(PolyFunc::monomial(0, cap));
  span.echelon.insert(span.generators.back().dense());
  for (std::size_t n = 0; n <= depth; ++n) {
    if (n > 0) g = g.compose_square();
    span.generators.push_back(g);
    span.echelon.insert(g.dense());
  }
  return span;
}

}  // namespace fockmod
