#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "commvar/gf.hpp"

namespace commvar {

/// Dense univariate polynomial over a finite field, constant term first,
/// without trailing zeros. The zero polynomial has degree -1.
class Poly {
 public:
  explicit Poly(FieldPtr f) : f_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<Elem> coeffs);

  static Poly constant(const FieldPtr& f, Elem c) { return Poly(f, {c}); }
  static Poly monomial(const FieldPtr& f, Elem c, std::size_t deg);
  /// The indeterminate t.
  static Poly t(const FieldPtr& f) { return monomial(f, 1, 1); }

  const FieldPtr& field() const { return f_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  Poly monic() const;
  Poly derivative() const;
  Elem eval(Elem x) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(Elem s) const;
  Poly operator-() const { return scaled(f_->neg(1)); }

  bool operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }

  /// Comma-separated element tokens, constant term first ("1,0,1"); "0" for
  /// the zero polynomial.
  std::string str() const;
  /// Human-readable form, highest degree first ("t^2 + 1").
  std::string pretty() const;

 private:
  void trim();
  const Poly& check(const Poly& o) const;

  FieldPtr f_;
  std::vector<Elem> c_;
};

Poly parse_poly(const FieldPtr& f, std::string_view text);

/// Quotient and remainder; throws std::domain_error for a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
Poly pow(Poly base, std::uint64_t e);
Poly powmod(Poly base, std::uint64_t e, const Poly& m);

/// Deterministic total order: by degree, then coefficient ranks from the
/// constant term up.
bool poly_less(const Poly& a, const Poly& b);

/// Image of f under a field embedding.
Poly lift(const Poly& f, const Embedding& emb);

/// Throws std::invalid_argument for constant input.
bool is_irreducible(const Poly& f);

struct Factor {
  Poly poly;  // monic irreducible
  int multiplicity;
};

/// Complete factorization of a nonzero polynomial into monic irreducibles:
/// squarefree decomposition, distinct-degree, then seeded equal-degree
/// splitting. The leading unit is dropped. Output sorted by poly_less.
std::vector<Factor> factor(const Poly& f, std::uint64_t seed = 0);
/// Distinct roots of f, sorted by field enumeration order.
std::vector<Elem> roots(const Poly& f, std::uint64_t seed = 0);

/// All monic irreducibles of degree d, in enumeration order of their
/// coefficient tuples. Throws LimitExceeded when q^d > limit.
std::vector<Poly> irreducibles_of_degree(const FieldPtr& f, unsigned d, std::uint64_t limit = std::uint64_t{1} << 22);

}  // namespace commvar
