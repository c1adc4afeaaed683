#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace commvar {

/// Field element in packed form: the coefficient tuple (c_0, ..., c_{k-1}) of
/// the polynomial basis stored as the integer sum c_i * p^i.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The finite field GF(p^k) = F_p[t] / (modulus).
///
/// Instances are interned: field(p, k) always returns the same object, so two
/// fields are equal iff their pointers are equal. The modulus is the
/// lexicographically smallest monic irreducible of degree k, comparing
/// coefficient tuples constant term first.
///
/// Arithmetic works on packed Elem values. Prime fields use direct modular
/// arithmetic; extensions with q <= 2^20 use Zech-logarithm tables, larger
/// extensions fall back to polynomial arithmetic on digit vectors.
class Field {
 public:
  Field(std::uint32_t p, std::uint32_t k);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint64_t order() const { return q_; }
  bool is_prime_field() const { return k_ == 1; }

  /// Coefficients of the modulus, constant term first, length k + 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  static constexpr Elem zero() { return 0; }
  static constexpr Elem one() { return 1; }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const;

  Elem add(Elem a, Elem b) const {
    if (k_ == 1) {
      std::uint64_t s = std::uint64_t{a} + b;
      return static_cast<Elem>(s >= p_ ? s - p_ : s);
    }
    if (p_ == 2) return a ^ b;
    if (!tables_) return add_slow(a, b);
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint32_t la = log_[a];
    std::uint32_t lb = log_[b];
    std::uint32_t d = lb >= la ? lb - la : lb + static_cast<std::uint32_t>(q_ - 1) - la;
    std::uint32_t z = zech_[d];
    if (z == kNoLog) return 0;
    return exp_[la + z];
  }

  Elem neg(Elem a) const {
    if (a == 0) return 0;
    if (k_ == 1) return p_ - a;
    if (p_ == 2) return a;
    if (!tables_) return neg_slow(a);
    return exp_[log_[a] + static_cast<std::uint32_t>((q_ - 1) / 2)];
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
    if (!tables_) return mul_slow(a, b);
    return exp_[log_[a] + log_[b]];
  }

  /// Multiplicative inverse; throws std::domain_error on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// a -> a^p.
  Elem frobenius(Elem a) const { return pow(a, p_); }

  std::vector<std::uint32_t> coeffs(Elem a) const;
  Elem from_coeffs(std::span<const std::uint32_t> c) const;

  /// Position of a in the deterministic enumeration order: coefficient tuples
  /// compared lexicographically with the constant term most significant.
  std::uint64_t rank_of(Elem a) const;
  Elem from_rank(std::uint64_t r) const;

  /// Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(Elem a) const;
  /// Smallest element of order q - 1 in enumeration order.
  Elem primitive_element() const { return primitive_; }
  /// Element of order exactly d: primitive_element()^((q-1)/d).
  /// Throws std::domain_error when d does not divide q - 1.
  Elem root_of_unity(std::uint64_t d) const;

  /// Text form: a decimal residue for prime fields, "[c0,c1,...]" otherwise.
  std::string format(Elem a) const;
  /// Accepts the text form; prime-field residues may also be negative.
  Elem parse(std::string_view text) const;

 private:
  static constexpr std::uint32_t kNoLog = 0xFFFFFFFFu;

  Elem add_slow(Elem a, Elem b) const;
  Elem neg_slow(Elem a) const;
  Elem mul_slow(Elem a, Elem b) const;
  void build_tables();

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  bool tables_ = false;
  std::vector<std::uint32_t> exp_;   // length 2(q-1)
  std::vector<std::uint32_t> log_;   // log_[0] unused
  std::vector<std::uint32_t> zech_;  // zech_[d] = log(1 + g^d)
  Elem primitive_ = 0;
};

/// Interned GF(p^k). Throws std::invalid_argument for non-prime p, k = 0, or
/// p^k >= 2^32.
FieldPtr field(std::uint32_t p, std::uint32_t k = 1);

/// Splits q = p^k; throws std::invalid_argument if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);
inline FieldPtr field_of_order(std::uint64_t q) {
  auto [p, k] = prime_power(q);
  return field(p, k);
}

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// A field element bound to its field. Arithmetic across different fields
/// throws std::invalid_argument.
class Fe {
 public:
  Fe() = default;
  Fe(FieldPtr f, Elem v) : f_(std::move(f)), v_(v) {}

  const FieldPtr& field() const { return f_; }
  Elem value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  Fe operator+(const Fe& o) const;
  Fe operator-(const Fe& o) const;
  Fe operator*(const Fe& o) const;
  Fe operator/(const Fe& o) const;
  Fe operator-() const { return {f_, f_->neg(v_)}; }
  Fe pow(std::uint64_t e) const { return {f_, f_->pow(v_, e)}; }
  Fe inverse() const { return {f_, f_->inv(v_)}; }

  bool operator==(const Fe& o) const { return f_ == o.f_ && v_ == o.v_; }

  std::string str() const { return f_->format(v_); }

 private:
  const Fe& same_field(const Fe& o) const;

  FieldPtr f_;
  Elem v_ = 0;
};

Fe frobenius(const Fe& a);
Fe root_of_unity(const FieldPtr& f, std::uint64_t d);
Fe parse_fe(const FieldPtr& f, std::string_view text);

/// Ring embedding GF(p^k) -> GF(p^{km}) sending t to the smallest root (in
/// enumeration order) of the source modulus inside the target.
class Embedding {
 public:
  Embedding(FieldPtr src, FieldPtr dst);

  const FieldPtr& source() const { return src_; }
  const FieldPtr& target() const { return dst_; }
  Elem operator()(Elem a) const;

 private:
  FieldPtr src_;
  FieldPtr dst_;
  std::vector<Elem> powers_;  // images of 1, t, ..., t^{k-1}
};

/// Cached embedding between two interned fields.
const Embedding& embedding(const FieldPtr& src, const FieldPtr& dst);
Fe embed(const Fe& a, const FieldPtr& target);

}  // namespace commvar
