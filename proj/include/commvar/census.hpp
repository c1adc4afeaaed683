#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "commvar/mat.hpp"

namespace commvar {

using BigInt = boost::multiprecision::cpp_int;
using Decimal = boost::multiprecision::cpp_dec_float_50;

/// One primary component of a conjugacy class: the f-primary part has
/// elementary divisors f^{lambda_1}, f^{lambda_2}, ...
struct PrimaryPart {
  Poly f;                               // monic irreducible
  std::vector<std::size_t> partition;  // descending, nonempty

  bool operator==(const PrimaryPart& o) const { return f == o.f && partition == o.partition; }
};

/// A conjugacy class of M_n(F_q) by its primary data, parts sorted by
/// poly_less with each irreducible appearing once.
struct ClassRep {
  FieldPtr field;
  std::vector<PrimaryPart> parts;

  std::size_t dimension() const;
  /// Direct sum of companion matrices of f^{lambda_i}.
  Mat representative() const;
  std::string str() const;
  bool operator==(const ClassRep& o) const { return field == o.field && parts == o.parts; }
};

/// |GL_n(F_q)| = prod_{i<n} (q^n - q^i).
BigInt gl_order(std::size_t n, std::uint64_t q);
/// Order of the centralizer of the representative in GL_n(F_q): per primary
/// part with q' = q^{deg f}, q'^{sum (lambda'_j)^2} prod_j prod_{i<=m_j} (1 - q'^{-i}).
BigInt centralizer_group_order(const ClassRep& c);
/// |GL_n(F_q)| / centralizer order.
BigInt class_size(const ClassRep& c);

/// Complete, duplicate-free list of classes of M_n(F_q) (or GL_n(F_q) when
/// invertible is set), in deterministic order. Throws LimitExceeded past
/// max_classes.
std::vector<ClassRep> enumerate_classes(std::size_t n, const FieldPtr& f, bool invertible,
                                        std::uint64_t max_classes = 2'000'000);

/// Primary data of A, from the factored invariant factors.
ClassRep class_of(const Mat& a);

/// zeta^{deg f} f(t / zeta): the minimal polynomial of zeta x when f is that
/// of x.
Poly twist_poly(const Poly& f, Elem zeta);
/// Class of zeta x for x in c.
ClassRep twist(const ClassRep& c, Elem zeta);
bool twist_fixed(const ClassRep& c, Elem zeta);

enum class Strategy { brute, classes };
std::string to_string(Strategy s);

struct CensusLimits {
  std::uint64_t max_classes = 2'000'000;
  std::uint64_t max_brute = std::uint64_t{1} << 26;  // matrix evaluations
  unsigned threads = 1;
};

/// #{(A, B) in M_n(F_q)^2 : AB - BA = cI}.
BigInt count_lie_pairs(std::size_t n, const FieldPtr& f, Elem c, Strategy s, const CensusLimits& lim = {});
/// #{(A, B) : AB = BA}.
BigInt count_commuting_pairs(std::size_t n, const FieldPtr& f, Strategy s, const CensusLimits& lim = {});
/// #{(x, y) in GL_n(F_q)^2 : x^{-1} y^{-1} x y = zeta I}.
BigInt count_group_pairs(std::size_t n, const FieldPtr& f, Elem zeta, Strategy s, const CensusLimits& lim = {});
/// Number of invertible y with xy = zeta yx, by enumerating the solution
/// space, and the number of members enumerated. Throws LimitExceeded when the
/// space has more than max_members elements.
std::pair<std::uint64_t, std::uint64_t> count_invertible_solutions(const Mat& x, Elem zeta, std::uint64_t max_members);
/// #{x in GL_n(F_q) : x conjugate to zeta x}.
BigInt count_w(std::size_t n, const FieldPtr& f, Elem zeta, Strategy s, const CensusLimits& lim = {});

struct DimensionFit {
  std::int64_t fitted;
  Decimal raw;
  Decimal residual;
};

/// Log-ratio exponent between the two largest q of (q, count) points, all
/// q powers of one prime. Throws std::invalid_argument on fewer than two
/// points, repeated q, mixed characteristic, or a zero count.
DimensionFit estimate_dimension(std::span<const std::pair<std::uint64_t, BigInt>> points);

struct CountPoint {
  std::uint64_t q;
  BigInt count;
  Strategy strategy;
};

/// Point counts of one variety over several q with the fitted growth exponent.
struct CountReport {
  std::string variety;
  std::size_t n;
  std::uint32_t p;
  std::vector<CountPoint> counts;
  std::optional<DimensionFit> fit;  // absent with fewer than two points
  std::int64_t expected_dimension;
  bool match;  // fitted == expected and residual < kResidualTolerance
};

inline const Decimal kResidualTolerance{"0.35"};

/// Fits the counts and fills fit and match.
void finish_report(CountReport& r);

/// Fixed-point decimal text with 24 fractional digits.
std::string decimal_string(const Decimal& d);

}  // namespace commvar
