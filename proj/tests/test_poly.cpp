#include <set>

#include "commvar/errors.hpp"
#include "commvar/poly.hpp"
#include "commvar/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace commvar;

namespace {

int mobius(std::uint64_t n) {
  int m = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  }
  if (n > 1) m = -m;
  return m;
}

std::int64_t necklace(std::uint64_t q, unsigned d) {
  std::int64_t s = 0;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e == 0) s += mobius(e) * static_cast<std::int64_t>(oracle::ipow(q, d / e));
  }
  return s / d;
}

// Irreducible iff no monic divisor of degree 1..deg/2, by trial division.
bool trial_irreducible(const Poly& f) {
  const auto& F = f.field();
  const unsigned n = static_cast<unsigned>(f.degree());
  for (unsigned d = 1; 2 * d <= n; ++d) {
    const std::uint64_t total = oracle::ipow(F->order(), d);
    for (std::uint64_t i = 0; i < total; ++i) {
      std::vector<Elem> c(d + 1, 1);
      std::uint64_t x = i;
      for (unsigned j = 0; j < d; ++j) {
        c[j] = F->from_rank(x % F->order());
        x /= F->order();
      }
      if ((f % Poly(F, c)).is_zero()) return false;
    }
  }
  return true;
}

Poly random_poly(const FieldPtr& f, unsigned deg, Rng& rng) {
  std::vector<Elem> c(deg + 1);
  for (auto& x : c) x = f->from_rank(rng.below(f->order()));
  c[deg] = f->from_rank(1 + rng.below(f->order() - 1));
  return Poly(f, c);
}

Poly reassemble(const std::vector<Factor>& fs, const FieldPtr& f) {
  Poly r = Poly::constant(f, 1);
  for (const auto& x : fs) r = r * pow(x.poly, static_cast<std::uint64_t>(x.multiplicity));
  return r;
}

}  // namespace

TEST_CASE("basic arithmetic and text") {
  auto f2 = field(2);
  Poly p = parse_poly(f2, "1,0,1");
  CHECK(p.degree() == 2);
  CHECK(p.str() == "1,0,1");
  CHECK(p.pretty() == "t^2 + 1");
  CHECK(Poly(f2).degree() == -1);
  CHECK(Poly(f2).str() == "0");
  CHECK(gcd(p, parse_poly(f2, "1,1")) == parse_poly(f2, "1,1"));
  auto [q, r] = divmod(Poly::monomial(f2, 1, 3), Poly::monomial(f2, 1, 2));
  CHECK(q == Poly::t(f2));
  CHECK(r.is_zero());
  CHECK(gcd(Poly(f2), Poly(f2)).is_zero());
  CHECK_THROWS_AS(divmod(p, Poly(f2)), std::domain_error);
  auto f4 = field(2, 2);
  Poly g = parse_poly(f4, "[1,1],0,1");
  CHECK(parse_poly(f4, g.str()) == g);
}

TEST_CASE("gcd by Euclid") {
  auto f3 = field(3);
  // t^2 + t + 2 - (t^2 + 1) = t + 1, and t^2 + 1 at t = -1 is 2, so coprime.
  CHECK(gcd(parse_poly(f3, "1,0,1"), parse_poly(f3, "2,1,1")).is_one());
  Poly a = parse_poly(f3, "1,1") * parse_poly(f3, "2,0,1");
  Poly b = parse_poly(f3, "1,1") * parse_poly(f3, "1,0,1");
  CHECK(gcd(a, b) == parse_poly(f3, "1,1"));
  CHECK(gcd(a.scaled(2), b) == parse_poly(f3, "1,1"));
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(parse_poly(field(2), "1,1,1")));
  CHECK_FALSE(is_irreducible(parse_poly(field(2), "1,0,1")));
  CHECK(is_irreducible(parse_poly(field(3), "1,0,1")));
  CHECK_THROWS_AS(is_irreducible(Poly::constant(field(3), 2)), std::invalid_argument);
  for (auto q : {2u, 3u, 4u}) {
    auto f = field_of_order(q);
    for (unsigned d = 1; d <= 4; ++d) {
      const std::uint64_t total = oracle::ipow(q, d);
      for (std::uint64_t i = 0; i < total; ++i) {
        std::vector<Elem> c(d + 1, 1);
        std::uint64_t x = i;
        for (unsigned j = 0; j < d; ++j) {
          c[j] = f->from_rank(x % q);
          x /= q;
        }
        Poly p(f, c);
        REQUIRE(is_irreducible(p) == trial_irreducible(p));
      }
    }
  }
}

TEST_CASE("irreducible enumeration counts") {
  auto f2 = field(2);
  auto d1 = irreducibles_of_degree(f2, 1);
  REQUIRE(d1.size() == 2);
  CHECK(d1[0] == Poly::t(f2));
  CHECK(d1[1] == parse_poly(f2, "1,1"));
  CHECK(irreducibles_of_degree(f2, 2) == std::vector<Poly>{parse_poly(f2, "1,1,1")});
  CHECK(irreducibles_of_degree(field(3), 2).size() == 3);
  for (auto q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
    auto f = field_of_order(q);
    for (unsigned d = 1; oracle::ipow(q, d) <= 4096; ++d) {
      auto list = irreducibles_of_degree(f, d);
      CHECK(static_cast<std::int64_t>(list.size()) == necklace(q, d));
      for (std::size_t i = 1; i < list.size(); ++i) CHECK(poly_less(list[i - 1], list[i]));
    }
  }
  CHECK_THROWS_AS(irreducibles_of_degree(field(2), 30), LimitExceeded);
}

TEST_CASE("factorization") {
  auto f2 = field(2);
  auto fs = factor(parse_poly(f2, "1,0,1"));
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].poly == parse_poly(f2, "1,1"));
  CHECK(fs[0].multiplicity == 2);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto f = field(p);
    for (Elem alpha = 0; alpha < p; ++alpha) {
      // t^p - alpha^p = (t - alpha)^p
      Poly g = Poly::monomial(f, 1, p) - Poly::constant(f, f->pow(alpha, p));
      auto r = factor(g);
      REQUIRE(r.size() == 1);
      CHECK(r[0].poly == parse_poly(f, std::to_string(f->neg(alpha)) + ",1"));
      CHECK(r[0].multiplicity == static_cast<int>(p));
    }
  }
  for (auto q : {2u, 3u, 4u, 9u, 25u, 27u}) {
    auto f = field_of_order(q);
    Rng rng(q);
    for (int i = 0; i < 40; ++i) {
      Poly g = random_poly(f, 1 + static_cast<unsigned>(rng.below(8)), rng);
      if (i % 3 == 0) g = g * g * random_poly(f, 2, rng);
      auto r = factor(g, 11);
      CHECK(reassemble(r, f) == g.monic());
      for (const auto& x : r) CHECK(is_irreducible(x.poly));
      for (std::size_t j = 1; j < r.size(); ++j) CHECK(poly_less(r[j - 1].poly, r[j].poly));
      auto again = factor(g, 11);
      CHECK(again.size() == r.size());
      auto other = factor(g, 12345);
      CHECK(reassemble(other, f) == g.monic());
    }
  }
  Rng rng(6);
  auto f3 = field(3);
  Poly g = random_poly(f3, 6, rng);
  CHECK(reassemble(factor(g, 0), f3) == g.monic());
}

TEST_CASE("roots") {
  auto f16 = field(2, 4);
  Poly q = parse_poly(f16, "1,1,1");
  auto rs = roots(q);
  std::vector<Elem> brute;
  for (Elem a = 0; a < 16; ++a) {
    if (q.eval(a) == 0) brute.push_back(a);
  }
  std::sort(brute.begin(), brute.end(), [&](Elem a, Elem b) { return f16->rank_of(a) < f16->rank_of(b); });
  CHECK(rs == brute);
  CHECK(rs.size() == 2);
}
