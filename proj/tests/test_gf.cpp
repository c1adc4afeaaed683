#include <set>
#include <stdexcept>

#include "commvar/gf.hpp"
#include "commvar/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace commvar;

namespace {

// Smallest monic quadratic over F_3 without a root, scanning tuples
// (c0, c1) with c0 most significant.
oracle::Tuple smallest_irreducible_quadratic_f3() {
  for (std::uint32_t c0 = 0; c0 < 3; ++c0) {
    for (std::uint32_t c1 = 0; c1 < 3; ++c1) {
      bool root = false;
      for (std::uint32_t x = 0; x < 3; ++x) root |= (x * x + c1 * x + c0) % 3 == 0;
      if (!root) return {c0, c1, 1};
    }
  }
  return {};
}

}  // namespace

TEST_CASE("field construction and moduli") {
  CHECK(field(2, 1)->modulus() == std::vector<std::uint32_t>{0, 1});
  CHECK(field(2, 2)->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(field(3, 2)->modulus() == smallest_irreducible_quadratic_f3());
  CHECK(field(3, 2) == field(3, 2));
  CHECK(field(5)->order() == 5);
  CHECK(field(2, 4)->order() == 16);
  CHECK_THROWS_AS(field(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(field(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(field(2, 32), std::invalid_argument);
  CHECK(prime_power(81) == std::pair<std::uint32_t, std::uint32_t>{3, 4});
  CHECK_THROWS_AS(prime_power(12), std::invalid_argument);
}

TEST_CASE("prime field arithmetic") {
  auto f5 = field(5);
  CHECK(f5->mul(2, 3) == 1);
  auto f7 = field(7);
  CHECK(f7->div(3, 5) == 2);
  CHECK(f7->from_int(-1) == 6);
  CHECK_THROWS_AS(f7->inv(0), std::domain_error);
}

TEST_CASE("GF(4) arithmetic") {
  auto f = field(2, 2);
  const Elem t = f->from_coeffs(std::vector<std::uint32_t>{0, 1});
  const Elem t1 = f->from_coeffs(std::vector<std::uint32_t>{1, 1});
  CHECK(f->mul(t, t) == t1);
  CHECK(f->frobenius(t) == t1);
  CHECK(f->frobenius(1) == 1);
  CHECK(f->root_of_unity(3) == t);
}

TEST_CASE("extension multiplication matches schoolbook products") {
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}, {7, 2}}) {
    auto f = field(p, k);
    CAPTURE(f->order());
    for (Elem a = 0; a < f->order(); ++a) {
      for (Elem b = 0; b < f->order(); ++b) {
        auto expect = oracle::mul_mod(f->coeffs(a), f->coeffs(b), f->modulus(), p);
        REQUIRE(f->coeffs(f->mul(a, b)) == expect);
        auto ca = f->coeffs(a), cb = f->coeffs(b);
        oracle::Tuple sum(k);
        for (std::uint32_t i = 0; i < k; ++i) sum[i] = (ca[i] + cb[i]) % p;
        REQUIRE(f->coeffs(f->add(a, b)) == sum);
      }
    }
  }
}

TEST_CASE("large extensions use the digit path consistently") {
  auto f = field(2, 21);
  auto g = field(3, 13);
  for (const auto& fld : {f, g}) {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
      const Elem a = static_cast<Elem>(rng.below(fld->order()));
      const Elem b = static_cast<Elem>(rng.below(fld->order()));
      CHECK(fld->coeffs(fld->mul(a, b)) == oracle::mul_mod(fld->coeffs(a), fld->coeffs(b), fld->modulus(), fld->characteristic()));
      if (a != 0) CHECK(fld->mul(a, fld->inv(a)) == 1);
      CHECK(fld->sub(fld->add(a, b), b) == a);
    }
  }
}

TEST_CASE("inverses agree with exhaustive search") {
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {2, 4}, {11, 1}}) {
    auto f = field(p, k);
    for (Elem a = 1; a < f->order(); ++a) {
      Elem found = 0;
      for (Elem b = 1; b < f->order(); ++b) {
        if (f->mul(a, b) == 1) found = b;
      }
      CHECK(f->inv(a) == found);
    }
  }
}

TEST_CASE("frobenius properties") {
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {2, 4}, {5, 2}, {2, 3}}) {
    auto f = field(p, k);
    std::set<Elem> image;
    std::size_t fixed = 0;
    for (Elem a = 0; a < f->order(); ++a) {
      Elem x = a;
      for (std::uint32_t i = 0; i < k; ++i) x = f->frobenius(x);
      CHECK(x == a);
      image.insert(f->frobenius(a));
      if (f->frobenius(a) == a) ++fixed;
      for (Elem b = 0; b < f->order(); ++b) CHECK(f->frobenius(f->add(a, b)) == f->add(f->frobenius(a), f->frobenius(b)));
    }
    CHECK(image.size() == f->order());
    CHECK(fixed == p);
  }
}

TEST_CASE("roots of unity") {
  CHECK(field(3)->root_of_unity(2) == 2);
  auto f5 = field(5);
  const Elem z4 = f5->root_of_unity(4);
  CHECK(f5->pow(z4, 4) == 1);
  CHECK(f5->pow(z4, 2) != 1);
  CHECK_THROWS_AS(f5->root_of_unity(3), std::domain_error);
  for (auto q : {4u, 9u, 16u, 25u, 27u, 49u}) {
    auto f = field_of_order(q);
    for (std::uint64_t d = 1; d < q; ++d) {
      if ((q - 1) % d != 0) continue;
      const Elem z = f->root_of_unity(d);
      CHECK(f->pow(z, d) == 1);
      for (std::uint64_t e = 1; e < d; ++e) {
        if (d % e == 0) CHECK(f->pow(z, e) != 1);
      }
      CHECK(f->multiplicative_order(z) == d);
    }
  }
}

TEST_CASE("enumeration order and text round trip") {
  auto f = field(3, 2);
  for (std::uint64_t r = 0; r < 9; ++r) CHECK(f->rank_of(f->from_rank(r)) == r);
  CHECK(f->from_rank(0) == 0);
  for (Elem a = 0; a < 9; ++a) CHECK(f->parse(f->format(a)) == a);
  CHECK(f->format(f->from_coeffs(std::vector<std::uint32_t>{1, 2})) == "[1,2]");
  auto f7 = field(7);
  CHECK(f7->format(5) == "5");
  CHECK(f7->parse("-2") == 5);
  CHECK_THROWS(f->parse("[1,2,0]"));
  CHECK_THROWS(f->parse("[1,3]"));
}

TEST_CASE("Fe values") {
  auto f = field(5);
  Fe a(f, 2), b(f, 3);
  CHECK((a * b).value() == 1);
  CHECK((a - b).value() == 4);
  CHECK((a / b).value() == 4);
  CHECK(parse_fe(f, "4") == -Fe(f, 1));
  CHECK_THROWS_AS(a + Fe(field(7), 1), std::invalid_argument);
}

TEST_CASE("embeddings") {
  auto f4 = field(2, 2), f16 = field(2, 4), f2 = field(2);
  const Embedding& e = embedding(f4, f16);
  const Elem t = f4->from_coeffs(std::vector<std::uint32_t>{0, 1});
  const Elem img = e(t);
  // t^2 + t + 1 evaluated by hand in GF(16)
  CHECK(f16->add(f16->add(f16->mul(img, img), img), 1) == 0);
  std::set<Elem> seen;
  for (Elem a = 0; a < 4; ++a) {
    seen.insert(e(a));
    for (Elem b = 0; b < 4; ++b) {
      CHECK(e(f4->mul(a, b)) == f16->mul(e(a), e(b)));
      CHECK(e(f4->add(a, b)) == f16->add(e(a), e(b)));
    }
  }
  CHECK(seen.size() == 4);
  CHECK(embedding(f2, f4)(1) == 1);
  auto f9 = field(3, 2), f81 = field(3, 4), f3 = field(3);
  for (Elem a = 0; a < 3; ++a) CHECK(embed(Fe(f3, a), f81).value() == f81->from_int(a));
  const Embedding& e9 = embedding(f9, f81);
  for (Elem a = 0; a < 9; ++a) {
    for (Elem b = 0; b < 9; ++b) CHECK(e9(f9->mul(a, b)) == f81->mul(e9(a), e9(b)));
  }
  CHECK_THROWS(embedding(f4, field(2, 3)));
  CHECK_THROWS(embedding(f4, f9));
}
