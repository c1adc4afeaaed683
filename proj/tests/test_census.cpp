#include <map>
#include <set>

#include "commvar/census.hpp"
#include "commvar/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace commvar;

namespace {

std::uint64_t pair_scan_lie(const FieldPtr& f, std::size_t n, Elem c) {
  auto all = oracle::all_matrices(f, n);
  const Mat target = Mat::scalar(f, n, c);
  std::uint64_t count = 0;
  for (const auto& a : all) {
    for (const auto& b : all) {
      if (a * b - b * a == target) ++count;
    }
  }
  return count;
}

std::uint64_t pair_scan_group(const FieldPtr& f, std::size_t n, Elem zeta) {
  auto gl = oracle::all_invertible(f, n);
  std::uint64_t count = 0;
  for (const auto& x : gl) {
    // x^{-1} y^{-1} x y = zeta I  <=>  x y = zeta y x
    const Mat zx = x.scaled(zeta);
    for (const auto& y : gl) {
      if (x * y == y * zx) ++count;
    }
  }
  return count;
}

// Class id of every matrix via the orbit oracle, with orbit sizes.
std::map<int, std::uint64_t> orbit_sizes(const std::vector<int>& labels) {
  std::map<int, std::uint64_t> s;
  for (int l : labels) ++s[l];
  return s;
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(gl_order(2, 2) == 6);
  CHECK(gl_order(2, 3) == 48);
  CHECK(gl_order(3, 2) == 168);
  std::uint64_t prod = 1;
  for (std::uint64_t i = 0; i < 4; ++i) prod *= oracle::ipow(9, 4) - oracle::ipow(9, static_cast<unsigned>(i));
  CHECK(gl_order(4, 9) == prod);
}

TEST_CASE("class enumeration matches conjugation orbits") {
  for (auto [q, n] : std::vector<std::pair<unsigned, std::size_t>>{{2, 2}, {3, 2}, {2, 3}, {4, 2}}) {
    auto f = field_of_order(q);
    CAPTURE(q);
    CAPTURE(n);
    auto all = oracle::all_matrices(f, n);
    auto labels = oracle::orbit_labels(f, n);
    auto sizes = orbit_sizes(labels);
    auto classes = enumerate_classes(n, f, false);
    CHECK(classes.size() == sizes.size());
    std::set<std::string> seen;
    for (const auto& c : classes) seen.insert(c.str());
    CHECK(seen.size() == classes.size());
    // every matrix's class is listed, and its size matches its orbit
    std::map<int, bool> checked;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (checked[labels[i]]) continue;
      checked[labels[i]] = true;
      ClassRep c = class_of(all[i]);
      CHECK(std::find(classes.begin(), classes.end(), c) != classes.end());
      CHECK(class_size(c) == sizes[labels[i]]);
      CHECK(similar(c.representative(), all[i]));
    }
    auto inv = enumerate_classes(n, f, true);
    std::set<int> inv_orbits;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (det(all[i]) != 0) inv_orbits.insert(labels[i]);
    }
    CHECK(inv.size() == inv_orbits.size());
  }
  CHECK(enumerate_classes(2, field(2), false).size() == 6);
  CHECK_THROWS_AS(enumerate_classes(3, field(3), false, 10), LimitExceeded);
}

TEST_CASE("class sizes partition the matrix algebra and the group") {
  for (auto [q, n] : std::vector<std::pair<unsigned, std::size_t>>{{2, 2}, {3, 3}, {4, 3}, {2, 4}, {9, 2}, {5, 4}, {16, 3}}) {
    auto f = field_of_order(q);
    BigInt total = 0;
    for (const auto& c : enumerate_classes(n, f, false)) {
      total += class_size(c);
      CHECK(c.dimension() == n);
    }
    CHECK(total == boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n * n)));
    BigInt units = 0;
    for (const auto& c : enumerate_classes(n, f, true)) units += class_size(c);
    CHECK(units == gl_order(n, q));
  }
}

TEST_CASE("centralizer orders match enumeration") {
  auto f2 = field(2);
  ClassRep zero{f2, {{Poly::t(f2), {1, 1}}}};
  CHECK(centralizer_group_order(zero) == 6);
  ClassRep jordan{f2, {{Poly::t(f2), {2}}}};
  CHECK(centralizer_group_order(jordan) == 2);
  CHECK(jordan.representative() == parse_mat(f2, "0,0;1,0"));
  for (auto [q, n] : std::vector<std::pair<unsigned, std::size_t>>{{2, 2}, {3, 2}, {2, 3}}) {
    auto f = field_of_order(q);
    for (const auto& c : enumerate_classes(n, f, false)) {
      CAPTURE(c.str());
      CHECK(centralizer_group_order(c) == oracle::brute_centralizer_order(c.representative()));
    }
  }
}

TEST_CASE("twist") {
  auto f3 = field(3);
  // x = diag(1, -1): minimal polynomial t^2 - 1 is its own twist
  ClassRep c = class_of(parse_mat(f3, "1,0;0,2"));
  CHECK(twist_fixed(c, 2));
  CHECK_FALSE(twist_fixed(class_of(Mat::identity(f3, 2)), 2));
  for (auto q : {4u, 5u, 7u, 9u}) {
    auto f = field_of_order(q);
    for (std::uint64_t d = 2; d < q; ++d) {
      if ((q - 1) % d) continue;
      const Elem z = f->root_of_unity(d);
      for (const auto& cls : enumerate_classes(2, f, true)) {
        ClassRep t = cls;
        for (std::uint64_t i = 0; i < d; ++i) t = twist(t, z);
        CHECK(t == cls);
        // the twisted class is the class of zeta x
        CHECK(twist(cls, z) == class_of(cls.representative().scaled(z)));
      }
    }
  }
}

TEST_CASE("lie pair counts") {
  for (auto q : {2u, 3u, 5u}) CHECK(count_lie_pairs(1, field_of_order(q), 0, Strategy::classes) == q * q);
  auto f2 = field(2);
  const std::uint64_t scan = pair_scan_lie(f2, 2, 1);
  CHECK(count_lie_pairs(2, f2, 1, Strategy::brute) == scan);
  CHECK(count_lie_pairs(2, f2, 1, Strategy::classes) == scan);
  CHECK(count_commuting_pairs(2, f2, Strategy::brute) == pair_scan_lie(f2, 2, 0));
  CHECK(count_commuting_pairs(2, f2, Strategy::classes) == pair_scan_lie(f2, 2, 0));
  auto f3 = field(3);
  CHECK(count_lie_pairs(2, f3, 1, Strategy::classes) == 0);
  CHECK(count_lie_pairs(2, f3, 1, Strategy::brute) == 0);
  CHECK(count_lie_pairs(3, f2, 1, Strategy::classes) == 0);
  CHECK(count_lie_pairs(2, field(5), 1, Strategy::classes) == 0);
  CHECK(count_lie_pairs(3, f3, 1, Strategy::classes) == count_lie_pairs(3, f3, 1, Strategy::brute));
  CHECK(count_commuting_pairs(2, f3, Strategy::classes) == pair_scan_lie(f3, 2, 0));
  auto f4 = field(2, 2);
  CHECK(count_lie_pairs(2, f4, 1, Strategy::classes) == count_lie_pairs(2, f4, 1, Strategy::brute));
  // any nonzero c gives the same count, since (A, B) -> (A, cB) is a bijection
  const Elem t = f4->from_coeffs(std::vector<std::uint32_t>{0, 1});
  CHECK(count_lie_pairs(2, f4, t, Strategy::classes) == count_lie_pairs(2, f4, 1, Strategy::classes));
  CensusLimits small;
  small.max_brute = 50;
  CHECK_THROWS_AS(count_lie_pairs(2, f3, 1, Strategy::brute, small), LimitExceeded);
}

TEST_CASE("consistent classes have block sizes divisible by p") {
  for (auto [q, n] : std::vector<std::pair<unsigned, std::size_t>>{{2, 2}, {2, 4}, {4, 4}, {3, 3}, {9, 3}}) {
    auto f = field_of_order(q);
    const std::uint32_t p = f->characteristic();
    std::size_t consistent = 0;
    for (const auto& c : enumerate_classes(n, f, false)) {
      if (!commutator_solutions(c.representative(), Mat::identity(f, n))) continue;
      ++consistent;
      for (const auto& part : c.parts) {
        for (auto l : part.partition) CHECK(l % p == 0);
      }
    }
    CHECK(consistent > 0);
  }
}

TEST_CASE("group pair counts") {
  auto f3 = field(3);
  const std::uint64_t scan = pair_scan_group(f3, 2, 2);
  CHECK(count_group_pairs(2, f3, 2, Strategy::classes) == scan);
  CHECK(count_group_pairs(2, f3, 2, Strategy::brute) == scan);
  CHECK(count_group_pairs(2, f3, 1, Strategy::classes) == pair_scan_group(f3, 2, 1));
  for (auto q : {2u, 3u, 4u, 5u}) {
    auto f = field_of_order(q);
    const auto classes = enumerate_classes(2, f, true).size();
    CHECK(count_group_pairs(2, f, 1, Strategy::classes) == gl_order(2, q) * classes);
    CHECK(count_w(2, f, 1, Strategy::classes) == gl_order(2, q));
  }
  auto f5 = field(5);
  CHECK(count_group_pairs(2, f5, 4, Strategy::classes) == count_group_pairs(2, f5, 4, Strategy::brute));
  CHECK(count_w(2, f3, 2, Strategy::classes) == count_w(2, f3, 2, Strategy::brute));
  CHECK(count_w(2, f5, 4, Strategy::classes) == count_w(2, f5, 4, Strategy::brute));
  auto f4 = field(2, 2);
  const Elem z3 = f4->root_of_unity(3);
  CHECK(count_group_pairs(3, f4, z3, Strategy::classes) == count_group_pairs(3, f4, z3, Strategy::brute));
  // det [x, y] = 1 forces zeta^n = 1
  CHECK(count_group_pairs(3, f3, 2, Strategy::classes) == 0);
  CHECK(count_group_pairs(3, f3, 2, Strategy::brute) == 0);
  CHECK_THROWS(count_group_pairs(2, f3, 0, Strategy::classes));
}

TEST_CASE("thread count does not change results") {
  auto f9 = field(3, 2);
  CensusLimits one, four;
  four.threads = 4;
  CHECK(count_lie_pairs(3, f9, 1, Strategy::classes, one) == count_lie_pairs(3, f9, 1, Strategy::classes, four));
  CHECK(count_group_pairs(2, f9, f9->neg(1), Strategy::classes, one) == count_group_pairs(2, f9, f9->neg(1), Strategy::classes, four));
  auto f2 = field(2);
  CHECK(count_lie_pairs(3, f2, 0, Strategy::brute, one) == count_lie_pairs(3, f2, 0, Strategy::brute, four));
}

TEST_CASE("dimension estimate") {
  using Pt = std::pair<std::uint64_t, BigInt>;
  for (std::uint64_t q : {2u, 3u, 5u}) {
    std::vector<Pt> pts{{q, boost::multiprecision::pow(BigInt(q), 5)}, {q * q, boost::multiprecision::pow(BigInt(q), 10)}};
    auto fit = estimate_dimension(pts);
    CHECK(fit.fitted == 5);
    CHECK(fit.residual < Decimal("1e-40"));
  }
  std::vector<Pt> noisy{{2, 100}, {4, 1700}, {8, 30000}};
  auto fit = estimate_dimension(noisy);
  // log(30000/1700)/log(2) = 4.1412...
  CHECK(fit.fitted == 4);
  CHECK(decimal_string(fit.raw).substr(0, 6) == "4.1413");
  CHECK(decimal_string(fit.residual).substr(0, 6) == "0.1413");
  CHECK_THROWS_AS(estimate_dimension(std::vector<Pt>{{2, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_dimension(std::vector<Pt>{{2, 4}, {4, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_dimension(std::vector<Pt>{{2, 4}, {3, 9}}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_dimension(std::vector<Pt>{{2, 4}, {2, 9}}), std::invalid_argument);
  CHECK(decimal_string(Decimal(0)) == "0.000000000000000000000000");
}
