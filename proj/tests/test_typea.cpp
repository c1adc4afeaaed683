#include "commvar/typea.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace commvar;

TEST_CASE("zeta instances") {
  auto f3 = field(3);
  auto inst = zeta_instance(2, 2, f3);
  CHECK(inst.zeta.value() == 2);
  CHECK_THROWS_AS(zeta_instance(3, 2, f3), std::invalid_argument);
  CHECK_THROWS_AS(zeta_instance(3, 3, f3), std::domain_error);
  CHECK_THROWS_AS(zeta_instance(2, 2, Fe(f3, 1)), std::invalid_argument);
  CHECK(zeta_instance(2, 2, Fe(f3, 2)).d == 2);
}

TEST_CASE("block form and cyclic permutation") {
  auto f3 = field(3);
  auto inst = zeta_instance(2, 2, f3);
  CHECK(build_d(inst, Mat::identity(f3, 1)) == parse_mat(f3, "1,0;0,2"));
  CHECK(build_rho(f3, 2, 2) == parse_mat(f3, "0,1;1,0"));
  CHECK(build_rho(f3, 3, 1) == Mat::identity(f3, 3));
  auto one = zeta_instance(2, 1, f3);
  Mat a = parse_mat(f3, "1,2;0,1");
  CHECK(build_d(one, a) == a);
  CHECK_THROWS(build_d(inst, Mat(f3, 1, 1)));
  CHECK_THROWS(build_rho(f3, 3, 2));

  auto f5 = field(5);
  auto i4 = zeta_instance(4, 2, f5);
  Rng rng(20);
  Mat seed = random_invertible(f5, 2, rng);
  Mat d = build_d(i4, seed);
  CHECK(det(d) == f5->mul(det(seed), det(seed.scaled(4))));
  auto f9 = field(3, 2);
  Mat rho = build_rho(f9, 4, 2);
  CHECK(rho.pow(2) == Mat::identity(f9, 4));
  // a permutation matrix: one 1 per row and column
  for (std::size_t i = 0; i < 4; ++i) {
    int row = 0, col = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      row += rho(i, j) == 1;
      col += rho(j, i) == 1;
    }
    CHECK(row == 1);
    CHECK(col == 1);
  }
}

TEST_CASE("central commutator identity") {
  auto f3 = field(3);
  auto r = verify_central_commutator(zeta_instance(2, 2, f3), Mat::identity(f3, 1));
  CHECK(r.holds);
  CHECK(r.commutator == Mat::scalar(f3, 2, 2));
  auto f4 = field(2, 2);
  auto inst = zeta_instance(3, 3, f4);
  const Elem t = f4->from_coeffs(std::vector<std::uint32_t>{0, 1});
  CHECK(inst.zeta.value() == t);
  auto r3 = verify_central_commutator(inst, Mat::identity(f4, 1));
  // diag(1, t, t^2) conjugated by the 3-cycle: rho^{-1} D rho = diag(t, t^2, 1) = t D
  CHECK(r3.commutator == Mat::scalar(f4, 3, t));
  CHECK(r3.holds);
  Rng rng(21);
  for (auto [q, n, d] : std::vector<std::tuple<unsigned, std::size_t, std::uint64_t>>{{5, 4, 2}, {5, 4, 4}, {7, 6, 3}, {9, 4, 4}, {16, 6, 3}, {13, 6, 6}}) {
    auto f = field_of_order(q);
    auto zi = zeta_instance(n, d, f);
    for (int i = 0; i < 5; ++i) {
      auto rec = verify_central_commutator(zi, random_invertible(f, n / d, rng));
      CHECK(rec.holds);
      CHECK(rec.rho_order_d);
      CHECK(rec.shifted_blocks);
    }
  }
}

TEST_CASE("conjugacy to zeta x") {
  auto f3 = field(3);
  Fe minus(f3, 2);
  CHECK(is_conjugate_to_zeta_x(parse_mat(f3, "1,0;0,2"), minus));
  CHECK_FALSE(is_conjugate_to_zeta_x(Mat::identity(f3, 2), minus));
  Rng rng(22);
  for (int i = 0; i < 20; ++i) CHECK(is_conjugate_to_zeta_x(random_invertible(f3, 3, rng), Fe(f3, 1)));
  for (auto q : {3u, 5u}) {
    auto f = field_of_order(q);
    const Elem z = f->neg(1);
    for (const auto& x : oracle::all_invertible(f, 2)) {
      REQUIRE(is_conjugate_to_zeta_x(x, Fe(f, z)) == twist_fixed(class_of(x), z));
    }
  }
}

TEST_CASE("solution sets are centralizer cosets") {
  auto f3 = field(3);
  auto inst = zeta_instance(2, 2, f3);
  auto gl = oracle::all_invertible(f3, 2);
  std::uint64_t total = 0;
  for (const auto& x : gl) {
    std::vector<Mat> solutions;
    for (const auto& y : gl) {
      if (group_commutator(x, y) == Mat::scalar(f3, 2, 2)) solutions.push_back(y);
    }
    total += solutions.size();
    auto coset = solution_set_for_x(x, inst);
    if (!is_conjugate_to_zeta_x(x, inst.zeta)) {
      CHECK_FALSE(coset);
      CHECK(solutions.empty());
      continue;
    }
    REQUIRE(coset);
    CHECK(coset->centralizer_order == oracle::brute_centralizer_order(x));
    CHECK(coset->centralizer_order == solutions.size());
    CHECK(group_commutator(x, coset->witness) == Mat::scalar(f3, 2, 2));
    for (const auto& y : gl) CHECK(coset->contains(y) == (std::find(solutions.begin(), solutions.end(), y) != solutions.end()));
  }
  CHECK(total == count_group_pairs(2, f3, 2, Strategy::classes));
  CHECK_FALSE(solution_set_for_x(Mat::identity(f3, 2), inst));
}

TEST_CASE("block-form witnesses") {
  auto f3 = field(3);
  auto inst = zeta_instance(2, 2, f3);
  Mat d = build_d(inst, Mat::identity(f3, 1));
  auto coset = solution_set_for_x(d, inst);
  REQUIRE(coset);
  CHECK(coset->via_d_form);
  Rng rng(23);
  for (auto [q, n, dd] : std::vector<std::tuple<unsigned, std::size_t, std::uint64_t>>{{5, 4, 2}, {7, 6, 3}, {4, 3, 3}, {9, 4, 2}}) {
    auto f = field_of_order(q);
    auto zi = zeta_instance(n, dd, f);
    for (int i = 0; i < 10; ++i) {
      Mat a = random_invertible(f, n / dd, rng);
      Mat g = random_invertible(f, n, rng);
      Mat x = g * build_d(zi, a) * inverse(g);
      auto s = solution_set_for_x(x, zi);
      REQUIRE(s);
      CHECK(group_commutator(x, s->witness) == Mat::scalar(f, n, zi.zeta.value()));
      CHECK(s->contains(s->witness));
      auto df = d_form(x, zi);
      if (df) {
        CHECK(inverse(df->g) * x * df->g == build_d(zi, df->a));
        CHECK(df->eigenvalue_disjoint);
      }
    }
  }
  // t^2 - 2 is irreducible over F_5 and its own twist under -1, so there is
  // no block form over F_5, yet x is conjugate to -x
  auto f5 = field(5);
  auto z2 = zeta_instance(2, 2, f5);
  Mat fixed = Mat::companion(parse_poly(f5, "3,0,1"));
  auto s = solution_set_for_x(fixed, z2);
  REQUIRE(s);
  CHECK_FALSE(s->via_d_form);
  CHECK(group_commutator(fixed, s->witness) == Mat::scalar(f5, 2, 4));
}

TEST_CASE("group dimensions") {
  CHECK(group_dims(2, 2).dim_v == 5);
  CHECK(group_dims(2, 2).dim_w == 3);
  CHECK(group_dims(3, 3).dim_v == 10);
  CHECK(group_dims(3, 3).dim_w == 7);
  CHECK(group_dims(4, 2).dim_v == 18);
  CHECK(group_dims(4, 2).dim_w == 14);
  CHECK_THROWS(group_dims(3, 2));
}
