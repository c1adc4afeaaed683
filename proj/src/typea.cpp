#include "commvar/typea.hpp"

#include <algorithm>
#include <stdexcept>

namespace commvar {

ZetaInstance zeta_instance(std::size_t n, std::uint64_t d, const FieldPtr& f) {
  if (d == 0 || n % d != 0) throw std::invalid_argument("d must divide n");
  return {n, d, root_of_unity(f, d)};
}

ZetaInstance zeta_instance(std::size_t n, std::uint64_t d, const Fe& zeta) {
  if (d == 0 || n % d != 0) throw std::invalid_argument("d must divide n");
  if (zeta.is_zero() || zeta.field()->multiplicative_order(zeta.value()) != d) {
    throw std::invalid_argument("zeta does not have order " + std::to_string(d));
  }
  return {n, d, zeta};
}

Mat build_d(const ZetaInstance& inst, const Mat& a) {
  const std::size_t m = inst.n / inst.d;
  if (a.rows() != m || a.cols() != m) throw std::invalid_argument("block seed must be (n/d) x (n/d)");
  if (det(a) == 0) throw std::invalid_argument("block seed must be invertible");
  std::vector<Mat> blocks;
  Elem z = 1;
  for (std::uint64_t i = 0; i < inst.d; ++i) {
    blocks.push_back(a.scaled(z));
    z = a.field()->mul(z, inst.zeta.value());
  }
  return block_diag(blocks);
}

Mat build_rho(const FieldPtr& f, std::size_t n, std::uint64_t d) {
  if (d == 0 || n % d != 0) throw std::invalid_argument("d must divide n");
  const std::size_t m = n / d;
  Mat rho(f, n, n);
  const Mat id = Mat::identity(f, m);
  for (std::size_t i = 1; i < d; ++i) rho.set_block(i * m, (i - 1) * m, id);
  rho.set_block(0, (d - 1) * m, id);
  return rho;
}

CentralCommutatorRecord verify_central_commutator(const ZetaInstance& inst, const Mat& a) {
  const auto& f = a.field();
  Mat d = build_d(inst, a);
  Mat rho = build_rho(f, inst.n, inst.d);
  Mat comm = group_commutator(d, rho);
  std::vector<Mat> shifted;
  Elem z = inst.zeta.value();
  for (std::uint64_t i = 0; i < inst.d; ++i) {
    shifted.push_back(a.scaled(z));
    z = f->mul(z, inst.zeta.value());
  }
  CentralCommutatorRecord rec{d, rho, comm, rho.pow(inst.d) == Mat::identity(f, inst.n),
                              inverse(rho) * d * rho == block_diag(shifted), comm.is_scalar(inst.zeta.value())};
  return rec;
}

bool is_conjugate_to_zeta_x(const Mat& x, const Fe& zeta) {
  return invariant_factors(x) == invariant_factors(x.scaled(zeta.value()));
}

std::optional<DForm> d_form(const Mat& x, const ZetaInstance& inst) {
  const Elem z = inst.zeta.value();
  ClassRep c = class_of(x);
  if (!twist_fixed(c, z)) return std::nullopt;
  ClassRep seed{c.field, {}};
  std::vector<bool> used(c.parts.size(), false);
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    if (used[i]) continue;
    Poly g = c.parts[i].f;
    for (std::uint64_t e = 0; e < inst.d; ++e) {
      if (e > 0 && g == c.parts[i].f) return std::nullopt;
      auto it = std::find_if(c.parts.begin(), c.parts.end(), [&](const PrimaryPart& p) { return p.f == g; });
      used[static_cast<std::size_t>(it - c.parts.begin())] = true;
      g = twist_poly(g, z);
    }
    seed.parts.push_back(c.parts[i]);
  }
  Mat a = seed.representative();
  Mat d = build_d(inst, a);
  auto g = similarity_transform(x, d);
  if (!g) throw std::logic_error("twist-fixed class failed to transport to block form");
  bool disjoint = true;
  std::vector<Poly> chars;
  Elem s = 1;
  for (std::uint64_t i = 0; i < inst.d; ++i) {
    chars.push_back(char_poly(a.scaled(s)));
    s = x.field()->mul(s, z);
  }
  for (std::size_t i = 0; i < chars.size(); ++i) {
    for (std::size_t j = i + 1; j < chars.size(); ++j) {
      if (gcd(chars[i], chars[j]).degree() > 0) disjoint = false;
    }
  }
  return DForm{std::move(a), std::move(*g), disjoint};
}

bool SolutionCoset::contains(const Mat& y) const {
  if (det(y) == 0) return false;
  Mat c = y * inverse(witness);
  return c * x == x * c;
}

std::optional<SolutionCoset> solution_set_for_x(const Mat& x, const ZetaInstance& inst) {
  if (det(x) == 0) throw std::invalid_argument("x must be invertible");
  if (!is_conjugate_to_zeta_x(x, inst.zeta)) return std::nullopt;
  BigInt order = centralizer_group_order(class_of(x));
  if (auto df = d_form(x, inst)) {
    Mat rho = build_rho(x.field(), inst.n, inst.d);
    return SolutionCoset{x, inst.zeta, df->g * rho * inverse(df->g), std::move(order), true};
  }
  auto y0 = similarity_transform(x, x.scaled(inst.zeta.value()));
  return SolutionCoset{x, inst.zeta, std::move(*y0), std::move(order), false};
}

GroupDims group_dims(std::uint64_t n, std::uint64_t d) {
  if (d == 0 || n % d != 0) throw std::invalid_argument("d must divide n");
  return {n * n + n / d, n * n + n / d - n};
}

}  // namespace commvar
