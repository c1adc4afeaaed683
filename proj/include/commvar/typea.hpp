#pragma once

#include <cstdint>
#include <optional>

#include "commvar/census.hpp"
#include "commvar/mat.hpp"

namespace commvar {

/// zeta of exact multiplicative order d in F_q, with d | n.
struct ZetaInstance {
  std::size_t n;
  std::uint64_t d;
  Fe zeta;
};

/// Uses the canonical root of unity of order d. Throws std::invalid_argument
/// when d does not divide n, and std::domain_error when d does not divide q - 1.
ZetaInstance zeta_instance(std::size_t n, std::uint64_t d, const FieldPtr& f);
/// Throws std::invalid_argument unless zeta has order exactly d and d | n.
ZetaInstance zeta_instance(std::size_t n, std::uint64_t d, const Fe& zeta);

/// diag(A, zeta A, ..., zeta^{d-1} A); A is (n/d) x (n/d) and invertible.
Mat build_d(const ZetaInstance& inst, const Mat& a);
/// Identity blocks of size n/d on the block subdiagonal and in the top-right
/// block corner.
Mat build_rho(const FieldPtr& f, std::size_t n, std::uint64_t d);

struct CentralCommutatorRecord {
  Mat d;
  Mat rho;
  Mat commutator;  // D^{-1} rho^{-1} D rho
  bool rho_order_d;
  bool shifted_blocks;  // rho^{-1} D rho = diag(zeta A, ..., zeta^{d-1} A, A)
  bool holds;           // commutator = zeta I
};

CentralCommutatorRecord verify_central_commutator(const ZetaInstance& inst, const Mat& a);

/// x and zeta x have the same invariant factors.
bool is_conjugate_to_zeta_x(const Mat& x, const Fe& zeta);

/// Conjugation of x into diag(A, zeta A, ..., zeta^{d-1} A).
struct DForm {
  Mat a;
  Mat g;  // g^{-1} x g = D
  bool eigenvalue_disjoint;
};

/// Available when every primary part of x lies in a twist orbit of length d,
/// so A can take one part per orbit over the base field; nullopt otherwise.
std::optional<DForm> d_form(const Mat& x, const ZetaInstance& inst);

/// {y in GL_n : x^{-1} y^{-1} x y = zeta I} = C_GL(x) y0.
struct SolutionCoset {
  Mat x;
  Fe zeta;
  Mat witness;
  BigInt centralizer_order;
  bool via_d_form;  // witness g rho g^{-1}; otherwise a direct x -> zeta x transport

  /// y y0^{-1} commutes with x and y is invertible.
  bool contains(const Mat& y) const;
};

/// nullopt when x is not conjugate to zeta x. x must be invertible.
std::optional<SolutionCoset> solution_set_for_x(const Mat& x, const ZetaInstance& inst);

struct GroupDims {
  std::uint64_t dim_v;  // n^2 + n/d
  std::uint64_t dim_w;  // n^2 + n/d - n
};

GroupDims group_dims(std::uint64_t n, std::uint64_t d);

}  // namespace commvar
