#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "commvar/mat.hpp"
#include "commvar/rng.hpp"

namespace commvar {

/// p x p representation of the first Weyl algebra with x^p -> alpha^p,
/// y^p -> beta^p. A carries ones on the subdiagonal and alpha^p in the
/// top-right corner; B = beta I with superdiagonal -1, -2, ..., -(p-1), so
/// that AB - BA = I holds exactly in every characteristic.
struct WeylPair {
  std::uint32_t p;
  Elem alpha;
  Elem beta;
  Mat a;
  Mat b;
};

WeylPair weyl_pair(const FieldPtr& f, Elem alpha, Elem beta);

/// Nilpotent parts A_0, B_0 (alpha = beta = 0).
inline Mat weyl_a0(const FieldPtr& f) { return weyl_pair(f, 0, 0).a; }
inline Mat weyl_b0(const FieldPtr& f) { return weyl_pair(f, 0, 0).b; }

/// Dimension of the span of all words in {A, B} of length <= max_length
/// (the empty word is I).
std::size_t generated_algebra_dimension(const Mat& a, const Mat& b, std::size_t max_length);

/// X(a_1, ..., a_r): diagonal blocks A_0 + a_i I, superdiagonal blocks
/// B_0^{p-1}; Y = diag(B_0, ..., B_0). n = p r.
struct BlockPair {
  std::uint32_t p;
  std::size_t r;
  std::vector<Elem> scalars;
  Mat x;
  Mat y;
};

/// r = scalars.size() >= 1.
BlockPair build_block_pair(const FieldPtr& f, std::span<const Elem> scalars);

struct KernelActionRecord {
  Mat l;             // sum_k A_0^k B_0^{p-1} A_0^{p-1-k}
  Elem coefficient;  // L e_p = coefficient * e_p
  bool l_ep_is_multiple;
  bool x_power_has_expected_shape;  // X^p = [[0, L], [0, 0]]
  bool x_power_nonzero;
};

/// Requires r = 2 and a_1 = a_2 = 0; throws std::invalid_argument otherwise.
KernelActionRecord kernel_action_check(const BlockPair& pair);

/// The affine family {Y + f(X) : deg f <= n - 1} for regular X with [X, Y] = I.
class SolutionFamily {
 public:
  /// Throws std::invalid_argument unless X is regular and [X, Y] = I.
  SolutionFamily(Mat x, Mat y);

  const Mat& x() const { return x_; }
  const Mat& y() const { return y_; }
  std::size_t dimension() const { return powers_.size(); }

  Mat member(const Poly& f) const;
  /// The unique f with Y' = Y + f(X), deg f <= n - 1, if there is one.
  std::optional<Poly> decompose(const Mat& y_prime) const;
  /// Mutual containment with the full solution space of [X, Y'] = I.
  bool matches(const MatAffineSpace& space) const;

 private:
  Mat x_;
  Mat y_;
  std::vector<Mat> powers_;  // I, X, ..., X^{n-1}
  Mat basis_;                // n^2 x n, columns vec(X^i)
};

SolutionFamily solution_family(const Mat& x, const Mat& y);

/// A(a) = diag(A_0 + a_i I), B(b) = diag(B_0 + b_i I).
std::pair<Mat, Mat> generic_split_pair(const FieldPtr& f, std::span<const Elem> a, std::span<const Elem> b);
/// dim {Z : ZA = AZ, ZB = BZ}.
std::size_t joint_centralizer_dimension(const Mat& a, const Mat& b);

/// A random pair with [A, B] = I at n = p r over f: half the draws conjugate
/// (X(a), Y + f(X(a))) by a random g, the other half conjugate
/// (A(a), B(b) + Z) with Z a random element of C(A(a)).
std::pair<Mat, Mat> random_solution_pair(const FieldPtr& f, std::size_t r, Rng& rng);

struct ComponentDimensions {
  std::uint32_t p;
  std::uint64_t n;
  std::uint64_t r;
  std::uint64_t dim_c;          // {[A,B] = I}: n^2 + r
  std::uint64_t dim_u1;         // commuting variety of gl_n: n^2 + n
  std::uint64_t dim_u2_image;   // image of U_2 in pgl_n: n^2 + r - 1
  std::pair<std::uint64_t, std::uint64_t> pgl;           // (n^2 + n - 2, n^2 + r - 1)
  std::uint64_t sl;                                      // n^2 + n - 2
  std::pair<std::uint64_t, std::uint64_t> psl_times_k;   // (n^2 + r - 1, n^2 + n - 4)
  bool psl_times_k_exists;      // p^2 | n
  bool equal_components;        // only at (n, p) = (2, 2)
};

/// Throws std::invalid_argument unless p is prime and divides n.
ComponentDimensions component_dimensions(std::uint32_t p, std::uint64_t n);

}  // namespace commvar
