#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commvar/gf.hpp"
#include "commvar/poly.hpp"
#include "commvar/rng.hpp"

namespace commvar {

using Vec = std::vector<Elem>;

/// Dense row-major matrix over a finite field.
class Mat {
 public:
  Mat(FieldPtr f, std::size_t rows, std::size_t cols);

  static Mat identity(const FieldPtr& f, std::size_t n) { return scalar(f, n, 1); }
  static Mat scalar(const FieldPtr& f, std::size_t n, Elem c);
  /// Companion matrix of a monic f: ones on the subdiagonal, last column
  /// -c_0, ..., -c_{d-1}.
  static Mat companion(const Poly& f);
  /// Column vector as an n x 1 matrix.
  static Mat column(const FieldPtr& f, const Vec& v);

  const FieldPtr& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Vec& data() const { return a_; }
  Vec column_vec(std::size_t j) const;

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Vec operator*(std::span<const Elem> v) const;
  Mat scaled(Elem s) const;
  Mat transpose() const;
  Mat pow(std::uint64_t e) const;
  Elem trace() const;
  bool is_zero() const;
  bool is_scalar(Elem c) const;

  /// Copies of sub-blocks and block placement.
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);

  bool operator==(const Mat& o) const { return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  /// Rows separated by ';', entries by ','; entries in element text form.
  std::string str() const;

 private:
  const Mat& check_shape(const Mat& o) const;

  FieldPtr f_;
  std::size_t rows_;
  std::size_t cols_;
  Vec a_;
};

Mat parse_mat(const FieldPtr& f, std::string_view text);
Mat block_diag(const std::vector<Mat>& blocks);
/// Entrywise image under a field embedding.
Mat lift(const Mat& m, const Embedding& emb);

/// f(A) by Horner's rule.
Mat evaluate(const Poly& f, const Mat& a);

Mat random_matrix(const FieldPtr& f, std::size_t rows, std::size_t cols, Rng& rng);
/// Rejection-samples until the determinant is nonzero.
Mat random_invertible(const FieldPtr& f, std::size_t n, Rng& rng);

/// Throws std::domain_error if singular.
Mat inverse(const Mat& m);
Elem det(const Mat& m);

/// AB - BA.
Mat lie_commutator(const Mat& a, const Mat& b);
/// x^{-1} y^{-1} x y; throws std::domain_error on singular input.
Mat group_commutator(const Mat& x, const Mat& y);

struct Rref {
  Mat reduced;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Columns are scanned left to right; the pivot of
/// each column is the first nonzero entry at or below the current row.
Rref rref(Mat m);
std::size_t rank(const Mat& m);
/// Basis of {x : m x = 0}, one vector per free column.
std::vector<Vec> kernel(const Mat& m);

struct AffineSolution {
  Vec particular;
  std::vector<Vec> kernel;
};

/// All solutions of a x = b, or nullopt when inconsistent.
std::optional<AffineSolution> solve_affine(const Mat& a, std::span<const Elem> b);

/// Incrementally built row space, for independence tests.
class EchelonBasis {
 public:
  explicit EchelonBasis(FieldPtr f, std::size_t width) : f_(std::move(f)), width_(width) {}
  /// Adds v if it is independent of the current span; returns whether it was.
  bool add(Vec v);
  bool contains(Vec v) const;
  std::size_t dimension() const { return rows_.size(); }

 private:
  void reduce(Vec& v) const;

  FieldPtr f_;
  std::size_t width_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Matrix of B -> AB - BA acting on row-major vec(B).
Mat ad_matrix(const Mat& a);
std::size_t centralizer_dimension(const Mat& a);

struct MatAffineSpace {
  Mat particular;
  std::vector<Mat> kernel;
  std::size_t dimension() const { return kernel.size(); }
  bool contains(const Mat& b) const;
};

/// All B with AB - BA = C, or nullopt when inconsistent.
std::optional<MatAffineSpace> commutator_solutions(const Mat& a, const Mat& c);

/// Monic minimal polynomial: lcm of the Krylov annihilators of the unit
/// vectors.
Poly min_poly(const Mat& a);

struct InvariantFactors {
  std::vector<Poly> factors;  // monic, nonconstant, d_1 | d_2 | ... | d_s

  Poly char_poly() const;
  bool regular() const { return factors.size() == 1; }
  bool operator==(const InvariantFactors& o) const { return factors == o.factors; }
};

/// Nontrivial diagonal of the Smith normal form of tI - A over F_q[t].
InvariantFactors invariant_factors(const Mat& a);
Poly char_poly(const Mat& a);

struct RationalForm {
  InvariantFactors invariants;
  Mat basis;  // columns: Krylov chains of the cyclic generators
  Mat form;   // basis^{-1} A basis = diag(companion(d_1), ..., companion(d_s))
};

/// Rational canonical form with its transforming basis, derived from the
/// unimodular row transform of the Smith reduction of tI - A.
RationalForm rational_canonical_form(const Mat& a);

bool similar(const Mat& a, const Mat& b);
/// Some g with g^{-1} A g = B, or nullopt when not similar.
std::optional<Mat> similarity_transform(const Mat& a, const Mat& b);

struct EigenBlocks {
  Elem eigenvalue;                  // in JordanType::field
  std::vector<std::size_t> blocks;  // descending
};

struct JordanType {
  FieldPtr field;  // splitting field of the characteristic polynomial
  std::vector<EigenBlocks> parts;

  std::string str() const;
};

/// Per-eigenvalue Jordan block sizes over the splitting field, from ranks of
/// powers of A - lambda I. Throws LimitExceeded when the splitting field has
/// more than field_limit elements.
JordanType jordan_type(const Mat& a, std::uint64_t field_limit = std::uint64_t{1} << 20);

struct JordanDecomposition {
  FieldPtr field;
  Mat lifted;  // A over `field`
  Mat basis;   // basis^{-1} lifted basis = jordan
  Mat jordan;  // upper Jordan blocks, ordered by eigenvalue then size
  std::vector<std::pair<Elem, std::size_t>> blocks;
};

JordanDecomposition jordan_decomposition(const Mat& a, std::uint64_t field_limit = std::uint64_t{1} << 20);

/// deg min_poly = n, cross-checked against dim C(A) = n for n <= 16.
bool is_regular(const Mat& a);

struct RegularCommuting {
  Mat r;          // over `r.field()`, which may extend the field of A
  bool extended;  // true when the field had to be extended
};

/// A regular matrix commuting with A: per Jordan block J_i with eigenvalue
/// lambda_i, (mu_i - lambda_i) I + J_i with pairwise-distinct mu_i, conjugated
/// back to the original basis.
RegularCommuting regular_commuting(const Mat& a);

}  // namespace commvar
