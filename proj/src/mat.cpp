#include "commvar/mat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "commvar/errors.hpp"

namespace commvar {

Mat::Mat(FieldPtr f, std::size_t rows, std::size_t cols) : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Mat Mat::scalar(const FieldPtr& f, std::size_t n, Elem c) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Mat Mat::companion(const Poly& f) {
  if (f.degree() < 1 || f.lead() != 1) throw std::invalid_argument("companion matrix needs a monic nonconstant polynomial");
  const auto n = static_cast<std::size_t>(f.degree());
  const auto& F = *f.field();
  Mat m(f.field(), n, n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = F.neg(f[i]);
  return m;
}

Mat Mat::column(const FieldPtr& f, const Vec& v) {
  Mat m(f, v.size(), 1);
  m.a_ = v;
  return m;
}

Vec Mat::column_vec(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

const Mat& Mat::check_shape(const Mat& o) const {
  if (f_ != o.f_) throw std::invalid_argument("matrices over different fields");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
  return o;
}

Mat Mat::operator+(const Mat& o) const {
  check_shape(o);
  Mat r(f_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  check_shape(o);
  Mat r(f_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->sub(a_[i], o.a_[i]);
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  if (f_ != o.f_) throw std::invalid_argument("matrices over different fields");
  if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch");
  const auto& F = *f_;
  Mat r(f_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      Elem x = a_[i * cols_ + k];
      if (x == 0) continue;
      const Elem* orow = &o.a_[k * o.cols_];
      Elem* rrow = &r.a_[i * o.cols_];
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (orow[j]) rrow[j] = F.add(rrow[j], F.mul(x, orow[j]));
      }
    }
  }
  return r;
}

Vec Mat::operator*(std::span<const Elem> v) const {
  if (v.size() != cols_) throw std::invalid_argument("shape mismatch");
  const auto& F = *f_;
  Vec r(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (a_[i * cols_ + j] && v[j]) acc = F.add(acc, F.mul(a_[i * cols_ + j], v[j]));
    }
    r[i] = acc;
  }
  return r;
}

Mat Mat::scaled(Elem s) const {
  Mat r(f_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->mul(a_[i], s);
  return r;
}

Mat Mat::transpose() const {
  Mat r(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Mat Mat::pow(std::uint64_t e) const {
  if (!is_square()) throw std::invalid_argument("power of a non-square matrix");
  Mat result = identity(f_, rows_);
  Mat base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Elem Mat::trace() const {
  if (!is_square()) throw std::invalid_argument("trace of a non-square matrix");
  Elem t = 0;
  for (std::size_t i = 0; i < rows_; ++i) t = f_->add(t, (*this)(i, i));
  return t;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Elem x) { return x == 0; });
}

bool Mat::is_scalar(Elem c) const { return is_square() && *this == scalar(f_, rows_, c); }

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Mat b(f_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

std::string Mat::str() const {
  std::string s;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ',';
      s += f_->format((*this)(i, j));
    }
  }
  return s;
}

Mat parse_mat(const FieldPtr& f, std::string_view text) {
  std::vector<Vec> rows;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != ';') continue;
    Vec entries;
    int depth = 0;
    std::size_t s0 = start;
    for (std::size_t j = start; j <= i; ++j) {
      if (j < i) {
        if (text[j] == '[') ++depth;
        if (text[j] == ']') --depth;
        if (text[j] != ',' || depth > 0) continue;
      }
      entries.push_back(f->parse(text.substr(s0, j - s0)));
      s0 = j + 1;
    }
    rows.push_back(std::move(entries));
    start = i + 1;
  }
  const std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Mat m(f, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw std::invalid_argument("ragged matrix text");
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat block_diag(const std::vector<Mat>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("block_diag of no blocks");
  std::size_t nr = 0, nc = 0;
  for (const auto& b : blocks) {
    nr += b.rows();
    nc += b.cols();
  }
  Mat m(blocks[0].field(), nr, nc);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Mat lift(const Mat& m, const Embedding& emb) {
  Mat r(emb.target(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = emb(m(i, j));
  return r;
}

Mat evaluate(const Poly& f, const Mat& a) {
  if (!a.is_square()) throw std::invalid_argument("polynomial of a non-square matrix");
  if (f.field() != a.field()) throw std::invalid_argument("polynomial and matrix over different fields");
  const std::size_t n = a.rows();
  Mat acc(a.field(), n, n);
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * a + Mat::scalar(a.field(), n, f[i]);
  return acc;
}

Mat random_matrix(const FieldPtr& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Mat m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = f->from_rank(rng.below(f->order()));
  return m;
}

Mat random_invertible(const FieldPtr& f, std::size_t n, Rng& rng) {
  while (true) {
    Mat m = random_matrix(f, n, n, rng);
    if (det(m) != 0) return m;
  }
}

Rref rref(Mat m) {
  const auto& F = *m.field();
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < nc && row < nr; ++col) {
    std::size_t piv = row;
    while (piv < nr && m(piv, col) == 0) ++piv;
    if (piv == nr) continue;
    if (piv != row) {
      for (std::size_t j = col; j < nc; ++j) std::swap(m(piv, j), m(row, j));
    }
    const Elem inv = F.inv(m(row, col));
    for (std::size_t j = col; j < nc; ++j) m(row, j) = F.mul(m(row, j), inv);
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == row) continue;
      const Elem c = m(i, col);
      if (c == 0) continue;
      for (std::size_t j = col; j < nc; ++j) {
        if (m(row, j)) m(i, j) = F.sub(m(i, j), F.mul(c, m(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), pivots.size(), std::move(pivots)};
}

std::size_t rank(const Mat& m) { return rref(m).rank; }

namespace {

std::vector<Vec> kernel_from_rref(const Rref& r, std::size_t ncols) {
  const auto& F = *r.reduced.field();
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(ncols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = F.neg(r.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<Vec> kernel(const Mat& m) { return kernel_from_rref(rref(m), m.cols()); }

std::optional<AffineSolution> solve_affine(const Mat& a, std::span<const Elem> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  const std::size_t n = a.cols();
  Mat aug(a.field(), a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  Rref r = rref(std::move(aug));
  if (!r.pivots.empty() && r.pivots.back() == n) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(n, 0);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) sol.particular[r.pivots[i]] = r.reduced(i, n);
  // Kernel of the coefficient part: same reduced rows without the last column.
  sol.kernel = kernel_from_rref(r, n);
  return sol;
}

Mat inverse(const Mat& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(m.field(), n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Mat::identity(m.field(), n));
  Rref r = rref(std::move(aug));
  if (r.rank < n || r.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  return r.reduced.block(0, n, n, n);
}

Elem det(const Mat& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const auto& F = *m.field();
  const std::size_t n = m.rows();
  Mat a = m;
  Elem d = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      d = F.neg(d);
    }
    d = F.mul(d, a(col, col));
    const Elem inv = F.inv(a(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const Elem c = F.mul(a(i, col), inv);
      if (c == 0) continue;
      for (std::size_t j = col; j < n; ++j) a(i, j) = F.sub(a(i, j), F.mul(c, a(col, j)));
    }
  }
  return d;
}

Mat lie_commutator(const Mat& a, const Mat& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) throw std::invalid_argument("shape mismatch");
  return a * b - b * a;
}

Mat group_commutator(const Mat& x, const Mat& y) {
  if (!x.is_square() || !y.is_square() || x.rows() != y.rows()) throw std::invalid_argument("shape mismatch");
  return inverse(x) * inverse(y) * x * y;
}

void EchelonBasis::reduce(Vec& v) const {
  const auto& F = *f_;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Elem c = v[pivots_[r]];
    if (c == 0) continue;
    const Vec& row = rows_[r];
    for (std::size_t j = 0; j < width_; ++j) {
      if (row[j]) v[j] = F.sub(v[j], F.mul(c, row[j]));
    }
  }
}

bool EchelonBasis::add(Vec v) {
  if (v.size() != width_) throw std::invalid_argument("vector width mismatch");
  reduce(v);
  auto it = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
  if (it == v.end()) return false;
  const auto piv = static_cast<std::size_t>(it - v.begin());
  const Elem inv = f_->inv(v[piv]);
  for (auto& x : v) x = f_->mul(x, inv);
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

bool EchelonBasis::contains(Vec v) const {
  if (v.size() != width_) throw std::invalid_argument("vector width mismatch");
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

Mat ad_matrix(const Mat& a) {
  if (!a.is_square()) throw std::invalid_argument("ad of a non-square matrix");
  const auto& F = *a.field();
  const std::size_t n = a.rows();
  Mat m(a.field(), n * n, n * n);
  // (AB - BA)_{ij} = sum_k A_ik B_kj - sum_l B_il A_lj
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        m(row, k * n + j) = F.add(m(row, k * n + j), a(i, k));
        m(row, i * n + k) = F.sub(m(row, i * n + k), a(k, j));
      }
    }
  }
  return m;
}

std::size_t centralizer_dimension(const Mat& a) {
  const std::size_t n = a.rows();
  return n * n - rank(ad_matrix(a));
}

bool MatAffineSpace::contains(const Mat& b) const {
  const std::size_t w = b.data().size();
  EchelonBasis span(b.field(), w);
  for (const auto& k : kernel) span.add(k.data());
  return span.contains((b - particular).data());
}

std::optional<MatAffineSpace> commutator_solutions(const Mat& a, const Mat& c) {
  if (!a.is_square() || !c.is_square() || a.rows() != c.rows()) throw std::invalid_argument("shape mismatch");
  const std::size_t n = a.rows();
  auto sol = solve_affine(ad_matrix(a), c.data());
  if (!sol) return std::nullopt;
  auto to_mat = [&](const Vec& v) {
    Mat m(a.field(), n, n);
    for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = v[i];
    return m;
  };
  MatAffineSpace space{to_mat(sol->particular), {}};
  for (const auto& k : sol->kernel) space.kernel.push_back(to_mat(k));
  return space;
}

Poly min_poly(const Mat& a) {
  if (!a.is_square()) throw std::invalid_argument("minimal polynomial of a non-square matrix");
  const auto& f = a.field();
  const std::size_t n = a.rows();
  Poly result = Poly::constant(f, 1);
  for (std::size_t e = 0; e < n; ++e) {
    Vec v(n, 0);
    v[e] = 1;
    std::vector<Vec> chain;
    EchelonBasis span(f, n);
    while (span.add(v)) {
      chain.push_back(v);
      v = a * std::span<const Elem>(v);
    }
    Mat k(f, n, chain.size());
    for (std::size_t j = 0; j < chain.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) k(i, j) = chain[j][i];
    auto sol = solve_affine(k, v);
    std::vector<Elem> c(chain.size() + 1, 0);
    for (std::size_t j = 0; j < chain.size(); ++j) c[j] = f->neg(sol->particular[j]);
    c[chain.size()] = 1;
    result = lcm(result, Poly(f, std::move(c)));
  }
  return result;
}

Poly InvariantFactors::char_poly() const {
  if (factors.empty()) throw std::logic_error("empty invariant factor list");
  Poly p = Poly::constant(factors[0].field(), 1);
  for (const auto& d : factors) p = p * d;
  return p;
}

namespace {

struct PolyMat {
  std::size_t n;
  std::vector<Poly> e;
  Poly& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
};

struct SmithResult {
  std::vector<Poly> diagonal;
  PolyMat pinv;  // inverse of the accumulated row transform
};

// Smith normal form of tI - A, tracking P^{-1} where P is the product of the
// row operations.
SmithResult smith_of_char_matrix(const Mat& a) {
  const auto& f = a.field();
  const auto& F = *f;
  const std::size_t n = a.rows();
  PolyMat m{n, std::vector<Poly>(n * n, Poly(f))};
  PolyMat pinv{n, std::vector<Poly>(n * n, Poly(f))};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Poly::constant(f, F.neg(a(i, j)));
    m.at(i, i) = Poly(f, {F.neg(a(i, i)), 1});
    pinv.at(i, i) = Poly::constant(f, 1);
  }
  auto swap_rows = [&](std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(m.at(r1, j), m.at(r2, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(pinv.at(i, r1), pinv.at(i, r2));
  };
  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t i = 0; i < n; ++i) std::swap(m.at(i, c1), m.at(i, c2));
  };
  // row_dst += c * row_src
  auto add_row = [&](std::size_t dst, std::size_t src, const Poly& c) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!m.at(src, j).is_zero()) m.at(dst, j) = m.at(dst, j) + c * m.at(src, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!pinv.at(i, dst).is_zero()) pinv.at(i, src) = pinv.at(i, src) - c * pinv.at(i, dst);
    }
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Poly& c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!m.at(i, src).is_zero()) m.at(i, dst) = m.at(i, dst) + c * m.at(i, src);
    }
  };

  for (std::size_t k = 0; k < n; ++k) {
    while (true) {
      std::size_t bi = n, bj = n;
      int best = -1;
      for (std::size_t i = k; i < n; ++i) {
        for (std::size_t j = k; j < n; ++j) {
          const Poly& x = m.at(i, j);
          if (!x.is_zero() && (best < 0 || x.degree() < best)) {
            best = x.degree();
            bi = i;
            bj = j;
          }
        }
      }
      if (best < 0) break;
      swap_rows(k, bi);
      swap_cols(k, bj);
      bool clean = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (m.at(i, k).is_zero()) continue;
        auto [q, r] = divmod(m.at(i, k), m.at(k, k));
        add_row(i, k, -q);
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (m.at(k, j).is_zero()) continue;
        auto [q, r] = divmod(m.at(k, j), m.at(k, k));
        add_col(j, k, -q);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = k + 1; i < n && divisible; ++i) {
        for (std::size_t j = k + 1; j < n && divisible; ++j) {
          if (!(m.at(i, j) % m.at(k, k)).is_zero()) {
            add_row(k, i, Poly::constant(f, 1));
            divisible = false;
          }
        }
      }
      if (divisible) break;
    }
    const Elem u = m.at(k, k).lead();
    if (u != 0 && u != 1) {
      const Elem s = F.inv(u);
      for (std::size_t j = 0; j < n; ++j) m.at(k, j) = m.at(k, j).scaled(s);
      for (std::size_t i = 0; i < n; ++i) pinv.at(i, k) = pinv.at(i, k).scaled(u);
    }
  }
  SmithResult res{{}, std::move(pinv)};
  for (std::size_t k = 0; k < n; ++k) res.diagonal.push_back(m.at(k, k));
  return res;
}

}  // namespace

InvariantFactors invariant_factors(const Mat& a) {
  if (!a.is_square() || a.rows() == 0) throw std::invalid_argument("invariant factors need a nonempty square matrix");
  InvariantFactors inv;
  for (auto& d : smith_of_char_matrix(a).diagonal) {
    if (d.degree() >= 1) inv.factors.push_back(std::move(d));
  }
  return inv;
}

Poly char_poly(const Mat& a) { return invariant_factors(a).char_poly(); }

RationalForm rational_canonical_form(const Mat& a) {
  if (!a.is_square() || a.rows() == 0) throw std::invalid_argument("rational form needs a nonempty square matrix");
  const auto& f = a.field();
  const auto& F = *f;
  const std::size_t n = a.rows();
  SmithResult s = smith_of_char_matrix(a);
  RationalForm out{{}, Mat(f, n, n), Mat(f, n, n)};
  std::vector<Mat> blocks;
  std::size_t col = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Poly& d = s.diagonal[k];
    if (d.degree() < 1) continue;
    // Generator: sum_j pinv(j, k)(A) e_j, by Horner over the degree.
    int maxdeg = 0;
    for (std::size_t j = 0; j < n; ++j) maxdeg = std::max(maxdeg, s.pinv.at(j, k).degree());
    Vec w(n, 0);
    for (int deg = maxdeg; deg >= 0; --deg) {
      w = a * std::span<const Elem>(w);
      for (std::size_t j = 0; j < n; ++j) w[j] = F.add(w[j], s.pinv.at(j, k)[static_cast<std::size_t>(deg)]);
    }
    for (int i = 0; i < d.degree(); ++i) {
      for (std::size_t r = 0; r < n; ++r) out.basis(r, col) = w[r];
      ++col;
      w = a * std::span<const Elem>(w);
    }
    out.invariants.factors.push_back(d);
    blocks.push_back(Mat::companion(d));
  }
  out.form = block_diag(blocks);
  if (rank(out.basis) != n) throw std::logic_error("cyclic generators do not span");
  return out;
}

bool similar(const Mat& a, const Mat& b) {
  if (a.field() != b.field() || !a.is_square() || !b.is_square() || a.rows() != b.rows()) return false;
  return invariant_factors(a) == invariant_factors(b);
}

std::optional<Mat> similarity_transform(const Mat& a, const Mat& b) {
  if (!similar(a, b)) return std::nullopt;
  RationalForm ra = rational_canonical_form(a);
  RationalForm rb = rational_canonical_form(b);
  return ra.basis * inverse(rb.basis);
}

namespace {

struct Eigen {
  FieldPtr field;
  Mat lifted;
  std::vector<std::pair<Elem, int>> values;  // eigenvalue, algebraic multiplicity
};

Eigen eigen_data(const Mat& a, std::uint64_t field_limit) {
  if (!a.is_square() || a.rows() == 0) throw std::invalid_argument("Jordan data needs a nonempty square matrix");
  const auto& base = a.field();
  auto facs = factor(char_poly(a));
  std::uint64_t m = 1;
  for (const auto& fac : facs) m = std::lcm(m, static_cast<std::uint64_t>(fac.poly.degree()));
  const std::uint64_t ext_degree = base->degree() * m;
  std::uint64_t size = 1;
  for (std::uint64_t i = 0; i < ext_degree; ++i) {
    size *= base->characteristic();
    if (size > field_limit) {
      throw LimitExceeded("splitting field GF(" + std::to_string(base->characteristic()) + "^" +
                          std::to_string(ext_degree) + ") exceeds the field-size limit");
    }
  }
  FieldPtr ext = field(base->characteristic(), static_cast<std::uint32_t>(ext_degree));
  const Embedding& emb = embedding(base, ext);
  Eigen out{ext, lift(a, emb), {}};
  for (const auto& fac : facs) {
    for (Elem r : roots(lift(fac.poly, emb))) out.values.emplace_back(r, fac.multiplicity);
  }
  std::sort(out.values.begin(), out.values.end(),
            [&ext](const auto& x, const auto& y) { return ext->rank_of(x.first) < ext->rank_of(y.first); });
  return out;
}

// Block sizes of eigenvalue lambda from the rank sequence of (A - lambda I)^j.
std::vector<std::size_t> partition_at(const Mat& a, Elem lambda, int multiplicity) {
  const std::size_t n = a.rows();
  const Mat nil = a - Mat::scalar(a.field(), n, lambda);
  std::vector<std::size_t> ranks{n};
  Mat power = Mat::identity(a.field(), n);
  while (true) {
    power = power * nil;
    ranks.push_back(rank(power));
    if (ranks.back() == ranks[ranks.size() - 2]) break;
  }
  // at_least[j] = #blocks of size >= j
  std::vector<std::size_t> blocks;
  for (std::size_t j = ranks.size() - 1; j >= 1; --j) {
    std::size_t at_least = ranks[j - 1] - ranks[j];
    std::size_t bigger = j + 1 < ranks.size() ? ranks[j] - ranks[j + 1] : 0;
    for (std::size_t c = bigger; c < at_least; ++c) blocks.push_back(j);
  }
  std::size_t total = std::accumulate(blocks.begin(), blocks.end(), std::size_t{0});
  if (total != static_cast<std::size_t>(multiplicity)) throw std::logic_error("Jordan block sizes do not match multiplicity");
  return blocks;
}

}  // namespace

std::string JordanType::str() const {
  std::string s;
  for (const auto& part : parts) {
    if (!s.empty()) s += "; ";
    s += field->format(part.eigenvalue) + ":[";
    for (std::size_t i = 0; i < part.blocks.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(part.blocks[i]);
    }
    s += ']';
  }
  return s;
}

JordanType jordan_type(const Mat& a, std::uint64_t field_limit) {
  Eigen e = eigen_data(a, field_limit);
  JordanType jt{e.field, {}};
  for (const auto& [lambda, mult] : e.values) jt.parts.push_back({lambda, partition_at(e.lifted, lambda, mult)});
  return jt;
}

JordanDecomposition jordan_decomposition(const Mat& a, std::uint64_t field_limit) {
  Eigen e = eigen_data(a, field_limit);
  const auto& f = e.field;
  const std::size_t n = a.rows();
  JordanDecomposition out{f, e.lifted, Mat(f, n, n), Mat(f, n, n), {}};
  std::size_t col = 0;
  for (const auto& [lambda, mult] : e.values) {
    const Mat nil = e.lifted - Mat::scalar(f, n, lambda);
    auto sizes = partition_at(e.lifted, lambda, mult);
    const std::size_t top = sizes.front();
    std::vector<std::vector<Vec>> ker(top + 1);  // ker[s] = basis of ker nil^s
    Mat power = Mat::identity(f, n);
    for (std::size_t s = 1; s <= top; ++s) {
      power = power * nil;
      ker[s] = kernel(power);
    }
    std::vector<std::pair<Vec, std::size_t>> heads;  // chain head and length
    for (std::size_t s = top; s >= 1; --s) {
      const auto wanted = static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), s));
      if (wanted == 0) continue;
      EchelonBasis span(f, n);
      for (const auto& v : ker[s - 1]) span.add(v);
      for (const auto& [h, len] : heads) {
        Vec v = h;
        for (std::size_t i = 0; i < len - s; ++i) v = nil * std::span<const Elem>(v);
        span.add(v);
      }
      std::size_t found = 0;
      for (const auto& v : ker[s]) {
        if (found == wanted) break;
        if (span.add(v)) {
          heads.emplace_back(v, s);
          ++found;
        }
      }
      if (found != wanted) throw std::logic_error("Jordan chain construction failed");
    }
    for (const auto& [h, len] : heads) {
      std::vector<Vec> chain{h};
      for (std::size_t i = 1; i < len; ++i) chain.push_back(nil * std::span<const Elem>(chain.back()));
      // Columns N^{len-1}h, ..., Nh, h give an upper Jordan block.
      for (std::size_t i = 0; i < len; ++i) {
        const Vec& v = chain[len - 1 - i];
        for (std::size_t r = 0; r < n; ++r) out.basis(r, col + i) = v[r];
        out.jordan(col + i, col + i) = lambda;
        if (i + 1 < len) out.jordan(col + i, col + i + 1) = 1;
      }
      out.blocks.emplace_back(lambda, len);
      col += len;
    }
  }
  if (out.basis * out.jordan != out.lifted * out.basis) throw std::logic_error("Jordan basis check failed");
  return out;
}

bool is_regular(const Mat& a) {
  if (!a.is_square()) throw std::invalid_argument("regularity of a non-square matrix");
  const std::size_t n = a.rows();
  const bool regular = static_cast<std::size_t>(min_poly(a).degree()) == n;
  if (n <= 16 && regular != (centralizer_dimension(a) == n)) {
    throw std::logic_error("regularity characterizations disagree");
  }
  return regular;
}

RegularCommuting regular_commuting(const Mat& a) {
  JordanDecomposition jd = jordan_decomposition(a);
  FieldPtr f = jd.field;
  Mat basis = jd.basis;
  const std::size_t nblocks = jd.blocks.size();
  if (f->order() < nblocks) {
    std::uint32_t e = 1;
    std::uint64_t size = f->order();
    while (size < nblocks) {
      size *= f->order();
      ++e;
    }
    FieldPtr bigger = field(f->characteristic(), f->degree() * e);
    basis = lift(basis, embedding(f, bigger));
    f = bigger;
  }
  const std::size_t n = a.rows();
  Mat rj(f, n, n);
  std::size_t col = 0;
  for (std::size_t b = 0; b < nblocks; ++b) {
    const Elem mu = f->from_rank(b);
    const std::size_t len = jd.blocks[b].second;
    for (std::size_t i = 0; i < len; ++i) {
      rj(col + i, col + i) = mu;
      if (i + 1 < len) rj(col + i, col + i + 1) = 1;
    }
    col += len;
  }
  Mat r = basis * rj * inverse(basis);
  return {r, f != a.field()};
}

}  // namespace commvar
