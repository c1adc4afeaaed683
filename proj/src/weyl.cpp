#include "commvar/weyl.hpp"

#include <stdexcept>

namespace commvar {

WeylPair weyl_pair(const FieldPtr& f, Elem alpha, Elem beta) {
  const std::uint32_t p = f->characteristic();
  const auto& F = *f;
  Mat a(f, p, p);
  Mat b = Mat::scalar(f, p, beta);
  for (std::uint32_t i = 1; i < p; ++i) a(i, i - 1) = 1;
  a(0, p - 1) = F.add(a(0, p - 1), F.pow(alpha, p));
  for (std::uint32_t i = 0; i + 1 < p; ++i) b(i, i + 1) = F.from_int(-static_cast<std::int64_t>(i + 1));
  return {p, alpha, beta, std::move(a), std::move(b)};
}

std::size_t generated_algebra_dimension(const Mat& a, const Mat& b, std::size_t max_length) {
  const std::size_t n = a.rows();
  EchelonBasis span(a.field(), n * n);
  Mat id = Mat::identity(a.field(), n);
  span.add(id.data());
  // Words of length L+1 lie in the span of {A w, B w} over basis words w of
  // length L, so only newly independent words need extending.
  std::vector<Mat> frontier{id};
  for (std::size_t len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<Mat> next;
    for (const auto& w : frontier) {
      for (const Mat* g : {&a, &b}) {
        Mat word = *g * w;
        if (span.add(word.data())) next.push_back(std::move(word));
      }
    }
    frontier = std::move(next);
  }
  return span.dimension();
}

BlockPair build_block_pair(const FieldPtr& f, std::span<const Elem> scalars) {
  if (scalars.empty()) throw std::invalid_argument("block pair needs r >= 1");
  const std::uint32_t p = f->characteristic();
  const std::size_t r = scalars.size();
  const std::size_t n = p * r;
  const Mat a0 = weyl_a0(f);
  const Mat b0 = weyl_b0(f);
  const Mat upper = b0.pow(p - 1);
  Mat x(f, n, n), y(f, n, n);
  for (std::size_t i = 0; i < r; ++i) {
    x.set_block(i * p, i * p, a0 + Mat::scalar(f, p, scalars[i]));
    y.set_block(i * p, i * p, b0);
    if (i + 1 < r) x.set_block(i * p, (i + 1) * p, upper);
  }
  return {p, r, {scalars.begin(), scalars.end()}, std::move(x), std::move(y)};
}

KernelActionRecord kernel_action_check(const BlockPair& pair) {
  if (pair.r != 2 || pair.scalars[0] != 0 || pair.scalars[1] != 0) {
    throw std::invalid_argument("kernel action check needs r = 2 with nilpotent scalars");
  }
  const auto& f = pair.x.field();
  const std::uint32_t p = pair.p;
  const Mat a0 = weyl_a0(f);
  const Mat upper = weyl_b0(f).pow(p - 1);
  Mat l(f, p, p);
  for (std::uint32_t k = 0; k < p; ++k) l = l + a0.pow(k) * upper * a0.pow(p - 1 - k);
  Vec ep(p, 0);
  ep[p - 1] = 1;
  Vec lep = l * std::span<const Elem>(ep);
  KernelActionRecord rec{l, lep[p - 1], true, false, false};
  for (std::uint32_t i = 0; i + 1 < p; ++i) {
    if (lep[i] != 0) rec.l_ep_is_multiple = false;
  }
  rec.l_ep_is_multiple = rec.l_ep_is_multiple && rec.coefficient != 0;
  Mat xp = pair.x.pow(p);
  Mat expected(f, 2 * p, 2 * p);
  expected.set_block(0, p, l);
  rec.x_power_has_expected_shape = xp == expected;
  rec.x_power_nonzero = !xp.is_zero();
  return rec;
}

SolutionFamily::SolutionFamily(Mat x, Mat y) : x_(std::move(x)), y_(std::move(y)), basis_(x_.field(), 0, 0) {
  const std::size_t n = x_.rows();
  if (!lie_commutator(x_, y_).is_scalar(1)) throw std::invalid_argument("[X, Y] is not the identity");
  if (!is_regular(x_)) throw std::invalid_argument("X is not regular");
  basis_ = Mat(x_.field(), n * n, n);
  Mat power = Mat::identity(x_.field(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n * n; ++k) basis_(k, i) = power.data()[k];
    powers_.push_back(power);
    power = power * x_;
  }
}

Mat SolutionFamily::member(const Poly& f) const {
  if (f.degree() >= static_cast<int>(x_.rows())) throw std::invalid_argument("polynomial degree exceeds n - 1");
  return y_ + evaluate(f, x_);
}

std::optional<Poly> SolutionFamily::decompose(const Mat& y_prime) const {
  auto sol = solve_affine(basis_, (y_prime - y_).data());
  if (!sol) return std::nullopt;
  // The powers are independent for regular X, so the solution is unique.
  return Poly(x_.field(), sol->particular);
}

bool SolutionFamily::matches(const MatAffineSpace& space) const {
  if (space.dimension() != dimension()) return false;
  if (!decompose(space.particular)) return false;
  for (const auto& k : space.kernel) {
    if (!decompose(y_ + k)) return false;
  }
  for (const auto& pw : powers_) {
    if (!space.contains(y_ + pw)) return false;
  }
  return true;
}

SolutionFamily solution_family(const Mat& x, const Mat& y) { return SolutionFamily(x, y); }

std::pair<Mat, Mat> generic_split_pair(const FieldPtr& f, std::span<const Elem> a, std::span<const Elem> b) {
  if (a.empty() || a.size() != b.size()) throw std::invalid_argument("split pair needs r >= 1 matching scalars");
  const std::uint32_t p = f->characteristic();
  const std::size_t r = a.size();
  const Mat a0 = weyl_a0(f);
  const Mat b0 = weyl_b0(f);
  Mat ma(f, p * r, p * r), mb(f, p * r, p * r);
  for (std::size_t i = 0; i < r; ++i) {
    ma.set_block(i * p, i * p, a0 + Mat::scalar(f, p, a[i]));
    mb.set_block(i * p, i * p, b0 + Mat::scalar(f, p, b[i]));
  }
  return {std::move(ma), std::move(mb)};
}

std::size_t joint_centralizer_dimension(const Mat& a, const Mat& b) {
  const std::size_t n = a.rows();
  const Mat ada = ad_matrix(a);
  const Mat adb = ad_matrix(b);
  Mat stacked(a.field(), 2 * n * n, n * n);
  stacked.set_block(0, 0, ada);
  stacked.set_block(n * n, 0, adb);
  return n * n - rank(stacked);
}

std::pair<Mat, Mat> random_solution_pair(const FieldPtr& f, std::size_t r, Rng& rng) {
  const std::size_t n = f->characteristic() * r;
  auto draw = [&] { return f->from_rank(rng.below(f->order())); };
  std::vector<Elem> a(r), b(r);
  for (auto& x : a) x = draw();
  Mat g = random_invertible(f, n, rng);
  Mat gi = inverse(g);
  if (rng.below(2) == 0) {
    BlockPair bp = build_block_pair(f, a);
    std::vector<Elem> c(n);
    for (auto& x : c) x = draw();
    Mat yp = bp.y + evaluate(Poly(f, c), bp.x);
    return {g * bp.x * gi, g * yp * gi};
  }
  for (auto& x : b) x = draw();
  auto [sa, sb] = generic_split_pair(f, a, b);
  Mat z(f, n, n);
  for (const auto& k : kernel(ad_matrix(sa))) {
    const Elem c = draw();
    for (std::size_t i = 0; i < n * n; ++i) z(i / n, i % n) = f->add(z(i / n, i % n), f->mul(c, k[i]));
  }
  return {g * sa * gi, g * (sb + z) * gi};
}

ComponentDimensions component_dimensions(std::uint32_t p, std::uint64_t n) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (n == 0 || n % p != 0) throw std::invalid_argument("p must divide n");
  const std::uint64_t r = n / p;
  const std::uint64_t n2 = n * n;
  ComponentDimensions d{};
  d.p = p;
  d.n = n;
  d.r = r;
  d.dim_c = n2 + r;
  d.dim_u1 = n2 + n;
  d.dim_u2_image = n2 + r - 1;
  d.pgl = {n2 + n - 2, n2 + r - 1};
  d.sl = n2 + n - 2;
  d.psl_times_k = {n2 + r - 1, n2 + n - 4};
  d.psl_times_k_exists = n % (std::uint64_t{p} * p) == 0;
  d.equal_components = d.pgl.first == d.pgl.second;
  return d;
}

}  // namespace commvar
