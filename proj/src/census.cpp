#include "commvar/census.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "commvar/errors.hpp"

namespace commvar {

namespace {

BigInt big_pow(std::uint64_t base, std::uint64_t e) {
  BigInt r = 1;
  BigInt b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e, std::uint64_t limit, const std::string& what) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > limit / base) throw LimitExceeded(what + " exceeds the brute-scan limit of " + std::to_string(limit));
    r *= base;
  }
  if (r > limit) throw LimitExceeded(what + " exceeds the brute-scan limit of " + std::to_string(limit));
  return r;
}

std::vector<std::vector<std::size_t>> partitions_of(std::size_t s) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t part = std::min(left, max_part); part >= 1; --part) {
      cur.push_back(part);
      rec(left - part, part);
      cur.pop_back();
    }
  };
  rec(s, s);
  return out;
}

std::vector<std::size_t> conjugate(const std::vector<std::size_t>& lambda) {
  std::vector<std::size_t> out;
  if (lambda.empty()) return out;
  for (std::size_t j = 1; j <= lambda.front(); ++j) {
    out.push_back(static_cast<std::size_t>(std::count_if(lambda.begin(), lambda.end(), [j](std::size_t x) { return x >= j; })));
  }
  return out;
}

void sort_parts(std::vector<PrimaryPart>& parts) {
  std::sort(parts.begin(), parts.end(), [](const PrimaryPart& a, const PrimaryPart& b) { return poly_less(a.f, b.f); });
}

// Runs body(i) for i in [0, count) over `threads` contiguous shards and
// returns the per-index results in index order.
template <typename Fn>
std::vector<BigInt> parallel_map(std::size_t count, unsigned threads, Fn body) {
  std::vector<BigInt> out(count);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = body(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        const std::size_t lo = t * chunk, hi = std::min(count, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) out[i] = body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

BigInt sum(const std::vector<BigInt>& parts) {
  BigInt s = 0;
  for (const auto& x : parts) s += x;
  return s;
}

// Kernel dimension of ad_A and whether cI lies in its image.
std::pair<std::size_t, bool> ad_fiber(const Mat& a, Elem c) {
  const std::size_t n = a.rows();
  const std::size_t n2 = n * n;
  Mat aug(a.field(), n2, n2 + 1);
  aug.set_block(0, 0, ad_matrix(a));
  for (std::size_t i = 0; i < n; ++i) aug(i * n + i, n2) = c;
  Rref r = rref(std::move(aug));
  const bool consistent = r.pivots.empty() || r.pivots.back() != n2;
  const std::size_t rank_ad = consistent ? r.rank : r.rank - 1;
  return {n2 - rank_ad, consistent};
}

Mat matrix_from_index(const FieldPtr& f, std::size_t n, std::uint64_t index) {
  Mat m(f, n, n);
  const std::uint64_t q = f->order();
  for (std::size_t i = 0; i < n * n; ++i) {
    m(i / n, i % n) = f->from_rank(index % q);
    index /= q;
  }
  return m;
}

}  // namespace

std::size_t ClassRep::dimension() const {
  std::size_t n = 0;
  for (const auto& part : parts) {
    for (auto l : part.partition) n += static_cast<std::size_t>(part.f.degree()) * l;
  }
  return n;
}

Mat ClassRep::representative() const {
  std::vector<Mat> blocks;
  for (const auto& part : parts) {
    for (auto l : part.partition) blocks.push_back(Mat::companion(pow(part.f, l)));
  }
  return block_diag(blocks);
}

std::string ClassRep::str() const {
  std::string s;
  for (const auto& part : parts) {
    if (!s.empty()) s += " | ";
    s += "(" + part.f.pretty() + ")^[";
    for (std::size_t i = 0; i < part.partition.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(part.partition[i]);
    }
    s += "]";
  }
  return s;
}

BigInt gl_order(std::size_t n, std::uint64_t q) {
  BigInt qn = big_pow(q, n);
  BigInt r = 1;
  BigInt qi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    r *= qn - qi;
    qi *= q;
  }
  return r;
}

BigInt centralizer_group_order(const ClassRep& c) {
  const std::uint64_t q = c.field->order();
  BigInt order = 1;
  for (const auto& part : c.parts) {
    const BigInt qd = big_pow(q, static_cast<std::uint64_t>(part.f.degree()));
    std::uint64_t exponent = 0;
    for (auto lj : conjugate(part.partition)) exponent += lj * lj;
    BigInt units = 1;
    std::uint64_t shift = 0;
    for (std::size_t j = 1; j <= part.partition.front(); ++j) {
      const auto m = static_cast<std::uint64_t>(std::count(part.partition.begin(), part.partition.end(), j));
      BigInt qdi = 1;
      for (std::uint64_t i = 1; i <= m; ++i) {
        qdi *= qd;
        units *= qdi - 1;
        shift += i;
      }
    }
    BigInt power = 1;
    for (std::uint64_t i = 0; i < exponent - shift; ++i) power *= qd;
    order *= power * units;
  }
  return order;
}

BigInt class_size(const ClassRep& c) { return gl_order(c.dimension(), c.field->order()) / centralizer_group_order(c); }

std::vector<ClassRep> enumerate_classes(std::size_t n, const FieldPtr& f, bool invertible, std::uint64_t max_classes) {
  if (n == 0) throw std::invalid_argument("matrix size must be positive");
  std::vector<Poly> irr;
  for (unsigned d = 1; d <= n; ++d) {
    for (auto& g : irreducibles_of_degree(f, d)) {
      if (invertible && g.degree() == 1 && g[0] == 0) continue;
      irr.push_back(std::move(g));
    }
  }
  std::vector<std::vector<std::vector<std::size_t>>> parts_by_size(n + 1);
  for (std::size_t s = 1; s <= n; ++s) parts_by_size[s] = partitions_of(s);

  std::vector<ClassRep> out;
  std::vector<PrimaryPart> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t remaining) {
    if (remaining == 0) {
      if (out.size() >= max_classes) {
        throw LimitExceeded("class enumeration exceeds the limit of " + std::to_string(max_classes) + " classes");
      }
      out.push_back({f, cur});
      return;
    }
    for (std::size_t i = start; i < irr.size(); ++i) {
      const auto d = static_cast<std::size_t>(irr[i].degree());
      if (d > remaining) break;
      for (std::size_t s = 1; s * d <= remaining; ++s) {
        for (const auto& lambda : parts_by_size[s]) {
          cur.push_back({irr[i], lambda});
          rec(i + 1, remaining - s * d);
          cur.pop_back();
        }
      }
    }
  };
  rec(0, n);
  return out;
}

ClassRep class_of(const Mat& a) {
  ClassRep c{a.field(), {}};
  for (const auto& d : invariant_factors(a).factors) {
    for (const auto& fac : factor(d)) {
      auto it = std::find_if(c.parts.begin(), c.parts.end(), [&](const PrimaryPart& p) { return p.f == fac.poly; });
      if (it == c.parts.end()) {
        c.parts.push_back({fac.poly, {}});
        it = c.parts.end() - 1;
      }
      it->partition.push_back(static_cast<std::size_t>(fac.multiplicity));
    }
  }
  for (auto& part : c.parts) std::sort(part.partition.rbegin(), part.partition.rend());
  sort_parts(c.parts);
  return c;
}

Poly twist_poly(const Poly& f, Elem zeta) {
  const auto& F = *f.field();
  const int d = f.degree();
  std::vector<Elem> c(f.coeffs().size());
  for (int i = 0; i <= d; ++i) c[i] = F.mul(f[i], F.pow(zeta, static_cast<std::uint64_t>(d - i)));
  return Poly(f.field(), std::move(c));
}

ClassRep twist(const ClassRep& c, Elem zeta) {
  ClassRep out{c.field, {}};
  for (const auto& part : c.parts) out.parts.push_back({twist_poly(part.f, zeta), part.partition});
  sort_parts(out.parts);
  return out;
}

bool twist_fixed(const ClassRep& c, Elem zeta) { return twist(c, zeta) == c; }

std::string to_string(Strategy s) { return s == Strategy::brute ? "brute" : "class"; }

BigInt count_lie_pairs(std::size_t n, const FieldPtr& f, Elem c, Strategy s, const CensusLimits& lim) {
  const std::uint64_t q = f->order();
  if (s == Strategy::classes) {
    auto classes = enumerate_classes(n, f, false, lim.max_classes);
    auto parts = parallel_map(classes.size(), lim.threads, [&](std::size_t i) -> BigInt {
      auto [dim, consistent] = ad_fiber(classes[i].representative(), c);
      if (!consistent) return 0;
      return class_size(classes[i]) * big_pow(q, dim);
    });
    return sum(parts);
  }
  const std::uint64_t total = checked_pow(q, n * n, lim.max_brute, "scan of M_" + std::to_string(n) + "(F_" + std::to_string(q) + ")");
  const unsigned shards = std::max(1u, lim.threads);
  auto parts = parallel_map(shards, shards, [&](std::size_t t) -> BigInt {
    std::vector<std::uint64_t> by_dim(n * n + 1, 0);
    const std::uint64_t chunk = (total + shards - 1) / shards;
    const std::uint64_t lo = t * chunk, hi = std::min(total, lo + chunk);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      auto [dim, consistent] = ad_fiber(matrix_from_index(f, n, idx), c);
      if (consistent) ++by_dim[dim];
    }
    BigInt acc = 0;
    for (std::size_t d = 0; d < by_dim.size(); ++d) acc += BigInt(by_dim[d]) * big_pow(q, d);
    return acc;
  });
  return sum(parts);
}

BigInt count_commuting_pairs(std::size_t n, const FieldPtr& f, Strategy s, const CensusLimits& lim) {
  return count_lie_pairs(n, f, 0, s, lim);
}

std::pair<std::uint64_t, std::uint64_t> count_invertible_solutions(const Mat& x, Elem zeta, std::uint64_t max_members) {
  const auto& f = x.field();
  const std::size_t n = x.rows();
  const std::size_t n2 = n * n;
  const std::uint64_t q = f->order();
  // vec(xy - zeta yx)_{ij} = sum_k x_ik y_kj - zeta sum_k y_ik x_kj
  Mat lin(f, n2, n2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        lin(i * n + j, k * n + j) = f->add(lin(i * n + j, k * n + j), x(i, k));
        lin(i * n + j, i * n + k) = f->sub(lin(i * n + j, i * n + k), f->mul(zeta, x(k, j)));
      }
    }
  }
  auto basis = kernel(lin);
  const std::uint64_t members = checked_pow(q, basis.size(), max_members, "solution enumeration");
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < members; ++m) {
    Mat y(f, n, n);
    std::uint64_t code = m;
    for (const auto& b : basis) {
      const Elem c = f->from_rank(code % q);
      code /= q;
      if (c == 0) continue;
      for (std::size_t k = 0; k < n2; ++k) y(k / n, k % n) = f->add(y(k / n, k % n), f->mul(c, b[k]));
    }
    if (det(y) != 0) ++count;
  }
  return {count, members};
}

BigInt count_group_pairs(std::size_t n, const FieldPtr& f, Elem zeta, Strategy s, const CensusLimits& lim) {
  if (zeta == 0) throw std::invalid_argument("zeta must be nonzero");
  const std::uint64_t q = f->order();
  if (s == Strategy::classes) {
    auto classes = enumerate_classes(n, f, true, lim.max_classes);
    auto fixed = parallel_map(classes.size(), lim.threads, [&](std::size_t i) -> BigInt { return twist_fixed(classes[i], zeta) ? 1 : 0; });
    return gl_order(n, q) * sum(fixed);
  }
  const std::uint64_t total = checked_pow(q, n * n, lim.max_brute, "scan of M_" + std::to_string(n) + "(F_" + std::to_string(q) + ")");
  std::uint64_t evaluations = total;
  BigInt count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Mat x = matrix_from_index(f, n, idx);
    if (det(x) == 0) continue;
    const std::uint64_t budget = lim.max_brute > evaluations ? lim.max_brute - evaluations : 0;
    auto [solutions, members] = count_invertible_solutions(x, zeta, budget);
    evaluations += members;
    count += solutions;
  }
  return count;
}

BigInt count_w(std::size_t n, const FieldPtr& f, Elem zeta, Strategy s, const CensusLimits& lim) {
  if (zeta == 0) throw std::invalid_argument("zeta must be nonzero");
  const std::uint64_t q = f->order();
  if (s == Strategy::classes) {
    auto classes = enumerate_classes(n, f, true, lim.max_classes);
    auto sizes = parallel_map(classes.size(), lim.threads, [&](std::size_t i) -> BigInt {
      return twist_fixed(classes[i], zeta) ? class_size(classes[i]) : BigInt(0);
    });
    return sum(sizes);
  }
  const std::uint64_t total = checked_pow(q, n * n, lim.max_brute, "scan of M_" + std::to_string(n) + "(F_" + std::to_string(q) + ")");
  BigInt count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Mat x = matrix_from_index(f, n, idx);
    if (det(x) == 0) continue;
    if (invariant_factors(x) == invariant_factors(x.scaled(zeta))) ++count;
  }
  return count;
}

DimensionFit estimate_dimension(std::span<const std::pair<std::uint64_t, BigInt>> points) {
  if (points.size() < 2) throw std::invalid_argument("dimension fit needs at least two points");
  std::vector<std::pair<std::uint64_t, BigInt>> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const auto p0 = prime_power(pts[0].first).first;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (prime_power(pts[i].first).first != p0) throw std::invalid_argument("dimension fit needs q of one characteristic");
    if (i > 0 && pts[i].first == pts[i - 1].first) throw std::invalid_argument("dimension fit needs distinct q");
    if (pts[i].second <= 0) throw std::invalid_argument("dimension fit needs positive counts");
  }
  const auto& [q1, c1] = pts[pts.size() - 2];
  const auto& [q2, c2] = pts.back();
  using boost::multiprecision::log;
  const Decimal raw = (log(Decimal(c2.str())) - log(Decimal(c1.str()))) / (log(Decimal(q2)) - log(Decimal(q1)));
  const Decimal rounded = boost::multiprecision::round(raw);
  const auto fitted = rounded.convert_to<std::int64_t>();
  return {fitted, raw, boost::multiprecision::abs(raw - rounded)};
}

void finish_report(CountReport& r) {
  r.fit.reset();
  r.match = false;
  if (r.counts.size() < 2) return;
  std::vector<std::pair<std::uint64_t, BigInt>> pts;
  for (const auto& c : r.counts) pts.emplace_back(c.q, c.count);
  r.fit = estimate_dimension(pts);
  r.match = r.fit->fitted == r.expected_dimension && r.fit->residual < kResidualTolerance;
}

std::string decimal_string(const Decimal& d) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(24) << d;
  std::string s = os.str();
  if (s.rfind("-0.", 0) == 0 && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace commvar
