#include "commvar/gf.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace commvar {

namespace {

// Dense polynomials over F_p, constant term first. Only used to pick the
// modulus and for arithmetic in fields too large for tables.
using PrimePoly = std::vector<std::uint64_t>;

void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::make_tuple(new_t, t - quot * new_t);
    std::tie(r, new_r) = std::make_tuple(new_r, r - quot * new_r);
  }
  if (r != 1) throw std::domain_error("element is not invertible");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

PrimePoly poly_mod(PrimePoly a, const PrimePoly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = inv_mod(f.back(), p);
  while (a.size() > df) {
    std::uint64_t c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + (p - c) * f[i]) % p;
    }
    trim(a);
  }
  return a;
}

PrimePoly poly_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_mod(std::move(r), f, p);
}

PrimePoly poly_powmod(PrimePoly base, std::uint64_t e, const PrimePoly& f, std::uint64_t p) {
  PrimePoly result{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    e >>= 1;
    if (e) base = poly_mulmod(base, base, f, p);
  }
  return result;
}

PrimePoly poly_gcd(PrimePoly a, PrimePoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PrimePoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test for a monic f of degree k over F_p.
bool prime_poly_irreducible(const PrimePoly& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  std::vector<PrimePoly> frob(k + 1);  // frob[j] = t^{p^j} mod f
  frob[0] = poly_mod({0, 1}, f, p);
  for (std::size_t j = 1; j <= k; ++j) frob[j] = poly_powmod(frob[j - 1], p, f, p);
  PrimePoly t_mod = poly_mod({0, 1}, f, p);
  if (frob[k] != t_mod) return false;
  for (std::uint64_t ell : prime_factors(k)) {
    PrimePoly h = frob[k / ell];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    PrimePoly g = poly_gcd(h, f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return {0, 1};
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < k; ++i) total *= p;
  // Tuples (c_0, ..., c_{k-1}) in lexicographic order, c_0 most significant.
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    PrimePoly f(k + 1, 0);
    std::uint64_t r = rank;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[k - 1 - i] = r % p;
      r /= p;
    }
    f[k] = 1;
    if (f[0] == 0) continue;
    if (prime_poly_irreducible(f, p)) return {f.begin(), f.end()};
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field order must be a prime power");
  auto primes = prime_factors(q);
  if (primes.size() != 1) {
    throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
  }
  std::uint32_t k = 0;
  for (std::uint64_t m = q; m > 1; m /= primes[0]) ++k;
  return {static_cast<std::uint32_t>(primes[0]), k};
}

Field::Field(std::uint32_t p, std::uint32_t k) : p_(p), k_(k), q_(1) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw std::invalid_argument("extension degree must be at least 1");
  for (std::uint32_t i = 0; i < k; ++i) {
    q_ *= p;
    if (q_ >= (std::uint64_t{1} << 32)) {
      throw std::invalid_argument("field order exceeds 2^32");
    }
  }
  modulus_ = smallest_irreducible(p, k);
  for (std::uint64_t r = 1; r < q_; ++r) {
    Elem a = from_rank(r);
    if (a != 0 && multiplicative_order(a) == q_ - 1) {
      primitive_ = a;
      break;
    }
  }
  if (k_ > 1 && q_ <= (std::uint64_t{1} << 20)) build_tables();
}

void Field::build_tables() {
  const std::uint64_t m = q_ - 1;
  exp_.assign(2 * m, 0);
  log_.assign(q_, kNoLog);
  Elem x = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    exp_[i] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_slow(x, primitive_);
  }
  for (std::uint64_t i = m; i < 2 * m; ++i) exp_[i] = exp_[i - m];
  zech_.assign(m, kNoLog);
  for (std::uint64_t d = 0; d < m; ++d) {
    Elem s = add_slow(1, exp_[d]);
    zech_[d] = s == 0 ? kNoLog : log_[s];
  }
  tables_ = true;
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
  std::vector<std::uint32_t> c(k_, 0);
  std::uint64_t v = a;
  for (std::uint32_t i = 0; i < k_; ++i) {
    c[i] = static_cast<std::uint32_t>(v % p_);
    v /= p_;
  }
  return c;
}

Elem Field::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() > k_) throw std::invalid_argument("too many coefficients for field element");
  std::uint64_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
    v = v * p_ + c[i];
  }
  return static_cast<Elem>(v);
}

std::uint64_t Field::rank_of(Elem a) const {
  auto c = coeffs(a);
  std::uint64_t r = 0;
  for (std::uint32_t i = 0; i < k_; ++i) r = r * p_ + c[i];
  return r;
}

Elem Field::from_rank(std::uint64_t r) const {
  std::vector<std::uint32_t> c(k_, 0);
  for (std::uint32_t i = 0; i < k_; ++i) {
    c[k_ - 1 - i] = static_cast<std::uint32_t>(r % p_);
    r /= p_;
  }
  return from_coeffs(c);
}

Elem Field::add_slow(Elem a, Elem b) const {
  auto ca = coeffs(a);
  auto cb = coeffs(b);
  for (std::uint32_t i = 0; i < k_; ++i) ca[i] = static_cast<std::uint32_t>((std::uint64_t{ca[i]} + cb[i]) % p_);
  return from_coeffs(ca);
}

Elem Field::neg_slow(Elem a) const {
  auto c = coeffs(a);
  for (auto& x : c) x = x == 0 ? 0 : p_ - x;
  return from_coeffs(c);
}

Elem Field::mul_slow(Elem a, Elem b) const {
  auto ca = coeffs(a);
  auto cb = coeffs(b);
  PrimePoly pa(ca.begin(), ca.end()), pb(cb.begin(), cb.end());
  PrimePoly f(modulus_.begin(), modulus_.end());
  trim(pa);
  trim(pb);
  PrimePoly r = poly_mulmod(pa, pb, f, p_);
  std::vector<std::uint32_t> c(k_, 0);
  for (std::size_t i = 0; i < r.size(); ++i) c[i] = static_cast<std::uint32_t>(r[i]);
  return from_coeffs(c);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("division by zero");
  if (k_ == 1) return static_cast<Elem>(inv_mod(a, p_));
  if (tables_) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return result;
}

std::uint64_t Field::multiplicative_order(Elem a) const {
  if (a == 0) throw std::domain_error("zero has no multiplicative order");
  std::uint64_t ord = q_ - 1;
  for (std::uint64_t ell : prime_factors(q_ - 1)) {
    while (ord % ell == 0 && pow(a, ord / ell) == 1) ord /= ell;
  }
  return ord;
}

Elem Field::root_of_unity(std::uint64_t d) const {
  if (d == 0 || (q_ - 1) % d != 0) {
    throw std::domain_error("order " + std::to_string(d) + " unavailable in GF(" + std::to_string(q_) + ")");
  }
  return pow(primitive_, (q_ - 1) / d);
}

std::string Field::format(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  auto c = coeffs(a);
  std::string s = "[";
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  s += ']';
  return s;
}

namespace {

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed field element '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Elem Field::parse(std::string_view text) const {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("malformed field element '" + std::string(text) + "'");
    std::string_view body = text.substr(1, text.size() - 2);
    std::vector<std::uint32_t> c;
    while (!body.empty()) {
      auto comma = body.find(',');
      std::string_view tok = body.substr(0, comma);
      const std::int64_t v = parse_int(tok);
      if (v < 0 || v >= static_cast<std::int64_t>(p_)) throw std::invalid_argument("coefficient out of range in '" + std::string(text) + "'");
      c.push_back(static_cast<std::uint32_t>(v));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return from_coeffs(c);
  }
  return from_int(parse_int(text));
}

FieldPtr field(std::uint32_t p, std::uint32_t k) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, k});
    if (it != cache.end()) return it->second;
  }
  // Construct outside the lock; the first insert wins.
  auto f = std::make_shared<const Field>(p, k);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(p, k), std::move(f)).first->second;
}

const Fe& Fe::same_field(const Fe& o) const {
  if (f_ != o.f_) throw std::invalid_argument("mismatched fields");
  return o;
}

Fe Fe::operator+(const Fe& o) const { return {f_, f_->add(v_, same_field(o).v_)}; }
Fe Fe::operator-(const Fe& o) const { return {f_, f_->sub(v_, same_field(o).v_)}; }
Fe Fe::operator*(const Fe& o) const { return {f_, f_->mul(v_, same_field(o).v_)}; }
Fe Fe::operator/(const Fe& o) const { return {f_, f_->div(v_, same_field(o).v_)}; }

Fe frobenius(const Fe& a) { return {a.field(), a.field()->frobenius(a.value())}; }
Fe root_of_unity(const FieldPtr& f, std::uint64_t d) { return {f, f->root_of_unity(d)}; }
Fe parse_fe(const FieldPtr& f, std::string_view text) { return {f, f->parse(text)}; }

Embedding::Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
  if (src_->characteristic() != dst_->characteristic() || dst_->degree() % src_->degree() != 0) {
    throw std::invalid_argument("no embedding GF(" + std::to_string(src_->order()) + ") -> GF(" +
                                std::to_string(dst_->order()) + ")");
  }
  const std::uint32_t k = src_->degree();
  if (k == 1) {
    powers_ = {1};
    return;
  }
  const auto& mod = src_->modulus();
  Elem root = 0;
  bool found = false;
  for (std::uint64_t r = 0; r < dst_->order() && !found; ++r) {
    Elem x = dst_->from_rank(r);
    Elem acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = dst_->add(dst_->mul(acc, x), mod[i]);
    if (acc == 0) {
      root = x;
      found = true;
    }
  }
  if (!found) throw std::logic_error("modulus has no root in the target field");
  powers_.resize(k);
  powers_[0] = 1;
  for (std::uint32_t i = 1; i < k; ++i) powers_[i] = dst_->mul(powers_[i - 1], root);
}

Elem Embedding::operator()(Elem a) const {
  if (src_->degree() == 1) return a;
  auto c = src_->coeffs(a);
  Elem acc = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i]) acc = dst_->add(acc, dst_->mul(dst_->from_int(c[i]), powers_[i]));
  }
  return acc;
}

const Embedding& embedding(const FieldPtr& src, const FieldPtr& dst) {
  static std::mutex mu;
  static std::map<std::pair<const Field*, const Field*>, std::unique_ptr<Embedding>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{src.get(), dst.get()}];
  if (!slot) slot = std::make_unique<Embedding>(src, dst);
  return *slot;
}

Fe embed(const Fe& a, const FieldPtr& target) { return {target, embedding(a.field(), target)(a.value())}; }

}  // namespace commvar
