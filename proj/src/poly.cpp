#include "commvar/poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "commvar/errors.hpp"
#include "commvar/rng.hpp"

namespace commvar {

Poly::Poly(FieldPtr f, std::vector<Elem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const FieldPtr& f, Elem c, std::size_t deg) {
  std::vector<Elem> v(deg + 1, 0);
  v[deg] = c;
  return Poly(f, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Poly& Poly::check(const Poly& o) const {
  if (f_ != o.f_) throw std::invalid_argument("polynomials over different fields");
  return o;
}

Poly Poly::monic() const {
  if (c_.empty() || c_.back() == 1) return *this;
  return scaled(f_->inv(c_.back()));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_);
  std::vector<Elem> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = f_->mul(f_->from_int(static_cast<std::int64_t>(i % f_->characteristic())), c_[i]);
  return Poly(f_, std::move(d));
}

Elem Poly::eval(Elem x) const {
  Elem acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, x), c_[i]);
  return acc;
}

Poly Poly::operator+(const Poly& o) const {
  check(o);
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->add((*this)[i], o[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  check(o);
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->sub((*this)[i], o[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  check(o);
  if (c_.empty() || o.c_.empty()) return Poly(f_);
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
  }
  return Poly(f_, std::move(r));
}

Poly Poly::scaled(Elem s) const {
  std::vector<Elem> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_->mul(c_[i], s);
  return Poly(f_, std::move(r));
}

std::string Poly::str() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += f_->format(c_[i]);
  }
  return s;
}

std::string Poly::pretty() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    std::string coef = f_->format(c_[i]);
    if (i == 0) {
      s += coef;
      continue;
    }
    if (c_[i] != 1) s += coef + "*";
    s += "t";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

Poly parse_poly(const FieldPtr& f, std::string_view text) {
  std::vector<Elem> c;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size()) {
      if (text[i] == '[') ++depth;
      if (text[i] == ']') --depth;
      if (text[i] != ',' || depth > 0) continue;
    }
    c.push_back(f->parse(text.substr(start, i - start)));
    start = i + 1;
  }
  return Poly(f, std::move(c));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.field() != b.field()) throw std::invalid_argument("polynomials over different fields");
  const auto& F = *a.field();
  if (a.degree() < b.degree()) return {Poly(a.field()), a};
  std::vector<Elem> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<Elem> quot(rem.size() - db, 0);
  const Elem lead_inv = F.inv(bc.back());
  for (std::size_t i = rem.size(); i-- > db;) {
    Elem c = F.mul(rem[i], lead_inv);
    quot[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, bc[j]));
  }
  rem.resize(db);
  return {Poly(a.field(), std::move(quot)), Poly(a.field(), std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field());
  return (a / gcd(a, b) * b).monic();
}

Poly pow(Poly base, std::uint64_t e) {
  Poly result = Poly::constant(base.field(), 1);
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& m) {
  Poly result = Poly::constant(base.field(), 1) % m;
  base = base % m;
  while (e > 0) {
    if (e & 1) result = result * base % m;
    e >>= 1;
    if (e) base = base * base % m;
  }
  return result;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& F = *a.field();
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    auto ra = F.rank_of(a.coeffs()[i]);
    auto rb = F.rank_of(b.coeffs()[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

Poly lift(const Poly& f, const Embedding& emb) {
  std::vector<Elem> c(f.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = emb(f.coeffs()[i]);
  return Poly(emb.target(), std::move(c));
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("irreducibility of a constant is undefined");
  const Poly g = f.monic();
  const Poly t = Poly::t(f.field());
  const std::uint64_t q = f.field()->order();
  Poly h = t % g;
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    h = powmod(h, q, g);
    if (!gcd(h - t, g).is_one()) return false;
  }
  return true;
}

namespace {

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Poly& f) {
  const auto& F = *f.field();
  const std::uint32_t p = F.characteristic();
  std::uint64_t e = 1;  // inverse Frobenius is x -> x^{p^{k-1}}
  for (std::uint32_t i = 1; i < F.degree(); ++i) e *= p;
  std::vector<Elem> c((f.coeffs().size() - 1) / p + 1, 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.pow(f[i * p], e);
  return Poly(f.field(), std::move(c));
}

void squarefree(const Poly& f, int mult, std::vector<Factor>& out) {
  if (f.degree() < 1) return;
  const std::uint32_t p = f.field()->characteristic();
  Poly d = f.derivative();
  if (d.is_zero()) {
    squarefree(pth_root(f), mult * static_cast<int>(p), out);
    return;
  }
  Poly c = gcd(f, d);
  Poly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = (w / y).monic();
    if (fac.degree() > 0) out.push_back({fac, i * mult});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree(pth_root(c.monic()), mult * static_cast<int>(p), out);
}

// Splits a squarefree monic f into parts whose factors share a degree.
std::vector<std::pair<Poly, int>> distinct_degree(Poly f) {
  std::vector<std::pair<Poly, int>> out;
  const Poly t = Poly::t(f.field());
  const std::uint64_t q = f.field()->order();
  Poly h = t % f;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, q, f);
    Poly g = gcd(h - t, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

Poly random_poly(const FieldPtr& F, int below_degree, Rng& rng) {
  std::vector<Elem> c(static_cast<std::size_t>(below_degree));
  for (auto& x : c) x = F->from_rank(rng.below(F->order()));
  return Poly(F, std::move(c));
}

// Cantor-Zassenhaus: f squarefree monic, all factors of degree d.
void equal_degree(const Poly& f, int d, Rng& rng, std::vector<Poly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const auto& F = f.field();
  const std::uint64_t q = F->order();
  while (true) {
    Poly a = random_poly(F, f.degree(), rng);
    if (a.degree() < 1) continue;
    Poly b(F);
    if (F->characteristic() == 2) {
      // Absolute trace to F_2: a + a^2 + ... + a^{2^{kd-1}}.
      const unsigned steps = F->degree() * static_cast<unsigned>(d);
      Poly term = a % f;
      b = term;
      for (unsigned i = 1; i < steps; ++i) {
        term = term * term % f;
        b = b + term;
      }
    } else {
      // a^{(q^d-1)/2} = (a^{1+q+...+q^{d-1}})^{(q-1)/2}
      Poly norm = Poly::constant(F, 1);
      Poly frob = a % f;
      for (int i = 0; i < d; ++i) {
        norm = norm * frob % f;
        if (i + 1 < d) frob = powmod(frob, q, f);
      }
      b = powmod(norm, (q - 1) / 2, f) - Poly::constant(F, 1);
    }
    Poly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree((f / g).monic(), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Factor> factor(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  Rng rng(seed);
  std::vector<Factor> sqf;
  squarefree(f.monic(), 1, sqf);
  std::vector<Factor> out;
  for (const auto& [part, mult] : sqf) {
    for (const auto& [group, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree(group, d, rng, irr);
      for (auto& g : irr) out.push_back({std::move(g), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return poly_less(a.poly, b.poly); });
  // Merge repeats that arise from separate squarefree parts.
  std::vector<Factor> merged;
  for (auto& fac : out) {
    if (!merged.empty() && merged.back().poly == fac.poly) {
      merged.back().multiplicity += fac.multiplicity;
    } else {
      merged.push_back(std::move(fac));
    }
  }
  return merged;
}

std::vector<Elem> roots(const Poly& f, std::uint64_t seed) {
  std::vector<Elem> out;
  if (f.degree() < 1) return out;
  for (const auto& fac : factor(f, seed)) {
    if (fac.poly.degree() == 1) out.push_back(fac.poly.field()->neg(fac.poly[0]));
  }
  const auto& F = *f.field();
  std::sort(out.begin(), out.end(), [&F](Elem a, Elem b) { return F.rank_of(a) < F.rank_of(b); });
  return out;
}

std::vector<Poly> irreducibles_of_degree(const FieldPtr& f, unsigned d, std::uint64_t limit) {
  if (d == 0) throw std::invalid_argument("degree must be positive");
  const std::uint64_t q = f->order();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < d; ++i) {
    total *= q;
    if (total > limit) {
      throw LimitExceeded("enumeration too large: " + std::to_string(q) + "^" + std::to_string(d) +
                          " candidate polynomials of degree " + std::to_string(d));
    }
  }
  std::vector<Poly> out;
  std::vector<Elem> c(d + 1, 0);
  c[d] = 1;
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    std::uint64_t r = rank;
    for (unsigned i = 0; i < d; ++i) {
      c[d - 1 - i] = f->from_rank(r % q);
      r /= q;
    }
    if (d > 1 && c[0] == 0) continue;
    Poly g(f, c);
    if (is_irreducible(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace commvar
