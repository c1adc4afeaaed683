#include "commvar/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "commvar/errors.hpp"
#include "commvar/typea.hpp"
#include "commvar/weyl.hpp"
#include "json.hpp"

namespace commvar {

namespace {

using Json = nlohmann::ordered_json;

// Raised for bad parameters that CLI11 cannot see (field mismatch etc.).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t max_classes = 2'000'000;
  std::uint64_t max_brute = 0;
  std::string output;
};

std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::vector<Elem> parse_scalars(const FieldPtr& f, const std::string& text, std::size_t count) {
  std::vector<Elem> out;
  if (text.empty()) return std::vector<Elem>(count, 0);
  for (const auto& tok : split_top_level(text)) out.push_back(f->parse(tok));
  if (out.size() != count) {
    throw ConfigError("expected " + std::to_string(count) + " scalars, got " + std::to_string(out.size()));
  }
  return out;
}

std::vector<std::uint64_t> parse_qs(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& tok : split_top_level(text)) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      prime_power(v);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("'" + tok + "' is not a prime power");
    }
  }
  if (out.empty()) throw ConfigError("--qs needs at least one field order");
  return out;
}

Json poly_list(const InvariantFactors& inv) {
  Json a = Json::array();
  for (const auto& f : inv.factors) a.push_back(f.pretty());
  return a;
}

std::string status(bool ok) { return ok ? "pass" : "fail"; }

CensusLimits limits(const Options& o) {
  CensusLimits lim;
  lim.max_classes = o.max_classes;
  lim.max_brute = o.max_brute;
  lim.threads = o.threads;
  return lim;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "brute") return Strategy::brute;
  return Strategy::classes;
}

// Collects named checks for a verify report.
class CheckSet {
 public:
  void record(const std::string& name, bool ok, const std::string& note = {}) {
    checks_[name] = status(ok);
    if (!note.empty()) notes_[name] = note;
    failed_ |= !ok;
  }
  void skip(const std::string& name, const std::string& why) {
    checks_[name] = "skipped";
    notes_[name] = why;
  }
  // Runs body; a LimitExceeded inside counts as skipped.
  void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
      auto [ok, note] = body();
      record(name, ok, note);
    } catch (const LimitExceeded& e) {
      skip(name, e.what());
    }
  }
  bool failed() const { return failed_; }
  Json to_json(const std::string& suite, Json params) const {
    Json j;
    j["suite"] = suite;
    j["params"] = std::move(params);
    j["checks"] = checks_;
    j["notes"] = notes_.empty() ? Json::object() : notes_;
    j["passed"] = !failed_;
    return j;
  }

 private:
  Json checks_ = Json::object();
  Json notes_ = Json::object();
  bool failed_ = false;
};

Elem draw(const FieldPtr& f, Rng& rng) { return f->from_rank(rng.below(f->order())); }

// ---- verify suites ----

Json verify_weyl(std::uint32_t p, std::size_t r, std::uint32_t k, std::size_t samples, const Options& o, bool& failed) {
  auto f = field(p, k);
  const std::size_t n = p * r;
  Rng rng(o.seed);
  CheckSet cs;
  cs.run("commutator_identity", [&] {
    for (int i = 0; i < 5; ++i) {
      std::vector<Elem> a(r);
      for (auto& x : a) x = draw(f, rng);
      auto bp = build_block_pair(f, a);
      if (!lie_commutator(bp.x, bp.y).is_scalar(1)) return std::pair{false, std::string("[X,Y] != I")};
      if (!is_regular(bp.x) || !invariant_factors(bp.x).regular()) return std::pair{false, std::string("X not regular")};
    }
    return std::pair{true, std::string()};
  });
  cs.run("algebra_dimension_p2", [&] {
    const Elem alpha = draw(f, rng), beta = draw(f, rng);
    auto w = weyl_pair(f, alpha, beta);
    const std::size_t dim = generated_algebra_dimension(w.a, w.b, 2 * p - 2);
    const bool central = w.a.pow(p).is_scalar(f->pow(alpha, p)) && w.b.pow(p).is_scalar(f->pow(beta, p));
    return std::pair{dim == p * p && central && lie_commutator(w.a, w.b).is_scalar(1), "dimension " + std::to_string(dim)};
  });
  if (r == 2) {
    cs.run("kernel_action", [&] {
      auto rec = kernel_action_check(build_block_pair(f, std::vector<Elem>{0, 0}));
      return std::pair{rec.l_ep_is_multiple && rec.x_power_has_expected_shape && rec.x_power_nonzero,
                       "L e_p = " + f->format(rec.coefficient) + " e_p"};
    });
  } else {
    cs.skip("kernel_action", "needs r = 2");
  }
  cs.run("solution_family", [&] {
    std::vector<Elem> a(r);
    for (auto& x : a) x = draw(f, rng);
    auto bp = build_block_pair(f, a);
    SolutionFamily fam(bp.x, bp.y);
    auto space = commutator_solutions(bp.x, Mat::identity(f, n));
    if (!space || space->dimension() != n || !fam.matches(*space)) return std::pair{false, std::string("solution space mismatch")};
    for (int i = 0; i < 20; ++i) {
      std::vector<Elem> c(n);
      for (auto& x : c) x = draw(f, rng);
      Poly g(f, c);
      Mat y = fam.member(g);
      auto back = fam.decompose(y);
      if (!lie_commutator(bp.x, y).is_scalar(1) || !back || !(*back == g)) return std::pair{false, std::string("member failed to decompose")};
    }
    return std::pair{true, "affine dimension " + std::to_string(n)};
  });
  cs.run("block_divisibility", [&] {
    for (std::size_t i = 0; i < samples; ++i) {
      auto [a, b] = random_solution_pair(f, r, rng);
      if (!lie_commutator(a, b).is_scalar(1) || a.trace() != 0 || b.trace() != 0) return std::pair{false, std::string("bad sample")};
      for (const Mat* m : {&a, &b}) {
        for (const auto& part : jordan_type(*m).parts) {
          for (auto s : part.blocks) {
            if (s % p != 0) return std::pair{false, "block of size " + std::to_string(s)};
          }
        }
      }
    }
    return std::pair{true, std::to_string(samples) + " samples"};
  });
  failed |= cs.failed();
  return cs.to_json("weyl", Json{{"p", p}, {"r", r}, {"q", f->order()}, {"samples", samples}, {"seed", o.seed}});
}

Json verify_group(std::size_t n, std::uint64_t d, std::uint64_t q, const Options& o, bool& failed) {
  auto f = field_of_order(q);
  ZetaInstance inst = zeta_instance(n, d, f);
  Rng rng(o.seed);
  CheckSet cs;
  cs.run("central_commutator", [&] {
    for (int i = 0; i < 5; ++i) {
      auto rec = verify_central_commutator(inst, random_invertible(f, n / d, rng));
      if (!rec.holds || !rec.rho_order_d || !rec.shifted_blocks) return std::pair{false, std::string("[D,rho] != zeta I")};
    }
    return std::pair{true, std::string()};
  });
  const Elem z = inst.zeta.value();
  // Exhaustive checks over GL_n(F_q) while within the brute limit.
  std::uint64_t total = 1;
  bool feasible = true;
  for (std::size_t i = 0; i < n * n && feasible; ++i) {
    if (total > o.max_brute / q) feasible = false;
    total *= q;
  }
  if (!feasible) {
    cs.skip("solution_coset_law", "GL_n(F_q) scan exceeds the brute-scan limit");
    cs.skip("twist_coherence", "GL_n(F_q) scan exceeds the brute-scan limit");
  } else {
    cs.run("solution_coset_law", [&] {
      std::uint64_t evaluations = total, checked = 0;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        Mat x(f, n, n);
        std::uint64_t code = idx;
        for (std::size_t i = 0; i < n * n; ++i) {
          x(i / n, i % n) = f->from_rank(code % q);
          code /= q;
        }
        if (det(x) == 0) continue;
        const std::uint64_t budget = o.max_brute > evaluations ? o.max_brute - evaluations : 0;
        auto [count, members] = count_invertible_solutions(x, z, budget);
        evaluations += members;
        auto coset = solution_set_for_x(x, inst);
        const BigInt expected = coset ? coset->centralizer_order : BigInt(0);
        if (BigInt(count) != expected) return std::pair{false, "x = " + x.str()};
        if (coset && !coset->contains(coset->witness)) return std::pair{false, "bad witness for " + x.str()};
        ++checked;
      }
      return std::pair{true, std::to_string(checked) + " elements"};
    });
    cs.run("twist_coherence", [&] {
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        Mat x(f, n, n);
        std::uint64_t code = idx;
        for (std::size_t i = 0; i < n * n; ++i) {
          x(i / n, i % n) = f->from_rank(code % q);
          code /= q;
        }
        if (det(x) == 0) continue;
        if (is_conjugate_to_zeta_x(x, inst.zeta) != twist_fixed(class_of(x), z)) return std::pair{false, "x = " + x.str()};
      }
      return std::pair{true, std::string()};
    });
  }
  failed |= cs.failed();
  return cs.to_json("group", Json{{"n", n}, {"d", d}, {"q", q}, {"zeta", inst.zeta.str()}, {"seed", o.seed}});
}

Json verify_lie_trace(std::size_t n, std::uint32_t p, std::uint32_t k, const Options& o, bool& failed) {
  auto f = field(p, k);
  CheckSet cs;
  if (n % p == 0) {
    cs.skip("trace_obstruction", "p divides n");
  } else {
    cs.run("trace_obstruction", [&] {
      const BigInt by_class = count_lie_pairs(n, f, 1, Strategy::classes, limits(o));
      std::string note = "class count " + by_class.str();
      bool ok = by_class == 0;
      try {
        const BigInt brute = count_lie_pairs(n, f, 1, Strategy::brute, limits(o));
        ok = ok && brute == 0;
        note += ", brute count " + brute.str();
      } catch (const LimitExceeded&) {
        note += ", brute scan skipped";
      }
      return std::pair{ok, note};
    });
  }
  failed |= cs.failed();
  return cs.to_json("lie-trace", Json{{"n", n}, {"p", p}, {"q", f->order()}});
}

Json verify_canon(std::size_t n, std::uint64_t q, std::size_t samples, const Options& o, bool& failed) {
  auto f = field_of_order(q);
  Rng rng(o.seed);
  CheckSet cs;
  std::vector<Mat> mats;
  for (std::size_t i = 0; i < samples; ++i) {
    Mat a = random_matrix(f, n, n, rng);
    // also cover derogatory matrices
    if (i % 3 == 1) a = Mat::scalar(f, n, draw(f, rng));
    if (i % 3 == 2 && n >= 2) {
      Mat b = random_matrix(f, n / 2, n / 2, rng);
      a = n % 2 ? block_diag({b, b, Mat::scalar(f, 1, draw(f, rng))}) : block_diag({b, b});
    }
    mats.push_back(std::move(a));
  }
  cs.run("rational_form", [&] {
    for (const auto& a : mats) {
      auto rc = rational_canonical_form(a);
      if (!(inverse(rc.basis) * a * rc.basis == rc.form)) return std::pair{false, "A = " + a.str()};
    }
    return std::pair{true, std::string()};
  });
  cs.run("similarity_transform", [&] {
    for (const auto& a : mats) {
      Mat g = random_invertible(f, n, rng);
      Mat b = inverse(g) * a * g;
      auto t = similarity_transform(a, b);
      if (!t || !(inverse(*t) * a * *t == b)) return std::pair{false, "A = " + a.str()};
    }
    return std::pair{true, std::string()};
  });
  cs.run("minimal_polynomial", [&] {
    for (const auto& a : mats) {
      Poly m = min_poly(a);
      auto inv = invariant_factors(a);
      if (!evaluate(m, a).is_zero() || !(inv.factors.back() == m) || !(inv.char_poly() == char_poly(a))) return std::pair{false, "A = " + a.str()};
    }
    return std::pair{true, std::string()};
  });
  cs.run("jordan_rank_sequence", [&] {
    for (const auto& a : mats) {
      auto jt = jordan_type(a);
      Mat lifted = jt.field == f ? a : lift(a, embedding(f, jt.field));
      std::size_t total = 0;
      for (const auto& part : jt.parts) {
        Mat nm = lifted - Mat::scalar(jt.field, n, part.eigenvalue);
        for (std::size_t j = 1; j <= n; ++j) {
          const auto expect = static_cast<std::size_t>(std::count_if(part.blocks.begin(), part.blocks.end(), [j](std::size_t s) { return s >= j; }));
          if (rank(nm.pow(j - 1)) - rank(nm.pow(j)) != expect) return std::pair{false, "A = " + a.str()};
        }
        for (auto s : part.blocks) total += s;
      }
      if (total != n) return std::pair{false, "A = " + a.str()};
    }
    return std::pair{true, std::string()};
  });
  cs.run("regularity", [&] {
    for (const auto& a : mats) {
      if (is_regular(a) != (centralizer_dimension(a) == n)) return std::pair{false, "A = " + a.str()};
    }
    return std::pair{true, std::string()};
  });
  cs.run("regular_commuting", [&] {
    for (const auto& a : mats) {
      auto rc = regular_commuting(a);
      Mat lifted = rc.r.field() == f ? a : lift(a, embedding(f, rc.r.field()));
      if (!(lifted * rc.r == rc.r * lifted) || !is_regular(rc.r)) return std::pair{false, "A = " + a.str()};
    }
    return std::pair{true, std::string()};
  });
  failed |= cs.failed();
  return cs.to_json("canon", Json{{"n", n}, {"q", q}, {"samples", samples}, {"seed", o.seed}});
}

// ---- count ----

Json counts_json(const CountReport& r) {
  Json j;
  j["variety"] = r.variety;
  j["n"] = r.n;
  j["p"] = r.p;
  Json counts = Json::array();
  for (const auto& c : r.counts) counts.push_back(Json{{"q", c.q}, {"count", c.count.str()}, {"strategy", to_string(c.strategy)}});
  j["counts"] = counts;
  if (r.fit) {
    j["fitted_dimension"] = r.fit->fitted;
    j["raw_exponent"] = decimal_string(r.fit->raw);
    j["residual"] = decimal_string(r.fit->residual);
  } else {
    j["fitted_dimension"] = nullptr;
    j["raw_exponent"] = nullptr;
    j["residual"] = nullptr;
  }
  j["expected_dimension"] = r.expected_dimension;
  j["match"] = r.match;
  return j;
}

void emit(const Json& j, const Options& o, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + o.output);
  file << text;
}

}  // namespace

std::string count_report_json(const CountReport& r) { return counts_json(r).dump(2); }

std::uint64_t default_max_brute() {
  if (const char* env = std::getenv("COMMVAR_MAX_BRUTE")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("COMMVAR_MAX_BRUTE is not a number: ") + env);
  }
  return std::uint64_t{1} << 26;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commuting-variety constructions, checks, and point counts over finite fields", "commvar"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t max_brute_flag = 0;
  app.add_option("--seed", o.seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads for class-based counts")->capture_default_str()->check(CLI::Range(1u, 256u));
  app.add_option("--max-classes", o.max_classes, "Class enumeration limit")->capture_default_str();
  app.add_option("--max-brute", max_brute_flag, "Brute-scan limit in matrix evaluations (default: COMMVAR_MAX_BRUTE or 2^26)");
  app.add_option("--output", o.output, "Write JSON here instead of standard output");

  // construct
  auto* construct = app.add_subcommand("construct", "Build a matrix family and check its defining identity");
  construct->require_subcommand(1);
  std::uint32_t c_p = 2, c_k = 1;
  std::size_t c_r = 1, c_n = 2;
  std::uint64_t c_d = 2, c_q = 3;
  std::string c_alpha = "0", c_beta = "0", c_scalars, c_a, c_b, c_seed_mat;
  auto* cw = construct->add_subcommand("weyl", "p x p pair with AB - BA = I");
  cw->add_option("--p", c_p)->required();
  cw->add_option("--k", c_k)->capture_default_str();
  cw->add_option("--alpha", c_alpha)->capture_default_str();
  cw->add_option("--beta", c_beta)->capture_default_str();
  auto* cb = construct->add_subcommand("blockpair", "X(a_1..a_r), Y = diag(B_0, ..., B_0)");
  cb->add_option("--p", c_p)->required();
  cb->add_option("--r", c_r)->required();
  cb->add_option("--k", c_k)->capture_default_str();
  cb->add_option("--scalars", c_scalars, "Comma-separated a_i (default all zero)");
  auto* cs = construct->add_subcommand("splitpair", "A(a) = diag(A_0 + a_i I), B(b) = diag(B_0 + b_i I)");
  cs->add_option("--p", c_p)->required();
  cs->add_option("--r", c_r)->required();
  cs->add_option("--k", c_k)->capture_default_str();
  cs->add_option("--a", c_a);
  cs->add_option("--b", c_b);
  auto* cg = construct->add_subcommand("group", "D = diag(A, zeta A, ...) and the block cycle rho");
  cg->add_option("--n", c_n)->required();
  cg->add_option("--d", c_d)->required();
  cg->add_option("--q", c_q)->required();
  cg->add_option("--a", c_seed_mat, "Block seed A as a matrix (default identity)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a named suite of executable checks");
  std::string suite;
  std::uint32_t v_p = 0, v_k = 1;
  std::size_t v_r = 2, v_n = 0, v_samples = 0;
  std::uint64_t v_d = 2, v_q = 0;
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember({"weyl", "group", "lie-trace", "canon", "all"}));
  verify->add_option("--p", v_p);
  verify->add_option("--r", v_r);
  verify->add_option("--k", v_k);
  verify->add_option("--n", v_n);
  verify->add_option("--d", v_d);
  verify->add_option("--q", v_q);
  verify->add_option("--samples", v_samples);

  // count
  auto* count = app.add_subcommand("count", "Point counts over several q with a dimension fit");
  std::string variety, qs_text, strategy = "class", c_value = "1";
  std::uint32_t n_p = 0;
  std::size_t n_n = 0;
  std::uint64_t n_d = 1;
  bool expect = false, cross_check = false;
  count->add_option("variety", variety)->required()->check(CLI::IsMember({"lie", "commuting", "group", "W"}));
  count->add_option("--p", n_p);
  count->add_option("--n", n_n)->required();
  count->add_option("--d", n_d);
  count->add_option("--c", c_value, "Scalar c in AB - BA = cI")->capture_default_str();
  count->add_option("--qs", qs_text)->required();
  count->add_option("--strategy", strategy)->capture_default_str()->check(CLI::IsMember({"class", "brute"}));
  count->add_flag("--expect", expect, "Exit 1 unless the fit matches the expected dimension");
  count->add_flag("--cross-check", cross_check, "Also run the brute scan where feasible and compare");

  // classes
  auto* classes = app.add_subcommand("classes", "List conjugacy classes of M_n(F_q)");
  std::size_t k_n = 0;
  std::uint64_t k_q = 0;
  bool invertible = false;
  classes->add_option("--n", k_n)->required();
  classes->add_option("--q", k_q)->required();
  classes->add_flag("--invertible", invertible);

  // dims
  auto* dims = app.add_subcommand("dims", "Closed-form dimensions");
  dims->require_subcommand(1);
  std::uint32_t d_p = 0;
  std::uint64_t d_n = 0, d_d = 0;
  auto* dl = dims->add_subcommand("lie", "Component dimensions for p | n");
  dl->add_option("--p", d_p)->required();
  dl->add_option("--n", d_n)->required();
  auto* dg = dims->add_subcommand("group", "dim V and dim W for d | n");
  dg->add_option("--n", d_n)->required();
  dg->add_option("--d", d_d)->required();

  for (auto* sub : {construct, cw, cb, cs, cg, verify, count, classes, dims, dl, dg}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      err << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    o.max_brute = max_brute_flag ? max_brute_flag : default_max_brute();
    Json j;
    int code = kExitPass;

    if (*construct) {
      if (*cw) {
        auto f = field(c_p, c_k);
        auto w = weyl_pair(f, f->parse(c_alpha), f->parse(c_beta));
        const bool ok = lie_commutator(w.a, w.b).is_scalar(1);
        const bool central = w.a.pow(c_p).is_scalar(f->pow(w.alpha, c_p)) && w.b.pow(c_p).is_scalar(f->pow(w.beta, c_p));
        const std::size_t dim = generated_algebra_dimension(w.a, w.b, 2 * c_p - 2);
        j = Json{{"family", "weyl"}, {"p", c_p}, {"q", f->order()}, {"alpha", f->format(w.alpha)}, {"beta", f->format(w.beta)},
                 {"A", w.a.str()}, {"B", w.b.str()}, {"commutator_is_identity", ok}, {"central_powers", central},
                 {"algebra_dimension", dim}, {"invariant_factors_A", poly_list(invariant_factors(w.a))}};
        if (!ok || !central || dim != c_p * c_p) code = kExitCheckFailed;
        err << "weyl pair p=" << c_p << ": [A,B]=I " << status(ok) << ", algebra dimension " << dim << "\n";
      } else if (*cb) {
        auto f = field(c_p, c_k);
        if (c_r == 0) throw ConfigError("--r must be positive");
        auto bp = build_block_pair(f, parse_scalars(f, c_scalars, c_r));
        const bool ok = lie_commutator(bp.x, bp.y).is_scalar(1);
        const bool reg = is_regular(bp.x);
        Json scal = Json::array();
        for (auto s : bp.scalars) scal.push_back(f->format(s));
        j = Json{{"family", "blockpair"}, {"p", c_p}, {"r", c_r}, {"q", f->order()}, {"scalars", scal},
                 {"X", bp.x.str()}, {"Y", bp.y.str()}, {"commutator_is_identity", ok}, {"regular", reg},
                 {"invariant_factors", poly_list(invariant_factors(bp.x))}, {"x_power_p_nonzero", !bp.x.pow(c_p).is_zero()}};
        if (!ok || !reg) code = kExitCheckFailed;
        err << "block pair p=" << c_p << " r=" << c_r << ": [X,Y]=I " << status(ok) << ", regular " << status(reg) << "\n";
      } else if (*cs) {
        auto f = field(c_p, c_k);
        if (c_r == 0) throw ConfigError("--r must be positive");
        auto a = parse_scalars(f, c_a, c_r);
        auto b = parse_scalars(f, c_b, c_r);
        auto [ma, mb] = generic_split_pair(f, a, b);
        const bool ok = lie_commutator(ma, mb).is_scalar(1);
        const std::size_t jc = joint_centralizer_dimension(ma, mb);
        j = Json{{"family", "splitpair"}, {"p", c_p}, {"r", c_r}, {"q", f->order()}, {"A", ma.str()}, {"B", mb.str()},
                 {"commutator_is_identity", ok}, {"joint_centralizer_dimension", jc}};
        if (!ok) code = kExitCheckFailed;
        err << "split pair p=" << c_p << " r=" << c_r << ": joint centralizer dimension " << jc << "\n";
      } else {
        auto f = field_of_order(c_q);
        ZetaInstance inst = zeta_instance(c_n, c_d, f);
        const std::size_t m = c_n / c_d;
        Mat a = c_seed_mat.empty() ? Mat::identity(f, m) : parse_mat(f, c_seed_mat);
        auto rec = verify_central_commutator(inst, a);
        j = Json{{"family", "group"}, {"n", c_n}, {"d", c_d}, {"q", c_q}, {"zeta", inst.zeta.str()}, {"A", a.str()},
                 {"D", rec.d.str()}, {"rho", rec.rho.str()}, {"[D,rho]", rec.holds ? std::string("zeta*I") : rec.commutator.str()},
                 {"rho_order_d", rec.rho_order_d}, {"holds", rec.holds}};
        if (!rec.holds || !rec.rho_order_d) code = kExitCheckFailed;
        err << "group pair n=" << c_n << " d=" << c_d << " q=" << c_q << ": [D,rho]=zeta I " << status(rec.holds) << "\n";
      }
    } else if (*verify) {
      bool failed = false;
      auto run_suite = [&](const std::string& name) -> Json {
        if (name == "weyl") return verify_weyl(v_p ? v_p : 3, v_r, v_k, v_samples ? v_samples : 100, o, failed);
        if (name == "group") return verify_group(v_n ? v_n : 2, v_d, v_q ? v_q : 3, o, failed);
        if (name == "lie-trace") return verify_lie_trace(v_n ? v_n : 2, v_p ? v_p : 3, v_k, o, failed);
        return verify_canon(v_n ? v_n : 4, v_q ? v_q : 3, v_samples ? v_samples : 20, o, failed);
      };
      if (suite == "all") {
        Json suites = Json::array();
        for (const char* s : {"weyl", "group", "lie-trace", "canon"}) suites.push_back(run_suite(s));
        j = Json{{"suite", "all"}, {"suites", suites}, {"passed", !failed}};
      } else {
        j = run_suite(suite);
      }
      if (failed) code = kExitCheckFailed;
      err << "verify " << suite << ": " << (failed ? "FAILED" : "all checks passed") << "\n";
    } else if (*count) {
      auto qs = parse_qs(qs_text);
      std::sort(qs.begin(), qs.end());
      if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) throw ConfigError("--qs has repeated entries");
      const std::uint32_t p = prime_power(qs.front()).first;
      for (auto q : qs) {
        if (prime_power(q).first != p) throw ConfigError("--qs must share one characteristic");
      }
      CountReport rep{variety, n_n, p, {}, std::nullopt, 0, false};
      if (variety == "lie") {
        if (n_p == 0) throw ConfigError("count lie needs --p");
        if (n_p != p) throw ConfigError("--qs must be powers of --p");
        if (n_n % p != 0) throw ConfigError("p must divide n: otherwise tr(AB - BA) = 0 != tr(cI) and there are no points (see verify --suite lie-trace)");
        rep.expected_dimension = static_cast<std::int64_t>(component_dimensions(p, n_n).dim_c);
      } else if (variety == "commuting") {
        rep.expected_dimension = static_cast<std::int64_t>(n_n * n_n + n_n);
      } else {
        auto gd = group_dims(n_n, n_d);
        rep.expected_dimension = static_cast<std::int64_t>(variety == "group" ? gd.dim_v : gd.dim_w);
      }
      const Strategy strat = parse_strategy(strategy);
      auto count_at = [&](std::uint64_t q, Strategy s) -> BigInt {
        auto f = field_of_order(q);
        if (variety == "lie") {
          const Elem c = f->parse(c_value);
          if (c == 0) throw ConfigError("--c must be nonzero");
          return count_lie_pairs(n_n, f, c, s, limits(o));
        }
        if (variety == "commuting") return count_commuting_pairs(n_n, f, s, limits(o));
        const Elem z = zeta_instance(n_n, n_d, f).zeta.value();
        return variety == "group" ? count_group_pairs(n_n, f, z, s, limits(o)) : count_w(n_n, f, z, s, limits(o));
      };
      Json checks = Json::array();
      bool disagree = false;
      for (auto q : qs) {
        rep.counts.push_back({q, count_at(q, strat), strat});
        if (cross_check && strat == Strategy::classes) {
          try {
            const BigInt brute = count_at(q, Strategy::brute);
            const bool agrees = brute == rep.counts.back().count;
            disagree |= !agrees;
            checks.push_back(Json{{"q", q}, {"strategy", "brute"}, {"count", brute.str()}, {"agrees", agrees}});
          } catch (const LimitExceeded&) {
            checks.push_back(Json{{"q", q}, {"strategy", "brute"}, {"count", nullptr}, {"agrees", nullptr}});
          }
        }
      }
      finish_report(rep);
      j = counts_json(rep);
      if (cross_check) j["cross_checks"] = checks;
      if (disagree || (expect && !rep.match)) code = kExitCheckFailed;
      err << "count " << variety << " n=" << n_n << ": ";
      if (rep.fit) {
        err << "fitted " << rep.fit->fitted << " (expected " << rep.expected_dimension << "), residual " << decimal_string(rep.fit->residual).substr(0, 8);
      } else {
        err << "single point, no fit";
      }
      err << (disagree ? ", brute cross-check DISAGREES" : "") << "\n";
    } else if (*classes) {
      auto f = field_of_order(k_q);
      auto list = enumerate_classes(k_n, f, invertible, o.max_classes);
      Json arr = Json::array();
      BigInt total = 0;
      for (const auto& c : list) {
        Json parts = Json::array();
        for (const auto& part : c.parts) parts.push_back(Json{{"f", part.f.str()}, {"partition", part.partition}});
        const BigInt size = class_size(c);
        total += size;
        arr.push_back(Json{{"primary", parts}, {"size", size.str()}, {"centralizer_order", centralizer_group_order(c).str()}});
      }
      j = Json{{"n", k_n}, {"q", k_q}, {"invertible", invertible}, {"count", list.size()}, {"total_size", total.str()}, {"classes", arr}};
      err << list.size() << " classes\n";
    } else {
      if (*dl) {
        auto cd = component_dimensions(d_p, d_n);
        j = Json{{"p", cd.p}, {"n", cd.n}, {"r", cd.r}, {"dim_C", cd.dim_c}, {"dim_U1", cd.dim_u1}, {"dim_U2_image", cd.dim_u2_image},
                 {"dims_pgl", {cd.pgl.first, cd.pgl.second}}, {"dims_sl", cd.sl},
                 {"dims_psl_times_k", {cd.psl_times_k.first, cd.psl_times_k.second}}, {"psl_times_k_exists", cd.psl_times_k_exists},
                 {"equal_components", cd.equal_components}};
      } else {
        auto gd = group_dims(d_n, d_d);
        j = Json{{"n", d_n}, {"d", d_d}, {"dim_V", gd.dim_v}, {"dim_W", gd.dim_w}};
      }
    }
    emit(j, o, out);
    return code;
  } catch (const LimitExceeded& e) {
    err << "error: limit exceeded: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitConfigError;
}

}  // namespace commvar
