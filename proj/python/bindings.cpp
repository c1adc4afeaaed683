#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "commvar/census.hpp"
#include "commvar/cli.hpp"
#include "commvar/errors.hpp"
#include "commvar/typea.hpp"
#include "commvar/weyl.hpp"

namespace py = pybind11;
using namespace commvar;

namespace {

py::object to_py_int(const BigInt& v) { return py::module_::import("builtins").attr("int")(v.str()); }

BigInt from_py_int(const py::handle& v) { return BigInt(py::str(v).cast<std::string>()); }

Strategy strategy_of(const std::string& s) {
  if (s == "brute") return Strategy::brute;
  if (s == "class") return Strategy::classes;
  throw std::invalid_argument("strategy must be 'class' or 'brute'");
}

CensusLimits limits_of(unsigned threads, std::uint64_t max_brute) {
  CensusLimits lim;
  lim.threads = threads;
  lim.max_brute = max_brute ? max_brute : default_max_brute();
  return lim;
}

std::vector<Elem> parse_all(const FieldPtr& f, const std::vector<std::string>& text) {
  std::vector<Elem> out;
  for (const auto& t : text) out.push_back(f->parse(t));
  return out;
}

}  // namespace

PYBIND11_MODULE(commvar, m) {
  m.doc() = "Exact linear algebra over finite fields and point counts of commuting varieties";

  py::register_exception<LimitExceeded>(m, "LimitExceeded");

  m.def("weyl_pair", [](std::uint32_t p, const std::string& alpha, const std::string& beta, std::uint32_t k) {
        auto f = field(p, k);
        auto w = weyl_pair(f, f->parse(alpha), f->parse(beta));
        return std::pair{w.a.str(), w.b.str()};
      },
      py::arg("p"), py::arg("alpha") = "0", py::arg("beta") = "0", py::arg("k") = 1,
      "(A, B) in matrix text with AB - BA = I.");

  m.def("block_pair", [](std::uint32_t p, const std::vector<std::string>& scalars, std::uint32_t k) {
        auto f = field(p, k);
        auto bp = build_block_pair(f, parse_all(f, scalars));
        return std::pair{bp.x.str(), bp.y.str()};
      },
      py::arg("p"), py::arg("scalars"), py::arg("k") = 1, "(X, Y) of size p*len(scalars) with XY - YX = I.");

  m.def("commutator", [](const std::string& a, const std::string& b, std::uint64_t q) {
        auto f = field_of_order(q);
        return lie_commutator(parse_mat(f, a), parse_mat(f, b)).str();
      },
      py::arg("a"), py::arg("b"), py::arg("q"));

  m.def("invariant_factors", [](const std::string& a, std::uint64_t q) {
        std::vector<std::string> out;
        for (const auto& g : invariant_factors(parse_mat(field_of_order(q), a)).factors) out.push_back(g.pretty());
        return out;
      },
      py::arg("a"), py::arg("q"));

  m.def("is_regular", [](const std::string& a, std::uint64_t q) { return is_regular(parse_mat(field_of_order(q), a)); },
        py::arg("a"), py::arg("q"));

  m.def("count_lie_pairs", [](std::size_t n, std::uint64_t q, const std::string& c, const std::string& strategy, unsigned threads,
                              std::uint64_t max_brute) {
        auto f = field_of_order(q);
        return to_py_int(count_lie_pairs(n, f, f->parse(c), strategy_of(strategy), limits_of(threads, max_brute)));
      },
      py::arg("n"), py::arg("q"), py::arg("c") = "1", py::arg("strategy") = "class", py::arg("threads") = 1, py::arg("max_brute") = 0);

  m.def("count_commuting_pairs", [](std::size_t n, std::uint64_t q, const std::string& strategy, unsigned threads, std::uint64_t max_brute) {
        return to_py_int(count_commuting_pairs(n, field_of_order(q), strategy_of(strategy), limits_of(threads, max_brute)));
      },
      py::arg("n"), py::arg("q"), py::arg("strategy") = "class", py::arg("threads") = 1, py::arg("max_brute") = 0);

  m.def("count_group_pairs", [](std::size_t n, std::uint64_t d, std::uint64_t q, const std::string& strategy, unsigned threads,
                                std::uint64_t max_brute) {
        auto f = field_of_order(q);
        const Elem z = zeta_instance(n, d, f).zeta.value();
        return to_py_int(count_group_pairs(n, f, z, strategy_of(strategy), limits_of(threads, max_brute)));
      },
      py::arg("n"), py::arg("d"), py::arg("q"), py::arg("strategy") = "class", py::arg("threads") = 1, py::arg("max_brute") = 0);

  m.def("count_w", [](std::size_t n, std::uint64_t d, std::uint64_t q, const std::string& strategy, unsigned threads, std::uint64_t max_brute) {
        auto f = field_of_order(q);
        const Elem z = zeta_instance(n, d, f).zeta.value();
        return to_py_int(count_w(n, f, z, strategy_of(strategy), limits_of(threads, max_brute)));
      },
      py::arg("n"), py::arg("d"), py::arg("q"), py::arg("strategy") = "class", py::arg("threads") = 1, py::arg("max_brute") = 0);

  m.def("estimate_dimension", [](const std::vector<std::pair<std::uint64_t, py::object>>& points) {
        std::vector<std::pair<std::uint64_t, BigInt>> pts;
        for (const auto& [q, c] : points) pts.emplace_back(q, from_py_int(c));
        auto fit = estimate_dimension(pts);
        return py::make_tuple(fit.fitted, decimal_string(fit.raw), decimal_string(fit.residual));
      },
      py::arg("points"), "(fitted_dimension, raw_exponent, residual) from (q, count) pairs.");

  m.def("classes", [](std::size_t n, std::uint64_t q, bool invertible) {
        py::list out;
        for (const auto& c : enumerate_classes(n, field_of_order(q), invertible)) {
          py::dict d;
          d["class"] = c.str();
          d["representative"] = c.representative().str();
          d["size"] = to_py_int(class_size(c));
          d["centralizer_order"] = to_py_int(centralizer_group_order(c));
          out.append(d);
        }
        return out;
      },
      py::arg("n"), py::arg("q"), py::arg("invertible") = false);

  m.def("component_dimensions", [](std::uint32_t p, std::uint64_t n) {
        auto cd = component_dimensions(p, n);
        py::dict d;
        d["dim_C"] = cd.dim_c;
        d["dim_U1"] = cd.dim_u1;
        d["dim_U2_image"] = cd.dim_u2_image;
        d["pgl"] = cd.pgl;
        d["sl"] = cd.sl;
        d["psl_times_k"] = cd.psl_times_k;
        d["psl_times_k_exists"] = cd.psl_times_k_exists;
        d["equal_components"] = cd.equal_components;
        return d;
      },
      py::arg("p"), py::arg("n"));

  m.def("group_dims", [](std::uint64_t n, std::uint64_t d) {
        auto g = group_dims(n, d);
        return std::pair{g.dim_v, g.dim_w};
      },
      py::arg("n"), py::arg("d"), "(dim V, dim W).");

  m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one command line; returns (exit_status, stdout, stderr).");
}
