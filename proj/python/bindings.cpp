#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vilenkin/chaos_index.hpp"
#include "vilenkin/cli.hpp"
#include "vilenkin/errors.hpp"
#include "vilenkin/khinchin.hpp"
#include "vilenkin/uniqueness.hpp"
#include "vilenkin/vc_system.hpp"

namespace py = pybind11;
using namespace vilenkin;

namespace {

IndexSpec make_spec(const std::string& set, unsigned p, unsigned order, std::vector<unsigned> digits) {
  IndexSpec spec;
  if (set == "v") spec = IndexSpec::v(p, order);
  else if (set == "vtilde") spec = IndexSpec::vtilde(p, order);
  else if (set == "wtilde") spec = IndexSpec::wtilde(p, order);
  else if (set == "aset") spec = IndexSpec::aset(p, order, std::move(digits));
  else throw DomainError("unknown index set '" + set + "'");
  spec.validate();
  return spec;
}

using Coeffs = std::vector<std::string>;

Coeffs to_strings(const CycloValue& v) {
  Coeffs out;
  for (const auto& r : v.canonical()) out.push_back(r.to_string());
  out.resize(v.base(), "0/1");
  return out;
}

// Each entry is either one rational or p rationals (coefficients of omega^j).
CycloValue from_strings(unsigned p, const Coeffs& c) {
  if (c.size() == 1) return CycloValue::constant(p, Rational::parse(c[0]));
  if (c.size() != p) throw DomainError("cyclotomic value needs 1 or p coefficients");
  std::vector<Rational> r;
  for (const auto& s : c) r.push_back(Rational::parse(s));
  return CycloValue(p, std::move(r));
}

FloatCoeffs float_coeffs(unsigned p, const std::map<Index, std::complex<double>>& c) {
  FloatCoeffs out;
  out.p = p;
  out.coeffs = c;
  return out;
}

py::dict sharpness_dict(const SharpnessReport& r) {
  py::dict d;
  d["level_set_measure"] = r.level_set_measure.to_string();
  d["threshold"] = r.threshold.to_string();
  d["level_value"] = to_strings(r.level_value);
  std::map<Index, Coeffs> coeffs;
  for (const auto& [n, v] : r.witness.coeffs) coeffs[n] = to_strings(v);
  d["coefficients"] = coeffs;
  d["passed"] = r.passed();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Vilenkin-Chrestenson analysis.";

  // Translators run most recent first, so derived types are registered last.
  auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto& domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BaseMismatch>(m, "BaseMismatch", domain.ptr());
  py::register_exception<RankOverflow>(m, "RankOverflow", base.ptr());

  m.def("cell_limit", &cell_limit);
  m.def("set_cell_limit", &set_cell_limit, py::arg("max_cells"));

  m.def("vc_exponent", &vc_exponent, py::arg("n"), py::arg("m"), py::arg("p"), py::arg("rank"));
  m.def(
      "vc_matrix_exponents",
      [](unsigned p, unsigned rank) {
        const VCMatrix M(p, rank);
        std::vector<std::vector<unsigned>> rows(M.size(), std::vector<unsigned>(M.size()));
        for (Index n = 0; n < M.size(); ++n) {
          for (Index c = 0; c < M.size(); ++c) rows[n][c] = M.exponent(n, c);
        }
        return rows;
      },
      py::arg("p"), py::arg("rank"));
  m.def("verify_inverse_identity", &verify_inverse_identity, py::arg("p"), py::arg("rank"));
  m.def("matrix_op_norm", &matrix_op_norm, py::arg("p"), py::arg("rank"), py::arg("iterations") = 100);

  m.def(
      "transform",
      [](const std::vector<std::complex<double>>& values, unsigned p, bool inverse) {
        py::gil_scoped_release release;
        return fast_vc_transform(values, p, inverse ? Direction::kInverse : Direction::kForward);
      },
      py::arg("values"), py::arg("p"), py::arg("inverse") = false);
  m.def(
      "transform_exact",
      [](const std::vector<Coeffs>& values, unsigned p, bool inverse) {
        std::vector<CycloValue> in;
        for (const auto& v : values) in.push_back(from_strings(p, v));
        std::vector<Coeffs> out;
        for (const auto& v : fast_vc_transform(in, inverse ? Direction::kInverse : Direction::kForward)) {
          out.push_back(to_strings(v));
        }
        return out;
      },
      py::arg("values"), py::arg("p"), py::arg("inverse") = false);

  m.def(
      "enumerate_index",
      [](const std::string& set, unsigned p, unsigned order, Index max_n, std::vector<unsigned> digits) {
        return enumerate(make_spec(set, p, order, std::move(digits)), max_n);
      },
      py::arg("set"), py::arg("p"), py::arg("order"), py::arg("max_n"), py::arg("digits") = std::vector<unsigned>{});
  m.def(
      "count_index",
      [](const std::string& set, unsigned p, unsigned order, unsigned digits) {
        return count(make_spec(set, p, order, {}), digits);
      },
      py::arg("set"), py::arg("p"), py::arg("order"), py::arg("digits"));
  m.def("aset_multiplicity_check", &aset_multiplicity_check, py::arg("p"), py::arg("s"), py::arg("L"),
        py::arg("max_n"));

  m.def("witness_v", [](unsigned p, unsigned d) { return sharpness_dict(witness_v(p, d)); }, py::arg("p"),
        py::arg("d"));
  m.def("witness_vtilde", [](unsigned p, unsigned d) { return sharpness_dict(witness_vtilde(p, d)); },
        py::arg("p"), py::arg("d"));

  m.def(
      "norm_ratio",
      [](const std::string& set, unsigned p, unsigned order, const std::map<Index, std::complex<double>>& c,
         double q) {
        const NormRatio r = norm_ratio(make_spec(set, p, order, {}), float_coeffs(p, c), q);
        std::optional<std::string> exact;
        if (r.exact_power) exact = r.exact_power->to_string();
        return py::make_tuple(r.value, r.err, exact);
      },
      py::arg("set"), py::arg("p"), py::arg("order"), py::arg("coeffs"), py::arg("q"));
  m.def(
      "estimate_constant",
      [](const std::string& set, unsigned p, unsigned order, double q, Index N, std::uint64_t trials,
         std::uint64_t seed, const std::string& optimizer) {
        if (optimizer != "ascent" && optimizer != "random") throw DomainError("optimizer must be ascent or random");
        const IndexSpec spec = make_spec(set, p, order, {});
        KhinchinReport r;
        {
          py::gil_scoped_release release;
          r = estimate_constant(spec, q, N, trials, seed, optimizer == "ascent" ? Optimizer::kAscent : Optimizer::kRandom);
        }
        py::dict d;
        d["best_ratio"] = r.best_ratio;
        d["best_ratio_err"] = r.best_ratio_err;
        d["dimension"] = r.dimension;
        d["best_coefficients"] = r.best_coefficients.coeffs;
        d["best_exact_power"] = r.best_exact_power ? py::cast(r.best_exact_power->to_string()) : py::none();
        d["method"] = r.method;
        return d;
      },
      py::arg("set"), py::arg("p"), py::arg("order"), py::arg("q"), py::arg("N"), py::arg("trials"),
      py::arg("seed"), py::arg("optimizer") = "ascent");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv = {"vilenkin"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
