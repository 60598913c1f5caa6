#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hookdist/dist.hpp"
#include "hookdist/hookstat.hpp"
#include "hookdist/verify.hpp"

namespace py = pybind11;
using namespace hookdist;

namespace {

py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str(16).c_str(), nullptr, 16));
}

py::list coeff_list(const CoeffTable& table) {
  py::list out;
  for (const auto& c : table.coeffs) out.append(to_py(c));
  return out;
}

// One shared source so repeated calls reuse the expansions.
TableSource& source() {
  static TableSource s(SeriesCache::from_env());
  return s;
}

CoeffTable table(unsigned t, unsigned n) {
  py::gil_scoped_release release;
  return source().table(t, n);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hook lengths divisible by t: exact coefficient tables and their limit laws";

  py::register_exception<BoundExceeded>(m, "BoundExceeded");

  m.def("coeffs", [](unsigned t, unsigned n) { return coeff_list(table(t, n)); }, py::arg("t"), py::arg("n"),
        "Coefficients p_t(m, n) for m = 0..n // t.");
  m.def("brute_force", [](unsigned t, unsigned n, unsigned bound) { return coeff_list(brute_force_table(t, n, bound)); },
        py::arg("t"), py::arg("n"), py::arg("bound") = kEnumerationBound);
  m.def("partition_number", [](unsigned n) { return to_py(source().partition_number(n)); }, py::arg("n"));
  m.def("hook_lengths", [](std::vector<unsigned> parts) { return hook_lengths(Partition(std::move(parts))); },
        py::arg("parts"));
  m.def("is_triangular", &is_triangular, py::arg("k"));
  m.def("char_sum_c", &char_sum_c, py::arg("k"));

  m.def("support", [](unsigned t, unsigned n) {
    const auto s = support_stats(table(t, n));
    return py::make_tuple(s.nonzero_count, s.degree, s.decimal(5));
  }, py::arg("t"), py::arg("n"), "(nonzero count, degree, proportion to 5 places)");

  m.def("pmf", [](unsigned t, unsigned n) { return pmf_values(table(t, n)); }, py::arg("t"), py::arg("n"));
  m.def("cdf_at_xi", [](unsigned t, unsigned n, double x) { return cdf_at_xi(table(t, n), x); }, py::arg("t"),
        py::arg("n"), py::arg("x"));
  m.def("limit_cdf", &limit_cdf, py::arg("t"), py::arg("x"));
  m.def("char_fn", [](unsigned t, unsigned n, double r) { return char_fn(table(t, n), r); }, py::arg("t"), py::arg("n"),
        py::arg("r"));
  m.def("limit_char_fn", &limit_char_fn, py::arg("t"), py::arg("r"));
  m.def("h", &continuous_approximation, py::arg("t"), py::arg("n"), py::arg("x"));

  m.def("summary", [](unsigned t, unsigned n) {
    const auto s = summary(table(t, n));
    py::dict d;
    d["mean"] = s.exact_mean;
    d["variance"] = s.exact_variance;
    d["mode"] = s.exact_mode;
    d["asymptotic_mean"] = s.asymptotic_mean;
    d["asymptotic_variance"] = s.asymptotic_variance;
    d["asymptotic_mode"] = s.asymptotic_mode;
    d["mode_extrapolated"] = s.mode_extrapolated;
    return d;
  }, py::arg("t"), py::arg("n"));

  m.def("nonconvergence", [](unsigned t, std::uint64_t q, std::uint64_t n0, unsigned count) {
    py::list out;
    for (const auto& p : nonconvergence_sequence(t, q, n0, count)) out.append(py::make_tuple(p.j, p.n, p.m, p.is_zero));
    return out;
  }, py::arg("t"), py::arg("q"), py::arg("n0"), py::arg("count"));

  m.def("verify", [](const std::string& level) {
    if (level != "fast" && level != "full") throw py::value_error("level must be 'fast' or 'full'");
    std::vector<CheckResult> results;
    {
      py::gil_scoped_release release;
      results = run_verification(level == "full" ? VerifyLevel::Full : VerifyLevel::Fast, source());
    }
    py::list out;
    for (const auto& r : results) {
      py::dict d;
      d["id"] = r.id;
      d["name"] = r.name;
      d["passed"] = r.passed;
      d["informational"] = r.informational;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  }, py::arg("level") = "fast");
}
