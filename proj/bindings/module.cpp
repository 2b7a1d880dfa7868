/* Python face of the library.  Structured results cross the boundary as
 * JSON strings (coefficients are arbitrary-precision, so they travel as
 * decimal strings); the package __init__ decodes them into dicts. */
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pucoh/arithmetic.hpp"
#include "pucoh/graded.hpp"
#include "pucoh/gysin.hpp"
#include "pucoh/multiindex.hpp"
#include "pucoh/presentation.hpp"
#include "pucoh/verify.hpp"

namespace py = pybind11;
using namespace pucoh;

namespace {

PresElem theta_checked(long n, const MultiIndex& idx) {
    validate_multiindex(idx, n);
    return theta(n, idx);
}

std::string theta_json(long n, const MultiIndex& idx) {
    PresElem t = theta_checked(n, idx);
    nlohmann::json j{{"n", n}, {"index", idx}, {"theta", to_json(t)},
                     {"text", to_text(t)}};
    auto seq = as_prime_power_seq(n, idx);
    if (seq && idx.size() >= 2) {
        PresElem c = theta_closed(n, *seq);
        j["closed_form"] = to_json(c);
        j["closed_form_agrees_up_to_sign"] = (t == c || t == -c);
    }
    return j.dump();
}

std::string groups_json_str(long n, int d_max, int jobs) {
    auto groups = groups_by_degree(n, d_max, jobs);
    return nlohmann::json{{"n", n}, {"groups", groups_to_json(groups)}}.dump();
}

std::string verify_json_str(long n, int jobs) {
    return report_to_json(verify_all(n, jobs)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "integral cohomology of the projective unitary groups";

    m.def("present_json",
          [](long n) { return presentation_to_json(present(n)).dump(); },
          py::arg("n"));
    m.def("present_text",
          [](long n) { return presentation_to_text(present(n)); },
          py::arg("n"));
    m.def("present_latex",
          [](long n) { return presentation_to_latex(present(n)); },
          py::arg("n"));

    m.def("theta_text",
          [](long n, const MultiIndex& idx) {
              return to_text(theta_checked(n, idx));
          },
          py::arg("n"), py::arg("index"));
    m.def("theta_json", &theta_json, py::arg("n"), py::arg("index"));

    m.def("groups_json", &groups_json_str, py::arg("n"),
          py::arg("max_degree") = -1, py::arg("jobs") = 1);
    m.def("groups_text",
          [](long n, int d_max, int jobs) {
              return groups_to_text(groups_by_degree(n, d_max, jobs));
          },
          py::arg("n"), py::arg("max_degree") = -1, py::arg("jobs") = 1);

    m.def("verify_json", &verify_json_str, py::arg("n"), py::arg("jobs") = 1,
          py::call_guard<py::gil_scoped_release>());

    m.def("c_multiplier", &c_multiplier, py::arg("n"), py::arg("k"));
    m.def("binomial_gcd",
          [](long n, long r) { return to_decimal(binomial_gcd(n, r)); },
          py::arg("n"), py::arg("r"));
}
