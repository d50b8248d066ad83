// Python bindings. Results cross the boundary as JSON text; the package
// __init__ turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "altprod/adversary.hpp"
#include "altprod/certifiers.hpp"
#include "altprod/errors.hpp"
#include "altprod/minimax.hpp"
#include "altprod/report.hpp"
#include "altprod/stanford.hpp"
#include "altprod/system.hpp"

namespace py = pybind11;
using namespace altprod;

namespace {

using Rows = std::vector<std::vector<double>>;

std::vector<Matrix> to_matrices(const std::vector<Rows>& list) {
  std::vector<Matrix> out;
  out.reserve(list.size());
  for (const auto& rows : list) out.push_back(Matrix::from_rows(rows));
  return out;
}

AlternatingSystem make_system(const std::vector<Rows>& a_set, const std::vector<Rows>& b_set,
                              const std::string& norm, const std::string& orientation) {
  const auto a = to_matrices(a_set);
  const auto b = to_matrices(b_set);
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyAlphabet, "alphabets must be nonempty");
  return AlternatingSystem(a.front().rows(), a.front().cols(), a, b, parse_norm_kind(norm),
                           parse_orientation(orientation));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Boundedness analysis of alternating matrix products";

  py::register_exception<Error>(m, "AltprodError", PyExc_ValueError);

  py::class_<AlternatingSystem>(m, "System")
      .def(py::init(&make_system), py::arg("a_set"), py::arg("b_set"),
           py::arg("norm") = "maxrow", py::arg("orientation") = "right")
      .def_property_readonly("n", &AlternatingSystem::n)
      .def_property_readonly("m", &AlternatingSystem::m)
      .def_property_readonly("norm", [](const AlternatingSystem& s) {
        return std::string(to_string(s.norm()));
      })
      .def_property_readonly("orientation", [](const AlternatingSystem& s) {
        return std::string(to_string(s.orientation()));
      })
      .def("to_json", &save_system)
      .def("flipped", &flip_orientation);

  m.def("load_system", [](const std::string& text) { return load_system(text); });

  m.def("op_norm", [](const Rows& a, const std::string& norm) {
    return op_norm(Matrix::from_rows(a), parse_norm_kind(norm));
  }, py::arg("matrix"), py::arg("norm") = "maxrow");
  m.def("determinant", [](const Rows& a) { return determinant(Matrix::from_rows(a)); });
  m.def("inverse", [](const Rows& a) { return inverse(Matrix::from_rows(a)).to_rows(); });
  m.def("spectral_radius", [](const Rows& a) { return spectral_radius(Matrix::from_rows(a)); });

  m.def("check_hypotheses", [](const AlternatingSystem& s) {
    return to_json(check_hypotheses(s)).dump();
  });
  m.def("eval_trace", [](const AlternatingSystem& s, const IndexSequence& a,
                         const IndexSequence& b) { return to_json(eval_trace(s, a, b)).dump(); });
  m.def("best_response", [](const AlternatingSystem& s, const IndexSequence& a,
                            std::uint64_t budget) {
    return to_json(best_response(s, a, SearchBudget{budget})).dump();
  }, py::arg("system"), py::arg("a_indices"), py::arg("budget") = SearchBudget{}.node_limit);
  m.def("mu_n", [](const AlternatingSystem& s, std::size_t n, std::uint64_t budget) {
    return to_json(mu_n(s, n, SearchBudget{budget})).dump();
  }, py::arg("system"), py::arg("n"), py::arg("budget") = SearchBudget{}.node_limit);
  m.def("brute_force_mu", [](const AlternatingSystem& s, std::size_t n) {
    return to_json(brute_force_mu(s, n)).dump();
  });
  m.def("mu_table", [](const AlternatingSystem& s, std::size_t n_max, std::uint64_t budget) {
    return to_json(mu_table(s, n_max, SearchBudget{budget})).dump();
  }, py::arg("system"), py::arg("n_max"), py::arg("budget") = SearchBudget{}.node_limit);

  m.def("build_adversary", [](const AlternatingSystem& s, std::size_t m_target, std::size_t n_cap,
                              const std::string& mode, std::uint64_t budget) {
    std::optional<AdversaryMode> chosen;
    if (mode != "auto") chosen = parse_adversary_mode(mode);
    const SearchBudget b{budget};
    const AdversaryCertificate cert = build_adversary(s, m_target, n_cap, chosen, b);
    auto out = to_json(cert);
    out["verified"] = verify_certificate(s, cert, b);
    return out.dump();
  }, py::arg("system"), py::arg("m_target"), py::arg("n_cap") = 8, py::arg("mode") = "auto",
     py::arg("budget") = SearchBudget{}.node_limit);

  m.def("certify_contractivity", [](const AlternatingSystem& s, std::size_t k,
                                    std::uint64_t budget) {
    return to_json(certify_contractivity(s, k, SearchBudget{budget})).dump();
  }, py::arg("system"), py::arg("k"), py::arg("budget") = SearchBudget{}.node_limit);
  m.def("pointwise_probe", [](const AlternatingSystem& s, const Vector& x, std::size_t horizon,
                              double cap, std::size_t lookahead, std::uint64_t budget) {
    return to_json(pointwise_probe(s, x, horizon, cap, lookahead, SearchBudget{budget})).dump();
  }, py::arg("system"), py::arg("x"), py::arg("horizon"), py::arg("cap"),
     py::arg("lookahead") = 7, py::arg("budget") = SearchBudget{}.node_limit);

  m.def("stabilize_pointwise", [](double alpha, const Vector& x, double target,
                                  std::size_t max_steps) {
    return to_json(stabilize_pointwise(make_stanford(alpha), x, target, max_steps)).dump();
  }, py::arg("alpha"), py::arg("x"), py::arg("target"), py::arg("max_steps") = 200);
  m.def("stanford_min_norm", [](double alpha, std::size_t n) {
    return check_products_lower_bound(make_stanford(alpha), n);
  });
  m.def("build_counterexample", [](const std::vector<Rows>& a_set, double alpha) {
    return build_counterexample(to_matrices(a_set), alpha).system;
  });
}
