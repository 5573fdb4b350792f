// Python bindings. Results cross the boundary as JSON text or plain lists.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "etfkit/io.hpp"

namespace py = pybind11;
using namespace etfkit;

namespace {

GroupSubset make_set(const std::vector<std::int64_t>& orders, const std::vector<Index>& elements) {
    return GroupSubset(AbelianGroup(orders), elements);
}

std::vector<std::vector<cdouble>> to_rows(const ComplexMatrix& M) {
    std::vector<std::vector<cdouble>> out(M.rows(), std::vector<cdouble>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) out[i][j] = M(i, j);
    return out;
}

std::string construct(const std::string& family, std::int64_t q, std::int64_t j,
                      std::optional<std::vector<std::int64_t>> k_orders) {
    if (family == "singer") {
        const auto s = singer_complement(q, j);
        json out = set_to_json(s.D, s.H);
        out["A"] = set_to_json(s.A);
        out["B"] = set_to_json(s.B);
        return out.dump();
    }
    if (family == "tpp") {
        const auto t = tpp_complement(q);
        return set_to_json(t.D, t.H).dump();
    }
    if (family == "mcfarland") {
        const auto m = mcfarland(q, j, std::move(k_orders));
        return set_to_json(m.D, m.H).dump();
    }
    if (family == "srds") {
        const auto s = simplicial_rds_quadratic(q);
        return set_to_json(s.A, s.K).dump();
    }
    throw InvalidArgument("unknown family '" + family + "'");
}

}  // namespace

PYBIND11_MODULE(_etfkit, m) {
    m.doc() = "Harmonic frames, difference sets and conference matrices";

    // the most recently registered translator is tried first
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

    m.def("_construct", &construct, py::arg("family"), py::arg("q"), py::arg("j") = 2,
          py::arg("k_orders") = std::nullopt);

    m.def(
        "_classify",
        [](const std::vector<std::int64_t>& orders, const std::vector<Index>& elements) {
            const GroupSubset D = make_set(orders, elements);
            return certificate_to_json(D, classify(D)).dump();
        },
        py::arg("orders"), py::arg("elements"));

    m.def(
        "harmonic_synthesis",
        [](const std::vector<std::int64_t>& orders, const std::vector<Index>& elements) {
            return to_rows(harmonic_synthesis(make_set(orders, elements)));
        },
        py::arg("orders"), py::arg("elements"), "Synthesis matrix with rows indexed by D and columns by characters.");

    m.def(
        "coherence",
        [](const std::vector<std::int64_t>& orders, const std::vector<Index>& elements) {
            return coherence(harmonic_synthesis(make_set(orders, elements)));
        },
        py::arg("orders"), py::arg("elements"));

    m.def("welch_bound", &welch_bound, py::arg("d"), py::arg("n"));

    m.def(
        "conference_matrix",
        [](const std::vector<std::int64_t>& orders, const std::vector<Index>& elements, const std::vector<Index>& subgroup,
           Index gamma, const std::string& source) {
            const AbelianGroup G(orders);
            const GroupSubset D(G, elements);
            const Subgroup H(G, subgroup);
            const CirculantConference C =
                source == "srds" ? conference_from_srds(D, H, gamma) : conference_from_amalgam(D, H, gamma);
            const ConferenceReport r = verify_conference(C);
            return py::make_tuple(to_rows(C.materialize()), r.passed, r.S);
        },
        py::arg("orders"), py::arg("elements"), py::arg("subgroup"), py::arg("gamma"), py::arg("source") = "amalgam",
        "Circulant conference matrix, whether it verified, and S.");
}
