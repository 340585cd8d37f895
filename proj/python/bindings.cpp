#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arakelov/bounds.hpp"
#include "arakelov/cli.hpp"
#include "arakelov/gram_io.hpp"
#include "arakelov/json_io.hpp"
#include "arakelov/mvt.hpp"
#include "arakelov/sampler.hpp"
#include "arakelov/search.hpp"
#include "arakelov/sections.hpp"
#include "arakelov/zeta.hpp"

namespace py = pybind11;
using namespace arakelov;

namespace {

RandomLatticeSpec lattice_spec(const NumberField& field, int n, long long p, std::uint64_t seed) {
    RandomLatticeSpec s;
    s.field = field;
    s.n = n;
    s.p = p;
    s.seed = seed;
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Arakelov bundles over Q and quadratic fields: sections, subbundle zeta functions, mean value checks.";

    auto base = py::register_exception<Error>(m, "ArakelovError");
    py::register_exception<Indeterminate>(m, "Indeterminate", base.ptr());
    py::register_exception<DivergenceSuspected>(m, "DivergenceSuspected", base.ptr());
    py::register_exception<ParseError>(m, "GramParseError", base.ptr());
    py::register_exception<InvalidMetric>(m, "InvalidMetric", base.ptr());

    py::class_<NumberField>(m, "NumberField")
        .def(py::init([](const std::string& d) { return NumberField::parse(d); }), py::arg("descriptor") = "Q")
        .def_property_readonly("degree", &NumberField::degree)
        .def_property_readonly("real_places", &NumberField::real_places)
        .def_property_readonly("complex_places", &NumberField::complex_places)
        .def_property_readonly("discriminant", &NumberField::discriminant)
        .def_property_readonly("roots_of_unity", &NumberField::roots_of_unity)
        .def_property_readonly("descriptor", &NumberField::descriptor)
        .def("__eq__", &NumberField::operator==)
        .def("__repr__", [](const NumberField& K) { return "NumberField('" + K.descriptor() + "')"; });

    py::class_<ArakelovBundle>(m, "Bundle")
        .def(py::init([](const NumberField& field, const std::vector<Eigen::MatrixXcd>& grams) {
                 return make_bundle(field, grams);
             }),
             py::arg("field"), py::arg("grams"))
        .def_property_readonly("field", &ArakelovBundle::field)
        .def_property_readonly("rank", &ArakelovBundle::rank)
        .def("gram", &ArakelovBundle::gram_at, py::arg("place") = 0)
        .def_property_readonly("degree", [](const ArakelovBundle& E) { return degree(E); })
        .def_property_readonly("slope", [](const ArakelovBundle& E) { return slope(E); })
        .def("__repr__", [](const ArakelovBundle& E) {
            return "Bundle(" + E.field().descriptor() + ", rank " + std::to_string(E.rank()) + ")";
        });

    m.def("trivial_bundle", &trivial_bundle, py::arg("field"), py::arg("rank"));
    m.def("rational_bundle", py::overload_cast<const Eigen::MatrixXd&>(&make_rational_bundle), py::arg("gram"));
    m.def("read_gram_file", &read_gram_file, py::arg("path"));
    m.def("parse_gram", &parse_gram_string, py::arg("text"));
    m.def("format_gram", &format_gram, py::arg("bundle"));

    m.def("tensor", &tensor);
    m.def("dual", &dual);
    m.def("determinant", &determinant);
    m.def("scale", &scale, py::arg("bundle"), py::arg("t"));
    m.def("exterior_power", &exterior_power, py::arg("bundle"), py::arg("l"));
    m.def("covolume", [](const ArakelovBundle& E) { return restrict_scalars(E).covolume(); });

    m.def(
        "global_sections",
        [](const ArakelovBundle& E, std::uint64_t node_cap) { return to_json(global_sections(E, node_cap)).dump(); },
        py::arg("bundle"), py::arg("node_cap") = kDefaultNodeCap);
    m.def("has_nonzero_section", &has_nonzero_section, py::arg("bundle"), py::arg("node_cap") = kDefaultNodeCap,
          py::call_guard<py::gil_scoped_release>());
    m.def("minkowski_guarantee", &minkowski_guarantee);

    m.def(
        "enumerate_subbundles",
        [](const ArakelovBundle& E, int l, double min_degree, std::uint64_t node_cap) {
            Json out = Json::array();
            for (const auto& r : enumerate_subbundles(E, l, min_degree, node_cap)) out.push_back(to_json(r));
            return out.dump();
        },
        py::arg("bundle"), py::arg("l"), py::arg("min_degree"), py::arg("node_cap") = kDefaultNodeCap);
    m.def(
        "zeta_partial",
        [](const ArakelovBundle& E, int l, double s, double T, std::uint64_t node_cap) {
            return to_json(zeta_partial(E, l, s, T, node_cap)).dump();
        },
        py::arg("bundle"), py::arg("l"), py::arg("s"), py::arg("cutoff"), py::arg("node_cap") = kDefaultNodeCap);
    m.def(
        "semistability",
        [](const ArakelovBundle& E, std::uint64_t node_cap) { return to_json(semistability_verdict(E, node_cap)).dump(); },
        py::arg("bundle"), py::arg("node_cap") = kDefaultNodeCap);

    m.def("random_bundle",
          [](const NumberField& field, int n, double slope_value, long long p, std::uint64_t seed, std::uint64_t trial) {
              return random_bundle_for_trial(lattice_spec(field, n, p, seed), slope_value, trial);
          },
          py::arg("field"), py::arg("n"), py::arg("slope"), py::arg("p") = kDefaultHeckePrime, py::arg("seed") = 0,
          py::arg("trial") = 0);

    m.def("mvt_rhs", &mvt_rhs, py::arg("field"), py::arg("n"), py::arg("l"), py::arg("radii"));
    m.def(
        "mvt_compare",
        [](int n, int l, const std::vector<double>& radii, int trials, long long p, std::uint64_t seed, unsigned threads,
           double z_max) {
            MvtOptions options;
            options.trials = trials;
            options.threads = threads;
            MvtComparison c;
            {
                py::gil_scoped_release release;
                c = mvt_compare(n, l, radii, lattice_spec(NumberField::rational(), n, p, seed), options);
            }
            return to_json(c, z_max).dump();
        },
        py::arg("n"), py::arg("l"), py::arg("radii"), py::arg("trials") = 2000, py::arg("p") = kDefaultHeckePrime,
        py::arg("seed") = 0, py::arg("threads") = 1, py::arg("z_max") = 3.0);

    m.def(
        "main_inequality",
        [](const ArakelovBundle& E, int n, double det_degree) { return to_json(main_inequality(E, n, det_degree)).dump(); },
        py::arg("bundle"), py::arg("n"), py::arg("det_degree"));
    m.def(
        "thresholds",
        [](const NumberField& K, int n, int l, double epsilon) { return to_json(thresholds(K, n, l, epsilon)).dump(); },
        py::arg("field"), py::arg("n"), py::arg("l") = 1, py::arg("epsilon") = 0.05);
    m.def("quotient_volume", [](const NumberField& K, int N, bool exact) {
        return quotient_volume(K, N, exact ? VolumeMode::exact : VolumeMode::upper_bound);
    }, py::arg("field"), py::arg("N"), py::arg("exact") = true);
    m.def("packing_density", &packing_density, py::arg("bundle"), py::arg("node_cap") = kDefaultNodeCap);
    m.def("mh_bound", &mh_bound);

    m.def(
        "find_section_free",
        [](const ArakelovBundle& E, int n, double mu, std::uint64_t max_trials, long long p, std::uint64_t seed,
           double epsilon, unsigned threads) {
            SearchOptions options;
            options.epsilon = epsilon;
            options.threads = threads;
            SearchOutcome o;
            {
                py::gil_scoped_release release;
                o = find_section_free(E, n, mu, max_trials, lattice_spec(E.field(), n, p, seed), options);
            }
            return to_json(o).dump();
        },
        py::arg("bundle"), py::arg("n"), py::arg("slope"), py::arg("max_trials") = 200,
        py::arg("p") = kDefaultHeckePrime, py::arg("seed") = 0, py::arg("epsilon") = 0.05, py::arg("threads") = 1);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
