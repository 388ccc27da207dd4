#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "folia/foliation.hpp"
#include "folia/runner.hpp"
#include "folia/sceneio.hpp"

namespace py = pybind11;
using namespace folia;

namespace {

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::object: {
            py::dict d;
            for (auto it = j.begin(); it != j.end(); ++it)
                d[py::str(it.key())] = json_to_py(it.value());
            return d;
        }
        case Json::value_t::array: {
            py::list l;
            for (const auto& el : j) l.append(json_to_py(el));
            return l;
        }
        case Json::value_t::string: return py::str(j.get<std::string>());
        case Json::value_t::boolean: return py::bool_(j.get<bool>());
        case Json::value_t::number_integer: return py::int_(j.get<long long>());
        case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case Json::value_t::number_float: return py::float_(j.get<double>());
        default: return py::none();
    }
}

RunOptions make_options(const std::vector<std::string>& suites, int samples, unsigned seed,
                        double tol_algebraic, double tol_derived, const std::string& g2_variant,
                        const std::string& h_convention, int threads) {
    RunOptions o;
    for (const std::string& s : suites) o.suites.push_back(parse_suite(s));
    if (o.suites.empty()) throw std::invalid_argument("no suite requested");
    o.samples = samples;
    o.seed = seed;
    o.tol_algebraic = tol_algebraic;
    o.tol_derived = tol_derived;
    if (g2_variant == "printed")
        o.g2_variant = G2Variant::Printed;
    else if (g2_variant == "symmetric")
        o.g2_variant = G2Variant::Symmetric;
    else
        throw std::invalid_argument("g2_variant must be 'printed' or 'symmetric'");
    if (h_convention == "E")
        o.h_convention = HConvention::E;
    else if (h_convention == "Delta")
        o.h_convention = HConvention::Delta;
    else
        throw std::invalid_argument("h_convention must be 'E' or 'Delta'");
    o.threads = threads;
    return o;
}

}  // namespace

PYBIND11_MODULE(_folia, m) {
    m.doc() = "numerical verification of foliation and curvature identities on 4d charts";

    py::register_exception<GeometryError>(m, "GeometryError");
    py::register_exception<SceneIoError>(m, "SceneIoError");
    py::register_exception<EvalDomainError>(m, "EvalDomainError");

    py::class_<Scene>(m, "Scene")
        .def_readonly("name", &Scene::name)
        .def_property_readonly("digest",
                               [](const Scene& s) {
                                   char buf[32];
                                   std::snprintf(buf, sizeof(buf), "%016llx", scene_digest(s));
                                   return std::string(buf);
                               })
        .def("to_toml", &scene_to_toml)
        .def("__repr__",
             [](const Scene& s) { return "<folia.Scene name='" + s.name + "'>"; });

    m.def("builtin_scene", &builtin_scene, py::arg("name"),
          "Resolve a builtin scene, e.g. 'flat_c2' or 'calabi_type(1,flat)'.");
    m.def("builtin_names", &builtin_names);
    m.def(
        "load_scene",
        [](const std::string& path) { return load_scene(path).scene; },
        py::arg("path"), "Load a scene from a TOML file.");
    m.def(
        "parse_scene", [](const std::string& text) { return parse_scene_text(text).scene; },
        py::arg("text"), "Parse a scene from TOML text.");

    m.def(
        "sample_plan",
        [](const Scene& s, int count, unsigned seed) {
            std::vector<std::array<double, 4>> out;
            for (const Vec4d& p : sample_plan(s, count, seed)) out.push_back({p[0], p[1], p[2], p[3]});
            return out;
        },
        py::arg("scene"), py::arg("count"), py::arg("seed") = 42);

    m.def(
        "eval_jet",
        [](const std::string& expr, const std::array<std::string, 4>& coords,
           const std::array<double, 4>& point) {
            Jet2 j = eval_jet2(parse(expr, coords, {}), {point[0], point[1], point[2], point[3]}, {});
            py::dict d;
            d["value"] = j.v;
            d["gradient"] = std::array<double, 4>{j.d[0], j.d[1], j.d[2], j.d[3]};
            py::list hess;
            for (int a = 0; a < 4; ++a) {
                py::list row;
                for (int b = 0; b < 4; ++b) row.append(j.hess(a, b));
                hess.append(row);
            }
            d["hessian"] = hess;
            return d;
        },
        py::arg("expr"), py::arg("coords"), py::arg("point"),
        "Value, gradient and Hessian of an expression at a point.");

    m.def(
        "point_residuals",
        [](const Scene& s, const std::array<double, 4>& point) {
            PointEval pe = point_eval(s.chart, s.dist, {point[0], point[1], point[2], point[3]});
            FoliationPointResiduals r = foliation_residuals(pe);
            py::dict d;
            d["frobenius"] = r.frobenius;
            d["theorem1"] = r.theorem1;
            d["totally_geodesic"] = r.totally_geodesic;
            d["holomorphic"] = r.holomorphic;
            d["quasi_holomorphic"] = r.quasi_holomorphic;
            d["conformal"] = r.conformal;
            d["star_identity"] = r.star_identity;
            d["corollary1"] = r.corollary1;
            d["lemma"] = r.lemma;
            d["dtheta"] = r.dtheta;
            d["nijenhuis_i"] = r.nijenhuis_i;
            d["d_omega_i"] = r.d_omega_i;
            d["ker_nabla_i"] = r.ker_nabla_i;
            d["homothetic"] = r.homothetic;
            return d;
        },
        py::arg("scene"), py::arg("point"),
        "Foliation predicate residuals at one chart point.");

    m.def(
        "run",
        [](const Scene& scene, const std::vector<std::string>& suites, int samples, unsigned seed,
           double tol_algebraic, double tol_derived, const std::string& g2_variant,
           const std::string& h_convention, int threads) {
            RunResult r = run(scene, make_options(suites, samples, seed, tol_algebraic,
                                                  tol_derived, g2_variant, h_convention, threads));
            py::dict out;
            out["exit_code"] = r.exit_code;
            out["report"] = json_to_py(r.report);
            out["report_json"] = dump_stable(r.report);
            return out;
        },
        py::arg("scene"),
        py::arg("suites") = std::vector<std::string>{"calculus", "kahler", "foliation", "qch"},
        py::arg("samples") = 200, py::arg("seed") = 42, py::arg("tol_algebraic") = 1e-8,
        py::arg("tol_derived") = 1e-6, py::arg("g2_variant") = "symmetric",
        py::arg("h_convention") = "E", py::arg("threads") = 0,
        "Run verification suites; returns exit_code, report dict and the stable JSON text.");

    m.attr("__version__") = kEngineVersion;
}
