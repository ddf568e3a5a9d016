#include "tsloss/dynexp.hpp"
#include "tsloss/elmodel.hpp"
#include "tsloss/error.hpp"
#include "tsloss/oracle.hpp"
#include "tsloss/pipeline.hpp"
#include "tsloss/timescale.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace tsloss;

namespace {

GridFunction grid(const std::vector<double>& values, double h) {
    if (values.empty()) throw Error(ErrorKind::InvalidArgument, "empty path");
    return GridFunction(PeriodicScale(h, values.size() - 1), values);
}

std::vector<double> to_list(const GridFunction& f) { return {f.values().begin(), f.values().end()}; }

const char* kind_name(RootKind kind) { return kind == RootKind::Distinct ? "distinct" : "double"; }

pipeline::ReportFormat format_of(const std::string& name) {
    const auto f = pipeline::parse_format(name);
    if (!f) throw Error(ErrorKind::InvalidArgument, "unknown report format '" + name + "'");
    return *f;
}

} // namespace

PYBIND11_MODULE(_tsloss, m) {
    m.doc() = "Time-scale social loss model (C++ core)";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double alpha, double beta, double j, double delta, double pi0, double piT, double T) {
                 return ModelParams({alpha, beta, j, delta, pi0, piT, T});
             }),
             py::arg("alpha") = 0.5, py::arg("beta") = 3.0, py::arg("j") = 0.75, py::arg("delta") = 0.25,
             py::arg("pi0") = 1.0, py::arg("piT") = 1.0, py::arg("T") = 11.0)
        .def_property_readonly("alpha", &ModelParams::alpha)
        .def_property_readonly("beta", &ModelParams::beta)
        .def_property_readonly("j", &ModelParams::j)
        .def_property_readonly("delta", &ModelParams::delta)
        .def_property_readonly("pi0", &ModelParams::pi0)
        .def_property_readonly("piT", &ModelParams::piT)
        .def_property_readonly("T", &ModelParams::horizon)
        .def("__repr__", [](const ModelParams& p) {
            std::ostringstream s;
            s << "ModelParams(alpha=" << p.alpha() << ", beta=" << p.beta() << ", j=" << p.j()
              << ", delta=" << p.delta() << ", pi0=" << p.pi0() << ", piT=" << p.piT() << ", T=" << p.horizon()
              << ")";
            return s.str();
        });

    m.def(
        "jump_operators",
        [](double h, std::size_t steps, double t) {
            const auto j = jump_operators(PeriodicScale(h, steps), t);
            return py::dict(py::arg("sigma") = j.sigma, py::arg("rho") = j.rho, py::arg("mu") = j.mu,
                            py::arg("nu") = j.nu);
        },
        py::arg("h"), py::arg("steps"), py::arg("t"));
    m.def(
        "delta_derivative", [](const std::vector<double>& v, double h) { return to_list(delta_derivative(grid(v, h))); },
        py::arg("values"), py::arg("h"));
    m.def(
        "delta_integral",
        [](const std::vector<double>& v, double h, double a, double b) { return delta_integral(grid(v, h), a, b); },
        py::arg("values"), py::arg("h"), py::arg("a"), py::arg("b"));
    m.def("ominus", &ominus, py::arg("p"), py::arg("h"));
    m.def("delta_exp", &delta_exp, py::arg("p"), py::arg("t"), py::arg("t0"), py::arg("h"));
    m.def(
        "solve_second_order",
        [](double alpha, double beta, double h) {
            const auto fs = solve_second_order(alpha, beta, h);
            return py::dict(py::arg("kind") = kind_name(fs.kind), py::arg("lambda1") = fs.lambda1,
                            py::arg("lambda2") = fs.lambda2, py::arg("h") = fs.h);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("h"));
    m.def(
        "el_coefficients",
        [](const ModelParams& p, double h) {
            const auto s = el_coefficients(p, h);
            return py::dict(py::arg("omega") = s.omega, py::arg("A") = s.a_coef, py::arg("B") = s.b_coef,
                            py::arg("zeta") = s.zeta, py::arg("kind") = kind_name(s.roots.kind),
                            py::arg("lambda1") = s.roots.lambda1, py::arg("lambda2") = s.roots.lambda2);
        },
        py::arg("params"), py::arg("h"));
    m.def(
        "optimal_path_hz", [](const ModelParams& p, double h) { return to_list(optimal_path_hz(p, h).sample()); },
        py::arg("params"), py::arg("h"), "Closed-form minimizer sampled at t_k = k h, k = 0..N.");
    m.def(
        "optimal_path_continuous",
        [](const ModelParams& p, const std::vector<double>& times) {
            const auto path = optimal_path_continuous(p);
            std::vector<double> out;
            out.reserve(times.size());
            for (const double t : times) out.push_back(path(t));
            return out;
        },
        py::arg("params"), py::arg("times"));
    m.def(
        "social_loss_hz",
        [](const ModelParams& p, double h, const std::vector<double>& v) { return social_loss_hz(p, h, grid(v, h)); },
        py::arg("params"), py::arg("h"), py::arg("values"));
    m.def(
        "social_loss_continuous",
        [](const ModelParams& p, double tol) { return social_loss_continuous(p, optimal_path_continuous(p), tol); },
        py::arg("params"), py::arg("tol") = kDefaultQuadratureTolerance,
        "Lambda_C at the continuous minimizer.");
    m.def(
        "qp_minimize", [](const ModelParams& p, double h) { return to_list(oracle::qp_minimize(p, h)); },
        py::arg("params"), py::arg("h"));
    m.def(
        "el_residual",
        [](const ModelParams& p, double h, const std::vector<double>& v) {
            return oracle::el_residual(p, h, grid(v, h));
        },
        py::arg("params"), py::arg("h"), py::arg("values"));
    m.def(
        "perturbation_check",
        [](const ModelParams& p, double h, const std::vector<double>& v, std::size_t samples, std::uint64_t seed) {
            const auto r = oracle::perturbation_check(p, h, grid(v, h), samples, seed);
            return py::make_tuple(r.min_gap, r.all_nonnegative);
        },
        py::arg("params"), py::arg("h"), py::arg("values"), py::arg("samples") = 100, py::arg("seed") = 42);

    py::class_<pipeline::SweepReport>(m, "SweepReport")
        .def_readonly("label", &pipeline::SweepReport::label)
        .def_readonly("lambda_E", &pipeline::SweepReport::lambda_E)
        .def_readonly("lambda_C", &pipeline::SweepReport::lambda_C)
        .def_readonly("lambda_D", &pipeline::SweepReport::lambda_D)
        .def_property_readonly("lambda_h", &pipeline::SweepReport::lambda_h)
        .def_property_readonly("best_h", &pipeline::SweepReport::best_h)
        .def_property_readonly("candidates",
                               [](const pipeline::SweepReport& r) {
                                   py::list out;
                                   for (const auto& c : r.candidates) {
                                       out.append(py::make_tuple(c.steps, c.h, c.lambda_h, c.abs_error));
                                   }
                                   return out;
                               })
        .def("render", [](const pipeline::SweepReport& r, const std::string& format) {
            return pipeline::render_report(r, format_of(format));
        }, py::arg("format") = "markdown");

    m.def(
        "sweep",
        [](const std::string& csv, int year, const std::vector<std::size_t>& steps, const ModelParams& params) {
            std::istringstream in(csv);
            const auto series = pipeline::load_series(in, pipeline::MonthRange::calendar_year(year));
            return pipeline::sweep_h(series, params, steps, std::to_string(year));
        },
        py::arg("csv"), py::arg("year"), py::arg("steps"), py::arg("params") = ModelParams());
    m.def(
        "render_report",
        [](const pipeline::SweepReport& r, const std::string& format) {
            return pipeline::render_report(r, format_of(format));
        },
        py::arg("report"), py::arg("format") = "markdown");
}
