#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abrp/allocation.hpp"
#include "abrp/geometry.hpp"
#include "abrp/golden.hpp"
#include "abrp/instance_io.hpp"
#include "abrp/mip_export.hpp"
#include "abrp/relaxation.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_abrp, m) {
    m.doc() = "Golden-ratio allocation and geometric routing for staged "
              "bus dispatch: closed-form continuous splits, an exact integer "
              "solver, tour construction, and model export.";

    m.attr("MAX_ROUTES") = abrp::kMaxRoutes;

    py::class_<abrp::GoldenConstants>(m, "GoldenConstants")
        .def_readonly("phi", &abrp::GoldenConstants::phi)
        .def_readonly("one_plus_phi_sq", &abrp::GoldenConstants::one_plus_phi_sq)
        .def_readonly("two_minus_phi", &abrp::GoldenConstants::two_minus_phi);
    m.def("golden_constants", &abrp::golden_constants,
          "Constants governing consecutive route-size ratios.");

    py::class_<abrp::RatioTable>(m, "RatioTable")
        .def_readonly("k", &abrp::RatioTable::k)
        .def_readonly("nu", &abrp::RatioTable::nu)
        .def_readonly("rho_hat", &abrp::RatioTable::rho_hat)
        .def_readonly("eta1", &abrp::RatioTable::eta1)
        .def("nu_front", &abrp::RatioTable::nu_front, py::arg("j"),
             "Ratio of route j to route j+1, counted from the largest route.");

    m.def("nu_chain", &abrp::nu_chain, py::arg("k"),
          "Full consecutive-ratio chain for a k-route split.");
    m.def("eta1", &abrp::eta1, py::arg("k"),
          "Fraction of individuals the largest of k routes carries.");
    m.def("eta1_limit", &abrp::eta1_limit, py::arg("tol"),
          "Large-k limit of the leading fraction, to the given tolerance.");
    m.def("eta1_growth_certificate", &abrp::eta1_growth_certificate, py::arg("k"),
          "Positive exactly when eta1(k+1) > eta1(k); stays O(1) long after "
          "the direct difference of doubles underflows.");

    py::class_<abrp::RealAllocation>(m, "RealAllocation")
        .def(py::init([](std::vector<double> sizes, double total,
                         std::optional<double> capacity) {
                 abrp::RealAllocation a;
                 a.sizes = std::move(sizes);
                 a.total = total;
                 a.capacity = capacity;
                 return a;
             }),
             py::arg("sizes"), py::arg("total") = 0.0,
             py::arg("capacity") = std::nullopt)
        .def_readwrite("sizes", &abrp::RealAllocation::sizes)
        .def_readwrite("total", &abrp::RealAllocation::total)
        .def_readwrite("capacity", &abrp::RealAllocation::capacity);

    py::class_<abrp::KKTReport>(m, "KKTReport")
        .def_readonly("alpha_per_route", &abrp::KKTReport::alpha_per_route)
        .def_readonly("spread", &abrp::KKTReport::spread)
        .def_readonly("bound_routes", &abrp::KKTReport::bound_routes);

    m.def("solve_uncapacitated", &abrp::solve_uncapacitated, py::arg("n"),
          py::arg("k"), "Closed-form k-route split of n individuals.");
    m.def("solve_capacitated", &abrp::solve_capacitated, py::arg("n"),
          py::arg("c"), py::arg("k"),
          "Capacity-respecting k-route split of n individuals.");
    m.def("kkt_residual", &abrp::kkt_residual, py::arg("alloc"),
          "Per-route stationarity values, their spread, and capacity-bound "
          "routes.");
    m.def("consecutive_ratio_check", &abrp::consecutive_ratio_check,
          py::arg("alloc"),
          "Relative deviation of the last two routes from the golden closure "
          "ratio.");
    m.def("default_route_count", &abrp::default_route_count, py::arg("n"),
          "Cost-minimizing route count over the effective range.");

    py::class_<abrp::SatisfactionParams>(m, "SatisfactionParams")
        .def(py::init([](double a, double b, double kappa) {
                 abrp::SatisfactionParams p;
                 p.a = a;
                 p.b = b;
                 p.kappa = kappa;
                 return p;
             }),
             py::arg("a") = 1.0, py::arg("b") = 0.01, py::arg("kappa") = 1.0)
        .def_readwrite("a", &abrp::SatisfactionParams::a)
        .def_readwrite("b", &abrp::SatisfactionParams::b)
        .def_readwrite("kappa", &abrp::SatisfactionParams::kappa);

    py::class_<abrp::IntAllocation>(m, "IntAllocation")
        .def(py::init([](std::vector<long long> sizes,
                         std::optional<long long> capacity) {
                 abrp::IntAllocation a;
                 a.sizes = std::move(sizes);
                 a.capacity = capacity;
                 return a;
             }),
             py::arg("sizes"), py::arg("capacity") = std::nullopt)
        .def_readwrite("sizes", &abrp::IntAllocation::sizes)
        .def_readwrite("capacity", &abrp::IntAllocation::capacity);

    m.def("aabrp_cost",
          py::overload_cast<const std::vector<long long>&>(&abrp::aabrp_cost),
          py::arg("sizes"));
    m.def("aabrp_cost",
          py::overload_cast<const std::vector<double>&>(&abrp::aabrp_cost),
          py::arg("sizes"));
    m.def("aabrp_cost",
          py::overload_cast<const abrp::IntAllocation&>(&abrp::aabrp_cost),
          py::arg("alloc"));
    m.def("aabrp_cost",
          py::overload_cast<const abrp::RealAllocation&>(&abrp::aabrp_cost),
          py::arg("alloc"),
          "Cumulative routing cost sum_i n_i * (sum_{j<=i} sqrt(n_j)).");

    m.def("satisfaction",
          py::overload_cast<const std::vector<long long>&,
                            const abrp::SatisfactionParams&>(&abrp::satisfaction),
          py::arg("sizes"), py::arg("params"));
    m.def("satisfaction",
          py::overload_cast<const std::vector<double>&,
                            const abrp::SatisfactionParams&>(&abrp::satisfaction),
          py::arg("sizes"), py::arg("params"));
    m.def("satisfaction",
          py::overload_cast<const abrp::IntAllocation&,
                            const abrp::SatisfactionParams&>(&abrp::satisfaction),
          py::arg("alloc"), py::arg("params"));
    m.def("satisfaction",
          py::overload_cast<const abrp::RealAllocation&,
                            const abrp::SatisfactionParams&>(&abrp::satisfaction),
          py::arg("alloc"), py::arg("params"),
          "Total satisfaction a*N - b*kappa*cost.");

    m.def("completion_times",
          py::overload_cast<const std::vector<long long>&, double>(
              &abrp::completion_times),
          py::arg("sizes"), py::arg("kappa"));
    m.def("completion_times",
          py::overload_cast<const std::vector<double>&, double>(
              &abrp::completion_times),
          py::arg("sizes"), py::arg("kappa"),
          "Arrival time of each route under the sqrt travel-time model.");

    m.def("gr_heuristic", &abrp::gr_heuristic, py::arg("n"),
          py::arg("c") = std::nullopt, py::arg("eta") = 0.867,
          "Golden-ratio allocation heuristic.");

    py::register_exception<abrp::NodeBudgetExceeded>(m, "NodeBudgetExceeded",
                                                     PyExc_RuntimeError);

    py::class_<abrp::ExactResult>(m, "ExactResult")
        .def_readonly("alloc", &abrp::ExactResult::alloc)
        .def_readonly("cost", &abrp::ExactResult::cost)
        .def_readonly("nodes", &abrp::ExactResult::nodes);

    m.def("exact_integer", &abrp::exact_integer, py::arg("n"),
          py::arg("c") = std::nullopt, py::arg("node_budget") = 100000000ULL,
          py::call_guard<py::gil_scoped_release>(),
          "Provably optimal integer allocation by branch and bound.");

    py::class_<abrp::GapReport>(m, "GapReport")
        .def_readonly("gr_z", &abrp::GapReport::gr_z)
        .def_readonly("exact_z", &abrp::GapReport::exact_z)
        .def_readonly("rel_gap", &abrp::GapReport::rel_gap)
        .def_readonly("gr_alloc", &abrp::GapReport::gr_alloc)
        .def_readonly("exact_alloc", &abrp::GapReport::exact_alloc);

    m.def("gap_report", &abrp::gap_report, py::arg("n"), py::arg("c"),
          py::arg("params") = abrp::SatisfactionParams{},
          py::arg("node_budget") = 100000000ULL,
          "Heuristic-vs-exact satisfaction comparison.");

    py::class_<abrp::Point>(m, "Point")
        .def(py::init([](double x, double y) {
                 return abrp::Point{x, y};
             }),
             py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("x", &abrp::Point::x)
        .def_readwrite("y", &abrp::Point::y);

    m.def("dist", &abrp::dist, py::arg("a"), py::arg("b"));

    py::class_<abrp::Instance>(m, "Instance")
        .def(py::init<>())
        .def_readwrite("n", &abrp::Instance::n)
        .def_readwrite("area", &abrp::Instance::area)
        .def_readwrite("seed", &abrp::Instance::seed)
        .def_readwrite("capacity", &abrp::Instance::capacity)
        .def_readwrite("params", &abrp::Instance::params)
        .def_readwrite("beta", &abrp::Instance::beta)
        .def_readwrite("depot", &abrp::Instance::depot)
        .def_readwrite("nodes", &abrp::Instance::nodes);

    m.def("generate_instance", &abrp::generate_instance, py::arg("n"),
          py::arg("area"), py::arg("seed"), py::arg("capacity") = std::nullopt,
          py::arg("params") = abrp::SatisfactionParams{}, py::arg("beta") = 0.72,
          "Uniform random customers on a square with a centered depot.");
    m.def("bhh_estimate", &abrp::bhh_estimate, py::arg("n"), py::arg("area"),
          py::arg("beta") = 0.72, "Asymptotic tour-length estimate.");

    py::class_<abrp::Tour>(m, "Tour")
        .def_readonly("sequence", &abrp::Tour::sequence)
        .def_readonly("length", &abrp::Tour::length);

    m.def("build_tour", &abrp::build_tour, py::arg("instance"), py::arg("subset"),
          py::call_guard<py::gil_scoped_release>(),
          "Closed depot tour over a customer subset (exact up to 12 stops).");

    py::class_<abrp::RealizedPlan>(m, "RealizedPlan")
        .def_readonly("routes", &abrp::RealizedPlan::routes)
        .def_readonly("tour_durations", &abrp::RealizedPlan::tour_durations)
        .def_readonly("completion_times", &abrp::RealizedPlan::completion_times)
        .def_readonly("arrival", &abrp::RealizedPlan::arrival)
        .def_readonly("objective", &abrp::RealizedPlan::objective);

    m.def("realize", &abrp::realize, py::arg("instance"), py::arg("alloc"),
          py::call_guard<py::gil_scoped_release>(),
          "Consecutive-block realization of an allocation on an instance.");
    m.def("brute_force_abrp", &abrp::brute_force_abrp, py::arg("instance"),
          py::arg("fairness"), py::call_guard<py::gil_scoped_release>(),
          "Globally optimal plan for n <= 9 by exhaustive search.");

    m.def("instance_to_json", &abrp::instance_to_json, py::arg("instance"));
    m.def("instance_from_json", &abrp::instance_from_json, py::arg("text"));
    m.def("save_instance", &abrp::save_instance, py::arg("instance"),
          py::arg("path"));
    m.def("load_instance", &abrp::load_instance, py::arg("path"));

    m.def("export_mip", &abrp::export_mip, py::arg("instance"),
          "Exact routing model in LP format.");
    m.def("save_mip", &abrp::save_mip, py::arg("instance"), py::arg("path"));
}
