#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>

#include "eqdiv/analysis.hpp"
#include "eqdiv/error.hpp"
#include "eqdiv/instance_io.hpp"
#include "eqdiv/oracle.hpp"
#include "eqdiv/solver.hpp"
#include "eqdiv/topology.hpp"

namespace py = pybind11;
using namespace eqdiv;

namespace {

std::vector<Density> densities_of(const Instance& inst) {
  return {inst.densities().begin(), inst.densities().end()};
}

std::vector<std::vector<double>> rows_of(const ValuationMatrix& vm) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < vm.size(); ++i) {
    rows.emplace_back(vm.row(i).begin(), vm.row(i).end());
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Equitable contiguous division of [0,1] among players with piecewise densities.";

  static py::exception<Error> error_type(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::enum_<DensityKind>(m, "DensityKind")
      .value("PiecewiseConstant", DensityKind::PiecewiseConstant)
      .value("PiecewiseLinear", DensityKind::PiecewiseLinear);

  py::class_<Density>(m, "Density")
      .def(py::init([](DensityKind kind, std::vector<double> breakpoints,
                       std::vector<double> values) {
             return Density::validate_and_normalize({kind, std::move(breakpoints),
                                                     std::move(values)});
           }),
           py::arg("kind"), py::arg("breakpoints"), py::arg("values"))
      .def_static("constant", [](std::vector<double> breakpoints, std::vector<double> heights) {
        return Density::validate_and_normalize(
            {DensityKind::PiecewiseConstant, std::move(breakpoints), std::move(heights)});
      })
      .def_static("linear", [](std::vector<double> breakpoints, std::vector<double> knots) {
        return Density::validate_and_normalize(
            {DensityKind::PiecewiseLinear, std::move(breakpoints), std::move(knots)});
      })
      .def_static("uniform", &Density::uniform)
      .def_property_readonly("kind", &Density::kind)
      .def_property_readonly("breakpoints", &Density::breakpoints)
      .def_property_readonly("values", &Density::values)
      .def_property_readonly("scale", &Density::scale)
      .def_property_readonly("max_height", &Density::max_height)
      .def("value_at", &Density::value_at, py::arg("x"))
      .def("cdf", &Density::cdf, py::arg("x"))
      .def("integral_on", &Density::integral_on, py::arg("a"), py::arg("b"))
      .def("generalized_inverse", &Density::generalized_inverse, py::arg("a"), py::arg("t"))
      .def("lower_quantile", &Density::lower_quantile, py::arg("level"))
      .def("upper_quantile", &Density::upper_quantile, py::arg("level"));

  py::class_<Permutation>(m, "Permutation")
      .def(py::init<std::vector<std::size_t>>(), py::arg("order"))
      .def_static("identity", &Permutation::identity, py::arg("n"))
      .def_property_readonly("order", &Permutation::order)
      .def("inverse", &Permutation::inverse)
      .def("__len__", &Permutation::size)
      .def("__getitem__", &Permutation::at)
      .def("__eq__", [](const Permutation& a, const Permutation& b) { return a == b; })
      .def("__repr__", [](const Permutation& p) {
        return "Permutation(" + py::repr(py::cast(p.order())).cast<std::string>() + ")";
      });
  py::implicitly_convertible<std::vector<std::size_t>, Permutation>();

  py::class_<CutVector>(m, "CutVector")
      .def(py::init<std::vector<double>>(), py::arg("cuts"))
      .def_property_readonly("values", &CutVector::values)
      .def("__len__", &CutVector::size)
      .def("__getitem__", [](const CutVector& c, std::size_t i) {
        if (i >= c.size()) throw py::index_error();
        return c[i];
      })
      .def("__repr__", [](const CutVector& c) {
        return "CutVector(" + py::repr(py::cast(c.values())).cast<std::string>() + ")";
      });
  py::implicitly_convertible<std::vector<double>, CutVector>();

  py::class_<Instance>(m, "Instance")
      .def(py::init<std::vector<Density>, Permutation>(), py::arg("densities"), py::arg("sigma"))
      .def(py::init<std::vector<Density>>(), py::arg("densities"))
      .def_property_readonly("player_count", &Instance::player_count)
      .def_property_readonly("densities", &densities_of)
      .def_property_readonly("sigma", &Instance::sigma)
      .def("with_sigma", &Instance::with_sigma, py::arg("sigma"))
      .def("owner_values", &owner_values, py::arg("cuts"))
      .def("equitability_gap", &equitability_gap, py::arg("cuts"));

  py::class_<SpherePoint>(m, "SpherePoint")
      .def(py::init<std::vector<double>>(), py::arg("coords"))
      .def_static("normalized", &SpherePoint::normalized, py::arg("coords"))
      .def_property_readonly("coords", &SpherePoint::coords)
      .def("antipode", &SpherePoint::antipode)
      .def("__len__", &SpherePoint::dimension);

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("Converged", SolveStatus::Converged)
      .value("RefinedConverged", SolveStatus::RefinedConverged)
      .value("BestEffort", SolveStatus::BestEffort);

  py::class_<EquitableSolution>(m, "EquitableSolution")
      .def_readonly("cuts", &EquitableSolution::cuts)
      .def_readonly("value", &EquitableSolution::value)
      .def_readonly("gap", &EquitableSolution::gap)
      .def_readonly("status", &EquitableSolution::status)
      .def_readonly("residual_norm", &EquitableSolution::residual_norm)
      .def_readonly("iterations", &EquitableSolution::iterations);

  py::class_<ChainResult>(m, "ChainResult")
      .def_readonly("cuts", &ChainResult::cuts)
      .def_readonly("residual", &ChainResult::residual);

  py::class_<SweepEntry>(m, "SweepEntry")
      .def_readonly("sigma", &SweepEntry::sigma)
      .def_readonly("solution", &SweepEntry::solution);

  py::class_<FairnessReport>(m, "FairnessReport")
      .def_readonly("own_values", &FairnessReport::own_values)
      .def_readonly("equitable_gap", &FairnessReport::equitable_gap)
      .def_readonly("equitable_ok", &FairnessReport::equitable_ok)
      .def_readonly("proportional_margins", &FairnessReport::proportional_margins)
      .def_readonly("proportional_margin", &FairnessReport::proportional_margin)
      .def_readonly("proportional_ok", &FairnessReport::proportional_ok)
      .def_readonly("envy", &FairnessReport::envy)
      .def_readonly("worst_envy", &FairnessReport::worst_envy)
      .def_readonly("envy_free_ok", &FairnessReport::envy_free_ok)
      .def_readonly("exact_gap", &FairnessReport::exact_gap)
      .def_readonly("exact_ok", &FairnessReport::exact_ok);

  py::class_<GridSearchResult>(m, "GridSearchResult")
      .def_readonly("cuts", &GridSearchResult::cuts)
      .def_readonly("gap", &GridSearchResult::gap);

  py::class_<InstanceFile>(m, "InstanceFile")
      .def_readonly("names", &InstanceFile::names)
      .def_readonly("instance", &InstanceFile::instance)
      .def_readonly("tol", &InstanceFile::tol)
      .def_readonly("warnings", &InstanceFile::warnings);

  m.def("chain_cuts", &chain_cuts, py::arg("instance"), py::arg("v"));
  m.def(
      "solve_equitable",
      [](const Instance& inst, double tol, std::size_t max_iter) {
        py::gil_scoped_release release;
        return solve_equitable(inst, {tol, max_iter});
      },
      py::arg("instance"), py::arg("tol") = 1e-9, py::arg("max_iter") = 200);
  m.def("plateau_refine", &plateau_refine, py::arg("instance"), py::arg("cuts"), py::arg("v"),
        py::arg("tol"));
  m.def(
      "sweep_permutations",
      [](const std::vector<Density>& densities, double tol, bool parallel) {
        py::gil_scoped_release release;
        return sweep_permutations(densities, {tol, SweepOptions{}.max_players, parallel});
      },
      py::arg("densities"), py::arg("tol") = 1e-9, py::arg("parallel") = false);

  m.def("sphere_to_cuts", &sphere_to_cuts, py::arg("e"));
  m.def("cuts_to_sphere", &cuts_to_sphere, py::arg("cuts"));
  m.def("residual_map", &residual_map, py::arg("instance"), py::arg("e"));
  m.def("residual_norm", &residual_norm, py::arg("instance"), py::arg("e"));
  m.def("descent_refine", &descent_refine, py::arg("instance"), py::arg("start"), py::arg("tol"),
        py::arg("max_iter") = 200);

  m.def(
      "valuation_matrix",
      [](const std::vector<Density>& densities, const CutVector& cuts, const Permutation& sigma) {
        return rows_of(valuation_matrix(densities, cuts, sigma));
      },
      py::arg("densities"), py::arg("cuts"), py::arg("sigma"));
  m.def(
      "fairness_report",
      [](const std::vector<std::vector<double>>& rows, const Permutation& sigma, double tol) {
        ValuationMatrix vm(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (rows[i].size() != rows.size()) {
            throw Error(ErrorCode::DimensionMismatch, "valuation matrix must be square");
          }
          for (std::size_t j = 0; j < rows.size(); ++j) vm(i, j) = rows[i][j];
        }
        return fairness_report(vm, sigma, tol);
      },
      py::arg("matrix"), py::arg("sigma"), py::arg("tol") = 1e-9);

  m.def("grid_search_equitable", &grid_search_equitable, py::arg("instance"),
        py::arg("resolution"));

  m.def("parse_instance",
        py::overload_cast<const std::filesystem::path&>(&parse_instance), py::arg("path"));
  m.def("parse_instance_text", &parse_instance_text, py::arg("text"));
}
