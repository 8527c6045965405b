#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mesp/certificates.hpp"
#include "mesp/envelope.hpp"
#include "mesp/errors.hpp"
#include "mesp/instance.hpp"
#include "mesp/primal.hpp"
#include "mesp/relaxation.hpp"
#include "mesp/spectral.hpp"
#include "mesp/sweep.hpp"

namespace py = pybind11;
using namespace mesp;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bounds, certificates and heuristics for maximum-entropy sampling.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SymmetryError>(m, "SymmetryError", base.ptr());
  py::register_exception<NotPositiveDefiniteError>(m, "NotPositiveDefiniteError", base.ptr());
  py::register_exception<ShiftTooLargeError>(m, "ShiftTooLargeError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SolverError>(m, "SolverError", base.ptr());
  py::register_exception<BudgetExceededError>(m, "BudgetExceededError", base.ptr());
  py::register_exception<InconsistentBoundsError>(m, "InconsistentBoundsError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<CovarianceModel>(m, "CovarianceModel")
      .def(py::init<Matrix>(), py::arg("entries"))
      .def_property_readonly("dim", &CovarianceModel::dim)
      .def_property_readonly("entries", &CovarianceModel::entries)
      .def_property_readonly("lambda_min", &CovarianceModel::lambda_min)
      .def_property_readonly("lambda_max", &CovarianceModel::lambda_max)
      .def_property_readonly("condition_number", &CovarianceModel::condition_number)
      .def_property_readonly("eigenvalues",
                             [](const CovarianceModel& c) { return c.spectrum().eigenvalues; });

  m.def("load_matrix", &load_matrix, py::arg("path"));
  m.def("save_matrix", &save_matrix, py::arg("path"), py::arg("entries"));
  m.def("generate_instance", &generate_instance, py::arg("n"), py::arg("kappa"),
        py::arg("seed"));
  m.def("instance_with_spectrum", &instance_with_spectrum, py::arg("eigenvalues"),
        py::arg("seed"));
  m.def("logdet_submatrix", &logdet_submatrix, py::arg("model"), py::arg("subset"));
  m.def("shifted_rank", &shifted_rank, py::arg("model"), py::arg("t"));

  py::class_<EnvelopeEval>(m, "EnvelopeEval")
      .def_readonly("value", &EnvelopeEval::value)
      .def_readonly("k", &EnvelopeEval::k)
      .def_readonly("s", &EnvelopeEval::s)
      .def_readonly("rank_deficient", &EnvelopeEval::rank_deficient)
      .def_property_readonly("subgradient", [](const EnvelopeEval& e) { return psi_subgradient(e); });
  m.def("psi", &psi, py::arg("y"), py::arg("s"));
  m.def("envelope_value", &envelope_value, py::arg("eigenvalues"), py::arg("t"), py::arg("s"));

  py::enum_<BoundKind>(m, "BoundKind")
      .value("AUGFACT", BoundKind::kAugFact)
      .value("FACT", BoundKind::kFact)
      .value("DDFR", BoundKind::kDdfR);
  py::enum_<StepRule>(m, "StepRule")
      .value("LINE_SEARCH", StepRule::kLineSearch)
      .value("OPEN_LOOP", StepRule::kOpenLoop);

  py::class_<SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("max_iters", &SolverOptions::max_iters)
      .def_readwrite("tol", &SolverOptions::tol)
      .def_readwrite("step_rule", &SolverOptions::step_rule)
      .def_readwrite("record_history", &SolverOptions::record_history);

  py::class_<RelaxationSolution>(m, "RelaxationSolution")
      .def_property_readonly("x", [](const RelaxationSolution& r) { return r.point.x; })
      .def_property_readonly("s", [](const RelaxationSolution& r) { return r.point.s; })
      .def_readonly("objective", &RelaxationSolution::objective)
      .def_readonly("certified_ub", &RelaxationSolution::certified_ub)
      .def_readonly("fw_gap", &RelaxationSolution::fw_gap)
      .def_readonly("iterations", &RelaxationSolution::iterations)
      .def_readonly("converged", &RelaxationSolution::converged)
      .def_readonly("bound_kind", &RelaxationSolution::bound_kind)
      .def_readonly("shift", &RelaxationSolution::shift)
      .def_readonly("gap_history", &RelaxationSolution::gap_history);

  m.def("solve_bound", &solve_bound, py::arg("model"), py::arg("kind"), py::arg("t"),
        py::arg("s"), py::arg("options") = SolverOptions{});
  m.def(
      "bound_objective",
      [](const CovarianceModel& model, BoundKind kind, double t, const Vector& x, int s) {
        const auto eval = bound_objective(kind, shifted_factor(model, t), x, s);
        return py::make_tuple(eval.value, eval.finite ? py::cast(eval.gradient) : py::none());
      },
      py::arg("model"), py::arg("kind"), py::arg("t"), py::arg("x"), py::arg("s"),
      "Objective value and gradient (None when the value is -inf) at x.");
  m.def("lmo", &lmo, py::arg("gradient"), py::arg("s"));

  py::class_<ImprovementCertificate>(m, "ImprovementCertificate")
      .def_readonly("delta_lb", &ImprovementCertificate::delta_lb)
      .def_readonly("theta_lb", &ImprovementCertificate::theta_lb)
      .def_readonly("k", &ImprovementCertificate::k)
      .def_readonly("strict_over_fact", &ImprovementCertificate::strict_over_fact)
      .def_readonly("beta_star", &ImprovementCertificate::beta_star)
      .def_readonly("lambda_star", &ImprovementCertificate::lambda_star)
      .def_readonly("fw_gap", &ImprovementCertificate::fw_gap);
  m.def("improvement_certificate", &improvement_certificate, py::arg("model"),
        py::arg("solution"));

  py::class_<ApproxBounds>(m, "ApproxBounds")
      .def_readonly("sampling_bound", &ApproxBounds::sampling_bound)
      .def_readonly("local_search_bound", &ApproxBounds::local_search_bound);
  m.def("adjusted_approx_bounds", &adjusted_approx_bounds, py::arg("delta_lb"), py::arg("n"),
        py::arg("s"));
  m.def(
      "strict_over_ddf",
      [](const CovarianceModel& model, double t, int s, const RelaxationSolution& sol,
         double z_value, bool z_is_exact) {
        return std::string(to_string(strict_over_ddf(model, t, s, sol, z_value, z_is_exact)));
      },
      py::arg("model"), py::arg("t"), py::arg("s"), py::arg("solution"), py::arg("z_value"),
      py::arg("z_is_exact"));

  py::class_<SubsetSolution>(m, "SubsetSolution")
      .def_readonly("subset", &SubsetSolution::subset)
      .def_readonly("objective", &SubsetSolution::objective)
      .def_property_readonly("method",
                             [](const SubsetSolution& r) { return std::string(to_string(r.method)); });
  m.def("greedy", &greedy, py::arg("model"), py::arg("s"));
  m.def("local_search", &local_search, py::arg("model"), py::arg("s"), py::arg("init"));
  m.def("brute_force", &brute_force, py::arg("model"), py::arg("s"),
        py::arg("budget") = kBruteForceBudget);

  py::class_<FixingCertificate>(m, "FixingCertificate")
      .def_readonly("g_tilde", &FixingCertificate::g_tilde)
      .def_readonly("ub", &FixingCertificate::ub)
      .def_readonly("lb", &FixingCertificate::lb)
      .def_readonly("fixed_one", &FixingCertificate::fixed_one)
      .def_readonly("fixed_zero", &FixingCertificate::fixed_zero);
  m.def("fix_variables", &fix_variables, py::arg("model"), py::arg("solution"), py::arg("lb"));
  m.def("fix_from_supergradient", &fix_from_supergradient, py::arg("g"), py::arg("ub"),
        py::arg("lb"), py::arg("s"));

  m.def(
      "sweep_csv",
      [](const CovarianceModel& model, const std::string& s, const std::string& t,
         const std::string& bounds, const std::string& lb, bool fixing,
         const SolverOptions& options) {
        SweepConfig config;
        config.s_values = parse_s_values(s, model.dim());
        config.shift = parse_shift_spec(t);
        config.bounds = parse_bounds(bounds);
        config.lower_bound = parse_lower_bound_spec(lb);
        config.fixing = fixing;
        config.solver = options;
        std::vector<ReportRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(model, config);
        }
        std::ostringstream out;
        write_csv(out, rows);
        return out.str();
      },
      py::arg("model"), py::arg("s") = "2..n-1", py::arg("t") = "min",
      py::arg("bounds") = "augfact,fact,ddfr", py::arg("lb") = "auto", py::arg("fixing") = false,
      py::arg("options") = SolverOptions{},
      "Runs a bound sweep and returns the CSV report as text.");
}
