#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "avgov/analysis.hpp"
#include "avgov/core.hpp"
#include "avgov/params.hpp"
#include "avgov/repeated.hpp"

namespace py = pybind11;
using namespace avgov;

namespace {

Instance make_instance(std::vector<double> weights, const std::vector<std::vector<double>>& beliefs,
                       const std::optional<std::vector<std::vector<double>>>& external) {
  Grid<double> p = Grid<double>::from_rows(beliefs);
  if (!external) return Instance(std::move(weights), std::move(p));
  return Instance(std::move(weights), std::move(p), Grid<double>::from_rows(*external));
}

// Python sees 1-based proposals with 0 for the dummy.
std::size_t to_number(const Winner& w) { return proposal_number(w); }

}  // namespace

PYBIND11_MODULE(_avgov, m) {
  m.doc() = "Approval-voting update selection: equilibria, rewards and reputation dynamics";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ScheduleError>(m, "ScheduleError", PyExc_ValueError);
  py::register_exception<NormalizationError>(m, "NormalizationError", PyExc_ArithmeticError);
  py::register_exception<GuardError>(m, "GuardError", PyExc_OverflowError);

  py::enum_<Mode>(m, "Mode")
      .value("strategic", Mode::strategic)
      .value("semi_strategic", Mode::semi_strategic);

  py::class_<RewardSchedule>(m, "RewardSchedule")
      .def(py::init<>())
      .def_readwrite("a", &RewardSchedule::a)
      .def_readwrite("a_prime", &RewardSchedule::a_prime)
      .def_readwrite("s", &RewardSchedule::s)
      .def_readwrite("T", &RewardSchedule::T)
      .def_readwrite("epsilon", &RewardSchedule::epsilon)
      .def_readwrite("delta", &RewardSchedule::delta)
      .def("__repr__", [](const RewardSchedule& s) {
        return "RewardSchedule(a=" + std::to_string(s.a) + ", a_prime=" +
               std::to_string(s.a_prime) + ", s=" + std::to_string(s.s) +
               ", T=" + std::to_string(s.T) + ")";
      });

  py::class_<ScheduleDiagnostics>(m, "ScheduleDiagnostics")
      .def_readonly("threshold_identity_residual", &ScheduleDiagnostics::threshold_identity_residual)
      .def_readonly("inflection_residual", &ScheduleDiagnostics::inflection_residual)
      .def_readonly("all_ok", &ScheduleDiagnostics::all_ok);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("weights"), py::arg("beliefs"),
           py::arg("external") = py::none())
      .def_property_readonly("experts", &Instance::experts)
      .def_property_readonly("proposals", &Instance::proposals)
      .def_property_readonly("weights", &Instance::weights);

  py::class_<VotingProfile>(m, "VotingProfile")
      .def(py::init(&VotingProfile::from_rows), py::arg("rows"))
      .def("rows", &VotingProfile::to_rows)
      .def("__eq__", [](const VotingProfile& a, const VotingProfile& b) { return a == b; });

  m.def("derive_schedule", &derive_schedule, py::arg("T"), py::arg("epsilon"),
        py::arg("a_prime"), py::arg("require_a_dominates") = true);
  m.def("validate_schedule", &validate_schedule);
  m.def("max_discount", &max_discount, py::arg("epsilon"), py::arg("zeta"));

  m.def("winner", [](const Instance& i, const VotingProfile& r) {
    return to_number(winner(i, r).winner);
  });
  m.def("utility", &utility, py::arg("instance"), py::arg("schedule"), py::arg("profile"),
        py::arg("expert"));
  m.def("expected_reward", &expected_reward);
  m.def("honest_profile", &honest_profile);
  m.def("qual", [](const Instance& i, double T, std::size_t proposal) {
    if (proposal == 0) return 0.0;
    return qual(i, T, proposal - 1);
  });

  m.def("is_approx_pne",
        [](const Instance& i, const RewardSchedule& s, const VotingProfile& r, Mode mode,
           double epsilon) { return is_approx_pne(i, s, r, {mode, epsilon}); },
        py::arg("instance"), py::arg("schedule"), py::arg("profile"),
        py::arg("mode") = Mode::semi_strategic, py::arg("epsilon") = 0.0);

  m.def(
      "enumerate_equilibria",
      [](const Instance& i, const RewardSchedule& s, Mode mode, double epsilon) {
        const auto report = enumerate_equilibria(i, s, {mode, epsilon});
        py::list equilibria;
        for (const auto& e : report.equilibria) {
          equilibria.append(py::make_tuple(e.profile.to_rows(), to_number(e.winner), e.quality));
        }
        py::dict out;
        out["equilibria"] = equilibria;
        out["opt"] = report.opt.quality;
        out["poa"] = report.poa ? py::cast(*report.poa) : py::none();
        out["pos"] = report.pos ? py::cast(*report.pos) : py::none();
        return out;
      },
      py::arg("instance"), py::arg("schedule"), py::arg("mode") = Mode::semi_strategic,
      py::arg("epsilon") = 0.0);

  m.def(
      "dynamics",
      [](const Instance& i, const RewardSchedule& s, const VotingProfile& start, Mode mode,
         std::size_t max_steps) {
        const auto t = best_response_dynamics(i, s, start, mode, max_steps);
        return py::make_tuple(std::string(to_string(t.terminal)), t.path.size(), t.cycle_length);
      },
      py::arg("instance"), py::arg("schedule"), py::arg("start"),
      py::arg("mode") = Mode::semi_strategic, py::arg("max_steps") = 64);

  m.def("delayed_update", &delayed_update, py::arg("weight"), py::arg("omega"),
        py::arg("zeta"));
  m.def(
      "run_honest",
      [](std::vector<double> expertise, const RewardSchedule& s, double zeta, std::size_t k,
         std::size_t horizon, std::uint64_t seed) {
        WorldConfig w;
        w.expertise = std::move(expertise);
        w.zeta = zeta;
        w.proposals_per_round = k;
        w.horizon = horizon;
        w.seed = seed;
        return run(w, s, Policy::honest()).final_weights;
      },
      py::arg("expertise"), py::arg("schedule"), py::arg("zeta") = 0.05, py::arg("k") = 2,
      py::arg("horizon") = 100, py::arg("seed") = 0);
}
