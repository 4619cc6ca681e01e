#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minormax/ensembles.hpp"
#include "minormax/errors.hpp"
#include "minormax/experiments.hpp"
#include "minormax/limit_laws.hpp"
#include "minormax/minor_stats.hpp"
#include "minormax/q_kernels.hpp"

namespace py = pybind11;
using namespace minormax;

namespace {

EntryDistribution dist_from(const std::string& name) { return parse_entry_distribution(name); }

}  // namespace

PYBIND11_MODULE(_minormax, m) {
  m.doc() = "Maxima of 2x2 principal minors of random matrices";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_MemoryError);

  m.def("std_normal_sf", &std_normal_sf, py::arg("x"));
  m.def("log_std_normal_sf", &log_std_normal_sf, py::arg("x"));
  m.def("lower_incomplete_gamma", &lower_incomplete_gamma, py::arg("a"), py::arg("x"));

  py::class_<NormConstants>(m, "NormConstants")
      .def_readonly("xi", &NormConstants::xi)
      .def_readonly("p", &NormConstants::p)
      .def_readonly("alpha_p", &NormConstants::alpha_p)
      .def_readonly("beta_p", &NormConstants::beta_p)
      .def_readonly("A", &NormConstants::A)
      .def_readonly("B", &NormConstants::B);
  m.def("norm_constants", &norm_constants, py::arg("xi"), py::arg("p"));
  m.def("eta", &eta, py::arg("xi"));

  py::class_<Gumbel>(m, "Gumbel").def(py::init<>()).def("__repr__", [](const Gumbel&) { return "Gumbel()"; });
  py::class_<GXi>(m, "GXi")
      .def(py::init([](double e) { return GXi{e}; }), py::arg("eta"))
      .def_readonly("eta", &GXi::eta)
      .def("__repr__", [](const GXi& g) { return describe(LimitLaw{g}); });
  m.def("law_for", &law_for, py::arg("xi"));
  m.def("law_cdf", &law_cdf, py::arg("law"), py::arg("z"));
  m.def("law_quantile", &law_quantile, py::arg("law"), py::arg("q"));
  m.def("describe", &describe, py::arg("law"));
  m.def("gumbel_cdf", &gumbel_cdf, py::arg("z"));
  m.def("inner_integral", &inner_integral, py::arg("tau"), py::arg("eta"));
  m.def("gxi_cdf", [](double z, double e) { return gxi_cdf(z, e); }, py::arg("z"), py::arg("eta"));
  m.def("feng_consistency_delta", &feng_consistency_delta, py::arg("p"), py::arg("z"));

  m.def("top_eig_2x2", &top_eig_2x2, py::arg("a"), py::arg("d"), py::arg("b"));

  py::class_<PairMaxResult>(m, "PairMaxResult")
      .def_readonly("raw_max", &PairMaxResult::raw_max)
      .def_readonly("argmax_pair", &PairMaxResult::argmax_pair)
      .def_readonly("normalized", &PairMaxResult::normalized);
  m.def(
      "goe_pair_max",
      [](double xi, std::int64_t p, std::uint64_t seed, std::uint64_t replicate) {
        py::gil_scoped_release release;
        return goe_pair_max(xi, p, SeedSpec{seed, replicate});
      },
      py::arg("xi"), py::arg("p"), py::arg("seed"), py::arg("replicate") = 0);
  m.def(
      "wishart_pair_max",
      [](std::int64_t n, std::int64_t p, const std::string& dist, std::uint64_t seed, std::uint64_t replicate) {
        const EntryDistribution d = dist_from(dist);
        py::gil_scoped_release release;
        return wishart_pair_max(n, p, d, SeedSpec{seed, replicate});
      },
      py::arg("n"), py::arg("p"), py::arg("dist") = "gaussian", py::arg("seed") = 0, py::arg("replicate") = 0);
  m.def(
      "diag_max",
      [](double xi, std::int64_t p, std::uint64_t seed, std::uint64_t replicate) {
        return diag_max(xi, p, SeedSpec{seed, replicate});
      },
      py::arg("xi"), py::arg("p"), py::arg("seed") = 0, py::arg("replicate") = 0);

  m.def(
      "run_mc",
      [](double xi, std::int64_t p, std::int64_t replicates, std::uint64_t seed, int threads,
         std::optional<std::int64_t> n, const std::string& dist) {
        ExperimentConfig config;
        if (n) {
          config.ensemble = Wishart{*n, p, dist_from(dist)};
        } else {
          config.ensemble = DeformedGoe{xi, p};
        }
        config.replicates = replicates;
        config.master_seed = seed;
        config.threads = threads;
        std::vector<ReplicateStat> stats;
        {
          py::gil_scoped_release release;
          stats = run_mc(config);
        }
        std::vector<std::pair<double, double>> out;
        for (const auto& s : stats) out.emplace_back(s.raw, s.normalized);
        return out;
      },
      "List of (raw, normalized) per replicate; pass n for the Wishart ensemble.", py::arg("xi") = 0.0,
      py::arg("p"), py::arg("replicates"), py::arg("seed") = 0, py::arg("threads") = 1, py::arg("n") = py::none(),
      py::arg("dist") = "gaussian");
  m.def("ks_distance", py::overload_cast<std::vector<double>, const LimitLaw&>(&ks_distance), py::arg("samples"),
        py::arg("law"));

  m.def(
      "q_x", [](double x, double xi, double p, double y, double z) { return q_x(x, make_kernel_context(xi, p, y, z)); },
      py::arg("x"), py::arg("xi"), py::arg("p"), py::arg("y") = 0.0, py::arg("z") = 0.0);
  m.def(
      "q_tp", [](double xi, double p, double y, double z) { return q_tp(make_kernel_context(xi, p, y, z)); },
      py::arg("xi"), py::arg("p"), py::arg("y") = 0.0, py::arg("z") = 0.0);

  py::class_<Diagnostic>(m, "Diagnostic")
      .def_readonly("name", &Diagnostic::name)
      .def_readonly("p", &Diagnostic::p)
      .def_readonly("value", &Diagnostic::value)
      .def_readonly("predicted_limit", &Diagnostic::predicted_limit)
      .def_readonly("ratio", &Diagnostic::ratio);
  m.def(
      "chores_limits",
      [](double xi, double p, double y, double z, int j_max) {
        return chores_limits(make_kernel_context(xi, p, y, z), j_max);
      },
      py::arg("xi"), py::arg("p"), py::arg("y") = 0.0, py::arg("z") = 0.0, py::arg("j_max") = 3);

  py::class_<SeriesCheck>(m, "SeriesCheck")
      .def_readonly("partial_sum", &SeriesCheck::partial_sum)
      .def_readonly("integral_value", &SeriesCheck::integral_value)
      .def_readonly("next_term", &SeriesCheck::next_term);
  m.def("series_identity_check", &series_identity_check, py::arg("tau"), py::arg("eta"), py::arg("y"), py::arg("z"),
        py::arg("j_max"));
}
