#include "minormax/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "minormax/errors.hpp"
#include "minormax/experiments.hpp"
#include "minormax/format.hpp"
#include "minormax/limit_laws.hpp"
#include "minormax/q_kernels.hpp"
#include "minormax/report.hpp"

namespace minormax {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_real_list(const std::string& text, const char* flag) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      values.push_back(parse_double(item));
    } catch (const std::invalid_argument&) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    }
  }
  if (values.empty()) {
    throw UsageError(std::string(flag) + ": empty list");
  }
  return values;
}

std::vector<std::int64_t> parse_size_list(const std::string& text, const char* flag) {
  std::vector<std::int64_t> sizes;
  for (double v : parse_real_list(text, flag)) {
    if (!(v >= 1.0) || v > 9e15 || std::floor(v) != v) {
      throw UsageError(std::string(flag) + ": sizes must be positive integers");
    }
    sizes.push_back(static_cast<std::int64_t>(v));
  }
  return sizes;
}

int parse_threads(const std::string& text) {
  if (text == "auto") return 0;
  try {
    const double v = parse_double(text);
    if (v >= 1.0 && v <= 4096.0 && std::floor(v) == v) return static_cast<int>(v);
  } catch (const std::invalid_argument&) {
  }
  throw UsageError("--threads: expected a positive integer or 'auto'");
}

struct LawFlags {
  std::string law = "auto";
  std::optional<double> xi;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--law", law, "Limit law")->check(CLI::IsMember({"auto", "gumbel", "gxi"}));
    cmd->add_option("--xi", xi, "Diagonal variance / fourth-moment parameter");
  }

  LimitLaw resolve() const {
    if (law == "gumbel") return Gumbel{};
    if (!xi) {
      throw UsageError("--xi is required with --law " + law);
    }
    if (law == "gxi") {
      if (!(*xi > 2.0)) throw UsageError("--law gxi needs --xi > 2");
      return GXi{eta(*xi)};
    }
    return law_for(*xi);
  }
};

struct SimulateFlags {
  std::optional<double> xi;
  std::optional<std::int64_t> p;
  std::optional<std::int64_t> n;
  std::string dist = "gaussian";
  std::int64_t reps = 1000;
  std::uint64_t seed = 0;
  std::string threads = "auto";
  std::string out;
  std::string law = "auto";
  std::string pgrid;
  std::string ngrid;
  std::string stat = "pair";
};

ExperimentConfig build_config(const SimulateFlags& f) {
  ExperimentConfig config;
  if (!f.p) throw UsageError("simulate: --p is required (or --pgrid)");
  if (f.n) {
    if (f.xi) throw UsageError("simulate: --xi is implied by --dist for Wishart runs");
    EntryDistribution dist;
    try {
      dist = parse_entry_distribution(f.dist);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    config.ensemble = Wishart{*f.n, *f.p, dist};
  } else {
    if (!f.xi) throw UsageError("simulate: --xi is required for the deformed GOE");
    config.ensemble = DeformedGoe{*f.xi, *f.p};
  }
  config.replicates = f.reps;
  config.master_seed = f.seed;
  config.threads = parse_threads(f.threads);
  config.output_path = f.out;
  config.statistic = f.stat == "diag" ? Statistic::kDiagMax : Statistic::kPairMax;
  if (!f.pgrid.empty() && !f.ngrid.empty()) throw UsageError("simulate: use --pgrid or --ngrid, not both");
  if (!f.pgrid.empty()) {
    if (f.n) throw UsageError("simulate: --pgrid is for the deformed GOE; use --ngrid for Wishart");
    config.grid = parse_size_list(f.pgrid, "--pgrid");
  }
  if (!f.ngrid.empty()) {
    if (!f.n) throw UsageError("simulate: --ngrid needs --n (Wishart)");
    config.grid = parse_size_list(f.ngrid, "--ngrid");
  }
  if (f.law != "auto") {
    const double xi = ensemble_xi(config.ensemble);
    LawFlags lf{f.law, xi};
    config.law_override = lf.resolve();
  }
  return config;
}

std::string sized_path(const std::string& path, std::int64_t size) {
  std::filesystem::path p(path);
  const std::string stem = p.stem().string() + "_" + std::to_string(size);
  return (p.parent_path() / (stem + p.extension().string())).string();
}

int run_simulate(const SimulateFlags& flags, std::ostream& out) {
  SimulateFlags f = flags;
  if (!f.p && !f.pgrid.empty() && !f.n) {
    f.p = parse_size_list(f.pgrid, "--pgrid").front();
  }
  const ExperimentConfig config = build_config(f);
  validate(config);
  if (config.grid.empty()) {
    const auto stats = run_mc(config);
    const GofReport r = write_report(stats, resolve_law(config), config);
    out << "ks=" << shortest(r.ks) << " median=" << shortest(r.sample_median) << " n=" << r.n_samples
        << " law=" << describe(r.law) << " hash=" << r.config_hash << "\n"
        << "report=" << config.output_path << " samples=" << samples_path(config.output_path).string() << "\n";
    return 0;
  }
  out << "size,ks,median,report\n";
  for (std::int64_t size : config.grid) {
    ExperimentConfig sized = with_size(config, size);
    sized.output_path = sized_path(config.output_path, size);
    const auto stats = run_mc(sized);
    const GofReport r = write_report(stats, resolve_law(sized), sized);
    out << size << "," << shortest(r.ks) << "," << shortest(r.sample_median) << "," << sized.output_path << "\n";
  }
  return 0;
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text).flush()) {
    throw std::runtime_error("cannot write " + path);
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maxima of 2x2 principal minors: simulation, limit laws and kernel diagnostics", "minormax"};
  app.require_subcommand(1);

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run with goodness-of-fit report");
  simulate->add_option("--xi", sim.xi, "Diagonal variance of the deformed GOE");
  simulate->add_option("--p", sim.p, "Dimension")->check(CLI::PositiveNumber);
  simulate->add_option("--n", sim.n, "Sample size (selects the Wishart ensemble)")->check(CLI::PositiveNumber);
  simulate->add_option("--dist", sim.dist, "Wishart entry distribution")
      ->check(CLI::IsMember({"gaussian", "rademacher", "uniform"}));
  simulate->add_option("--reps", sim.reps, "Replicates")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--threads", sim.threads, "Worker threads or 'auto'");
  simulate->add_option("--out", sim.out, "JSON report path; samples go to the .csv sibling")->required();
  simulate->add_option("--law", sim.law, "Reference law")->check(CLI::IsMember({"auto", "gumbel", "gxi"}));
  simulate->add_option("--pgrid", sim.pgrid, "Comma list of p values (deformed GOE trend)");
  simulate->add_option("--ngrid", sim.ngrid, "Comma list of n values (Wishart trend)");
  simulate->add_option("--stat", sim.stat, "pair (2x2 minors) or diag (1x1)")->check(CLI::IsMember({"pair", "diag"}));

  LawFlags cdf_law;
  double cdf_z = 0.0;
  auto* cdf = app.add_subcommand("cdf", "Evaluate a limit-law CDF");
  cdf_law.add_to(cdf);
  cdf->add_option("--z", cdf_z, "Argument")->required();

  LawFlags q_law;
  double q_level = 0.5;
  auto* quantile = app.add_subcommand("quantile", "Invert a limit-law CDF");
  q_law.add_to(quantile);
  quantile->add_option("--q", q_level, "Probability in (0, 1)")->required();

  double vl_xi = 1.0;
  std::string vl_pgrid = "1e10,1e50,1e100";
  double vl_y = 0.0;
  double vl_z = 0.0;
  int vl_jmax = 3;
  std::string vl_out;
  auto* verify = app.add_subcommand("verify-lemmas", "Kernel limit diagnostics over a p-grid (CSV)");
  verify->add_option("--xi", vl_xi, "Diagonal variance")->required();
  verify->add_option("--pgrid", vl_pgrid, "Comma list of p (reals allowed)");
  verify->add_option("--y", vl_y, "Threshold offset for c_p");
  verify->add_option("--z", vl_z, "Threshold offset for t_p");
  verify->add_option("--jmax", vl_jmax, "Largest moment order")->check(CLI::Range(2, 8));
  verify->add_option("--out", vl_out, "CSV path (stdout if omitted)");

  LawFlags ks_law;
  std::string ks_csv;
  auto* ks = app.add_subcommand("ks", "KS distance of a samples CSV");
  ks->add_option("csv", ks_csv, "Samples CSV written by simulate")->required();
  ks_law.add_to(ks);

  std::string cons_pgrid = "1e8,1e20,1e50,1e100";
  std::vector<double> cons_z{-2.0, 0.0, 2.0};
  auto* consistency = app.add_subcommand("consistency", "Gumbel versus the m=2 GOE eigenvalue law at xi=2 (CSV)");
  consistency->add_option("--pgrid", cons_pgrid, "Comma list of p");
  consistency->add_option("--z", cons_z, "Arguments")->expected(1, -1);

  const bool color = color_enabled(STDERR_FILENO);
  auto report_error = [&](const std::string& message) {
    err << (color ? "\033[31merror:\033[0m " : "error: ") << message << "\n";
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out;
    std::ostringstream help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    if (code != 0) {
      report_error(e.what());
      err << "run with --help for usage\n";
      return 2;
    }
    return 0;
  }

  try {
    if (*simulate) {
      return run_simulate(sim, out);
    }
    if (*cdf) {
      out << shortest(law_cdf(cdf_law.resolve(), cdf_z)) << "\n";
      return 0;
    }
    if (*quantile) {
      if (!(q_level > 0.0 && q_level < 1.0)) throw UsageError("--q must lie in (0, 1)");
      out << shortest(law_quantile(q_law.resolve(), q_level)) << "\n";
      return 0;
    }
    if (*verify) {
      std::ostringstream csv;
      csv << "diagnostic,p,value,predicted_limit,ratio\n";
      for (double p : parse_real_list(vl_pgrid, "--pgrid")) {
        for (const Diagnostic& d : chores_limits(make_kernel_context(vl_xi, p, vl_y, vl_z), vl_jmax)) {
          csv << d.name << "," << shortest(d.p) << "," << shortest(d.value) << "," << shortest(d.predicted_limit)
              << "," << shortest(d.ratio) << "\n";
        }
      }
      write_or_print(vl_out, csv.str(), out);
      return 0;
    }
    if (*ks) {
      const auto stats = read_samples_csv(ks_csv);
      if (stats.empty()) throw UsageError("ks: no samples in " + ks_csv);
      out << shortest(ks_distance(normalized_values(stats), ks_law.resolve())) << "\n";
      return 0;
    }
    if (*consistency) {
      out << "p,z,delta\n";
      for (double p : parse_real_list(cons_pgrid, "--pgrid")) {
        for (double z : cons_z) {
          out << shortest(p) << "," << shortest(z) << "," << shortest(feng_consistency_delta(p, z)) << "\n";
        }
      }
      return 0;
    }
  } catch (const UsageError& e) {
    report_error(e.what());
    return 2;
  } catch (const DomainError& e) {
    report_error(e.what());
    return 2;
  } catch (const std::exception& e) {
    report_error(e.what());
    return 1;
  }
  return 2;
}

}  // namespace minormax
