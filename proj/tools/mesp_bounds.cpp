// mesp-bounds: upper/lower bounds, gaps and variable fixing for maximum-entropy
// sampling over a covariance matrix, reported as CSV.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mesp/errors.hpp"
#include "mesp/instance.hpp"
#include "mesp/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;
constexpr int kExitSolver = 4;

struct GeneratorArgs {
  int n = 0;
  double kappa = 1.0;
  std::optional<std::uint64_t> seed;
};

GeneratorArgs parse_generator(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  if (parts.size() < 2 || parts.size() > 3) {
    throw mesp::ConfigError("--generate expects n,kappa[,seed]");
  }
  GeneratorArgs out;
  try {
    size_t used = 0;
    out.n = std::stoi(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("n");
    out.kappa = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("kappa");
    if (parts.size() == 3) {
      out.seed = std::stoull(parts[2], &used);
      if (used != parts[2].size()) throw std::invalid_argument("seed");
    }
  } catch (const std::exception&) {
    throw mesp::ConfigError("--generate: cannot parse '" + spec + "'");
  }
  if (out.n < 2) throw mesp::ConfigError("--generate: n must be >= 2");
  if (!(out.kappa >= 1.0)) throw mesp::ConfigError("--generate: kappa < 1");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds, gaps and variable fixing for maximum-entropy sampling"};

  std::string matrix_path;
  std::string generate_spec;
  std::string s_spec = "2..n-1";
  std::string t_spec = "min";
  std::string bounds_spec = "augfact,fact,ddfr";
  std::string lb_spec = "auto";
  bool fixing = false;
  int max_iters = 2000;
  double tol = 1e-6;
  std::string out_path = "-";
  std::uint64_t seed = 0;

  auto* matrix_opt =
      app.add_option("--matrix", matrix_path, "Covariance matrix file");
  auto* gen_opt = app.add_option("--generate", generate_spec,
                                 "Synthetic instance n,kappa[,seed]");
  matrix_opt->excludes(gen_opt);
  app.add_option("--s", s_spec, "Subset sizes: list and/or ranges, e.g. 2..n-1")
      ->capture_default_str();
  app.add_option("--t", t_spec, "Shift: 0 | min | VALUE | grid:M")
      ->capture_default_str();
  app.add_option("--bounds", bounds_spec, "Comma list of augfact,fact,ddfr")
      ->capture_default_str();
  app.add_option("--lb", lb_spec, "Lower bound: auto | ls | bf | VALUE")
      ->capture_default_str();
  app.add_flag("--fix", fixing, "Report variable fixing counts");
  app.add_option("--max-iters", max_iters, "Frank-Wolfe iteration cap")
      ->capture_default_str();
  app.add_option("--tol", tol, "Frank-Wolfe gap tolerance (nats)")
      ->capture_default_str();
  app.add_option("--out", out_path, "CSV output path, '-' for stdout")
      ->capture_default_str();
  app.add_option("--seed", seed, "Seed for --generate when it has none")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  mesp::SweepConfig config;
  std::optional<GeneratorArgs> gen;
  try {
    if (matrix_opt->count() == 0 && gen_opt->count() == 0) {
      throw mesp::ConfigError("one of --matrix or --generate is required");
    }
    if (gen_opt->count()) gen = parse_generator(generate_spec);
    if (max_iters < 0) throw mesp::ConfigError("--max-iters must be >= 0");
    if (!(tol >= 0.0)) throw mesp::ConfigError("--tol must be >= 0");
    config.shift = mesp::parse_shift_spec(t_spec);
    config.bounds = mesp::parse_bounds(bounds_spec);
    config.lower_bound = mesp::parse_lower_bound_spec(lb_spec);
    config.fixing = fixing;
    config.solver.max_iters = max_iters;
    config.solver.tol = tol;
  } catch (const mesp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::optional<mesp::CovarianceModel> model;
  try {
    if (gen) {
      model.emplace(
          mesp::generate_instance(gen->n, gen->kappa, gen->seed.value_or(seed)));
    } else {
      model.emplace(mesp::load_matrix(matrix_path));
    }
  } catch (const mesp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }

  std::vector<mesp::ReportRow> rows;
  try {
    config.s_values = mesp::parse_s_values(s_spec, model->dim());
    rows = mesp::run_sweep(*model, config);
  } catch (const mesp::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mesp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }

  try {
    if (out_path == "-") {
      mesp::write_csv(std::cout, rows);
    } else {
      std::ofstream out(out_path);
      if (!out) throw mesp::IoError("cannot write '" + out_path + "'");
      mesp::write_csv(out, rows);
    }
  } catch (const mesp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  bool any_ok = rows.empty();
  for (const auto& r : rows) any_ok = any_ok || r.upper_bound.has_value();
  if (!any_ok) {
    std::cerr << "error: every row failed\n";
    return kExitSolver;
  }
  return 0;
}
