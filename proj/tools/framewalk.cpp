// Command-line driver: run a simulation, a convergence sweep, or the
// acceptance suite.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "framewalk/acceptance.hpp"
#include "framewalk/config.hpp"
#include "framewalk/integrator.hpp"
#include "framewalk/output.hpp"
#include "framewalk/verification.hpp"

namespace fs = std::filesystem;
using namespace framewalk;

namespace {

int run_command(const std::string& config_path, const std::string& out_override) {
  SimConfig cfg = parse_config(config_path);
  if (!out_override.empty()) cfg.output_dir = out_override;
  fs::create_directories(cfg.output_dir);
  const fs::path dir(cfg.output_dir);
  {
    std::ofstream copy(dir / "config.txt");
    copy << serialize_config(cfg);
  }

  StepModel model;
  model.rc = reduce_coefficients(cfg.coeffs);
  model.chi = cfg.coeffs.chi;
  model.kind = cfg.gradient;
  model.solver = cfg.solver;

  RunSettings rs;
  rs.t_end = cfg.t_end;
  rs.step = cfg.step;
  rs.max_steps = cfg.max_steps;

  FrameField p0 = initial_frame(cfg);
  write_vtk((dir / snapshot_name(0)).string(), p0, "framewalk frame step 0 t=0");

  int last_written = 0;
  auto observer = [&](const StepState& s, const HistoryRecord& h) {
    if (cfg.snapshot_every > 0 && h.step % cfg.snapshot_every == 0) {
      write_vtk((dir / snapshot_name(h.step)).string(), s.p,
                "framewalk frame step " + std::to_string(h.step) + " t=" + std::to_string(h.t));
      last_written = h.step;
    }
    if (h.step % 500 == 0)
      std::fprintf(stderr, "step %d  t=%.6g  tau=%.3g  F=%.10g\n", h.step, h.t, h.tau, h.F);
  };
  const RunResult res = run_simulation(std::move(p0), model, rs, observer);
  const auto& hist = res.state.history;

  if (res.state.step != last_written)
    write_vtk((dir / snapshot_name(res.state.step)).string(), res.state.p,
              "framewalk frame step " + std::to_string(res.state.step) + " t=" + std::to_string(res.state.t));
  write_history_csv((dir / "history.csv").string(), hist);
  std::vector<std::pair<double, double>> pts{{0.0, res.initial_energy.F}};
  for (const auto& h : hist) pts.emplace_back(h.t, h.F);
  write_energy_svg((dir / "energy.svg").string(), pts, cfg.energy_log_scale);

  double orth = 0.0;
  for (const auto& h : hist) orth = std::max(orth, h.orth_error);
  std::printf("steps: %d\nt: %.10g\nF(0): %.12g\nF(end): %.12g\nmax orthonormality error: %.3g\nmonotone: %s\n",
              res.state.step, res.state.t, res.initial_energy.F, res.state.energy.F, orth,
              res.monotone ? "yes" : "no");
  if (!res.completed) {
    std::fprintf(stderr, "run did not complete: %s\n", res.failure.c_str());
    return 1;
  }
  if (!res.monotone) {
    std::fprintf(stderr, "energy increased on at least one step\n");
    return 1;
  }
  return 0;
}

int convergence_command(const std::string& mode, const std::string& config_path, const std::string& csv_path) {
  const SimConfig cfg = parse_config(config_path);
  const SweepMode m = parse_sweep_mode(mode);
  const SweepResult r = convergence_sweep(cfg.sweep_settings(m));
  const std::string csv = sweep_csv(r);
  std::cout << csv;
  fs::path out = csv_path.empty() ? fs::path(cfg.output_dir) / ("convergence_" + mode + ".csv") : fs::path(csv_path);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  std::ofstream f(out);
  if (!f) throw IoError("cannot open for writing", out.string());
  f << csv;
  return 0;
}

int verify_command(const std::vector<std::string>& only, unsigned long seed, double aniso_t) {
  AcceptanceOptions opt;
  opt.only = only;
  opt.seed = seed;
  opt.anisotropic_t_end = aniso_t;
  opt.on_result = [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; };
  const auto results = run_acceptance(opt);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << results.size() - failed << " passed, " << failed << " failed" << std::endl;
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framewalk: energy-stable SO(3) frame gradient flow"};
  app.require_subcommand(1);

  std::string config, out_dir, mode, csv;
  auto* run = app.add_subcommand("run", "run a simulation described by a config file");
  run->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  run->add_option("--output-dir", out_dir, "override output_dir from the config");

  auto* conv = app.add_subcommand("convergence", "manufactured-solution convergence sweep");
  conv->add_option("--mode", mode, "temporal or spatial")->required()->check(CLI::IsMember({"temporal", "spatial"}));
  conv->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  conv->add_option("--csv", csv, "output CSV path (default <output_dir>/convergence_<mode>.csv)");

  std::vector<std::string> only;
  unsigned long seed = AcceptanceOptions{}.seed;
  double aniso_t = AcceptanceOptions{}.anisotropic_t_end;
  auto* verify = app.add_subcommand("verify", "run the acceptance suite and print a pass/fail table");
  verify->add_option("--only", only, "criterion ids to run (1..10, aniso)")->delimiter(',');
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--aniso-t-end", aniso_t, "length of the anisotropic-coefficient run");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return run_command(config, out_dir);
    if (*conv) return convergence_command(mode, config, csv);
    if (*verify) return verify_command(only, seed, aniso_t);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
