#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wprs/error.hpp"
#include "wprs/lab/lab.hpp"
#include "wprs/series_io.hpp"

namespace lab = wprs::lab;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recurrence statistics and chaos diagnostics for few-mode quantum optical models", "wprs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key = value file; flags on the command line win");

  lab::SimulationSpec sim;
  std::string model = "kerr";
  bool full_scale = false;
  std::int64_t steps = sim.steps;
  app.add_option("--model", model, "kerr|bipartite")->check(CLI::IsMember({"kerr", "bipartite"}));
  app.add_option("--dt", sim.dt, "time step");
  auto* steps_opt = app.add_option("--steps", steps, "number of samples");
  app.add_option("--nu", sim.nu, "mean photon number |alpha|^2 of the coherent seed");
  app.add_option("--m", sim.m, "photons added to the coherent seed");
  app.add_option("--chi", sim.chi, "Kerr coefficient chi");
  app.add_option("--chi-prime-ratio", sim.chi_prime_ratio, "chi'/chi");
  app.add_option("--omega", sim.omega, "field frequency");
  app.add_option("--omega0", sim.omega0, "second-mode frequency");
  app.add_option("--g", sim.g, "coupling g");
  app.add_option("--gamma-over-g", sim.gamma_over_g, "gamma/g");
  app.add_option("--epsilon-trunc", sim.epsilon_trunc, "photon-number tail tolerance");
  app.add_option("--n-max-cap", sim.n_max_cap, "largest allowed truncation");
  app.add_flag("--full-scale", full_scale, "use 1e7 steps");

  lab::AnalysisOptions ao;
  std::string cell, mode = "entry", method = "rosenstein";
  app.add_option("--cell", cell, "cell LO:HI (half-open)");
  app.add_option("--cell-width", ao.cell_width, "width of the median-centred default cell");
  app.add_option("--mode", mode, "entry|visit")->check(CLI::IsMember({"entry", "visit"}));
  app.add_option("--mass", ao.mass, "mass for the support sparsity");
  app.add_option("--bin-width", ao.bin_width, "density bin width (0: range/200)");
  app.add_option("--window-start", ao.window_start, "recurrence plot window offset");
  app.add_option("--window-len", ao.window_len, "recurrence plot window length");
  app.add_option("--rp-epsilon-frac", ao.rp_epsilon_frac, "recurrence threshold as a fraction of the window stddev");
  app.add_flag("--rp-embed", ao.rp_embed, "recurrence plot on delay vectors");
  app.add_flag("--bypass-maxima", ao.bypass_maxima, "return map on successive samples");
  app.add_option("--max-lag", ao.max_lag, "mutual information lag range");
  app.add_option("--bins", ao.bins, "mutual information bins");
  app.add_option("--d-max", ao.d_max, "largest embedding dimension tried");
  app.add_option("--r-tol", ao.r_tol, "false-neighbour distance ratio");
  app.add_option("--delay", ao.delay, "embedding delay (0: mutual information)");
  app.add_option("--dimension", ao.dimension, "embedding dimension (0: false nearest neighbours)");
  app.add_option("--theiler", ao.theiler, "Theiler window (-1: 2 x delay)");
  app.add_option("--horizon", ao.horizon, "divergence horizon in steps (0: 10 x delay)");
  app.add_option("--max-reference-points", ao.max_reference_points, "reference points for the divergence curve");
  app.add_option("--method", method, "rosenstein|kantz")->check(CLI::IsMember({"rosenstein", "kantz"}));
  app.add_option("--kantz-epsilon-frac", ao.kantz_epsilon_frac, "Kantz neighbourhood radius / stddev");
  app.add_option("--threshold", ao.threshold, "lambda threshold for the chaotic label");

  std::string out;
  app.add_option("--out", out, "output path (file for simulate, directory otherwise)");

  auto* sim_cmd = app.add_subcommand("simulate", "generate a series file and its sidecar")->fallthrough();
  bool csv = false;
  sim_cmd->add_flag("--csv", csv, "also write <out>.csv");

  auto* an_cmd = app.add_subcommand("analyze", "run one analysis task on a series file")->fallthrough();
  std::string task, series_path, prefix;
  an_cmd->add_option("task", task, "f1|f2|density|returnmap|rp|mi|fnn|lyapunov|classify")->required();
  an_cmd->add_option("series", series_path, "series file")->required();
  an_cmd->add_option("--prefix", prefix, "output file prefix");

  auto* pre_cmd = app.add_subcommand("preset", "run a preset experiment")->fallthrough();
  std::string preset_id;
  pre_cmd->add_option("id", preset_id, "preset id (see list-presets)")->required();

  auto* ver_cmd = app.add_subcommand("verify", "check a run directory against its manifest");
  std::string verify_dir;
  ver_cmd->add_option("dir", verify_dir, "run directory")->required();

  auto* list_cmd = app.add_subcommand("list-presets", "list preset experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    try {
      sim.model = lab::parse_model(model);
      sim.steps = full_scale ? lab::kFullSteps : steps;
      if (full_scale && steps_opt->count() > 0) throw UsageError("--steps and --full-scale are exclusive");
      ao.mode = lab::parse_mode(mode);
      ao.method = lab::parse_method(method);
      if (!cell.empty()) ao.cell = lab::parse_cell(cell);
      if (*an_cmd && !lab::is_known_task(task)) throw UsageError(fmt::format("unknown analysis task '{}'", task));
      if (*pre_cmd) lab::find_preset(preset_id);
    } catch (const wprs::Error& e) {
      throw UsageError(e.what());
    }

    if (*list_cmd) {
      for (const auto& p : lab::preset_catalog()) {
        fmt::print("{:<8} {}  [{}]\n", p.id, p.description, p.runtime_note);
      }
    } else if (*sim_cmd) {
      const std::string path = out.empty() ? "series.wprs" : out;
      const auto series = lab::simulate_to_file(sim, path);
      if (csv) wprs::io::write_csv(path + ".csv", series);
      fmt::print("wrote {} ({} samples)\n", path, series.size());
    } else if (*an_cmd) {
      const auto series = wprs::io::load_series(series_path);
      lab::AnalysisContext ctx;
      const auto r = lab::analyze(task, series, ao, out.empty() ? "." : out, prefix, ctx);
      fmt::print("{}\n", r.result.dump(2));
    } else if (*pre_cmd) {
      lab::RunOptions ro;
      if (!out.empty()) ro.out_root = out;
      ro.full_scale = full_scale;
      if (steps_opt->count() > 0) ro.steps = steps;
      const auto m = lab::run_preset(preset_id, ro);
      fmt::print("{}: {} files in {} ({:.1f} s)\n", m.preset, m.files.size(), m.directory.string(), m.wall_seconds);
    } else if (*ver_cmd) {
      const bool ok = lab::verify_manifest(verify_dir);
      fmt::print("{}\n", ok ? "ok" : "mismatch");
      return ok ? 0 : kExitRuntime;
    }
  } catch (const UsageError& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitRuntime;
  }
  return 0;
}
