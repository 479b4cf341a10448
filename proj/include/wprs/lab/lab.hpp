#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wprs/embed.hpp"
#include "wprs/recur.hpp"
#include "wprs/series.hpp"

namespace wprs::lab {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum class Model { kerr, bipartite };
std::string_view to_string(Model m) noexcept;
Model parse_model(std::string_view s);

inline constexpr std::int64_t kDeskSteps = 1'000'000;
inline constexpr std::int64_t kFullSteps = 10'000'000;

struct SimulationSpec {
  Model model = Model::kerr;
  double nu = 1.0;  // |alpha|^2, alpha taken real and positive
  int m = 0;
  double chi = 1.0;
  double chi_prime_ratio = 0.01;
  double omega = 1.0;
  double omega0 = 1.0;
  double g = 1.0;
  double gamma_over_g = 0.01;
  double dt = 1e-3;
  std::int64_t steps = kDeskSteps;
  double epsilon_trunc = 1e-12;
  int n_max_cap = 4096;

  void validate() const;
  json to_json() const;
};

// Builds the initial state, picks the truncation and generates the series.
TimeSeries simulate(const SimulationSpec& spec);

// simulate() plus the binary file and its sidecar.
TimeSeries simulate_to_file(const SimulationSpec& spec, const fs::path& path);

struct AnalysisOptions {
  std::optional<recur::Cell> cell;  // default: median-centred cell of width cell_width
  double cell_width = 0.01;
  recur::Mode mode = recur::Mode::entry;
  double mass = 0.9;
  double bin_width = 0.0;  // density; 0: range / 200
  std::int64_t window_start = 0;
  std::int64_t window_len = recur::kDefaultRecurrenceWindow;
  double rp_epsilon_frac = 0.1;
  bool rp_embed = false;
  bool bypass_maxima = false;
  int max_lag = 1000;
  int bins = 16;
  int d_max = 8;
  double r_tol = 10.0;
  int delay = 0;      // 0: mutual-information delay
  int dimension = 0;  // 0: false-nearest-neighbour dimension
  std::int64_t theiler = -1;  // -1: 2 * delay
  std::int64_t horizon = 0;   // 0: 10 * delay
  std::int64_t max_reference_points = 4000;
  embed::LyapunovMethod method = embed::LyapunovMethod::rosenstein;
  double kantz_epsilon_frac = 0.05;
  double threshold = embed::kDefaultClassifyThreshold;

  // "# key = value" echo for export headers
  std::vector<std::pair<std::string, std::string>> echo(std::string_view task) const;
};

recur::Cell parse_cell(std::string_view lo_hi);
recur::Mode parse_mode(std::string_view s);
embed::LyapunovMethod parse_method(std::string_view s);

const std::vector<std::string>& known_tasks();
bool is_known_task(std::string_view task);

// Intermediate results reused across tasks on the same series.
struct AnalysisContext {
  std::optional<embed::MutualInformation> mi;
  std::optional<embed::FnnResult> fnn;
  std::optional<embed::EmbeddingSpec> embedding;
  std::optional<embed::LyapunovResult> lyapunov;
};

struct AnalysisOutput {
  std::vector<fs::path> files;
  json result;
};

// Runs one task and writes <out_dir>/<prefix><task>.txt (plus .svg where a
// figure makes sense). Unknown tasks throw invalid_argument.
AnalysisOutput analyze(std::string_view task, const TimeSeries& series, const AnalysisOptions& opt,
                       const fs::path& out_dir, const std::string& prefix, AnalysisContext& ctx);

struct AnalysisTask {
  std::string task;
  AnalysisOptions options;
};

struct GridCell {
  std::string label;
  SimulationSpec sim;
};

struct ExperimentPreset {
  std::string id;
  std::string description;
  SimulationSpec sim;
  std::vector<AnalysisTask> analyses;
  std::vector<GridCell> grid;  // non-empty: one run per cell (table presets)
  std::vector<std::string> notes;
  std::string runtime_note;
};

const std::vector<ExperimentPreset>& preset_catalog();
const ExperimentPreset& find_preset(std::string_view id);

struct RunOptions {
  fs::path out_root = "runs";
  bool full_scale = false;
  std::optional<std::int64_t> steps;
};

struct ManifestEntry {
  std::string path;  // relative to the run directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string preset;
  fs::path directory;
  json resolved;
  std::vector<ManifestEntry> files;
  json summary;
  double wall_seconds = 0.0;
};

// Writes into <out_root>/<id>; a failed run leaves nothing behind.
RunManifest run_preset(std::string_view id, const RunOptions& opt);

// Recomputes every digest listed in <dir>/manifest.json.
bool verify_manifest(const fs::path& dir);

std::string sha256_file(const fs::path& path);

// Minimal SVG renderers over exported data.
void svg_bars(const fs::path& path, const std::vector<std::pair<double, double>>& xy, const std::string& title,
              const std::string& xlabel, const std::string& ylabel);
void svg_scatter(const fs::path& path, const std::vector<std::pair<double, double>>& xy, const std::string& title,
                 const std::string& xlabel, const std::string& ylabel);
void svg_line(const fs::path& path, const std::vector<std::pair<double, double>>& xy, const std::string& title,
              const std::string& xlabel, const std::string& ylabel);

}  // namespace wprs::lab
