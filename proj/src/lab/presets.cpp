#include <algorithm>

#include <fmt/format.h>

#include "wprs/error.hpp"
#include "wprs/lab/lab.hpp"

namespace wprs::lab {

namespace {

SimulationSpec kerr_spec(double nu, int m) {
  SimulationSpec s;
  s.model = Model::kerr;
  s.nu = nu;
  s.m = m;
  s.chi = 1.0;
  s.chi_prime_ratio = 0.01;
  return s;
}

SimulationSpec bipartite_spec(double nu, int m, double gamma_over_g) {
  SimulationSpec s;
  s.model = Model::bipartite;
  s.nu = nu;
  s.m = m;
  s.g = 1.0;
  s.gamma_over_g = gamma_over_g;
  return s;
}

AnalysisTask task(std::string name, AnalysisOptions o = {}) { return {std::move(name), std::move(o)}; }

AnalysisOptions with_cell(double lo, double hi) {
  AnalysisOptions o;
  o.cell = recur::Cell{lo, hi};
  return o;
}

constexpr std::int64_t kTableSteps = 500'000;

const std::string kRealAlpha = "alpha is taken real and positive; only nu = |alpha|^2 is specified";
const std::string kMedianCell = "cell: width 0.01 centred on the series median (only the width is specified)";
const std::string kBipartiteDt =
    "dt = 1e-3 and the series length are assumed for the bipartite model; neither is specified for it";
const std::string kReturnMap = "return map: pairs of successive strict local maxima (M_k, M_k+1)";
const std::string kRpThreshold = "recurrence threshold: 0.1 x window stddev on scalar values; window of 4000 samples";

std::vector<AnalysisTask> embedding_tasks() {
  return {task("mi"), task("fnn"), task("lyapunov"), task("classify")};
}

std::vector<ExperimentPreset> build_catalog() {
  std::vector<ExperimentPreset> c;
  const std::string kerr_rt = "about 1 s at 1e6 steps";

  c.push_back({"fig1", "Kerr F1, coherent state nu = 1", kerr_spec(1, 0), {task("f1"), task("f2")}, {},
               {kRealAlpha, kMedianCell}, kerr_rt});
  c.push_back({"fig2", "Kerr F1, photon-added state nu = 1, m = 5", kerr_spec(1, 5), {task("f1"), task("f2")}, {},
               {kRealAlpha, kMedianCell}, kerr_rt});
  c.push_back({"fig3", "Kerr F1, coherent state nu = 100", kerr_spec(100, 0), {task("f1"), task("f2")}, {},
               {kRealAlpha, kMedianCell}, "a few seconds at 1e6 steps"});
  {
    std::vector<AnalysisTask> a{task("f1"), task("f2")};
    for (auto& t : embedding_tasks()) a.push_back(t);
    c.push_back({"fig4", "Kerr F1, photon-added state nu = 100, m = 5; embedding and Lyapunov exponent",
                 kerr_spec(100, 5), a, {}, {kRealAlpha, kMedianCell}, "under a minute at 1e6 steps"});
  }
  c.push_back({"fig5", "Kerr recurrence plot, coherent state nu = 1", kerr_spec(1, 0), {task("rp")}, {},
               {kRealAlpha, kRpThreshold}, kerr_rt});
  c.push_back({"fig6", "Kerr recurrence plot, photon-added state nu = 100, m = 5", kerr_spec(100, 5), {task("rp")},
               {}, {kRealAlpha, kRpThreshold}, "a few seconds at 1e6 steps"});

  const auto weak = bipartite_spec(1, 0, 0.01);
  const std::vector<std::string> weak_notes{kRealAlpha, kBipartiteDt};
  const std::string weak_rt = "a few seconds at 1e6 steps";
  c.push_back({"fig7", "Bipartite return map, gamma/g = 0.01, coherent state nu = 1", weak, {task("returnmap")}, {},
               {kRealAlpha, kBipartiteDt, kReturnMap}, weak_rt});
  c.push_back({"fig8", "Bipartite recurrence plot, gamma/g = 0.01, coherent state nu = 1", weak, {task("rp")}, {},
               {kRealAlpha, kBipartiteDt, kRpThreshold}, weak_rt});
  c.push_back({"fig9", "Bipartite F1 on [0.596, 0.604), gamma/g = 0.01, coherent state nu = 1", weak,
               {task("f1", with_cell(0.596, 0.604)), task("f2", with_cell(0.596, 0.604))}, {}, weak_notes, weak_rt});
  c.push_back({"fig10", "Bipartite invariant density, gamma/g = 0.01, coherent state nu = 1", weak, {task("density")},
               {}, weak_notes, weak_rt});

  const auto strong = bipartite_spec(5, 5, 5.0);
  const std::string strong_rt = "under a minute at 1e6 steps";
  c.push_back({"fig11", "Bipartite return map, gamma/g = 5, photon-added state nu = 5, m = 5", strong,
               {task("returnmap")}, {}, {kRealAlpha, kBipartiteDt, kReturnMap}, strong_rt});
  c.push_back({"fig12", "Bipartite recurrence plot, gamma/g = 5, photon-added state nu = 5, m = 5", strong,
               {task("rp")}, {}, {kRealAlpha, kBipartiteDt, kRpThreshold}, strong_rt});
  {
    std::vector<AnalysisTask> a{task("f1", with_cell(12.455, 12.465)), task("f2", with_cell(12.455, 12.465))};
    for (auto& t : embedding_tasks()) a.push_back(t);
    c.push_back({"fig13",
                 "Bipartite F1 on [12.455, 12.465), gamma/g = 5, photon-added state nu = 5, m = 5; "
                 "embedding and Lyapunov exponent",
                 strong, a, {}, {kRealAlpha, kBipartiteDt}, strong_rt});
  }
  c.push_back({"fig14", "Bipartite invariant density, gamma/g = 5, photon-added state nu = 5, m = 5", strong,
               {task("density")}, {}, {kRealAlpha, kBipartiteDt}, strong_rt});

  {
    ExperimentPreset t;
    t.id = "table1";
    t.description = "Classification grid for the bipartite model: gamma/g x initial state";
    t.sim = bipartite_spec(1, 0, 0.01);
    t.analyses = {task("f1"), task("classify")};
    struct Init {
      const char* label;
      double nu;
      int m;
    };
    const Init inits[] = {{"cs_nu1", 1, 0}, {"cs_nu5", 5, 0}, {"pacs_nu1_m5", 1, 5}, {"pacs_nu5_m5", 5, 5}};
    const double ratios[] = {0.01, 1.0, 5.0};
    for (double r : ratios) {
      for (const auto& in : inits) {
        auto sim = bipartite_spec(in.nu, in.m, r);
        sim.steps = kTableSteps;
        t.grid.push_back({fmt::format("gamma{}_{}", r, in.label), sim});
      }
    }
    t.notes = {kRealAlpha, kBipartiteDt, kMedianCell,
               "grid: gamma/g in {0.01, 1, 5} x {CS nu=1, CS nu=5, PACS nu=1 m=5, PACS nu=5 m=5}; 5e5 steps per cell"};
    t.runtime_note = "about 3 minutes at 5e5 steps per cell";
    c.push_back(std::move(t));
  }
  return c;
}

}  // namespace

const std::vector<ExperimentPreset>& preset_catalog() {
  static const std::vector<ExperimentPreset> catalog = build_catalog();
  return catalog;
}

const ExperimentPreset& find_preset(std::string_view id) {
  const auto& c = preset_catalog();
  const auto it = std::find_if(c.begin(), c.end(), [&](const ExperimentPreset& p) { return p.id == id; });
  require(it != c.end(), ErrorCode::invalid_argument, fmt::format("unknown preset '{}'", id));
  return *it;
}

}  // namespace wprs::lab
