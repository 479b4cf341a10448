#include <cmath>

#include <fmt/format.h>

#include "wprs/bipartite.hpp"
#include "wprs/error.hpp"
#include "wprs/fock.hpp"
#include "wprs/kerr.hpp"
#include "wprs/lab/lab.hpp"
#include "wprs/series_io.hpp"

namespace wprs::lab {

std::string_view to_string(Model m) noexcept { return m == Model::kerr ? "kerr" : "bipartite"; }

Model parse_model(std::string_view s) {
  if (s == "kerr") return Model::kerr;
  if (s == "bipartite") return Model::bipartite;
  throw Error(ErrorCode::invalid_argument, fmt::format("unknown model '{}' (kerr|bipartite)", s));
}

recur::Mode parse_mode(std::string_view s) {
  if (s == "entry") return recur::Mode::entry;
  if (s == "visit") return recur::Mode::visit;
  throw Error(ErrorCode::invalid_argument, fmt::format("unknown mode '{}' (entry|visit)", s));
}

embed::LyapunovMethod parse_method(std::string_view s) {
  if (s == "rosenstein") return embed::LyapunovMethod::rosenstein;
  if (s == "kantz") return embed::LyapunovMethod::kantz;
  throw Error(ErrorCode::invalid_argument, fmt::format("unknown method '{}' (rosenstein|kantz)", s));
}

namespace {

double parse_double(std::string_view s) {
  // strtod accepts the forms a user types (1e-3, .5, -2)
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  require(!tmp.empty() && end == tmp.c_str() + tmp.size() && std::isfinite(v), ErrorCode::invalid_argument,
          fmt::format("'{}' is not a number", s));
  return v;
}

}  // namespace

recur::Cell parse_cell(std::string_view lo_hi) {
  const auto colon = lo_hi.find(':');
  require(colon != std::string_view::npos, ErrorCode::invalid_argument,
          fmt::format("cell '{}' must be LO:HI", lo_hi));
  recur::Cell c{parse_double(lo_hi.substr(0, colon)), parse_double(lo_hi.substr(colon + 1))};
  c.validate();
  return c;
}

void SimulationSpec::validate() const {
  require(nu >= 0.0 && std::isfinite(nu), ErrorCode::invalid_argument, "nu must be >= 0");
  require(m >= 0, ErrorCode::invalid_argument, "m must be >= 0");
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::invalid_argument, "dt must be > 0");
  require(steps >= 1, ErrorCode::invalid_argument, "steps must be >= 1");
  require(std::isfinite(chi) && std::isfinite(chi_prime_ratio), ErrorCode::invalid_argument, "chi must be finite");
  require(g >= 0.0 && std::isfinite(g) && std::isfinite(gamma_over_g), ErrorCode::invalid_argument,
          "g must be >= 0 and gamma/g finite");
}

json SimulationSpec::to_json() const {
  json j;
  j["model"] = to_string(model);
  j["nu"] = nu;
  j["m"] = m;
  if (model == Model::kerr) {
    j["chi"] = chi;
    j["chi_prime_ratio"] = chi_prime_ratio;
  } else {
    j["omega"] = omega;
    j["omega0"] = omega0;
    j["g"] = g;
    j["gamma_over_g"] = gamma_over_g;
  }
  j["dt"] = dt;
  j["steps"] = steps;
  j["epsilon_trunc"] = epsilon_trunc;
  j["alpha"] = "real, sqrt(nu)";
  return j;
}

TimeSeries simulate(const SimulationSpec& spec) {
  spec.validate();
  const double alpha = std::sqrt(spec.nu);
  fock::TruncationPolicy pol;
  pol.epsilon_trunc = spec.epsilon_trunc;
  pol.n_max_cap = spec.n_max_cap;
  const int n_max = std::max(fock::choose_truncation(alpha, spec.m, pol), spec.m + 1);
  const auto state = fock::pacs_amplitudes(alpha, spec.m, n_max, spec.epsilon_trunc);

  TimeSeries s;
  if (spec.model == Model::kerr) {
    const auto sp = kerr::kerr_spectrum(spec.chi, spec.chi * spec.chi_prime_ratio, n_max);
    s = kerr::generate_series_x(state, sp, spec.dt, spec.steps);
    s.params["chi_prime_ratio"] = spec.chi_prime_ratio;
  } else {
    bipartite::TwoModeParams p{spec.omega, spec.omega0, spec.gamma_over_g * spec.g, spec.g};
    const auto sectors = bipartite::decompose_initial(state, p);
    s = bipartite::photon_number_series(sectors, p, spec.dt, spec.steps);
    s.params["gamma_over_g"] = spec.gamma_over_g;
    s.params["n_max"] = n_max;
  }
  s.params["nu"] = spec.nu;
  s.params["m"] = spec.m;
  s.params["mean_photon_number"] = fock::mean_photon_number(state);
  s.params["epsilon_trunc"] = spec.epsilon_trunc;
  return s;
}

TimeSeries simulate_to_file(const SimulationSpec& spec, const fs::path& path) {
  TimeSeries s = simulate(spec);
  io::write_series(path, s);
  io::write_sidecar(path, s);
  return s;
}

std::vector<std::pair<std::string, std::string>> AnalysisOptions::echo(std::string_view task) const {
  std::vector<std::pair<std::string, std::string>> o;
  o.emplace_back("task", std::string(task));
  auto put = [&](const char* k, auto v) { o.emplace_back(k, fmt::format("{}", v)); };
  if (task == "f1" || task == "f2") {
    if (cell) {
      o.emplace_back("cell", fmt::format("{}:{}", cell->lower, cell->upper));
    } else {
      put("cell_width", cell_width);
      o.emplace_back("cell", "median-centred");
    }
    o.emplace_back("mode", mode == recur::Mode::entry ? "entry" : "visit");
    put("mass", mass);
  } else if (task == "density") {
    put("bin_width", bin_width);
  } else if (task == "returnmap") {
    o.emplace_back("construction", bypass_maxima ? "successive samples" : "successive strict local maxima");
  } else if (task == "rp") {
    put("window_start", window_start);
    put("window_len", window_len);
    put("epsilon_frac", rp_epsilon_frac);
    put("embed", rp_embed);
  }
  if (task == "mi" || task == "fnn" || task == "lyapunov" || task == "classify" || (task == "rp" && rp_embed)) {
    put("max_lag", max_lag);
    put("bins", bins);
    put("delay", delay);
  }
  if (task == "fnn" || task == "lyapunov" || task == "classify" || (task == "rp" && rp_embed)) {
    put("d_max", d_max);
    put("r_tol", r_tol);
    put("dimension", dimension);
  }
  if (task == "lyapunov" || task == "classify") {
    put("theiler", theiler);
    put("horizon", horizon);
    put("max_reference_points", max_reference_points);
    o.emplace_back("method", std::string(embed::to_string(method)));
    if (method == embed::LyapunovMethod::kantz) put("kantz_epsilon_frac", kantz_epsilon_frac);
  }
  if (task == "classify") put("threshold", threshold);
  return o;
}

const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> tasks{"f1", "f2", "density", "returnmap", "rp",
                                              "mi", "fnn", "lyapunov", "classify"};
  return tasks;
}

bool is_known_task(std::string_view task) {
  for (const auto& t : known_tasks()) {
    if (t == task) return true;
  }
  return false;
}

}  // namespace wprs::lab
