#include <algorithm>
#include <chrono>
#include <fstream>

#include <fmt/format.h>

#include "wprs/error.hpp"
#include "wprs/lab/lab.hpp"
#include "wprs/series_io.hpp"

namespace wprs::lab {

namespace {

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path, std::ios::trunc);
  require(static_cast<bool>(f << j.dump(2) << '\n'), ErrorCode::io, fmt::format("cannot write {}", path.string()));
}

json analyses_json(const std::vector<AnalysisTask>& tasks) {
  json a = json::array();
  for (const auto& t : tasks) {
    json o;
    for (const auto& [k, v] : t.options.echo(t.task)) o[k] = v;
    a.push_back(o);
  }
  return a;
}

// One series plus its analyses, written into dir.
json run_one(const SimulationSpec& sim, const std::vector<AnalysisTask>& tasks, const fs::path& dir) {
  fs::create_directories(dir);
  const auto series = simulate_to_file(sim, dir / "series.wprs");
  AnalysisContext ctx;
  json results;
  for (const auto& t : tasks) results[t.task] = analyze(t.task, series, t.options, dir, "", ctx).result;
  return results;
}

std::vector<ManifestEntry> collect_files(const fs::path& dir) {
  std::vector<fs::path> paths;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().filename() != "manifest.json") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<ManifestEntry> out;
  for (const auto& p : paths) {
    out.push_back({fs::relative(p, dir).generic_string(), sha256_file(p), fs::file_size(p)});
  }
  return out;
}

}  // namespace

RunManifest run_preset(std::string_view id, const RunOptions& opt) {
  const auto& preset = find_preset(id);
  const auto start = std::chrono::steady_clock::now();

  auto resolve = [&](SimulationSpec s) {
    if (opt.full_scale) s.steps = kFullSteps;
    if (opt.steps) s.steps = *opt.steps;
    s.validate();
    return s;
  };

  RunManifest m;
  m.preset = preset.id;
  m.directory = opt.out_root / preset.id;
  const fs::path partial = opt.out_root / (preset.id + ".partial");
  fs::remove_all(partial);
  fs::create_directories(partial);

  try {
    m.resolved["preset"] = preset.id;
    m.resolved["description"] = preset.description;
    m.resolved["analyses"] = analyses_json(preset.analyses);
    m.resolved["notes"] = preset.notes;
    m.resolved["runtime"] = preset.runtime_note;
    if (preset.grid.empty()) {
      const auto sim = resolve(preset.sim);
      m.resolved["simulation"] = sim.to_json();
      m.summary = run_one(sim, preset.analyses, partial);
    } else {
      json cells = json::array();
      for (const auto& cell : preset.grid) {
        const auto sim = resolve(cell.sim);
        cells.push_back({{"label", cell.label}, {"simulation", sim.to_json()}});
        m.summary[cell.label] = run_one(sim, preset.analyses, partial / cell.label);
      }
      m.resolved["grid"] = cells;
    }
    write_json(partial / "summary.json", {{"resolved", m.resolved}, {"results", m.summary}});
    m.files = collect_files(partial);
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json files = json::array();
    for (const auto& f : m.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    write_json(partial / "manifest.json",
               {{"preset", m.preset}, {"resolved", m.resolved}, {"files", files}, {"wall_seconds", m.wall_seconds}});

    fs::remove_all(m.directory);
    fs::rename(partial, m.directory);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(partial, ec);
    throw;
  }
  return m;
}

bool verify_manifest(const fs::path& dir) {
  std::ifstream f(dir / "manifest.json");
  require(static_cast<bool>(f), ErrorCode::io, fmt::format("cannot read {}", (dir / "manifest.json").string()));
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::format, e.what());
  }
  for (const auto& e : j.at("files")) {
    const fs::path p = dir / e.at("path").get<std::string>();
    if (!fs::is_regular_file(p)) return false;
    if (fs::file_size(p) != e.at("bytes").get<std::uintmax_t>()) return false;
    if (sha256_file(p) != e.at("sha256").get<std::string>()) return false;
  }
  return true;
}

}  // namespace wprs::lab
