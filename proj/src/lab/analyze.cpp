#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "wprs/error.hpp"
#include "wprs/lab/lab.hpp"
#include "wprs/series_io.hpp"

namespace wprs::lab {

namespace {

json fit_json(const recur::ReturnTimeHistogram& h) {
  json j;
  try {
    const auto fit = recur::fit_exponential(h);
    j["rate"] = fit.rate;
    j["ks_stat"] = fit.ks_stat;
    j["loglin_r2"] = std::isnan(fit.loglin_r2) ? json(nullptr) : json(fit.loglin_r2);
    j["loglin_slope"] = std::isnan(fit.loglin_slope) ? json(nullptr) : json(fit.loglin_slope);
    j["bin_width"] = fit.bin_width;
    j["bins_used"] = fit.bins_used;
  } catch (const Error& e) {
    j["error"] = std::string(to_string(e.code()));
  }
  return j;
}

json hist_json(const recur::ReturnTimeHistogram& h, double mass) {
  json j;
  j["total_events"] = h.total_events;
  j["distinct_tau"] = h.counts.size();
  j["mean_tau"] = h.mean_tau();
  j["mean_time"] = h.mean_tau() * h.dt;
  j["sparsity"] = recur::support_sparsity(h, mass);
  j["fit"] = fit_json(h);
  return j;
}

std::vector<std::pair<double, double>> hist_points(const recur::ReturnTimeHistogram& h) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& [tau, c] : h.counts) xy.emplace_back(static_cast<double>(tau), static_cast<double>(c));
  return xy;
}

recur::Cell resolve_cell(const TimeSeries& s, const AnalysisOptions& opt) {
  return opt.cell ? *opt.cell : recur::median_cell(s.view(), opt.cell_width);
}

int resolve_delay(const TimeSeries& s, const AnalysisOptions& opt, AnalysisContext& ctx) {
  if (opt.delay > 0) return opt.delay;
  if (!ctx.mi) {
    int max_lag = opt.max_lag;
    max_lag = std::min<int>(max_lag, static_cast<int>((s.size() - 1) / 10));
    ctx.mi = embed::mutual_information_delay(s, max_lag, opt.bins);
  }
  return ctx.mi->delay;
}

embed::EmbeddingSpec resolve_embedding(const TimeSeries& s, const AnalysisOptions& opt, AnalysisContext& ctx) {
  if (ctx.embedding) return *ctx.embedding;
  embed::EmbeddingSpec spec;
  spec.delay = resolve_delay(s, opt, ctx);
  if (opt.dimension > 0) {
    spec.dimension = opt.dimension;
  } else {
    if (!ctx.fnn) {
      embed::FnnOptions fo;
      fo.r_tol = opt.r_tol;
      fo.theiler = opt.theiler >= 0 ? opt.theiler : 0;
      fo.max_reference_points = opt.max_reference_points;
      ctx.fnn = embed::false_nearest_neighbors(s, spec.delay, opt.d_max, fo);
    }
    spec.dimension = ctx.fnn->found ? ctx.fnn->dimension : opt.d_max;
  }
  ctx.embedding = spec;
  return spec;
}

const embed::LyapunovResult& resolve_lyapunov(const TimeSeries& s, const AnalysisOptions& opt,
                                              AnalysisContext& ctx) {
  if (ctx.lyapunov) return *ctx.lyapunov;
  const auto spec = resolve_embedding(s, opt, ctx);
  embed::LyapunovOptions lo;
  lo.theiler = opt.theiler >= 0 ? opt.theiler : 2 * static_cast<std::int64_t>(spec.delay);
  lo.horizon = opt.horizon > 0 ? opt.horizon : 10 * static_cast<std::int64_t>(spec.delay);
  lo.max_reference_points = opt.max_reference_points;
  lo.epsilon_frac = opt.kantz_epsilon_frac;
  ctx.lyapunov = opt.method == embed::LyapunovMethod::rosenstein ? embed::lyapunov_rosenstein(s, spec, lo)
                                                                  : embed::lyapunov_kantz(s, spec, lo);
  return *ctx.lyapunov;
}

json embedding_json(const AnalysisContext& ctx) {
  json j;
  if (ctx.embedding) {
    j["delay"] = ctx.embedding->delay;
    j["dimension"] = ctx.embedding->dimension;
  }
  if (ctx.mi) {
    j["delay_source"] = "mutual information";
    j["mi_no_minimum"] = ctx.mi->no_minimum;
    j["mi_flat"] = ctx.mi->flat;
  }
  if (ctx.fnn) {
    j["dimension_source"] = "false nearest neighbours";
    j["fnn_found"] = ctx.fnn->found;
  }
  return j;
}

json lyapunov_json(const embed::LyapunovResult& r, const AnalysisContext& ctx) {
  json j;
  j["method"] = std::string(embed::to_string(r.method));
  j["lambda_max"] = r.lambda_max;
  j["fit_lo"] = r.fit_lo;
  j["fit_hi"] = r.fit_hi;
  j["fit_r2"] = r.fit_r2;
  j["linear_region_found"] = r.linear_region_found;
  j["horizon"] = static_cast<std::int64_t>(r.divergence.size()) - 1;
  j["reference_points"] = r.reference_points;
  j["embedding"] = embedding_json(ctx);
  return j;
}

}  // namespace

AnalysisOutput analyze(std::string_view task, const TimeSeries& series, const AnalysisOptions& opt,
                       const fs::path& out_dir, const std::string& prefix, AnalysisContext& ctx) {
  require(is_known_task(task), ErrorCode::invalid_argument, fmt::format("unknown analysis task '{}'", task));
  series.validate();
  fs::create_directories(out_dir);
  AnalysisOutput out;
  const std::string stem = prefix + std::string(task);
  const fs::path txt = out_dir / (stem + ".txt");
  const fs::path svg = out_dir / (stem + ".svg");
  auto header = opt.echo(task);
  json& r = out.result;
  r["task"] = std::string(task);

  if (task == "f1" || task == "f2") {
    const auto cell = resolve_cell(series, opt);
    header.emplace_back("resolved_cell", fmt::format("{}:{}", cell.lower, cell.upper));
    r["cell"] = {cell.lower, cell.upper};
    r["mode"] = opt.mode == recur::Mode::entry ? "entry" : "visit";
    const auto h1 = recur::first_return_times(series, cell, opt.mode);
    if (task == "f1") {
      r["histogram"] = hist_json(h1, opt.mass);
      io::write_histogram(txt, h1, header);
      svg_bars(svg, hist_points(h1), "F1", "tau (steps)", "count");
    } else {
      const auto h2 = recur::second_return_times(series, cell, opt.mode);
      r["histogram"] = hist_json(h2, opt.mass);
      r["f1_mean_tau"] = h1.mean_tau();
      r["f2_over_2f1"] = h2.mean_tau() / (2.0 * h1.mean_tau());
      io::write_histogram(txt, h2, header);
      svg_bars(svg, hist_points(h2), "F2", "tau (steps)", "count");
    }
  } else if (task == "density") {
    double bw = opt.bin_width;
    if (bw <= 0.0) {
      const auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
      bw = *hi > *lo ? (*hi - *lo) / 200.0 : 1.0;
    }
    header.emplace_back("resolved_bin_width", fmt::format("{}", bw));
    const auto d = recur::invariant_density(series, bw);
    io::write_density(txt, d, header);
    std::vector<std::pair<double, double>> xy;
    std::size_t occupied = 0;
    for (std::size_t b = 0; b < d.counts.size(); ++b) {
      xy.emplace_back(d.center(b), d.density(b));
      occupied += d.counts[b] > 0;
    }
    svg_bars(svg, xy, "invariant density", "value", "density");
    r["bin_width"] = bw;
    r["bins"] = d.counts.size();
    r["occupied_bins"] = occupied;
  } else if (task == "returnmap") {
    const auto pts = recur::return_map(series, opt.bypass_maxima);
    io::write_points(txt, pts, header);
    svg_scatter(svg, pts, "return map", "M_k", "M_k+1");
    r["pairs"] = pts.size();
    r["construction"] = opt.bypass_maxima ? "successive samples" : "successive strict local maxima";
  } else if (task == "rp") {
    std::optional<embed::EmbeddingSpec> emb;
    if (opt.rp_embed) emb = resolve_embedding(series, opt, ctx);
    const std::int64_t len = std::min<std::int64_t>(opt.window_len, static_cast<std::int64_t>(series.size()) - opt.window_start -
                                                    (emb ? static_cast<std::int64_t>(emb->dimension - 1) * emb->delay : 0));
    const auto rp = recur::recurrence_matrix(series, opt.window_start, len, opt.rp_epsilon_frac, emb);
    header.emplace_back("resolved_window_len", fmt::format("{}", len));
    header.emplace_back("epsilon", fmt::format("{}", rp.epsilon));
    io::write_pairs(txt, rp.pairs, header);
    std::vector<std::pair<double, double>> xy;
    xy.reserve(rp.pairs.size() * 2);
    for (auto [i, j] : rp.pairs) {
      xy.emplace_back(static_cast<double>(i), static_cast<double>(j));
      xy.emplace_back(static_cast<double>(j), static_cast<double>(i));
    }
    svg_scatter(svg, xy, "recurrence plot", "i", "j");
    r["window_start"] = opt.window_start;
    r["window_len"] = len;
    r["epsilon"] = rp.epsilon;
    r["pairs"] = rp.pairs.size();
    r["density"] = static_cast<double>(rp.pairs.size()) / (0.5 * static_cast<double>(len) * static_cast<double>(len - 1));
    if (emb) r["embedding"] = embedding_json(ctx);
  } else if (task == "mi") {
    AnalysisOptions o = opt;
    o.delay = 0;
    resolve_delay(series, o, ctx);
    const auto& mi = *ctx.mi;
    header.emplace_back("radius", fmt::format("{}", mi.radius));
    io::write_curve(txt, mi.curve, 0, header);
    std::vector<std::pair<double, double>> xy;
    for (std::size_t l = 0; l < mi.curve.size(); ++l) xy.emplace_back(static_cast<double>(l), mi.curve[l]);
    svg_line(svg, xy, "mutual information", "lag (steps)", "I");
    r["delay"] = mi.delay;
    r["no_minimum"] = mi.no_minimum;
    r["flat"] = mi.flat;
    r["radius"] = mi.radius;
  } else if (task == "fnn") {
    const int delay = resolve_delay(series, opt, ctx);
    if (!ctx.fnn) {
      embed::FnnOptions fo;
      fo.r_tol = opt.r_tol;
      fo.theiler = opt.theiler >= 0 ? opt.theiler : 0;
      fo.max_reference_points = opt.max_reference_points;
      ctx.fnn = embed::false_nearest_neighbors(series, delay, opt.d_max, fo);
    }
    const auto& f = *ctx.fnn;
    io::write_curve(txt, f.fnn_fractions, 1, header);
    std::vector<std::pair<double, double>> xy;
    for (std::size_t d = 0; d < f.fnn_fractions.size(); ++d) xy.emplace_back(static_cast<double>(d + 1), f.fnn_fractions[d]);
    svg_line(svg, xy, "false nearest neighbours", "dimension", "fraction");
    r["delay"] = delay;
    r["dimension"] = f.dimension;
    r["found"] = f.found;
    r["fractions"] = f.fnn_fractions;
  } else if (task == "lyapunov" || task == "classify") {
    const auto& ly = resolve_lyapunov(series, opt, ctx);
    r["lyapunov"] = lyapunov_json(ly, ctx);
    if (task == "lyapunov") {
      io::write_curve(txt, ly.divergence, 0, header);
      std::vector<std::pair<double, double>> xy;
      for (std::size_t k = 0; k < ly.divergence.size(); ++k) xy.emplace_back(static_cast<double>(k), ly.divergence[k]);
      svg_line(svg, xy, fmt::format("divergence ({})", embed::to_string(ly.method)), "dk (steps)", "S");
    } else {
      const auto c = embed::classify(ly, opt.threshold);
      r["classification"] = c.chaotic ? "chaotic" : "regular";
      r["ambiguous"] = c.ambiguous;
      std::string text;
      for (const auto& [k, v] : header) text += fmt::format("# {} = {}\n", k, v);
      text += fmt::format("classification = {}\nambiguous = {}\nlambda_max = {}\nfit_r2 = {}\nlinear_region_found = {}\n",
                          c.chaotic ? "chaotic" : "regular", c.ambiguous, ly.lambda_max, ly.fit_r2,
                          ly.linear_region_found);
      std::ofstream f(txt, std::ios::trunc);
      require(static_cast<bool>(f << text), ErrorCode::io, fmt::format("cannot write {}", txt.string()));
    }
  }
  out.files.push_back(txt);
  if (fs::exists(svg)) out.files.push_back(svg);
  return out;
}

}  // namespace wprs::lab
