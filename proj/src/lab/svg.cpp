#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "wprs/error.hpp"
#include "wprs/lab/lab.hpp"

namespace wprs::lab {

namespace {

constexpr double kW = 640, kH = 420, kL = 70, kR = 20, kT = 40, kB = 50;

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kL + (x - x0) / (x1 - x0) * (kW - kL - kR); }
  double py(double y) const { return kH - kB - (y - y0) / (y1 - y0) * (kH - kT - kB); }
};

Frame frame_for(const std::vector<std::pair<double, double>>& xy, bool zero_y) {
  Frame f{0, 1, 0, 1};
  if (xy.empty()) return f;
  f.x0 = f.x1 = xy[0].first;
  f.y0 = f.y1 = xy[0].second;
  for (auto [x, y] : xy) {
    f.x0 = std::min(f.x0, x);
    f.x1 = std::max(f.x1, x);
    f.y0 = std::min(f.y0, y);
    f.y1 = std::max(f.y1, y);
  }
  if (zero_y) f.y0 = std::min(0.0, f.y0);
  if (f.x1 == f.x0) f.x1 = f.x0 + 1;
  if (f.y1 == f.y0) f.y1 = f.y0 + 1;
  return f;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

std::string open_svg(const Frame& f, const std::string& title, const std::string& xl, const std::string& yl) {
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kW, kH);
  s += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n", kW / 2, escape(title));
  s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kL, kT,
                   kW - kL - kR, kH - kT - kB);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", kW / 2, kH - 12, escape(xl));
  s += fmt::format("<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
                   kH / 2, kH / 2, escape(yl));
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"start\">{:.6g}</text>\n", kL, kH - kB + 16, f.x0);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.6g}</text>\n", kW - kR, kH - kB + 16, f.x1);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.6g}</text>\n", kL - 4, kH - kB, f.y0);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.6g}</text>\n", kL - 4, kT + 10, f.y1);
  return s;
}

void save(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::io, fmt::format("cannot write {}", path.string()));
  out << body << "</svg>\n";
}

}  // namespace

void svg_bars(const fs::path& path, const std::vector<std::pair<double, double>>& xy, const std::string& title,
              const std::string& xlabel, const std::string& ylabel) {
  const Frame f = frame_for(xy, true);
  std::string s = open_svg(f, title, xlabel, ylabel);
  for (auto [x, y] : xy) {
    s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"steelblue\"/>\n", f.px(x),
                     f.py(0.0), f.px(x), f.py(y));
  }
  save(path, s);
}

void svg_scatter(const fs::path& path, const std::vector<std::pair<double, double>>& xy, const std::string& title,
                 const std::string& xlabel, const std::string& ylabel) {
  const Frame f = frame_for(xy, false);
  std::string s = open_svg(f, title, xlabel, ylabel);
  // large point sets are thinned to keep files viewable
  const std::size_t stride = std::max<std::size_t>(1, xy.size() / 200000);
  for (std::size_t i = 0; i < xy.size(); i += stride) {
    s += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"1\" height=\"1\"/>\n", f.px(xy[i].first),
                     f.py(xy[i].second));
  }
  save(path, s);
}

void svg_line(const fs::path& path, const std::vector<std::pair<double, double>>& xy, const std::string& title,
              const std::string& xlabel, const std::string& ylabel) {
  const Frame f = frame_for(xy, false);
  std::string s = open_svg(f, title, xlabel, ylabel);
  s += "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
  for (auto [x, y] : xy) s += fmt::format("{:.2f},{:.2f} ", f.px(x), f.py(y));
  s += "\"/>\n";
  save(path, s);
}

}  // namespace wprs::lab
