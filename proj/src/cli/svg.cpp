#include "innov/cli/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <string_view>

namespace innov::cli {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;
constexpr std::string_view kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                         "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

double px(double x) { return kLeft + std::clamp(x, 0.0, 1.0) * (kWidth - kLeft - kRight); }
double py(double y) { return kHeight - kBottom - std::clamp(y, 0.0, 1.0) * (kHeight - kTop - kBottom); }

void line(std::string& out, double x1, double y1, double x2, double y2, std::string_view stroke) {
  out += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
         "\" stroke=\"" + std::string(stroke) + "\"/>\n";
}

void text(std::string& out, double x, double y, const std::string& s, std::string_view anchor = "middle",
          std::string_view extra = "") {
  out += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + std::string(anchor) + "\"" +
         std::string(extra) + ">" + escape(s) + "</text>\n";
}

} // namespace

std::string scatter_svg(const std::vector<ScatterPoint>& points, const std::string& title, const std::string& x_label,
                        const std::string& y_label) {
  std::vector<std::string> series;
  for (const auto& p : points)
    if (std::find(series.begin(), series.end(), p.series) == series.end()) series.push_back(p.series);
  auto color = [&](const std::string& s) {
    const auto i = static_cast<std::size_t>(std::find(series.begin(), series.end(), s) - series.begin());
    return kPalette[i % std::size(kPalette)];
  };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                    num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) +
                    "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  text(out, kWidth / 2, 24, title, "middle", " font-size=\"15\"");
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    line(out, px(v), py(0), px(v), py(0) + 5, "black");
    text(out, px(v), py(0) + 20, num(v));
    line(out, px(0) - 5, py(v), px(0), py(v), "black");
    text(out, px(0) - 8, py(v) + 4, num(v), "end");
    line(out, px(0), py(v), px(1), py(v), "#e0e0e0");
  }
  line(out, px(0), py(0), px(1), py(0), "black");
  line(out, px(0), py(0), px(0), py(1), "black");
  line(out, px(0), py(0), px(1), py(1), "#bbbbbb");
  text(out, (px(0) + px(1)) / 2, kHeight - 18, x_label);
  text(out, 20, (py(0) + py(1)) / 2, y_label, "middle",
       " transform=\"rotate(-90 20 " + num((py(0) + py(1)) / 2) + ")\"");

  for (const auto& p : points) {
    const auto c = color(p.series);
    line(out, px(p.x_lo), py(p.y), px(p.x_hi), py(p.y), c);
    line(out, px(p.x), py(p.y_lo), px(p.x), py(p.y_hi), c);
    out += "<circle cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) + "\" r=\"4\" fill=\"" + std::string(c) +
           "\"/>\n";
    if (!p.label.empty()) text(out, px(p.x) + 6, py(p.y) - 6, p.label, "start", " font-size=\"10\"");
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    out += "<rect x=\"" + num(kWidth - kRight + 15) + "\" y=\"" + num(y - 8) + "\" width=\"10\" height=\"10\" fill=\"" +
           std::string(color(series[i])) + "\"/>\n";
    text(out, kWidth - kRight + 30, y + 1, series[i], "start");
  }
  out += "</svg>\n";
  return out;
}

} // namespace innov::cli
