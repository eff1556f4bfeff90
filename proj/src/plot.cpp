#include "dd/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace dd {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 690.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 420.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string decade_label(int exponent) {
  std::ostringstream os;
  os << "1e" << exponent;
  return os.str();
}

void open_svg(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << (kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
}

void axis_frame(std::ostringstream& os) {
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << (kRight - kLeft)
     << "\" height=\"" << (kBottom - kTop)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

void text_at(std::ostringstream& os, double x, double y, const std::string& s,
             const char* anchor, int size = 11) {
  os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
     << "\" font-family=\"sans-serif\" font-size=\"" << size << "\">" << s << "</text>\n";
}

struct Rgb {
  int r, g, b;
};

std::string blend(Rgb a, Rgb b, double t) {
  t = std::clamp(t, 0.0, 1.0);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(std::lround(a.r + t * (b.r - a.r))),
                static_cast<int>(std::lround(a.g + t * (b.g - a.g))),
                static_cast<int>(std::lround(a.b + t * (b.b - a.b))));
  return buf;
}

// blue below breakeven, red above, saturating three decades down / one up
std::string ratio_color(double value) {
  const double lv = std::log10(value);
  if (lv < 0.0) return blend({247, 251, 255}, {33, 102, 172}, -lv / 3.0);
  return blend({254, 235, 226}, {178, 24, 43}, lv);
}

}  // namespace

std::string svg_level_plot(const SweepReport& report, const std::string& title) {
  std::map<std::string, std::vector<std::pair<int, double>>> series;
  for (const auto& row : report.rows)
    if (std::isfinite(row.value) && row.value > 0.0)
      series[row.measure].push_back({row.n, row.value});

  int n_min = 0, n_max = 1;
  double lv_min = 0.0, lv_max = 1.0;
  bool first = true;
  for (const auto& [name, pts] : series) {
    for (const auto& [n, v] : pts) {
      const double lv = std::log10(v);
      if (first) {
        n_min = n_max = n;
        lv_min = lv_max = lv;
        first = false;
      } else {
        n_min = std::min(n_min, n);
        n_max = std::max(n_max, n);
        lv_min = std::min(lv_min, lv);
        lv_max = std::max(lv_max, lv);
      }
    }
  }
  if (n_max == n_min) n_max = n_min + 1;
  lv_min = std::floor(lv_min);
  lv_max = std::ceil(lv_max);
  if (lv_max == lv_min) lv_max += 1.0;

  const auto xpos = [&](double n) {
    return kLeft + (n - n_min) / double(n_max - n_min) * (kRight - kLeft);
  };
  const auto ypos = [&](double lv) {
    return kBottom - (lv - lv_min) / (lv_max - lv_min) * (kBottom - kTop);
  };

  std::ostringstream os;
  open_svg(os, title);
  axis_frame(os);

  for (int n = n_min; n <= n_max; ++n) {
    const double x = xpos(n);
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(x)
       << "\" y2=\"" << num(kBottom + 5) << "\" stroke=\"black\"/>\n";
    text_at(os, x, kBottom + 18, std::to_string(n), "middle");
  }
  text_at(os, (kLeft + kRight) / 2, kBottom + 36, "level n", "middle", 12);

  const int decades = static_cast<int>(lv_max - lv_min);
  const int step = std::max(1, decades / 8);
  for (int e = static_cast<int>(lv_min); e <= static_cast<int>(lv_max); e += step) {
    const double y = ypos(e);
    os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kRight)
       << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
    text_at(os, kLeft - 8, y + 4, decade_label(e), "end");
  }

  int color_idx = 0;
  double legend_y = kTop + 14;
  for (const auto& [name, pts] : series) {
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    const char* color = kPalette[color_idx % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [n, v] : sorted) os << num(xpos(n)) << "," << num(ypos(std::log10(v))) << " ";
    os << "\"/>\n";
    for (const auto& [n, v] : sorted)
      os << "<circle cx=\"" << num(xpos(n)) << "\" cy=\"" << num(ypos(std::log10(v)))
         << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    os << "<rect x=\"" << num(kRight - 180) << "\" y=\"" << num(legend_y - 9)
       << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
    text_at(os, kRight - 163, legend_y + 1, name, "start");
    legend_y += 16;
    ++color_idx;
  }

  os << "</svg>\n";
  return os.str();
}

std::string svg_map_plot(const SweepReport& report, const std::string& measure,
                         const std::string& title) {
  std::set<double> xs_set, ys_set;
  std::map<std::pair<double, double>, std::pair<double, std::string>> cells;
  for (const auto& row : report.rows) {
    if (row.measure != measure) continue;
    xs_set.insert(row.phi_b);
    ys_set.insert(row.phi_sb);
    cells[{row.phi_b, row.phi_sb}] = {row.value, row.flag};
  }
  const std::vector<double> xs(xs_set.begin(), xs_set.end());
  const std::vector<double> ys(ys_set.begin(), ys_set.end());

  std::ostringstream os;
  open_svg(os, title);
  if (xs.empty() || ys.empty()) {
    text_at(os, kWidth / 2, kHeight / 2, "no cells for measure " + measure, "middle", 13);
    os << "</svg>\n";
    return os.str();
  }

  const double cw = (kRight - kLeft) / double(xs.size());
  const double ch = (kBottom - kTop) / double(ys.size());
  const auto value_at = [&](std::size_t i, std::size_t j) -> double {
    const auto it = cells.find({xs[i], ys[j]});
    if (it == cells.end() || it->second.second != "ok") return -1.0;
    return it->second.first;
  };

  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const auto it = cells.find({xs[i], ys[j]});
      const bool ok = it != cells.end() && it->second.second == "ok" &&
                      std::isfinite(it->second.first) && it->second.first > 0.0;
      const std::string fill = ok ? ratio_color(it->second.first) : "#bbbbbb";
      const double x = kLeft + double(i) * cw;
      const double y = kBottom - double(j + 1) * ch;
      os << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(cw)
         << "\" height=\"" << num(ch) << "\" fill=\"" << fill << "\"";
      // outline breakeven boundary cells: value below 1 with a neighbor at or above
      if (ok && it->second.first < 1.0) {
        bool boundary = false;
        if (i + 1 < xs.size() && value_at(i + 1, j) >= 1.0) boundary = true;
        if (i > 0 && value_at(i - 1, j) >= 1.0) boundary = true;
        if (j + 1 < ys.size() && value_at(i, j + 1) >= 1.0) boundary = true;
        if (j > 0 && value_at(i, j - 1) >= 1.0) boundary = true;
        if (boundary) os << " stroke=\"black\" stroke-width=\"1.2\"";
      }
      os << "/>\n";
    }
  }
  axis_frame(os);

  const auto tick_every = [](std::size_t count) { return std::max<std::size_t>(1, count / 8); };
  for (std::size_t i = 0; i < xs.size(); i += tick_every(xs.size())) {
    const double x = kLeft + (double(i) + 0.5) * cw;
    std::ostringstream lbl;
    lbl << format_double(xs[i]);
    text_at(os, x, kBottom + 16, lbl.str().substr(0, 8), "middle", 10);
  }
  text_at(os, (kLeft + kRight) / 2, kBottom + 36, "phi_B", "middle", 12);
  for (std::size_t j = 0; j < ys.size(); j += tick_every(ys.size())) {
    const double y = kBottom - (double(j) + 0.5) * ch;
    std::ostringstream lbl;
    lbl << format_double(ys[j]);
    text_at(os, kLeft - 6, y + 3, lbl.str().substr(0, 8), "end", 10);
  }
  text_at(os, 18, (kTop + kBottom) / 2, "phi_SB", "middle", 12);
  text_at(os, kRight, kTop - 8, "blue: ratio below 1, red: above, grey: invalid", "end", 10);

  os << "</svg>\n";
  return os.str();
}

}  // namespace dd
