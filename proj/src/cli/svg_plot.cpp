#include "sarc/cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sarc::cli {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo < hi)) {
      const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
      lo -= d;
      hi += d;
    }
  }
};

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_svg_plot(std::ostream& out, const std::vector<PlotSeries>& series,
                    const PlotOptions& opt) {
  if (series.empty()) throw std::invalid_argument("plot: no series");
  Range xr, yr;
  for (const auto& s : series) {
    if (s.x.empty() || s.x.size() != s.mean.size() || s.x.size() != s.std.size())
      throw std::invalid_argument("plot: series '" + s.label + "' is empty or ragged");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xr.add(s.x[i]);
      yr.add(s.mean[i] - s.std[i]);
      yr.add(s.mean[i] + s.std[i]);
    }
  }
  xr.pad();
  yr.pad();

  const double left = 70, right = 170, top = 20, bottom = 50;
  const double pw = opt.width - left - right;
  const double ph = opt.height - top - bottom;
  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
      << opt.height << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out << "<g class=\"axes\" stroke=\"#333\">\n"
      << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + ph) << "\" x2=\""
      << num(left + pw) << "\" y2=\"" << num(top + ph) << "\"/>\n"
      << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
      << "\" y2=\"" << num(top + ph) << "\"/>\n"
      << "</g>\n";
  out << "<g class=\"ticks\" fill=\"#333\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    out << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(top + ph + 16)
        << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n"
        << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(yv) + 4)
        << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  out << "</g>\n";
  out << "<text class=\"xlabel\" x=\"" << num(left + pw / 2) << "\" y=\"" << num(opt.height - 10)
      << "\" text-anchor=\"middle\">" << xml_escape(opt.x_label) << "</text>\n"
      << "<text class=\"ylabel\" x=\"16\" y=\"" << num(top + ph / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << num(top + ph / 2) << ")\">"
      << xml_escape(opt.y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
    std::ostringstream band, line;
    for (std::size_t i = 0; i < s.x.size(); ++i)
      band << (i ? " " : "") << num(px(s.x[i])) << ',' << num(py(s.mean[i] + s.std[i]));
    for (std::size_t i = s.x.size(); i-- > 0;)
      band << ' ' << num(px(s.x[i])) << ',' << num(py(s.mean[i] - s.std[i]));
    for (std::size_t i = 0; i < s.x.size(); ++i)
      line << (i ? " " : "") << num(px(s.x[i])) << ',' << num(py(s.mean[i]));
    out << "<g class=\"series\">\n"
        << "<polygon class=\"band\" points=\"" << band.str() << "\" fill=\"" << color
        << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n"
        << "<polyline class=\"mean\" points=\"" << line.str() << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"1.5\"/>\n"
        << "</g>\n";
  }

  out << "<g class=\"legend\">\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
    const double ly = top + 10 + 18.0 * k;
    const double lx = left + pw + 16;
    out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20)
        << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly + 4) << "\">"
        << xml_escape(series[k].label) << "</text>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace sarc::cli
