#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sarc::cli {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> std;
};

struct PlotOptions {
  int width = 720;
  int height = 440;
  std::string x_label = "env steps";
  std::string y_label = "return";
};

// Line per series over a translucent mean +/- std band, with axes and a legend.
void write_svg_plot(std::ostream& out, const std::vector<PlotSeries>& series,
                    const PlotOptions& options = {});

std::string xml_escape(const std::string& s);

}  // namespace sarc::cli
