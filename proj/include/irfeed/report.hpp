#pragma once

#include <string>
#include <vector>

#include "irfeed/metrics.hpp"

namespace irfeed::report {

std::string correlation_text(const PearsonMatrix& m);
std::string correlation_csv(const PearsonMatrix& m);

std::string histogram_csv(const Histogram& h, const std::string& field);

// Per-subset summaries (skipping subsets that end up empty).
std::string subset_summary_text(const std::vector<MetricsRow>& rows);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

// Minimal static SVG renderings; the data always ships alongside as
// tables, the charts are a convenience.
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series);
std::string svg_bar_chart(const std::string& title,
                          const std::vector<std::pair<std::string, double>>& bars);

}  // namespace irfeed::report
