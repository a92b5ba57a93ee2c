#include "irfeed/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace irfeed::report {

namespace {

std::string fmt_r(const std::optional<double>& r) {
  if (!r) return "undefined";
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%+.3f", *r);
  return buf;
}

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string correlation_text(const PearsonMatrix& m) {
  size_t width = 9;  // fits "undefined"
  for (const auto& f : m.fields) width = std::max(width, f.size());
  std::ostringstream out;
  out << std::string(width + 2, ' ');
  for (const auto& f : m.fields) {
    out << f;
    out << std::string(width + 2 - f.size(), ' ');
  }
  out << "\n";
  for (size_t i = 0; i < m.fields.size(); ++i) {
    out << m.fields[i] << std::string(width + 2 - m.fields[i].size(), ' ');
    for (size_t j = 0; j < m.fields.size(); ++j) {
      const std::string cell = fmt_r(m.r[i][j]);
      out << cell << std::string(width + 2 - cell.size(), ' ');
    }
    out << "\n";
  }
  return out.str();
}

std::string correlation_csv(const PearsonMatrix& m) {
  std::ostringstream out;
  out << "field";
  for (const auto& f : m.fields) out << "," << f;
  out << "\n";
  for (size_t i = 0; i < m.fields.size(); ++i) {
    out << m.fields[i];
    for (size_t j = 0; j < m.fields.size(); ++j) {
      out << ",";
      out << (m.r[i][j] ? fmt_num(*m.r[i][j]) : "undefined");
    }
    out << "\n";
  }
  return out.str();
}

std::string histogram_csv(const Histogram& h, const std::string& field) {
  std::ostringstream out;
  out << "bucket_lo,bucket_hi,count,mean_improvement_over_autotuner\n";
  out << "0,0," << h.zero.count << ","
      << (h.zero.mean_improvement ? fmt_num(*h.zero.mean_improvement) : "-")
      << "\n";
  for (const auto& b : h.buckets) {
    out << fmt_num(b.lo) << "," << fmt_num(b.hi) << "," << b.count << ","
        << (b.mean_improvement ? fmt_num(*b.mean_improvement) : "-") << "\n";
  }
  (void)field;
  return out.str();
}

std::string subset_summary_text(const std::vector<MetricsRow>& rows) {
  std::ostringstream out;
  out << "subset\trows\tcorpus_improvement\tmean_improvement\t"
         "fraction_of_autotuner\n";
  for (SubsetKind kind :
       {SubsetKind::All, SubsetKind::AutotunerNonOz,
        SubsetKind::ModelWorseThanAutotuner, SubsetKind::MispredictedCount}) {
    auto filtered = subset(rows, kind);
    out << subset_name(kind) << "\t" << filtered.size();
    if (filtered.empty()) {
      out << "\t-\t-\t-\n";
      continue;
    }
    auto s = aggregate(filtered);
    out << "\t" << fmt_num(s.corpus_improvement) << "\t"
        << fmt_num(s.per_example_mean_improvement) << "\t"
        << (s.fraction_of_autotuner ? fmt_num(*s.fraction_of_autotuner) : "undefined")
        << "\n";
  }
  return out.str();
}

namespace {

constexpr double kW = 640, kH = 400, kMargin = 60;

struct Range {
  double lo = 0, hi = 1;
  double scale(double v, double out_lo, double out_hi) const {
    if (hi <= lo) return (out_lo + out_hi) / 2;
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                         "#9467bd", "#8c564b"};

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series) {
  Range xr, yr;
  bool first = true;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      if (first) {
        xr = {x, x};
        yr = {y, y};
        first = false;
      }
      xr.lo = std::min(xr.lo, x);
      xr.hi = std::max(xr.hi, x);
      yr.lo = std::min(yr.lo, y);
      yr.hi = std::max(yr.hi, y);
    }
  }
  if (yr.hi == yr.lo) yr.hi = yr.lo + 1;
  if (xr.hi == xr.lo) xr.hi = xr.lo + 1;

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW
      << "' height='" << kH << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << kW / 2 << "' y='20' text-anchor='middle' "
         "font-size='14'>" << title << "</text>\n";
  out << "<line x1='" << kMargin << "' y1='" << kH - kMargin << "' x2='"
      << kW - kMargin << "' y2='" << kH - kMargin << "' stroke='black'/>\n";
  out << "<line x1='" << kMargin << "' y1='" << kMargin << "' x2='" << kMargin
      << "' y2='" << kH - kMargin << "' stroke='black'/>\n";
  out << "<text x='" << kW / 2 << "' y='" << kH - 15
      << "' text-anchor='middle' font-size='12'>" << x_label << "</text>\n";
  out << "<text x='15' y='" << kH / 2
      << "' text-anchor='middle' font-size='12' transform='rotate(-90 15 "
      << kH / 2 << ")'>" << y_label << "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const char* color = kColors[si % 6];
    std::ostringstream pts;
    for (auto [x, y] : series[si].points) {
      pts << xr.scale(x, kMargin, kW - kMargin) << ","
          << yr.scale(y, kH - kMargin, kMargin) << " ";
    }
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='2' "
        << "points='" << pts.str() << "'/>\n";
    for (auto [x, y] : series[si].points) {
      out << "<circle cx='" << xr.scale(x, kMargin, kW - kMargin) << "' cy='"
          << yr.scale(y, kH - kMargin, kMargin) << "' r='3' fill='" << color
          << "'/>\n";
    }
    out << "<text x='" << kW - kMargin + 5 << "' y='" << kMargin + 16 * si
        << "' font-size='11' fill='" << color << "'>" << series[si].name
        << "</text>\n";
  }
  // Axis extremes.
  out << "<text x='" << kMargin << "' y='" << kH - kMargin + 15
      << "' font-size='10'>" << fmt_num(xr.lo) << "</text>\n";
  out << "<text x='" << kW - kMargin << "' y='" << kH - kMargin + 15
      << "' text-anchor='end' font-size='10'>" << fmt_num(xr.hi) << "</text>\n";
  out << "<text x='" << kMargin - 5 << "' y='" << kH - kMargin
      << "' text-anchor='end' font-size='10'>" << fmt_num(yr.lo) << "</text>\n";
  out << "<text x='" << kMargin - 5 << "' y='" << kMargin
      << "' text-anchor='end' font-size='10'>" << fmt_num(yr.hi) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string svg_bar_chart(
    const std::string& title,
    const std::vector<std::pair<std::string, double>>& bars) {
  double max_v = 1e-12;
  for (const auto& [_, v] : bars) max_v = std::max(max_v, v);
  const double plot_w = kW - 2 * kMargin;
  const double plot_h = kH - 2 * kMargin;
  const double bw = bars.empty() ? plot_w : plot_w / bars.size();

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW
      << "' height='" << kH << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << kW / 2 << "' y='20' text-anchor='middle' "
         "font-size='14'>" << title << "</text>\n";
  for (size_t i = 0; i < bars.size(); ++i) {
    const double h = bars[i].second / max_v * plot_h;
    const double x = kMargin + i * bw;
    out << "<rect x='" << x + 2 << "' y='" << kH - kMargin - h << "' width='"
        << bw - 4 << "' height='" << h << "' fill='#1f77b4'/>\n";
    out << "<text x='" << x + bw / 2 << "' y='" << kH - kMargin + 14
        << "' text-anchor='middle' font-size='10'>" << bars[i].first
        << "</text>\n";
    out << "<text x='" << x + bw / 2 << "' y='" << kH - kMargin - h - 4
        << "' text-anchor='middle' font-size='10'>" << fmt_num(bars[i].second)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace irfeed::report
