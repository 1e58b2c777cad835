#pragma once

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "qscore/analytics.hpp"
#include "qscore/error.hpp"
#include "qscore/fsutil.hpp"
#include "qscore/text.hpp"

namespace qscore {

enum class ChartKind { Pie, Line };

struct ChartSpec {
  ChartKind kind = ChartKind::Pie;
  std::string title;
  int width = 640;
  int height = 480;
  std::string basename;  // output files are <basename>.svg and <basename>.json
};

// A rendered chart: SVG suitable for writing as-is plus the machine-readable
// numbers behind it. Tests assert against the JSON, never SVG geometry.
struct ChartArtifact {
  std::string svg;
  nlohmann::ordered_json data;
};

// Fixed palette, one color per category, consistent across every chart.
inline const char* category_color(QsCategory c) {
  switch (c) {
    case QsCategory::BelowAverage: return "#c62828";
    case QsCategory::Average: return "#f9a825";
    case QsCategory::AboveAverage: return "#2e7d32";
  }
  return "#000000";
}

inline constexpr const char* kOverallColor = "#37474f";

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string num(double v) { return format_fixed(v, 2); }

// Point on a circle; angle in degrees clockwise from 12 o'clock.
inline std::pair<double, double> polar(double cx, double cy, double r,
                                       double angle_deg) {
  const double rad = angle_deg * std::numbers::pi / 180.0;
  return {cx + r * std::sin(rad), cy - r * std::cos(rad)};
}

inline void svg_open(std::string& svg, const ChartSpec& spec) {
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width) + " " + std::to_string(spec.height) +
         "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "  <text x=\"" + num(spec.width / 2.0) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\" font-weight=\"bold\">" +
         xml_escape(spec.title) + "</text>\n";
}

inline void legend_entry(std::string& svg, double x, double y,
                         const std::string& color, const std::string& label) {
  svg += "  <rect x=\"" + num(x) + "\" y=\"" + num(y - 10) +
         "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
  svg += "  <text x=\"" + num(x + 18) + "\" y=\"" + num(y) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" +
         xml_escape(label) + "</text>\n";
}

}  // namespace detail

// Category-share pie for one cohort year. Zero-share slices are omitted from
// the drawing but stay present in the JSON; angles are proportional to
// shares and sum to 360 over all categories.
inline ChartArtifact render_pie(const CohortSummary& summary,
                                const ChartSpec& spec) {
  if (spec.kind != ChartKind::Pie) {
    throw Error(Errc::InvalidConfig, "render_pie needs a pie ChartSpec");
  }
  ChartArtifact art;

  nlohmann::ordered_json categories = nlohmann::ordered_json::array();
  // Draw order fixed best-to-worst.
  static constexpr std::array<QsCategory, 3> kDrawOrder = {
      QsCategory::AboveAverage, QsCategory::Average, QsCategory::BelowAverage};

  const double cx = spec.width * 0.34;
  const double cy = spec.height / 2.0 + 12.0;
  const double radius = std::min(spec.width, spec.height) * 0.32;

  std::string& svg = art.svg;
  detail::svg_open(svg, spec);

  double cursor_deg = 0.0;  // clockwise from 12 o'clock
  double legend_y = spec.height / 2.0 - 40.0;
  const double legend_x = spec.width * 0.66;
  for (QsCategory cat : kDrawOrder) {
    const CategoryStats& stats = summary.stats(cat);
    const double angle = stats.share * 360.0;

    nlohmann::ordered_json entry;
    entry["category"] = to_string(cat);
    entry["label"] = display_name(cat);
    entry["count"] = stats.count;
    entry["share"] = stats.share;
    entry["angle_deg"] = angle;
    if (stats.mean_qs) {
      entry["mean_qs"] = *stats.mean_qs;
    } else {
      entry["mean_qs"] = nullptr;
    }
    categories.push_back(entry);

    if (stats.share > 0.0) {
      if (angle >= 360.0 - 1e-9) {
        svg += "  <circle cx=\"" + detail::num(cx) + "\" cy=\"" +
               detail::num(cy) + "\" r=\"" + detail::num(radius) +
               "\" fill=\"" + category_color(cat) +
               "\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";
      } else {
        const auto [x0, y0] = detail::polar(cx, cy, radius, cursor_deg);
        const auto [x1, y1] = detail::polar(cx, cy, radius, cursor_deg + angle);
        const int large_arc = angle > 180.0 ? 1 : 0;
        svg += "  <path d=\"M " + detail::num(cx) + " " + detail::num(cy) +
               " L " + detail::num(x0) + " " + detail::num(y0) + " A " +
               detail::num(radius) + " " + detail::num(radius) + " 0 " +
               std::to_string(large_arc) + " 1 " + detail::num(x1) + " " +
               detail::num(y1) + " Z\" fill=\"" + category_color(cat) +
               "\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";
      }
    }
    const std::string label = std::string(display_name(cat)) + ": " +
                              format_fixed(stats.share * 100.0, 1) + "% (" +
                              std::to_string(stats.count) + ")";
    detail::legend_entry(svg, legend_x, legend_y, category_color(cat), label);
    legend_y += 22.0;
    cursor_deg += angle;
  }
  svg += "  <text x=\"" + detail::num(legend_x) + "\" y=\"" +
         detail::num(legend_y + 8) +
         "\" font-family=\"sans-serif\" font-size=\"12\">Mean QS: " +
         format_fixed(summary.overall_mean_qs, 2) + "</text>\n";
  svg += "</svg>\n";

  art.data["kind"] = "pie";
  art.data["title"] = spec.title;
  art.data["cohort_year"] = summary.cohort_year;
  art.data["total_students"] = summary.total_students;
  art.data["overall_mean_qs"] = summary.overall_mean_qs;
  art.data["categories"] = categories;
  return art;
}

// Cross-year trend lines: one polyline per category mean plus the overall
// mean, y axis fixed to [0, 10]. Absent means break the line into gaps.
inline ChartArtifact render_line(const TrendSeries& series,
                                 const ChartSpec& spec) {
  if (spec.kind != ChartKind::Line) {
    throw Error(Errc::InvalidConfig, "render_line needs a line ChartSpec");
  }
  if (series.size() == 0) {
    throw Error(Errc::EmptyCohort, "render_line: empty trend series");
  }
  ChartArtifact art;
  std::string& svg = art.svg;
  detail::svg_open(svg, spec);

  const double left = 52.0;
  const double right = spec.width - 150.0;
  const double top = 48.0;
  const double bottom = spec.height - 44.0;

  const std::vector<int> years = series.years();
  const int year_min = years.front();
  const int year_max = years.back();

  auto x_of = [&](int year) {
    if (year_min == year_max) return (left + right) / 2.0;
    return left + (right - left) * (year - year_min) /
                      static_cast<double>(year_max - year_min);
  };
  auto y_of = [&](double v) { return top + (10.0 - v) / 10.0 * (bottom - top); };

  // y grid, fixed ticks regardless of data range
  for (int tick = 0; tick <= 10; tick += 2) {
    const double y = y_of(tick);
    svg += "  <line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(y) +
           "\" x2=\"" + detail::num(right) + "\" y2=\"" + detail::num(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "  <text x=\"" + detail::num(left - 8) + "\" y=\"" +
           detail::num(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           std::to_string(tick) + "</text>\n";
  }
  // x labels per year
  for (int year : years) {
    const double x = x_of(year);
    svg += "  <line x1=\"" + detail::num(x) + "\" y1=\"" + detail::num(top) +
           "\" x2=\"" + detail::num(x) + "\" y2=\"" + detail::num(bottom) +
           "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";
    svg += "  <text x=\"" + detail::num(x) + "\" y=\"" +
           detail::num(bottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           std::to_string(year) + "</text>\n";
  }
  svg += "  <rect x=\"" + detail::num(left) + "\" y=\"" + detail::num(top) +
         "\" width=\"" + detail::num(right - left) + "\" height=\"" +
         detail::num(bottom - top) +
         "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

  nlohmann::ordered_json series_json = nlohmann::ordered_json::array();
  double legend_y = top + 8.0;
  const double legend_x = right + 16.0;

  auto draw_series = [&](const std::string& name, const std::string& label,
                         const std::string& color,
                         const std::vector<std::optional<double>>& values) {
    nlohmann::ordered_json entry;
    entry["name"] = name;
    entry["label"] = label;
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    for (const auto& v : values) {
      if (v) {
        vals.push_back(*v);
      } else {
        vals.push_back(nullptr);
      }
    }
    entry["values"] = vals;
    series_json.push_back(entry);

    // polyline segments between consecutive present points; gaps elsewhere
    std::string points;
    auto flush = [&]() {
      if (points.find(' ') != std::string::npos) {
        svg += "  <polyline points=\"" + points + "\" fill=\"none\" stroke=\"" +
               color + "\" stroke-width=\"2\"/>\n";
      }
      points.clear();
    };
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values[i]) {
        flush();
        continue;
      }
      if (!points.empty()) points += " ";
      points += detail::num(x_of(years[i])) + "," + detail::num(y_of(*values[i]));
    }
    flush();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values[i]) continue;
      svg += "  <circle cx=\"" + detail::num(x_of(years[i])) + "\" cy=\"" +
             detail::num(y_of(*values[i])) + "\" r=\"3\" fill=\"" + color +
             "\"/>\n";
    }
    detail::legend_entry(svg, legend_x, legend_y, color, label);
    legend_y += 22.0;
  };

  static constexpr std::array<QsCategory, 3> kOrder = {
      QsCategory::AboveAverage, QsCategory::Average, QsCategory::BelowAverage};
  for (QsCategory cat : kOrder) {
    draw_series(to_string(cat), display_name(cat), category_color(cat),
                series.category_means(cat));
  }
  {
    std::vector<std::optional<double>> overall;
    for (double v : series.overall_means()) overall.emplace_back(v);
    draw_series("Overall", "Overall", kOverallColor, overall);
  }
  svg += "</svg>\n";

  art.data["kind"] = "line";
  art.data["title"] = spec.title;
  nlohmann::ordered_json years_json = nlohmann::ordered_json::array();
  for (int y : years) years_json.push_back(y);
  art.data["years"] = years_json;
  art.data["series"] = series_json;
  art.data["y_axis"] = {{"min", 0}, {"max", 10}, {"ticks", {0, 2, 4, 6, 8, 10}}};
  return art;
}

// Emits <basename>.svg and <basename>.json under out_dir.
inline void write_chart(const ChartArtifact& art,
                        const std::filesystem::path& out_dir,
                        const std::string& basename) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(Errc::IoError,
                "cannot create output directory " + out_dir.string());
  }
  atomic_write(out_dir / (basename + ".svg"), art.svg);
  atomic_write(out_dir / (basename + ".json"), art.data.dump(2) + "\n");
}

}  // namespace qscore
