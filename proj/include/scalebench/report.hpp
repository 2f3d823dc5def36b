#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scalebench/benchmark.hpp"

namespace scalebench {

enum class RenderFormat { Text, Csv, Json };

// Renders per-group fits in the reference table layout: one row per group
// (an "All" row first when present), one column block per size metric in the
// fixed order Employees, Market Capitalisation, Assets, Total Revenue, each
// block holding adjusted R-squared, beta with significance stars, and the
// natural-log intercept. Text mode appends the significance footnote.
//
// All entries must share impact metric and level (throws MixedMetrics).
std::string render_group_table(const std::map<SizeMetric, GroupedFits>& by_metric,
                               RenderFormat format);

struct ScatterPoint {
    std::string company_id;
    std::string sector;
    double ln_size = 0.0;
    double ln_impact = 0.0;
    std::string flag;  // "above", "below" or "on" (|ln ratio| < 1e-9)
};

// Plot-ready data for one fitted group: log-space points with above/below
// flags plus the benchmark-line endpoints evaluated at the smallest and
// largest observed size.
struct ScatterBundle {
    std::string group_key;
    MetricSelector selector;
    FitResult fit;
    std::vector<ScatterPoint> points;
    double line_x1 = 0.0, line_y1 = 0.0;
    double line_x2 = 0.0, line_y2 = 0.0;
};

// Sectors are looked up in records for point coloring; companies without a
// record keep an empty sector.
ScatterBundle make_scatter(const std::string& group_key,
                           std::span<const SamplePoint> members,
                           const FitResult& fit,
                           std::span<const CompanyRecord> records,
                           MetricSelector selector);

// CSV of (ln_size, ln_impact, company_id, flag); the two final rows carry the
// benchmark-line endpoints with company_id "__benchmark__" and flag "line".
std::string scatter_csv(const ScatterBundle& bundle);

// Self-contained 960x720 SVG: log-log axes with decade gridlines, points
// colored by sector (palette assigned over sorted sector names), the fitted
// line in red, and the fit summary top left. Byte-stable for fixed input.
std::string scatter_svg(const ScatterBundle& bundle);

// Number of fits with p_beta below each alpha, in the given alpha order.
// Throws on an empty fit map.
std::vector<std::pair<double, std::size_t>> count_significant(
    const std::map<std::string, FitResult>& fits, std::span<const double> alphas);

}  // namespace scalebench
