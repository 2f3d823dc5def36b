#include "scalebench/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <set>
#include <sstream>
#include <unordered_map>

#include "scalebench/errors.hpp"
#include "scalebench/format.hpp"

namespace scalebench {

namespace {

constexpr const char* kSignificanceFootnote = "* p<0.05, **p<0.01, ***p<0.001";

// Deterministic point palette, assigned to sorted sector names.
constexpr const char* kPalette[10] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

std::string beta_cell(const FitResult& fit) {
    return fmt_fixed(fit.beta, 3) + significance_stars(fit.p_beta);
}

// Group keys in presentation order: "All" first, the rest lexicographic.
std::vector<std::string> presentation_rows(
    const std::map<SizeMetric, GroupedFits>& by_metric) {
    std::set<std::string> keys;
    for (const auto& [metric, grouped] : by_metric) {
        for (const auto& [key, fit] : grouped.fits) keys.insert(key);
    }
    std::vector<std::string> rows;
    if (keys.erase(all_group_key) > 0) rows.push_back(all_group_key);
    rows.insert(rows.end(), keys.begin(), keys.end());
    return rows;
}

void check_consistency(const std::map<SizeMetric, GroupedFits>& by_metric) {
    if (by_metric.empty()) return;
    const GroupedFits& first = by_metric.begin()->second;
    for (const auto& [metric, grouped] : by_metric) {
        if (grouped.selector.size != metric ||
            grouped.selector.impact != first.selector.impact ||
            grouped.level != first.level) {
            throw ValidationError("MixedMetrics",
                                  "table blocks must share impact metric and "
                                  "level and match their size-metric key");
        }
    }
}

const FitResult* find_fit(const std::map<SizeMetric, GroupedFits>& by_metric,
                          SizeMetric metric, const std::string& key) {
    const auto block = by_metric.find(metric);
    if (block == by_metric.end()) return nullptr;
    const auto fit = block->second.fits.find(key);
    return fit == block->second.fits.end() ? nullptr : &fit->second;
}

// n shown once per row, taken from the first block (fixed order) that fitted
// the group; sample sizes can differ across size metrics.
std::size_t row_n(const std::map<SizeMetric, GroupedFits>& by_metric,
                  const std::string& key) {
    for (SizeMetric metric : table_size_order) {
        if (const FitResult* fit = find_fit(by_metric, metric, key)) {
            return fit->n;
        }
    }
    return 0;
}

std::vector<SizeMetric> present_metrics(
    const std::map<SizeMetric, GroupedFits>& by_metric) {
    std::vector<SizeMetric> metrics;
    for (SizeMetric metric : table_size_order) {
        if (by_metric.count(metric) > 0) metrics.push_back(metric);
    }
    return metrics;
}

std::string pad_right(const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
}

std::string pad_left(const std::string& s, std::size_t w) {
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
}

std::string table_text(const std::map<SizeMetric, GroupedFits>& by_metric) {
    const std::vector<SizeMetric> metrics = present_metrics(by_metric);
    const std::vector<std::string> rows = presentation_rows(by_metric);
    const GroupedFits& first = by_metric.begin()->second;

    struct Cell {
        std::string adj_r2 = "-";
        std::string beta = "-";
        std::string c = "-";
    };
    std::vector<std::vector<Cell>> cells(rows.size(),
                                         std::vector<Cell>(metrics.size()));
    std::vector<std::string> n_col(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        n_col[i] = thousands(row_n(by_metric, rows[i]));
        for (std::size_t j = 0; j < metrics.size(); ++j) {
            if (const FitResult* fit = find_fit(by_metric, metrics[j], rows[i])) {
                cells[i][j].adj_r2 = fmt_fixed(fit->adj_r2, 3);
                cells[i][j].beta = beta_cell(*fit);
                cells[i][j].c = fmt_fixed(fit->intercept_ln, 3);
            }
        }
    }

    std::size_t w_group = 5;  // "Group"
    for (const std::string& r : rows) w_group = std::max(w_group, r.size());
    std::size_t w_n = 1;
    for (const std::string& n : n_col) w_n = std::max(w_n, n.size());

    std::vector<std::array<std::size_t, 3>> widths(
        metrics.size(), {std::strlen("Adj.R2"), 4, 4});  // "beta", "c_ln"
    for (std::size_t j = 0; j < metrics.size(); ++j) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            widths[j][0] = std::max(widths[j][0], cells[i][j].adj_r2.size());
            widths[j][1] = std::max(widths[j][1], cells[i][j].beta.size());
            widths[j][2] = std::max(widths[j][2], cells[i][j].c.size());
        }
    }

    std::ostringstream out;
    out << display_name(first.selector.impact) << " vs. company size ("
        << to_string(first.level) << " level)\n";

    // Block label row.
    out << pad_right("", w_group) << "  " << pad_left("", w_n);
    for (std::size_t j = 0; j < metrics.size(); ++j) {
        const std::size_t block_w = widths[j][0] + widths[j][1] + widths[j][2] + 4;
        out << " | " << pad_right(std::string(display_name(metrics[j])), block_w);
    }
    out << '\n';

    // Column header row.
    out << pad_right("Group", w_group) << "  " << pad_left("n", w_n);
    for (std::size_t j = 0; j < metrics.size(); ++j) {
        out << " | " << pad_right("Adj.R2", widths[j][0]) << "  "
            << pad_right("beta", widths[j][1]) << "  "
            << pad_right("c_ln", widths[j][2]);
    }
    out << '\n';

    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << pad_right(rows[i], w_group) << "  " << pad_left(n_col[i], w_n);
        for (std::size_t j = 0; j < metrics.size(); ++j) {
            out << " | " << pad_right(cells[i][j].adj_r2, widths[j][0]) << "  "
                << pad_right(cells[i][j].beta, widths[j][1]) << "  "
                << pad_right(cells[i][j].c, widths[j][2]);
        }
        out << '\n';
    }
    out << kSignificanceFootnote << '\n';
    return out.str();
}

std::string table_csv(const std::map<SizeMetric, GroupedFits>& by_metric) {
    const std::vector<SizeMetric> metrics = present_metrics(by_metric);
    const std::vector<std::string> rows = presentation_rows(by_metric);

    std::string out = "group,n";
    for (SizeMetric metric : metrics) {
        const std::string tag(to_string(metric));
        out += "," + tag + "_adj_r2," + tag + "_beta," + tag + "_intercept_ln";
    }
    out += '\n';
    for (const std::string& key : rows) {
        out += csv_field(key) + ',' + std::to_string(row_n(by_metric, key));
        for (SizeMetric metric : metrics) {
            if (const FitResult* fit = find_fit(by_metric, metric, key)) {
                out += ',' + fmt_fixed(fit->adj_r2, 3);
                out += ',' + csv_field(beta_cell(*fit));
                out += ',' + fmt_fixed(fit->intercept_ln, 3);
            } else {
                out += ",,,";
            }
        }
        out += '\n';
    }
    return out;
}

std::string table_json(const std::map<SizeMetric, GroupedFits>& by_metric) {
    const std::vector<SizeMetric> metrics = present_metrics(by_metric);
    const std::vector<std::string> rows = presentation_rows(by_metric);
    const GroupedFits& first = by_metric.begin()->second;

    std::string out = "{\"impact\":" +
                      json_string(to_string(first.selector.impact)) +
                      ",\"level\":" + json_string(to_string(first.level)) +
                      ",\"rows\":[";
    bool first_row = true;
    for (const std::string& key : rows) {
        if (!first_row) out += ',';
        first_row = false;
        out += "{\"group\":" + json_string(key) +
               ",\"n\":" + std::to_string(row_n(by_metric, key)) +
               ",\"metrics\":{";
        bool first_metric = true;
        for (SizeMetric metric : metrics) {
            const FitResult* fit = find_fit(by_metric, metric, key);
            if (fit == nullptr) continue;
            if (!first_metric) out += ',';
            first_metric = false;
            out += json_string(to_string(metric)) + ":{\"adj_r2\":" +
                   json_number(fit->adj_r2) +
                   ",\"beta\":" + json_number(fit->beta) + ",\"stars\":" +
                   json_string(significance_stars(fit->p_beta)) +
                   ",\"intercept_ln\":" + json_number(fit->intercept_ln) +
                   ",\"n\":" + std::to_string(fit->n) + "}";
        }
        out += "}}";
    }
    out += "]}";
    return out;
}

}  // namespace

std::string render_group_table(const std::map<SizeMetric, GroupedFits>& by_metric,
                               RenderFormat format) {
    check_consistency(by_metric);
    if (by_metric.empty()) {
        switch (format) {
            case RenderFormat::Text:
                return std::string("(no fits)\n") + kSignificanceFootnote + "\n";
            case RenderFormat::Csv: return "group,n\n";
            case RenderFormat::Json: return "{\"rows\":[]}";
        }
    }
    switch (format) {
        case RenderFormat::Text: return table_text(by_metric);
        case RenderFormat::Csv: return table_csv(by_metric);
        case RenderFormat::Json: return table_json(by_metric);
    }
    throw ValidationError("InvalidArgument", "unknown render format");
}

ScatterBundle make_scatter(const std::string& group_key,
                           std::span<const SamplePoint> members,
                           const FitResult& fit,
                           std::span<const CompanyRecord> records,
                           MetricSelector selector) {
    std::unordered_map<std::string, const std::string*> sector_of;
    sector_of.reserve(records.size());
    for (const CompanyRecord& r : records) {
        sector_of.emplace(r.company_id, &r.sector);
    }

    ScatterBundle bundle;
    bundle.group_key = group_key;
    bundle.selector = selector;
    bundle.fit = fit;

    double min_size = 0.0, max_size = 0.0;
    bool first = true;
    for (const SamplePoint& m : members) {
        ScatterPoint p;
        p.company_id = m.company_id;
        const auto sec = sector_of.find(m.company_id);
        if (sec != sector_of.end()) p.sector = *sec->second;
        p.ln_size = std::log(m.size);
        p.ln_impact = std::log(m.impact);
        const double residual =
            std::log(m.impact / predict_benchmark(fit, m.size));
        if (std::abs(residual) < 1e-9) {
            p.flag = "on";
        } else {
            p.flag = residual > 0.0 ? "above" : "below";
        }
        bundle.points.push_back(std::move(p));
        if (first || m.size < min_size) min_size = m.size;
        if (first || m.size > max_size) max_size = m.size;
        first = false;
    }

    if (!first) {
        bundle.line_x1 = std::log(min_size);
        bundle.line_y1 = std::log(predict_benchmark(fit, min_size));
        bundle.line_x2 = std::log(max_size);
        bundle.line_y2 = std::log(predict_benchmark(fit, max_size));
    }
    return bundle;
}

std::string scatter_csv(const ScatterBundle& bundle) {
    std::string out = "ln_size,ln_impact,company_id,flag\n";
    for (const ScatterPoint& p : bundle.points) {
        out += fmt_double(p.ln_size) + ',' + fmt_double(p.ln_impact) + ',' +
               csv_field(p.company_id) + ',' + p.flag + '\n';
    }
    out += fmt_double(bundle.line_x1) + ',' + fmt_double(bundle.line_y1) +
           ",__benchmark__,line\n";
    out += fmt_double(bundle.line_x2) + ',' + fmt_double(bundle.line_y2) +
           ",__benchmark__,line\n";
    return out;
}

namespace {

std::string svg_num(double v) { return fmt_fixed(v, 2); }

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
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

}  // namespace

std::string scatter_svg(const ScatterBundle& bundle) {
    constexpr double kWidth = 960.0, kHeight = 720.0;
    constexpr double kLeft = 70.0, kRight = 30.0, kTop = 40.0, kBottom = 60.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    double min_x = bundle.line_x1, max_x = bundle.line_x2;
    double min_y = 0.0, max_y = 0.0;
    bool first = true;
    for (const ScatterPoint& p : bundle.points) {
        min_x = std::min(min_x, p.ln_size);
        max_x = std::max(max_x, p.ln_size);
        if (first) {
            min_y = max_y = p.ln_impact;
            first = false;
        } else {
            min_y = std::min(min_y, p.ln_impact);
            max_y = std::max(max_y, p.ln_impact);
        }
    }
    min_y = std::min({min_y, bundle.line_y1, bundle.line_y2});
    max_y = std::max({max_y, bundle.line_y1, bundle.line_y2});

    auto pad_range = [](double& lo, double& hi) {
        double span = hi - lo;
        if (span < 1e-9) span = 1.0;
        lo -= 0.05 * span;
        hi += 0.05 * span;
    };
    pad_range(min_x, max_x);
    pad_range(min_y, max_y);

    auto sx = [&](double v) {
        return kLeft + (v - min_x) / (max_x - min_x) * plot_w;
    };
    auto sy = [&](double v) {
        return kTop + plot_h - (v - min_y) / (max_y - min_y) * plot_h;
    };

    // Palette index per sorted sector name.
    std::set<std::string> sector_set;
    for (const ScatterPoint& p : bundle.points) sector_set.insert(p.sector);
    std::map<std::string, std::size_t> color_index;
    for (const std::string& s : sector_set) {
        const std::size_t i = color_index.size();
        color_index.emplace(s, i % 10);
    }

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" "
           "height=\"720\" viewBox=\"0 0 960 720\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"960\" height=\"720\" fill=\"#ffffff\"/>\n";

    // Decade gridlines (positions of integer powers of ten in ln space).
    const double ln10 = std::log(10.0);
    auto decade_lines = [&](double lo, double hi, bool vertical) {
        const long k_lo = static_cast<long>(std::ceil(lo / ln10));
        const long k_hi = static_cast<long>(std::floor(hi / ln10));
        for (long k = k_lo; k <= k_hi; ++k) {
            const double v = static_cast<double>(k) * ln10;
            if (vertical) {
                svg << "<line x1=\"" << svg_num(sx(v)) << "\" y1=\""
                    << svg_num(kTop) << "\" x2=\"" << svg_num(sx(v))
                    << "\" y2=\"" << svg_num(kTop + plot_h)
                    << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
                    << "<text x=\"" << svg_num(sx(v)) << "\" y=\""
                    << svg_num(kTop + plot_h + 18)
                    << "\" font-family=\"sans-serif\" font-size=\"12\" "
                       "text-anchor=\"middle\">1e"
                    << k << "</text>\n";
            } else {
                svg << "<line x1=\"" << svg_num(kLeft) << "\" y1=\""
                    << svg_num(sy(v)) << "\" x2=\"" << svg_num(kLeft + plot_w)
                    << "\" y2=\"" << svg_num(sy(v))
                    << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
                    << "<text x=\"" << svg_num(kLeft - 6) << "\" y=\""
                    << svg_num(sy(v) + 4)
                    << "\" font-family=\"sans-serif\" font-size=\"12\" "
                       "text-anchor=\"end\">1e"
                    << k << "</text>\n";
            }
        }
    };
    decade_lines(min_x, max_x, true);
    decade_lines(min_y, max_y, false);

    // Frame.
    svg << "<rect x=\"" << svg_num(kLeft) << "\" y=\"" << svg_num(kTop)
        << "\" width=\"" << svg_num(plot_w) << "\" height=\"" << svg_num(plot_h)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    for (const ScatterPoint& p : bundle.points) {
        svg << "<circle cx=\"" << svg_num(sx(p.ln_size)) << "\" cy=\""
            << svg_num(sy(p.ln_impact)) << "\" r=\"3\" fill=\""
            << kPalette[color_index.at(p.sector)] << "\" fill-opacity=\"0.7\"/>\n";
    }

    svg << "<line x1=\"" << svg_num(sx(bundle.line_x1)) << "\" y1=\""
        << svg_num(sy(bundle.line_y1)) << "\" x2=\""
        << svg_num(sx(bundle.line_x2)) << "\" y2=\""
        << svg_num(sy(bundle.line_y2))
        << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";

    // Fit summary and axis labels.
    svg << "<text x=\"" << svg_num(kLeft + 10) << "\" y=\"" << svg_num(kTop + 18)
        << "\" font-family=\"sans-serif\" font-size=\"14\">"
        << xml_escape(bundle.group_key)
        << ": beta=" << fmt_fixed(bundle.fit.beta, 3)
        << significance_stars(bundle.fit.p_beta)
        << "  R2=" << fmt_fixed(bundle.fit.r2, 3) << "  n=" << bundle.fit.n
        << "</text>\n";
    svg << "<text x=\"" << svg_num(kLeft + plot_w / 2) << "\" y=\""
        << svg_num(kHeight - 15)
        << "\" font-family=\"sans-serif\" font-size=\"14\" "
           "text-anchor=\"middle\">"
        << display_name(bundle.selector.size) << "</text>\n";
    svg << "<text x=\"20\" y=\"" << svg_num(kTop + plot_h / 2)
        << "\" font-family=\"sans-serif\" font-size=\"14\" "
           "text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << svg_num(kTop + plot_h / 2) << ")\">"
        << display_name(bundle.selector.impact) << "</text>\n";

    // Legend for small sector counts.
    if (sector_set.size() > 1 && sector_set.size() <= 12) {
        double y = kTop + 14;
        for (const auto& [name, idx] : color_index) {
            svg << "<rect x=\"" << svg_num(kLeft + plot_w - 160) << "\" y=\""
                << svg_num(y - 9) << "\" width=\"10\" height=\"10\" fill=\""
                << kPalette[idx] << "\"/>\n"
                << "<text x=\"" << svg_num(kLeft + plot_w - 146) << "\" y=\""
                << svg_num(y)
                << "\" font-family=\"sans-serif\" font-size=\"12\">"
                << (name.empty() ? "(none)" : xml_escape(name)) << "</text>\n";
            y += 16;
        }
    }

    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::pair<double, std::size_t>> count_significant(
    const std::map<std::string, FitResult>& fits,
    std::span<const double> alphas) {
    if (fits.empty()) {
        throw ValidationError("EmptySample", "no fits to count");
    }
    std::vector<std::pair<double, std::size_t>> counts;
    counts.reserve(alphas.size());
    for (double alpha : alphas) {
        std::size_t c = 0;
        for (const auto& [key, fit] : fits) {
            if (fit.p_beta < alpha) ++c;
        }
        counts.emplace_back(alpha, c);
    }
    return counts;
}

}  // namespace scalebench
