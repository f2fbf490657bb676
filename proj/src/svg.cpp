#include "vp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace vp {

namespace {

std::string fmt(double v, int precision = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
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

class Svg {
public:
    Svg(double width, double height) : width_(width), height_(height) {
        body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width_, 0)
              << "\" height=\"" << fmt(height_, 0) << "\" viewBox=\"0 0 " << fmt(width_, 0) << " "
              << fmt(height_, 0) << "\">\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "none") {
        body_ << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w)
              << "\" height=\"" << fmt(h) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
              << "\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width = 1.0) {
        body_ << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
              << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
              << fmt(width, 1) << "\"/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& fill,
                const std::string& stroke = "none") {
        body_ << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r, 1)
              << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
    }

    void cross(double cx, double cy, double arm, const std::string& stroke) {
        line(cx - arm, cy - arm, cx + arm, cy + arm, stroke, 1.5);
        line(cx - arm, cy + arm, cx + arm, cy - arm, stroke, 1.5);
    }

    void polyline(const std::vector<std::array<double, 2>>& pts, const std::string& stroke,
                  double width = 1.5) {
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
              << fmt(width, 1) << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ << ' ';
            body_ << fmt(pts[i][0]) << ',' << fmt(pts[i][1]);
        }
        body_ << "\"/>\n";
    }

    void text(double x, double y, const std::string& content, double size = 11.0,
              const std::string& fill = "#000000", const std::string& anchor = "middle") {
        body_ << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-size=\"" << fmt(size, 0)
              << "\" font-family=\"sans-serif\" fill=\"" << fill << "\" text-anchor=\"" << anchor
              << "\">" << escape(content) << "</text>\n";
    }

    std::string str() const { return body_.str() + "</svg>\n"; }

private:
    double width_;
    double height_;
    std::ostringstream body_;
};

// Diverging blue-white-red map over [-1, 1].
std::string heat_color(double v) {
    v = std::clamp(v, -1.0, 1.0);
    int r, g, b;
    if (v >= 0.0) {
        r = 255;
        g = static_cast<int>(std::lround(255.0 * (1.0 - v)));
        b = g;
    } else {
        b = 255;
        g = static_cast<int>(std::lround(255.0 * (1.0 + v)));
        r = g;
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span() const { return hi - lo > 1e-12 ? hi - lo : 1.0; }
};

}  // namespace

std::string render_rank_heatmap(const std::vector<std::string>& row_labels,
                                const std::vector<std::string>& column_labels,
                                const std::vector<std::vector<HeatmapCell>>& cells) {
    const double cell_w = 86, cell_h = 34, left = 150, top = 56;
    const double width = left + cell_w * static_cast<double>(column_labels.size()) + 20;
    const double height = top + cell_h * static_cast<double>(row_labels.size()) + 20;
    Svg svg(width, height);

    svg.text(left / 2, 24, "Spearman rank correlation vs human ranking", 13, "#000000", "start");
    for (std::size_t c = 0; c < column_labels.size(); ++c) {
        svg.text(left + cell_w * (static_cast<double>(c) + 0.5), top - 10, column_labels[c], 11);
    }
    for (std::size_t r = 0; r < row_labels.size(); ++r) {
        svg.text(left - 8, top + cell_h * (static_cast<double>(r) + 0.62), row_labels[r], 11,
                 "#000000", "end");
        for (std::size_t c = 0; c < column_labels.size() && c < cells[r].size(); ++c) {
            const double x = left + cell_w * static_cast<double>(c);
            const double y = top + cell_h * static_cast<double>(r);
            const HeatmapCell& cell = cells[r][c];
            if (cell.present) {
                svg.rect(x, y, cell_w, cell_h, heat_color(cell.value), "#666666");
                svg.text(x + cell_w / 2, y + cell_h * 0.62, fmt(cell.value), 11);
            } else {
                svg.rect(x, y, cell_w, cell_h, "#dddddd", "#666666");
                svg.text(x + cell_w / 2, y + cell_h * 0.62, "NA", 11, "#555555");
            }
        }
    }
    return svg.str();
}

std::string render_mds_scatter(const StructureReport& report) {
    const double size = 480, margin = 50;
    Svg svg(size, size);

    Range rx, ry;
    for (const auto& p : report.procrustes.aligned) {
        rx.include(p[0]);
        ry.include(p[1]);
    }
    for (const auto& p : report.procrustes.target) {
        rx.include(p[0]);
        ry.include(p[1]);
    }
    const double scale = (size - 2 * margin) / std::max(rx.span(), ry.span());
    auto sx = [&](double x) { return margin + (x - rx.lo) * scale; };
    auto sy = [&](double y) { return size - margin - (y - ry.lo) * scale; };

    svg.text(margin, 24, report.dataset.name + "  (SSD " + fmt(report.procrustes_ssd) + ")", 12,
             "#000000", "start");

    // Reference first so model glyphs stay visible on coincidence.
    for (std::size_t i = 0; i < report.procrustes.target.size() && i < report.embedding.labels.size();
         ++i) {
        const auto& p = report.procrustes.target[i];
        svg.circle(sx(p[0]), sy(p[1]), 5.0, "none", "#c03030");
        svg.text(sx(p[0]) + 7, sy(p[1]) - 6, std::string(acronym(report.embedding.labels[i])), 9,
                 "#c03030", "start");
    }
    for (std::size_t i = 0; i < report.procrustes.aligned.size() && i < report.embedding.labels.size();
         ++i) {
        const auto& p = report.procrustes.aligned[i];
        svg.cross(sx(p[0]), sy(p[1]), 4.0, "#2050b0");
        svg.text(sx(p[0]) + 7, sy(p[1]) + 10, std::string(acronym(report.embedding.labels[i])), 9,
                 "#2050b0", "start");
    }

    svg.circle(margin, size - 18, 5.0, "none", "#c03030");
    svg.text(margin + 10, size - 14, "reference", 10, "#c03030", "start");
    svg.cross(margin + 90, size - 18, 4.0, "#2050b0");
    svg.text(margin + 100, size - 14, "model (aligned)", 10, "#2050b0", "start");
    return svg.str();
}

std::string render_anchored_curve(const AnchoredCurve& curve, const SineFit& fit) {
    const double width = 560, height = 360, left = 60, bottom = 50, top = 30, right = 20;
    Svg svg(width, height);

    Range ry;
    for (double v : curve.mean) ry.include(v);
    ry.include(fit.offset + fit.amplitude);
    ry.include(fit.offset - fit.amplitude);

    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    auto sx = [&](double o) { return left + plot_w * o / 18.0; };
    auto sy = [&](double v) { return top + plot_h * (1.0 - (v - ry.lo) / ry.span()); };

    svg.line(left, top, left, height - bottom, "#000000");
    svg.line(left, sy(0.0), width - right, sy(0.0), "#aaaaaa");
    svg.line(left, height - bottom, width - right, height - bottom, "#000000");
    svg.text(width / 2, height - 12, "circular offset from anchored value", 11);
    svg.text(16, top - 10, "mean centered score", 10, "#000000", "start");

    // Fitted sine sampled at 0.1-offset steps.
    std::vector<std::array<double, 2>> fitted;
    for (int i = 0; i <= 180; ++i) {
        const double o = static_cast<double>(i) / 10.0;
        const double v = fit.offset + fit.amplitude * std::cos(2.0 * M_PI * o / 19.0 - fit.phase);
        fitted.push_back({sx(o), sy(v)});
    }
    svg.polyline(fitted, "#c03030", 1.5);

    std::vector<std::array<double, 2>> data;
    for (int o = 0; o < kValueCount; ++o) {
        data.push_back({sx(o), sy(curve.mean[static_cast<std::size_t>(o)])});
    }
    svg.polyline(data, "#2050b0", 1.0);
    for (int o = 0; o < kValueCount; ++o) {
        svg.circle(sx(o), sy(curve.mean[static_cast<std::size_t>(o)]), 3.0, "#2050b0");
        svg.text(sx(o), height - bottom + 16, std::to_string(o), 9);
    }

    svg.text(width - right - 4, top + 4,
             "fit: A=" + fmt(fit.amplitude) + " r2=" + fmt(fit.r_squared), 10, "#c03030", "end");
    return svg.str();
}

std::string render_value_ranking(const std::vector<StructureReport>& reports) {
    const double width = 640, height = 400, left = 60, bottom = 70, top = 30, right = 20;
    Svg svg(width, height);

    const HumanBenchmark& human = human_benchmark_profile();
    // x-axis: values ordered by human rank, best first.
    std::vector<ValueId> order(static_cast<std::size_t>(kValueCount), ValueId::SDT);
    for (const auto& e : human.entries) order[static_cast<std::size_t>(e.rank - 1)] = e.value;

    Range ry;
    for (const auto& e : human.entries) ry.include(e.mean_centered);
    for (const auto& r : reports) {
        for (double v : r.mean_profile) ry.include(v);
    }

    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    auto sx = [&](int i) { return left + plot_w * static_cast<double>(i) / 18.0; };
    auto sy = [&](double v) { return top + plot_h * (1.0 - (v - ry.lo) / ry.span()); };

    svg.line(left, top, left, height - bottom, "#000000");
    svg.line(left, height - bottom, width - right, height - bottom, "#000000");
    svg.line(left, sy(0.0), width - right, sy(0.0), "#aaaaaa");
    svg.text(width / 2, height - 10, "values in human rank order", 11);

    static const std::array<std::string, 6> palette = {"#2050b0", "#208050", "#806020",
                                                       "#602080", "#b05020", "#406070"};
    for (std::size_t r = 0; r < reports.size(); ++r) {
        std::vector<std::array<double, 2>> pts;
        for (int i = 0; i < kValueCount; ++i) {
            const double v =
                reports[r].mean_profile[static_cast<std::size_t>(circle_position(order[static_cast<std::size_t>(i)]))];
            pts.push_back({sx(i), sy(v)});
        }
        const std::string& color = palette[r % palette.size()];
        svg.polyline(pts, color, 1.2);
        svg.text(left + 6, top + 14 + 13 * static_cast<double>(r), reports[r].dataset.name, 10,
                 color, "start");
    }

    std::vector<std::array<double, 2>> human_pts;
    for (int i = 0; i < kValueCount; ++i) {
        human_pts.push_back({sx(i), sy(human[order[static_cast<std::size_t>(i)]].mean_centered)});
    }
    svg.polyline(human_pts, "#c03030", 2.0);
    svg.text(left + 6, top + 14 + 13 * static_cast<double>(reports.size()), "human benchmark", 10,
             "#c03030", "start");

    for (int i = 0; i < kValueCount; ++i) {
        svg.text(sx(i), height - bottom + 14, std::string(acronym(order[static_cast<std::size_t>(i)])),
                 8);
    }
    return svg.str();
}

}  // namespace vp
