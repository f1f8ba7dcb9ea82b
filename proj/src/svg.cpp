#include "ctml/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "ctml/errors.hpp"

namespace ctml {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr const char* kColorFlight = "#d95f02";
constexpr const char* kColorGround = "#1b9e77";
constexpr const char* kColorUp = "#c0392b";
constexpr const char* kColorDown = "#2980b9";
constexpr const char* kColorNeutral = "#95a5a6";
constexpr const char* kCurvePalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                         "#66a61e", "#e6ab02", "#a6761d"};

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string label_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string escape_text(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target = 5) {
    if (!(hi > lo)) return {lo};
    const double raw_step = (hi - lo) / target;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = magnitude;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (magnitude * mult >= raw_step) {
            step = magnitude * mult;
            break;
        }
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
        ticks.push_back(std::abs(t) < 1e-12 ? 0.0 : t);
    }
    return ticks;
}

/// Maps a data rectangle onto the plot area with the usual inverted y axis.
struct Frame {
    double x_lo, x_hi, y_lo, y_hi;
    double left = 70.0, right = 615.0, bottom = 430.0, top = 40.0;

    double sx(double x) const { return left + (x - x_lo) / (x_hi - x_lo) * (right - left); }
    double sy(double y) const { return bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top); }
};

void pad_range(double& lo, double& hi) {
    if (hi <= lo) {
        lo -= 0.5;
        hi += 0.5;
        return;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
}

std::ostringstream open_svg(const std::string& title) {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    o << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    o << "<text x=\"" << kWidth / 2
      << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << escape_text(title) << "</text>\n";
    return o;
}

void draw_axes(std::ostringstream& o, const Frame& f, const std::string& x_label,
               const std::string& y_label) {
    o << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    o << "<line x1=\"" << px(f.left) << "\" y1=\"" << px(f.bottom) << "\" x2=\""
      << px(f.right) << "\" y2=\"" << px(f.bottom) << "\" stroke=\"#333\"/>\n";
    o << "<line x1=\"" << px(f.left) << "\" y1=\"" << px(f.bottom) << "\" x2=\""
      << px(f.left) << "\" y2=\"" << px(f.top) << "\" stroke=\"#333\"/>\n";
    for (double t : nice_ticks(f.x_lo, f.x_hi)) {
        const double x = f.sx(t);
        o << "<line x1=\"" << px(x) << "\" y1=\"" << px(f.bottom) << "\" x2=\"" << px(x)
          << "\" y2=\"" << px(f.bottom + 4) << "\" stroke=\"#333\"/>\n";
        o << "<text x=\"" << px(x) << "\" y=\"" << px(f.bottom + 16)
          << "\" text-anchor=\"middle\">" << label_num(t) << "</text>\n";
    }
    for (double t : nice_ticks(f.y_lo, f.y_hi)) {
        const double y = f.sy(t);
        o << "<line x1=\"" << px(f.left - 4) << "\" y1=\"" << px(y) << "\" x2=\""
          << px(f.left) << "\" y2=\"" << px(y) << "\" stroke=\"#333\"/>\n";
        o << "<text x=\"" << px(f.left - 7) << "\" y=\"" << px(y + 4)
          << "\" text-anchor=\"end\">" << label_num(t) << "</text>\n";
    }
    o << "<text x=\"" << px((f.left + f.right) / 2) << "\" y=\"" << px(f.bottom + 34)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape_text(x_label)
      << "</text>\n";
    o << "<text transform=\"translate(" << px(f.left - 45) << " "
      << px((f.top + f.bottom) / 2) << ") rotate(-90)\" text-anchor=\"middle\" "
      << "font-size=\"13\">" << escape_text(y_label) << "</text>\n";
    o << "</g>\n";
}

void guide_line(std::ostringstream& o, double x1, double y1, double x2, double y2) {
    o << "<line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\"" << px(x2)
      << "\" y2=\"" << px(y2)
      << "\" stroke=\"#888\" stroke-dasharray=\"5 4\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string svg_volcano(const std::vector<DgeRecord>& records,
                        const RegulationThresholds& thresholds) {
    if (records.empty()) throw ArgumentError("volcano plot needs at least one record");
    Frame f{0.0, 0.0, 0.0, 0.0};
    f.x_lo = f.x_hi = records.front().log2_fc;
    for (const DgeRecord& r : records) {
        f.x_lo = std::min(f.x_lo, r.log2_fc);
        f.x_hi = std::max(f.x_hi, r.log2_fc);
        f.y_hi = std::max(f.y_hi, -std::log10(std::max(r.p_value, 1e-300)));
    }
    const double fc_guide = std::log2(thresholds.fc_up);
    f.x_lo = std::min(f.x_lo, -fc_guide);
    f.x_hi = std::max(f.x_hi, fc_guide);
    pad_range(f.x_lo, f.x_hi);
    pad_range(f.y_lo, f.y_hi);
    f.y_lo = 0.0;

    std::ostringstream o = open_svg("Differential expression");
    draw_axes(o, f, "log2 fold change", "-log10 p");

    guide_line(o, f.sx(fc_guide), f.sy(f.y_lo), f.sx(fc_guide), f.sy(f.y_hi));
    guide_line(o, f.sx(-fc_guide), f.sy(f.y_lo), f.sx(-fc_guide), f.sy(f.y_hi));
    const double alpha_y = -std::log10(thresholds.alpha);
    guide_line(o, f.sx(f.x_lo), f.sy(alpha_y), f.sx(f.x_hi), f.sy(alpha_y));

    for (const DgeRecord& r : records) {
        const char* color = kColorNeutral;
        if (r.regulation == Regulation::Up) color = kColorUp;
        if (r.regulation == Regulation::Down) color = kColorDown;
        const double y = -std::log10(std::max(r.p_value, 1e-300));
        o << "<circle cx=\"" << px(f.sx(r.log2_fc)) << "\" cy=\"" << px(f.sy(y))
          << "\" r=\"3.5\" fill=\"" << color << "\" fill-opacity=\"0.8\"><title>"
          << escape_text(r.gene) << "</title></circle>\n";
        if (r.regulation != Regulation::NotSignificant && r.q_value < 0.05) {
            o << "<text x=\"" << px(f.sx(r.log2_fc) + 5) << "\" y=\"" << px(f.sy(y) - 5)
              << "\" font-family=\"sans-serif\" font-size=\"10\">" << escape_text(r.gene)
              << "</text>\n";
        }
    }
    o << "</svg>\n";
    return o.str();
}

std::string svg_pca_scatter(const PcaResult& pca, const std::vector<std::string>& sample_ids,
                            const std::vector<int>& labels) {
    if (pca.scores.cols < 2) throw ArgumentError("scatter needs at least two components");
    if (pca.scores.rows != sample_ids.size() || sample_ids.size() != labels.size()) {
        throw ArgumentError("scores, sample ids and labels must align");
    }
    Frame f{0.0, 0.0, 0.0, 0.0};
    f.x_lo = f.x_hi = pca.scores(0, 0);
    f.y_lo = f.y_hi = pca.scores(0, 1);
    for (std::size_t i = 0; i < pca.scores.rows; ++i) {
        f.x_lo = std::min(f.x_lo, pca.scores(i, 0));
        f.x_hi = std::max(f.x_hi, pca.scores(i, 0));
        f.y_lo = std::min(f.y_lo, pca.scores(i, 1));
        f.y_hi = std::max(f.y_hi, pca.scores(i, 1));
    }
    pad_range(f.x_lo, f.x_hi);
    pad_range(f.y_lo, f.y_hi);

    char x_label[64], y_label[64];
    std::snprintf(x_label, sizeof(x_label), "PC1 (%.1f%% variance)",
                  100.0 * pca.explained_variance_ratio[0]);
    std::snprintf(y_label, sizeof(y_label), "PC2 (%.1f%% variance)",
                  100.0 * pca.explained_variance_ratio[1]);

    std::ostringstream o = open_svg("Principal components by condition");
    draw_axes(o, f, x_label, y_label);
    for (std::size_t i = 0; i < pca.scores.rows; ++i) {
        const char* color = labels[i] == kFlight ? kColorFlight : kColorGround;
        const double x = f.sx(pca.scores(i, 0));
        const double y = f.sy(pca.scores(i, 1));
        o << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y) << "\" r=\"5\" fill=\""
          << color << "\" fill-opacity=\"0.85\"/>\n";
        o << "<text x=\"" << px(x + 7) << "\" y=\"" << px(y + 4)
          << "\" font-family=\"sans-serif\" font-size=\"10\">" << escape_text(sample_ids[i])
          << "</text>\n";
    }
    o << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<circle cx=\"540\" cy=\"50\" r=\"5\" fill=\"" << kColorFlight << "\"/>"
      << "<text x=\"550\" y=\"54\">flight</text>\n";
    o << "<circle cx=\"540\" cy=\"68\" r=\"5\" fill=\"" << kColorGround << "\"/>"
      << "<text x=\"550\" y=\"72\">ground</text>\n";
    o << "</g>\n</svg>\n";
    return o.str();
}

std::string svg_roc(const std::vector<std::pair<std::string, std::vector<RocPoint>>>& curves) {
    Frame f{-0.02, 1.02, -0.02, 1.02};
    std::ostringstream o = open_svg("Pooled ROC curves, leave-one-out");
    draw_axes(o, f, "false positive rate", "true positive rate");
    guide_line(o, f.sx(0.0), f.sy(0.0), f.sx(1.0), f.sy(1.0));

    std::size_t index = 0;
    for (const auto& [name, points] : curves) {
        const char* color = kCurvePalette[index % 7];
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
        for (const RocPoint& p : points) {
            o << px(f.sx(p.fpr)) << "," << px(f.sy(p.tpr)) << " ";
        }
        o << "\"/>\n";
        const double ly = 50.0 + 16.0 * static_cast<double>(index);
        o << "<line x1=\"445\" y1=\"" << px(ly - 4) << "\" x2=\"470\" y2=\"" << px(ly - 4)
          << "\" stroke=\"" << color << "\" stroke-width=\"1.8\"/>\n";
        o << "<text x=\"476\" y=\"" << px(ly)
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_text(name)
          << "</text>\n";
        ++index;
    }
    o << "</svg>\n";
    return o.str();
}

std::string svg_shap_bar(const std::vector<ShapSummaryEntry>& entries, std::size_t top_n,
                         const std::string& title) {
    const std::size_t n = std::min(top_n, entries.size());
    if (n == 0) throw ArgumentError("bar chart needs at least one feature");
    double max_value = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_value = std::max(max_value, entries[i].mean_abs_phi);
    if (max_value <= 0.0) max_value = 1.0;

    const double left = 150.0, right = 600.0, top = 45.0;
    const double row_height = std::min(32.0, (kHeight - top - 30.0) / static_cast<double>(n));

    std::ostringstream o = open_svg(title);
    o << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double y = top + row_height * static_cast<double>(i);
        const double w = (right - left) * entries[i].mean_abs_phi / max_value;
        o << "<rect x=\"" << px(left) << "\" y=\"" << px(y) << "\" width=\"" << px(w)
          << "\" height=\"" << px(row_height * 0.7) << "\" fill=\"" << kColorDown
          << "\"/>\n";
        o << "<text x=\"" << px(left - 6) << "\" y=\"" << px(y + row_height * 0.5)
          << "\" text-anchor=\"end\">" << escape_text(entries[i].feature) << "</text>\n";
        o << "<text x=\"" << px(left + w + 5) << "\" y=\"" << px(y + row_height * 0.5)
          << "\">" << label_num(entries[i].mean_abs_phi) << "</text>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

std::string svg_network(const std::vector<std::string>& nodes,
                        const std::vector<NetworkEdge>& edges) {
    if (nodes.empty()) throw ArgumentError("network plot needs at least one node");
    const double cx = kWidth / 2.0, cy = kHeight / 2.0 + 10.0, radius = 175.0;
    std::map<std::string, std::pair<double, double>> position;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double angle =
            2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(nodes.size()) -
            std::numbers::pi / 2.0;
        position[nodes[i]] = {cx + radius * std::cos(angle), cy + radius * std::sin(angle)};
    }

    std::ostringstream o = open_svg("Correlation network");
    for (const NetworkEdge& e : edges) {
        const auto a = position.find(e.a);
        const auto b = position.find(e.b);
        if (a == position.end() || b == position.end()) {
            throw ArgumentError("edge endpoint '" + (a == position.end() ? e.a : e.b) +
                                "' is not in the node list");
        }
        const double width = 0.5 + 3.0 * std::abs(e.r);
        o << "<line x1=\"" << px(a->second.first) << "\" y1=\"" << px(a->second.second)
          << "\" x2=\"" << px(b->second.first) << "\" y2=\"" << px(b->second.second)
          << "\" stroke=\"" << (e.r >= 0.0 ? kColorDown : kColorUp) << "\" stroke-width=\""
          << px(width) << "\"" << (e.r < 0.0 ? " stroke-dasharray=\"4 3\"" : "")
          << " stroke-opacity=\"0.65\"><title>" << escape_text(e.a) << "-"
          << escape_text(e.b) << " r=" << label_num(e.r) << "</title></line>\n";
    }
    for (const std::string& name : nodes) {
        const auto& [x, y] = position.at(name);
        o << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y)
          << "\" r=\"4\" fill=\"#444\"/>\n";
        const bool left_side = x < cx;
        o << "<text x=\"" << px(x + (left_side ? -7.0 : 7.0)) << "\" y=\"" << px(y + 4)
          << "\" text-anchor=\"" << (left_side ? "end" : "start")
          << "\" font-family=\"sans-serif\" font-size=\"10\">" << escape_text(name)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace ctml
