#include "symclust/svg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace symclust::svg {

namespace {

// Fixed palette; cycled when a dataset has more variables than entries.
const char* kPalette[] = {"#1b6ca8", "#c23b22", "#2e8540", "#7d3c98",
                         "#b7950b", "#148f77", "#884ea0", "#5d6d7e"};

std::string num(double v) { return fmt::format("{:.2f}", v); }

std::string esc(const std::string& s) {
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

}  // namespace

std::string render_dendrogram(
    const Dendrogram& d,
    const std::map<std::string, std::map<std::string, int>>& deciles,
    const std::vector<std::string>& indicator_names) {
    const std::size_t n = d.n();
    const double leaf_step = 28.0;
    const double margin = 50.0;
    const double tree_h = 320.0;
    const double label_h = 70.0;
    const double strip_row = 16.0;
    const double strip_h =
        indicator_names.empty()
            ? 0.0
            : strip_row * static_cast<double>(indicator_names.size()) + 10.0;
    const double width = margin * 2 + leaf_step * static_cast<double>(n - 1) + 40.0;
    const double height = margin + tree_h + label_h + strip_h + 20.0;
    const double baseline = margin + tree_h;  // y of height 0

    double max_h = 0.0;
    for (const auto& mg : d.merges) max_h = std::max(max_h, mg.height);
    if (max_h <= 0.0) max_h = 1.0;
    auto y_of = [&](double h) { return baseline - h / max_h * tree_h; };

    std::vector<std::size_t> order = d.leaf_order();
    std::vector<double> leaf_x(n);
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        leaf_x[order[pos]] = margin + leaf_step * static_cast<double>(pos) + 20.0;

    std::string body;
    // node positions: leaves at baseline, merges at their height
    std::vector<double> node_x(n + d.merges.size());
    std::vector<double> node_y(n + d.merges.size());
    for (std::size_t i = 0; i < n; ++i) {
        node_x[i] = leaf_x[i];
        node_y[i] = baseline;
    }
    for (std::size_t i = 0; i < d.merges.size(); ++i) {
        const Merge& mg = d.merges[i];
        double xl = node_x[mg.left_node], xr = node_x[mg.right_node];
        double y = y_of(mg.height);
        node_x[n + i] = (xl + xr) / 2.0;
        node_y[n + i] = y;
        body += fmt::format(
            "<path d=\"M {} {} V {} H {} V {}\" fill=\"none\" "
            "stroke=\"#333\" stroke-width=\"1.2\"/>\n",
            num(xl), num(node_y[mg.left_node]), num(y), num(xr),
            num(node_y[mg.right_node]));
    }

    // leaf labels, rotated
    for (std::size_t i = 0; i < n; ++i)
        body += fmt::format(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" font-family=\"sans-serif\" "
            "text-anchor=\"end\" transform=\"rotate(-60 {} {})\">{}</text>\n",
            num(leaf_x[i]), num(baseline + 14.0), num(leaf_x[i]),
            num(baseline + 14.0), esc(d.leaves[i]));

    // height axis
    body += fmt::format(
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#999\"/>\n"
        "<text x=\"{3}\" y=\"{4}\" font-size=\"10\" font-family=\"sans-serif\" "
        "text-anchor=\"end\">{5}</text>\n"
        "<text x=\"{3}\" y=\"{6}\" font-size=\"10\" font-family=\"sans-serif\" "
        "text-anchor=\"end\">0</text>\n",
        num(margin - 10.0), num(margin), num(baseline), num(margin - 14.0),
        num(margin + 4.0), fmt::format("{:.4g}", max_h), num(baseline));

    // indicator strip
    if (!indicator_names.empty()) {
        double y0 = baseline + label_h;
        for (std::size_t r = 0; r < indicator_names.size(); ++r) {
            const std::string& ind = indicator_names[r];
            double y = y0 + strip_row * static_cast<double>(r);
            body += fmt::format(
                "<text x=\"{}\" y=\"{}\" font-size=\"10\" "
                "font-family=\"sans-serif\" text-anchor=\"end\">{}</text>\n",
                num(margin - 4.0), num(y + strip_row - 5.0), esc(ind));
            for (std::size_t i = 0; i < n; ++i) {
                const std::string& unit = d.leaves[i];
                std::string fill = "#ffffff";
                auto uit = deciles.find(unit);
                if (uit != deciles.end()) {
                    auto dit = uit->second.find(ind);
                    if (dit != uit->second.end()) {
                        int shade = 235 - dit->second * 22;  // darker = higher
                        fill = fmt::format("rgb({0},{0},{0})", shade);
                    }
                }
                body += fmt::format(
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" "
                    "fill=\"{}\" stroke=\"#ccc\" stroke-width=\"0.5\"/>\n",
                    num(leaf_x[i] - leaf_step / 2.0), num(y), num(leaf_step),
                    num(strip_row - 2.0), fill);
            }
        }
    }

    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
        "viewBox=\"0 0 {} {}\">\n<rect width=\"100%\" height=\"100%\" "
        "fill=\"white\"/>\n{}</svg>\n",
        num(width), num(height), num(width), num(height), body);
}

std::string render_patterns(const Partition& pt, const Dataset& ds) {
    const std::size_t m = ds.m();
    const double panel_w = 360.0, panel_h = 220.0;
    const double margin = 55.0, gap = 40.0;
    const double legend_w = 130.0;
    const std::size_t k = pt.k();
    const double width = margin * 2 + panel_w + legend_w;
    const double height =
        margin + static_cast<double>(k) * (panel_h + gap) + 10.0;

    double y_max = 0.0;
    for (const auto& c : pt.clusters)
        for (const auto& comp : c.leader.components)
            for (double v : comp.values) y_max = std::max(y_max, v);
    if (y_max <= 0.0) y_max = 1.0;
    y_max *= 1.05;

    std::string body;
    for (std::size_t ci = 0; ci < k; ++ci) {
        const Cluster& c = pt.clusters[ci];
        double top = margin + static_cast<double>(ci) * (panel_h + gap);
        double bottom = top + panel_h;
        auto x_of = [&](std::size_t l) {
            return margin + panel_w * static_cast<double>(l) /
                                static_cast<double>(m - 1);
        };
        auto y_of = [&](double v) { return bottom - v / y_max * panel_h; };

        body += fmt::format(
            "<text x=\"{}\" y=\"{}\" font-size=\"13\" "
            "font-family=\"sans-serif\">Cluster {} ({} units)</text>\n",
            num(margin), num(top - 8.0), esc(c.id(ds)), c.members.size());
        body += fmt::format(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
            "stroke=\"#aaa\"/>\n",
            num(margin), num(top), num(panel_w), num(panel_h));
        for (std::size_t l = 0; l < m; ++l)
            body += fmt::format(
                "<text x=\"{}\" y=\"{}\" font-size=\"10\" "
                "font-family=\"sans-serif\" text-anchor=\"middle\">{}</text>\n",
                num(x_of(l)), num(bottom + 14.0),
                esc(ds.category_schema.labels[l]));

        for (std::size_t j = 0; j < ds.p(); ++j) {
            std::string points;
            for (std::size_t l = 0; l < m; ++l)
                points += fmt::format("{},{} ", num(x_of(l)),
                                      num(y_of(c.leader.components[j][l])));
            const char* color = kPalette[j % (sizeof(kPalette) / sizeof(*kPalette))];
            // broken lines: visual guides, not trends
            body += fmt::format(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" "
                "stroke-width=\"1.4\" stroke-dasharray=\"5 3\"/>\n",
                points, color);
            if (ci == 0) {
                double ly = margin + 16.0 * static_cast<double>(j);
                body += fmt::format(
                    "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" "
                    "stroke=\"{3}\" stroke-width=\"1.4\" "
                    "stroke-dasharray=\"5 3\"/>\n"
                    "<text x=\"{4}\" y=\"{5}\" font-size=\"10\" "
                    "font-family=\"sans-serif\">{6}</text>\n",
                    num(margin + panel_w + 14.0), num(ly),
                    num(margin + panel_w + 38.0), color,
                    num(margin + panel_w + 44.0), num(ly + 3.0),
                    esc(ds.variable_schema.names[j]));
            }
        }
    }

    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
        "viewBox=\"0 0 {} {}\">\n<rect width=\"100%\" height=\"100%\" "
        "fill=\"white\"/>\n{}</svg>\n",
        num(width), num(height), num(width), num(height), body);
}

}  // namespace symclust::svg
