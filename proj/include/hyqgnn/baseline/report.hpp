#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "hyqgnn/baseline/gbdt.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::baseline {

/// CSV report: rank, column index, name, normalized gain share.
inline void write_importance_csv(const std::vector<ImportanceEntry>& entries, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "rank,column,feature,share\n";
    char line[160];
    for (std::size_t rank = 0; rank < entries.size(); ++rank) {
        const auto& e = entries[rank];
        std::snprintf(line, sizeof line, "%zu,%zu,%s,%.10e\n", rank + 1, e.column, e.name.c_str(), e.share);
        out << line;
    }
}

/// Horizontal bar chart of the top feature importances (largest on top).
inline void write_importance_svg(const std::vector<ImportanceEntry>& entries, const std::string& path,
                                 std::size_t top_k = 15) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);

    const std::size_t count = std::min(top_k, entries.size());
    const double bar_height = 18.0, bar_gap = 6.0, left = 230.0, top = 50.0;
    const double plot_width = 420.0;
    const double height = top + count * (bar_height + bar_gap) + 40.0;
    const double width = left + plot_width + 80.0;
    double max_share = 0.0;
    for (std::size_t i = 0; i < count; ++i) max_share = std::max(max_share, entries[i].share);
    if (max_share <= 0.0) max_share = 1.0;

    char buf[512];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<style>text{font-family:sans-serif;font-size:12px;}</style>\n";
    out << "<text x=\"" << left << "\" y=\"24\" font-size=\"15\">Feature importances (normalized gain)</text>\n";
    for (std::size_t i = 0; i < count; ++i) {
        const auto& e = entries[i];
        const double y = top + i * (bar_height + bar_gap);
        const double w = plot_width * e.share / max_share;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%s</text>\n"
                      "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.2f\" height=\"%.1f\" fill=\"#4878b0\"/>\n"
                      "<text x=\"%.1f\" y=\"%.1f\">%.4f</text>\n",
                      left - 8.0, y + bar_height - 5.0, e.name.c_str(), left, y, w, bar_height, left + w + 6.0,
                      y + bar_height - 5.0, e.share);
        out << buf;
    }
    out << "</svg>\n";
}

}  // namespace hyqgnn::baseline
