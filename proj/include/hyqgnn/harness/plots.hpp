#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "hyqgnn/harness/metrics.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::harness {

/// CSV sidecar with the raw pairs; fixed formatting keeps identical runs
/// byte-identical.
inline void write_parity_csv(const std::vector<ParityPair>& pairs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "true_ev,predicted_ev\n";
    char line[80];
    for (const auto& pr : pairs) {
        std::snprintf(line, sizeof line, "%.10e,%.10e\n", pr.truth, pr.predicted);
        out << line;
    }
}

/// Parity scatter (true on x, predicted on y) with the identity diagonal,
/// the OLS fitted line, and an R^2 annotation ("n/a" when undefined).
inline void write_parity_svg(const std::vector<ParityPair>& pairs, const std::string& path) {
    if (pairs.empty()) throw InsufficientData("parity plot needs at least one pair");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);

    double lo = pairs.front().truth, hi = pairs.front().truth;
    for (const auto& pr : pairs) {
        lo = std::min({lo, pr.truth, pr.predicted});
        hi = std::max({hi, pr.truth, pr.predicted});
    }
    if (hi - lo < 1e-9) {  // degenerate span: widen so the scatter is visible
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.06 * (hi - lo);
    lo -= pad;
    hi += pad;

    const double size = 440.0, margin = 60.0;
    const double plot = size - 2.0 * margin;
    auto x_of = [&](double v) { return margin + plot * (v - lo) / (hi - lo); };
    auto y_of = [&](double v) { return size - margin - plot * (v - lo) / (hi - lo); };

    std::string annotation = "R^2 (fit) = n/a";
    bool have_fit = false;
    double slope = 0.0, intercept = 0.0;
    try {
        const double r2 = evaluate_r2(pairs);
        const detail::PairStats s = detail::pair_stats(pairs);
        slope = s.cov / s.var_t;
        intercept = s.mean_p - slope * s.mean_t;
        have_fit = true;
        char buf[64];
        std::snprintf(buf, sizeof buf, "R^2 (fit) = %.4f", r2);
        annotation = buf;
    } catch (const Error&) {
        // fewer than 3 pairs or zero variance: annotation stays "n/a"
    }

    char buf[512];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
    out << "<style>text{font-family:sans-serif;font-size:12px;}</style>\n";
    std::snprintf(buf, sizeof buf, "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"#444\"/>\n",
                  margin, margin, plot, plot);
    out << buf;
    // identity diagonal
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#999\" stroke-dasharray=\"5,4\"/>\n",
                  x_of(lo), y_of(lo), x_of(hi), y_of(hi));
    out << buf;
    if (have_fit) {
        std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#c0392b\"/>\n",
                      x_of(lo), y_of(intercept + slope * lo), x_of(hi), y_of(intercept + slope * hi));
        out << buf;
    }
    for (const auto& pr : pairs) {
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"#2e6da4\" fill-opacity=\"0.75\"/>\n",
                      x_of(pr.truth), y_of(pr.predicted));
        out << buf;
    }
    out << "<text x=\"" << margin << "\" y=\"" << margin - 14.0 << "\" font-size=\"14\">" << annotation << "</text>\n";
    out << "<text x=\"" << size / 2.0 - 70.0 << "\" y=\"" << size - 16.0
        << "\">true formation energy (eV)</text>\n";
    out << "<text x=\"16\" y=\"" << size / 2.0 + 70.0 << "\" transform=\"rotate(-90 16 " << size / 2.0 + 70.0
        << ")\">predicted formation energy (eV)</text>\n";
    out << "</svg>\n";
}

/// SVG + CSV sidecar (same stem, .csv extension appended next to the SVG).
inline void emit_parity_plot(const std::vector<ParityPair>& pairs, const std::string& svg_path,
                             const std::string& csv_path) {
    write_parity_csv(pairs, csv_path);
    write_parity_svg(pairs, svg_path);
}

/// Reads a parity CSV (header "true_ev,predicted_ev") back into pairs.
inline std::vector<ParityPair> read_parity_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file, expected a header row");
    std::vector<ParityPair> pairs;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        double t = 0.0, p = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &t, &p) != 2) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 'true,predicted'");
        }
        pairs.push_back({t, p});
    }
    return pairs;
}

}  // namespace hyqgnn::harness
