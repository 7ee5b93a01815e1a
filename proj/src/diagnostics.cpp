#include "gcf/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gcf/common.hpp"
#include "gcf/decimal.hpp"

namespace gcf::diag {

static const char* const kColumns[] = {"t",           "N",           "J",
                                       "D2",          "harnack_slack", "mono_slack1",
                                       "mono_slack2", "concavity_dd",  "min_ut",
                                       "max_ut",      "inv_lambda_min", "osc"};

static std::optional<double> cell(const SeriesRow& r, int c) {
    switch (c) {
        case 0: return r.t;
        case 1: return r.N;
        case 2: return r.J;
        case 3: return r.D2;
        case 4: return r.harnack_slack;
        case 5: return r.mono_slack1;
        case 6: return r.mono_slack2;
        case 7: return r.concavity_dd;
        case 8: return r.min_ut;
        case 9: return r.max_ut;
        case 10: return r.inv_lambda_min;
        case 11: return r.osc;
    }
    return std::nullopt;
}

void write_series(const RunReport& report, const std::string& path) {
    if (report.rows.empty()) fail("SinkUnavailable", "empty series for " + path);
    std::ofstream os(path, std::ios::binary);
    if (!os) fail("SinkUnavailable", "cannot open " + path);
    for (int c = 0; c < 12; ++c) os << (c ? "," : "") << kColumns[c];
    os << "\n";
    for (const auto& r : report.rows) {
        for (int c = 0; c < 12; ++c) {
            if (c) os << ",";
            auto v = cell(r, c);
            if (v && std::isfinite(*v)) os << format_g17(*v);
        }
        os << "\n";
    }
    if (!os) fail("SinkUnavailable", "write failed for " + path);
}

static std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}

void write_summary(const RunReport& report, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail("SinkUnavailable", "cannot open " + path);
    os << "{\n";
    os << "  \"run_id\": \"" << json_escape(report.run_id) << "\",\n";
    os << "  \"config\": {";
    for (std::size_t i = 0; i < report.config_echo.size(); ++i) {
        if (i) os << ", ";
        os << "\"" << json_escape(report.config_echo[i].first) << "\": \""
           << json_escape(report.config_echo[i].second) << "\"";
    }
    os << "},\n";
    os << "  \"checks\": {\n";
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& c = report.checks[i];
        os << "    \"" << json_escape(c.name) << "\": {\"min_slack\": \""
           << format_shortest(c.min_slack) << "\", \"max_slack\": \""
           << format_shortest(c.max_slack) << "\", \"tolerance\": \""
           << format_shortest(c.tolerance) << "\", \"pass\": " << (c.pass ? "true" : "false")
           << "}" << (i + 1 < report.checks.size() ? "," : "") << "\n";
    }
    os << "  },\n";
    os << "  \"terminal_status\": \"" << json_escape(report.terminal_status) << "\"";
    if (report.lambda_measured)
        os << ",\n  \"lambda_measured\": \"" << format_shortest(*report.lambda_measured) << "\"";
    if (report.lambda_target)
        os << ",\n  \"lambda_target\": \"" << format_shortest(*report.lambda_target) << "\"";
    os << "\n}\n";
    if (!os) fail("SinkUnavailable", "write failed for " + path);
}

static std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

static std::string fmt3g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

void emit_plot(const RunReport& report, const std::string& series, const std::string& path) {
    int col = -1;
    for (int c = 1; c < 12; ++c)
        if (series == kColumns[c]) col = c;
    if (col < 0) fail("UnknownSeries", series);

    std::vector<std::pair<double, double>> pts;
    for (const auto& r : report.rows) {
        auto v = cell(r, col);
        if (v && std::isfinite(*v)) pts.emplace_back(r.t, *v);
    }
    if (pts.empty()) fail("UnknownSeries", series + " has no samples");

    double x0 = pts.front().first, x1 = pts.back().first;
    double y0 = pts[0].second, y1 = y0;
    for (auto& p : pts) {
        y0 = std::min(y0, p.second);
        y1 = std::max(y1, p.second);
    }
    double tol = 0.0;
    bool slack_series = series.find("slack") != std::string::npos || series == "concavity_dd";
    if (slack_series) {
        // find the check this series belongs to by its leading token
        std::string key = series.substr(0, series.find('_'));
        for (const auto& c : report.checks)
            if (c.name.find(key) != std::string::npos) tol = std::max(tol, c.tolerance);
        y0 = std::min(y0, -1.5 * tol);
        y1 = std::max(y1, 1.5 * tol);
    }
    if (x1 <= x0) x1 = x0 + 1.0;
    if (y1 <= y0) y1 = y0 + 1.0;
    double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    const double W = 640, H = 400, ml = 70, mr = 15, mt = 20, mb = 45;
    auto X = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto Y = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

    std::ofstream os(path, std::ios::binary);
    if (!os) fail("SinkUnavailable", "cannot open " + path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (slack_series && tol > 0.0) {
        double ytop = Y(tol), ybot = Y(-tol);
        os << "<rect x=\"" << fmt2(ml) << "\" y=\"" << fmt2(ytop) << "\" width=\""
           << fmt2(W - ml - mr) << "\" height=\"" << fmt2(ybot - ytop)
           << "\" fill=\"#e8f0e8\"/>\n";
    }
    // axes
    os << "<line x1=\"" << fmt2(ml) << "\" y1=\"" << fmt2(H - mb) << "\" x2=\"" << fmt2(W - mr)
       << "\" y2=\"" << fmt2(H - mb) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << fmt2(ml) << "\" y1=\"" << fmt2(mt) << "\" x2=\"" << fmt2(ml)
       << "\" y2=\"" << fmt2(H - mb) << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        double xv = x0 + (x1 - x0) * k / 4.0;
        double yv = y0 + (y1 - y0) * k / 4.0;
        os << "<text x=\"" << fmt2(X(xv)) << "\" y=\"" << fmt2(H - mb + 16)
           << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt3g(xv) << "</text>\n";
        os << "<text x=\"" << fmt2(ml - 6) << "\" y=\"" << fmt2(Y(yv) + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">" << fmt3g(yv) << "</text>\n";
    }
    os << "<text x=\"" << fmt2(0.5 * (ml + W - mr)) << "\" y=\"" << fmt2(H - 8)
       << "\" font-size=\"13\" text-anchor=\"middle\">t</text>\n";
    os << "<text x=\"14\" y=\"" << fmt2(0.5 * (mt + H - mb))
       << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
       << fmt2(0.5 * (mt + H - mb)) << ")\">" << json_escape(series) << "</text>\n";
    os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << " ";
        os << fmt2(X(pts[i].first)) << "," << fmt2(Y(pts[i].second));
    }
    os << "\"/>\n</svg>\n";
    if (!os) fail("SinkUnavailable", "write failed for " + path);
}

std::vector<SeriesRow> read_series_csv(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail("SinkUnavailable", "cannot open " + path);
    std::string line;
    if (!std::getline(is, line)) fail("SinkUnavailable", "empty csv " + path);
    std::vector<SeriesRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        SeriesRow r;
        std::stringstream ss(line);
        std::string tok;
        for (int c = 0; c < 12 && std::getline(ss, tok, ','); ++c) {
            if (tok.empty()) continue;
            double v = std::stod(tok);
            switch (c) {
                case 0: r.t = v; break;
                case 1: r.N = v; break;
                case 2: r.J = v; break;
                case 3: r.D2 = v; break;
                case 4: r.harnack_slack = v; break;
                case 5: r.mono_slack1 = v; break;
                case 6: r.mono_slack2 = v; break;
                case 7: r.concavity_dd = v; break;
                case 8: r.min_ut = v; break;
                case 9: r.max_ut = v; break;
                case 10: r.inv_lambda_min = v; break;
                case 11: r.osc = v; break;
            }
        }
        rows.push_back(r);
    }
    return rows;
}

}  // namespace gcf::diag
