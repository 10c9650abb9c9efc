#include "pht/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace pht {

namespace {

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Roughly five "nice" tick positions covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (f * mag >= raw) {
            step = f * mag;
            break;
        }
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return out;
}

struct Bounds {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-300) {
            const double pad = std::max(1.0, std::abs(lo)) * 0.5;
            lo -= pad;
            hi += pad;
        }
    }
};

}  // namespace

std::string Plot::to_svg() const {
    const double left = 72, right = 20, top = 36, bottom = 52;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    Bounds bx, by;
    for (const auto& s : series) {
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
            if (std::isfinite(s.x[k]) && std::isfinite(s.y[k])) {
                bx.add(s.x[k]);
                by.add(s.y[k]);
            }
        }
    }
    bx.finish();
    by.finish();
    const double ypad = 0.05 * (by.hi - by.lo);
    by.lo -= ypad;
    by.hi += ypad;

    auto sx = [&](double x) { return left + (x - bx.lo) / (bx.hi - bx.lo) * pw; };
    auto sy = [&](double y) { return top + (by.hi - y) / (by.hi - by.lo) * ph; };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        width, height, width, height);
    svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n", left + pw / 2,
                       escape(title));
    svg += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"black\"/>\n",
                       left, top, pw, ph);
    for (double t : ticks(bx.lo, bx.hi)) {
        const double x = sx(t);
        svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"#ddd\"/>\n", x, top, top + ph);
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:g}</text>\n", x, top + ph + 16, t);
    }
    for (double t : ticks(by.lo, by.hi)) {
        const double y = sy(t);
        svg += fmt::format("<line x1=\"{1:.1f}\" y1=\"{0:.1f}\" x2=\"{2:.1f}\" y2=\"{0:.1f}\" stroke=\"#ddd\"/>\n", y, left, left + pw);
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:g}</text>\n", left - 6, y + 4, t);
    }
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", left + pw / 2, height - 12, escape(x_label));
    svg += fmt::format("<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
                       top + ph / 2, top + ph / 2, escape(y_label));

    for (const auto& s : series) {
        const std::size_t n = std::min(s.x.size(), s.y.size());
        if (s.points) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
                svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"{}\"/>\n", sx(s.x[k]), sy(s.y[k]), s.color);
            }
            continue;
        }
        std::string path;
        for (std::size_t k = 0; k < n; ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) {
                if (s.split_on_nan && !path.empty()) {
                    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", s.color, path);
                    path.clear();
                }
                continue;
            }
            if (!path.empty()) path += ' ';
            path += fmt::format("{:.2f},{:.2f}", sx(s.x[k]), sy(s.y[k]));
        }
        if (!path.empty()) {
            svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", s.color, path);
        }
    }

    double ly = top + 14;
    for (const auto& s : series) {
        if (s.label.empty()) continue;
        svg += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"10\" height=\"10\" fill=\"{}\"/>\n", left + pw - 150, ly - 9, s.color);
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", left + pw - 135, ly, escape(s.label));
        ly += 16;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace pht
