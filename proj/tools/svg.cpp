#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace pinball::cli {

namespace {

std::string num(double v, const char* fmt = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

}  // namespace

std::string ScatterPlot::to_string() const {
    const double ml = 72, mr = 24, mt = 40, mb = 52;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
    for (const auto& s : series_)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (log_x && !(s.x[i] > 0.0)) continue;
            if (log_y && !(s.y[i] > 0.0)) continue;
            xmin = std::min(xmin, tx(s.x[i]));
            xmax = std::max(xmax, tx(s.x[i]));
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    if (!(xmin <= xmax)) { xmin = 0; xmax = 1; }
    if (!(ymin <= ymax)) { ymin = 0; ymax = 1; }
    if (xmax == xmin) { xmax += 0.5; xmin -= 0.5; }
    if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }
    const double xpad = 0.04 * (xmax - xmin), ypad = 0.04 * (ymax - ymin);
    xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

    auto px = [&](double v) { return ml + (tx(v) - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return mt + ph - (ty(v) - ymin) / (ymax - ymin) * ph; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    // ticks: 6 divisions on each axis (decade values when the axis is log)
    const int nticks = 6;
    for (int i = 0; i <= nticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / nticks;
        const double X = ml + pw * i / nticks;
        s += "<line x1=\"" + num(X) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(X) + "\" y2=\"" +
             num(mt + ph) + "\" stroke=\"#ddd\" stroke-width=\"0.6\"/>\n";
        const double label = log_x ? std::pow(10.0, fx) : fx;
        s += "<text x=\"" + num(X) + "\" y=\"" + num(mt + ph + 18) +
             "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" +
             num(label, "%.4g") + "</text>\n";

        const double fy = ymin + (ymax - ymin) * i / nticks;
        const double Y = mt + ph - ph * i / nticks;
        s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(Y) + "\" x2=\"" + num(ml + pw) +
             "\" y2=\"" + num(Y) + "\" stroke=\"#ddd\" stroke-width=\"0.6\"/>\n";
        const double ylabel_v = log_y ? std::pow(10.0, fy) : fy;
        s += "<text x=\"" + num(ml - 6) + "\" y=\"" + num(Y + 4) +
             "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">" +
             num(ylabel_v, "%.4g") + "</text>\n";
    }

    for (const auto& ser : series_) {
        for (size_t i = 0; i < ser.x.size(); ++i) {
            if (log_x && !(ser.x[i] > 0.0)) continue;
            if (log_y && !(ser.y[i] > 0.0)) continue;
            s += "<circle cx=\"" + num(px(ser.x[i])) + "\" cy=\"" + num(py(ser.y[i])) +
                 "\" r=\"" + num(ser.radius, "%.2f") + "\" fill=\"" + ser.color +
                 "\" fill-opacity=\"0.75\"/>\n";
        }
    }

    // legend
    double ly = mt + 14;
    for (const auto& ser : series_) {
        if (ser.label.empty()) continue;
        s += "<circle cx=\"" + num(ml + pw - 130) + "\" cy=\"" + num(ly - 4) +
             "\" r=\"3\" fill=\"" + ser.color + "\"/>\n";
        s += "<text x=\"" + num(ml + pw - 122) + "\" y=\"" + num(ly) +
             "\" font-family=\"monospace\" font-size=\"11\">" + esc(ser.label) + "</text>\n";
        ly += 15;
    }

    s += "<text x=\"" + num(width / 2.0) + "\" y=\"22\" font-family=\"monospace\" font-size=\"14\""
         " text-anchor=\"middle\">" + esc(title) + "</text>\n";
    s += "<text x=\"" + num(ml + pw / 2.0) + "\" y=\"" + num(height - 10.0) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" + esc(xlabel) +
         "</text>\n";
    s += "<text x=\"16\" y=\"" + num(mt + ph / 2.0) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(mt + ph / 2.0) + ")\">" + esc(ylabel) + "</text>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace pinball::cli
