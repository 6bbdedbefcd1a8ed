#include "inext/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "inext/errors.hpp"

namespace inext {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

const char* kPalette[] = {"#1f6fb2", "#c23b22", "#3a8f3a", "#8b5cb0", "#b8860b"};

}  // namespace

void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<PlotSeries>& series) {
    const double W = 720, H = 480;
    const double ml = 80, mr = 25, mt = 50, mb = 55;
    const double pw = W - ml - mr, ph = H - mt - mb;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw BadParameter("plot series '" + s.label + "' has mismatched sizes");
        for (size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!std::isfinite(xmin) || !std::isfinite(ymin)) {
        xmin = ymin = 0.0;
        xmax = ymax = 1.0;
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) {
        const double pad = std::max(1.0, std::abs(ymin));
        ymin -= 0.5 * pad;
        ymax = ymin + pad;
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }
    auto px = [&](double x) { return ml + pw * (x - xmin) / (xmax - xmin); };
    auto py = [&](double y) { return mt + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
        << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"22\" font-family=\"sans-serif\" "
        << "font-size=\"15\" text-anchor=\"middle\">" << xml_escape(title)
        << "</text>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
        << xml_escape(x_label) << "</text>\n";
    out << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">"
        << xml_escape(y_label) << "</text>\n";

    const int nticks = 5;
    for (int k = 0; k <= nticks; ++k) {
        const double fx = xmin + (xmax - xmin) * k / nticks;
        const double fy = ymin + (ymax - ymin) * k / nticks;
        const double gx = px(fx), gy = py(fy);
        out << "<line x1=\"" << fmt(gx) << "\" y1=\"" << mt + ph << "\" x2=\""
            << fmt(gx) << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(gx) << "\" y=\"" << mt + ph + 18
            << "\" font-family=\"sans-serif\" font-size=\"10\" "
            << "text-anchor=\"middle\">" << fmt(fx, "%.4g") << "</text>\n";
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(gy) << "\" x2=\"" << ml
            << "\" y2=\"" << fmt(gy) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(gy + 3)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
            << fmt(fy, "%.4g") << "</text>\n";
    }

    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.2\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (i) out << ' ';
            out << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i]));
        }
        out << "\"/>\n";
        const double lx = ml + 10 + 150.0 * static_cast<double>(si);
        out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << mt - 12 << "\" x2=\""
            << fmt(lx + 18) << "\" y2=\"" << mt - 12 << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << fmt(lx + 22) << "\" y=\"" << mt - 8
            << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << xml_escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace inext
