#include "svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "segproc/format.hpp"

namespace segproc::cli {

namespace {

// fixed two-decimal pixel coordinates keep the output bytes stable
std::string px(double v) {
    char buf[32];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    if (res.ec != std::errc{}) throw std::runtime_error("px: to_chars failed");
    return std::string(buf, res.ptr);
}

// Heckbert-style nice numbers for tick spacing.
double nice_number(double x, bool round_to) {
    const double expv = std::floor(std::log10(x));
    const double f = x / std::pow(10.0, expv);
    double nf;
    if (round_to) {
        if (f < 1.5)
            nf = 1;
        else if (f < 3)
            nf = 2;
        else if (f < 7)
            nf = 5;
        else
            nf = 10;
    } else {
        if (f <= 1)
            nf = 1;
        else if (f <= 2)
            nf = 2;
        else if (f <= 5)
            nf = 5;
        else
            nf = 10;
    }
    return nf * std::pow(10.0, expv);
}

struct Ticks {
    double lo, hi, step;
};

Ticks make_ticks(double lo, double hi, int target = 6) {
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double range = nice_number(hi - lo, false);
    const double step = nice_number(range / (target - 1), true);
    return Ticks{std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

std::string tick_label(double v, double step) {
    // snap to the tick grid so labels like 0.30000000000000004 cannot appear
    const double snapped = std::round(v / step) * step;
    return format_double(snapped == 0.0 ? 0.0 : snapped);
}

}  // namespace

std::string render_scatter_svg(const ScatterPlot& plot) {
    if (plot.points.empty())
        throw std::invalid_argument("render_scatter_svg: no points");

    const double width = 720, height = 480;
    const double ml = 80, mr = 30, mt = 50, mb = 60;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double x0 = plot.points.front().first, x1 = x0;
    double y0 = plot.points.front().second, y1 = y0;
    for (const auto& [x, y] : plot.points) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    if (plot.draw_reference) {
        y0 = std::min(y0, plot.reference_y);
        y1 = std::max(y1, plot.reference_y);
    }
    const Ticks tx = make_ticks(x0, x1);
    const Ticks ty = make_ticks(y0, y1);

    const auto sx = [&](double x) {
        return ml + (x - tx.lo) / (tx.hi - tx.lo) * pw;
    };
    const auto sy = [&](double y) {
        return mt + (1.0 - (y - ty.lo) / (ty.hi - ty.lo)) * ph;
    };

    std::ostringstream os;
    for (const auto& c : plot.header_comments) os << "<!-- " << c << " -->\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
       << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height
       << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << px(width / 2) << "\" y=\"28\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">"
       << plot.title << "</text>\n";

    // axes
    os << "<line x1=\"" << px(ml) << "\" y1=\"" << px(mt + ph) << "\" x2=\""
       << px(ml + pw) << "\" y2=\"" << px(mt + ph)
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << px(ml) << "\" y1=\"" << px(mt) << "\" x2=\"" << px(ml)
       << "\" y2=\"" << px(mt + ph)
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // ticks
    for (double v = tx.lo; v <= tx.hi + 1e-9 * tx.step; v += tx.step) {
        const double X = sx(v);
        os << "<line x1=\"" << px(X) << "\" y1=\"" << px(mt + ph) << "\" x2=\""
           << px(X) << "\" y2=\"" << px(mt + ph + 5)
           << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << px(X) << "\" y=\"" << px(mt + ph + 20)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
              "font-size=\"11\">"
           << tick_label(v, tx.step) << "</text>\n";
    }
    for (double v = ty.lo; v <= ty.hi + 1e-9 * ty.step; v += ty.step) {
        const double Y = sy(v);
        os << "<line x1=\"" << px(ml - 5) << "\" y1=\"" << px(Y) << "\" x2=\""
           << px(ml) << "\" y2=\"" << px(Y)
           << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << px(ml - 9) << "\" y=\"" << px(Y + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
              "font-size=\"11\">"
           << tick_label(v, ty.step) << "</text>\n";
    }

    // axis labels
    os << "<text x=\"" << px(ml + pw / 2) << "\" y=\"" << px(height - 14)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"13\">"
       << plot.x_label << "</text>\n";
    os << "<text x=\"20\" y=\"" << px(mt + ph / 2)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"13\" transform=\"rotate(-90 20 "
       << px(mt + ph / 2) << ")\">" << plot.y_label << "</text>\n";

    if (plot.draw_reference) {
        const double Y = sy(plot.reference_y);
        os << "<line x1=\"" << px(ml) << "\" y1=\"" << px(Y) << "\" x2=\""
           << px(ml + pw) << "\" y2=\"" << px(Y)
           << "\" stroke=\"gray\" stroke-width=\"1\" "
              "stroke-dasharray=\"6 4\"/>\n";
        os << "<text x=\"" << px(ml + pw - 4) << "\" y=\"" << px(Y - 5)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
              "font-size=\"11\" fill=\"gray\">"
           << format_double(plot.reference_y) << "</text>\n";
    }

    for (const auto& [x, y] : plot.points) {
        os << "<circle cx=\"" << px(sx(x)) << "\" cy=\"" << px(sy(y))
           << "\" r=\"3\" fill=\"SteelBlue\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace segproc::cli
