#include "vfstab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vfstab::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 50.0;

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
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

std::string num(double x) {
    std::ostringstream ss;
    ss.precision(6);
    ss << x;
    return ss.str();
}

std::string px(double x) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(2);
    ss << x;
    return ss.str();
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void finish() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-300 + 1e-12 * std::abs(hi)) {
            const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
            lo -= pad;
            hi += pad;
        }
    }
};

// Roughly five round tick values covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
        out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
    return out;
}

class Frame {
public:
    Frame(const Axes& axes, Range xr, Range yr, double y0, double height)
        : axes_(axes), xr_(xr), yr_(yr), y0_(y0), height_(height) {}

    double sx(double x) const {
        const double u = axes_.log_x ? (std::log10(x) - std::log10(xr_.lo)) / (std::log10(xr_.hi) - std::log10(xr_.lo))
                                     : (x - xr_.lo) / (xr_.hi - xr_.lo);
        return kLeft + u * (kWidth - kLeft - kRight);
    }
    double sy(double y) const { return y0_ + kTop + (1.0 - (y - yr_.lo) / (yr_.hi - yr_.lo)) * plot_h(); }
    double plot_h() const { return height_ - kTop - kBottom; }

    void draw_axes(std::ostringstream& os, const std::string& clip_id) const {
        const double x0 = kLeft;
        const double x1 = kWidth - kRight;
        const double ytop = y0_ + kTop;
        const double ybot = ytop + plot_h();
        os << "<defs><clipPath id=\"" << clip_id << "\"><rect x=\"" << px(x0) << "\" y=\"" << px(ytop)
           << "\" width=\"" << px(x1 - x0) << "\" height=\"" << px(plot_h()) << "\"/></clipPath></defs>\n";
        os << "<rect x=\"" << px(x0) << "\" y=\"" << px(ytop) << "\" width=\"" << px(x1 - x0) << "\" height=\""
           << px(plot_h()) << "\" fill=\"none\" stroke=\"#333\"/>\n";

        std::vector<double> xt;
        if (axes_.log_x) {
            for (double e = std::ceil(std::log10(xr_.lo)); e <= std::floor(std::log10(xr_.hi)); e += 1.0) {
                xt.push_back(std::pow(10.0, e));
            }
        } else {
            xt = ticks(xr_.lo, xr_.hi);
        }
        for (double t : xt) {
            os << "<line x1=\"" << px(sx(t)) << "\" y1=\"" << px(ybot) << "\" x2=\"" << px(sx(t)) << "\" y2=\""
               << px(ybot + 5) << "\" stroke=\"#333\"/>"
               << "<text x=\"" << px(sx(t)) << "\" y=\"" << px(ybot + 18)
               << "\" font-size=\"11\" text-anchor=\"middle\">" << num(t) << "</text>\n";
        }
        for (double t : ticks(yr_.lo, yr_.hi)) {
            os << "<line x1=\"" << px(x0 - 5) << "\" y1=\"" << px(sy(t)) << "\" x2=\"" << px(x0) << "\" y2=\""
               << px(sy(t)) << "\" stroke=\"#333\"/>"
               << "<text x=\"" << px(x0 - 8) << "\" y=\"" << px(sy(t) + 4)
               << "\" font-size=\"11\" text-anchor=\"end\">" << num(t) << "</text>\n";
        }
        os << "<text x=\"" << px(kWidth / 2) << "\" y=\"" << px(y0_ + 22)
           << "\" font-size=\"14\" text-anchor=\"middle\">" << esc(axes_.title) << "</text>\n";
        os << "<text x=\"" << px((x0 + x1) / 2) << "\" y=\"" << px(ybot + 38)
           << "\" font-size=\"12\" text-anchor=\"middle\">" << esc(axes_.xlabel) << "</text>\n";
        os << "<text x=\"16\" y=\"" << px(ytop + plot_h() / 2) << "\" font-size=\"12\" text-anchor=\"middle\" "
           << "transform=\"rotate(-90 16 " << px(ytop + plot_h() / 2) << ")\">" << esc(axes_.ylabel) << "</text>\n";
    }

    void draw_series(std::ostringstream& os, const std::vector<Series>& series, const std::string& clip_id) const {
        os << "<g clip-path=\"url(#" << clip_id << ")\">\n";
        for (const Series& s : series) {
            const std::size_t n = std::min(s.x.size(), s.y.size());
            if (s.markers) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (!usable(s.x[i], s.y[i])) continue;
                    os << "<circle cx=\"" << px(sx(s.x[i])) << "\" cy=\"" << px(sy(s.y[i])) << "\" r=\"3\" fill=\""
                       << s.color << "\"/>\n";
                }
                continue;
            }
            bool open = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (!usable(s.x[i], s.y[i])) {
                    if (open) os << "\"/>\n";
                    open = false;
                    continue;
                }
                if (!open) {
                    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.3\""
                       << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"";
                    open = true;
                }
                os << px(sx(s.x[i])) << ',' << px(sy(s.y[i])) << ' ';
            }
            if (open) os << "\"/>\n";
        }
        os << "</g>\n";

        double ly = y0_ + kTop + 14;
        for (const Series& s : series) {
            if (s.label.empty()) continue;
            os << "<rect x=\"" << px(kWidth - kRight - 150) << "\" y=\"" << px(ly - 8) << "\" width=\"10\" height=\"10\" "
               << "fill=\"" << s.color << "\"/><text x=\"" << px(kWidth - kRight - 135) << "\" y=\"" << px(ly)
               << "\" font-size=\"11\">" << esc(s.label) << "</text>\n";
            ly += 15;
        }
    }

private:
    bool usable(double x, double y) const {
        // Keep far-out points bounded so clipped polylines still render.
        return std::isfinite(x) && std::isfinite(y) && (!axes_.log_x || x > 0.0) &&
               std::abs(sy(y)) < 1e6 && std::abs(sx(x)) < 1e6;
    }

    const Axes& axes_;
    Range xr_;
    Range yr_;
    double y0_;
    double height_;
};

std::pair<Range, Range> data_ranges(const Axes& axes, const std::vector<Series>& series) {
    Range xr;
    Range yr;
    for (const Series& s : series) {
        for (double x : s.x) {
            if (!axes.log_x || x > 0.0) xr.add(x);
        }
        for (double y : s.y) yr.add(y);
    }
    if (axes.xlim) xr = {axes.xlim->first, axes.xlim->second};
    if (axes.ylim) yr = {axes.ylim->first, axes.ylim->second};
    xr.finish();
    yr.finish();
    if (!axes.ylim) {
        const double pad = 0.05 * (yr.hi - yr.lo);
        yr.lo -= pad;
        yr.hi += pad;
    }
    return {xr, yr};
}

std::string header(double height) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) + "\" height=\"" + px(height) +
           "\" viewBox=\"0 0 " + px(kWidth) + ' ' + px(height) + "\" font-family=\"sans-serif\">\n" +
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

// Blue (low) to red (high).
std::string color_ramp(double u) {
    u = std::clamp(u, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(255 * u));
    const int g = static_cast<int>(std::lround(255 * (1.0 - std::abs(2.0 * u - 1.0)) * 0.8));
    const int b = static_cast<int>(std::lround(255 * (1.0 - u)));
    std::ostringstream ss;
    ss << "rgb(" << r << ',' << g << ',' << b << ')';
    return ss.str();
}

}  // namespace

std::string line_plot(const Axes& axes, const std::vector<Series>& series) { return panels({{axes, series}}); }

std::string panels(const std::vector<std::pair<Axes, std::vector<Series>>>& rows) {
    std::ostringstream os;
    os << header(kHeight * static_cast<double>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& [axes, series] = rows[i];
        const auto [xr, yr] = data_ranges(axes, series);
        const Frame frame(axes, xr, yr, kHeight * static_cast<double>(i), kHeight);
        const std::string clip = "clip" + std::to_string(i);
        frame.draw_axes(os, clip);
        frame.draw_series(os, series, clip);
    }
    os << "</svg>\n";
    return os.str();
}

std::string heatmap(const Axes& axes, const Heatmap& map, const std::vector<Series>& overlays) {
    const std::size_t nx = map.x.size();
    const std::size_t ny = map.y.size();
    if (nx == 0 || ny == 0 || map.values.size() != nx * ny) {
        throw std::invalid_argument("heatmap values do not match the grid");
    }
    const auto half_step = [](const std::vector<double>& v, std::size_t i) {
        if (v.size() == 1) return 0.5 * std::max(std::abs(v[0]) * 0.1, 1e-3);
        return 0.5 * (i + 1 < v.size() ? v[i + 1] - v[i] : v[i] - v[i - 1]);
    };
    Range xr{map.x.front() - half_step(map.x, 0), map.x.back() + half_step(map.x, nx - 1)};
    Range yr{map.y.front() - half_step(map.y, 0), map.y.back() + half_step(map.y, ny - 1)};
    if (axes.xlim) xr = {axes.xlim->first, axes.xlim->second};
    if (axes.ylim) yr = {axes.ylim->first, axes.ylim->second};
    Range vr;
    for (double v : map.values) vr.add(v);
    vr.finish();

    Axes a = axes;
    a.log_x = false;
    const Frame frame(a, xr, yr, 0.0, kHeight);
    std::ostringstream os;
    os << header(kHeight);
    frame.draw_axes(os, "clipmap");
    os << "<g clip-path=\"url(#clipmap)\">\n";
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = map.values[iy * nx + ix];
            const double hx = half_step(map.x, ix);
            const double hy = half_step(map.y, iy);
            const double x0 = frame.sx(map.x[ix] - hx);
            const double x1 = frame.sx(map.x[ix] + hx);
            const double y0 = frame.sy(map.y[iy] + hy);
            const double y1 = frame.sy(map.y[iy] - hy);
            const bool flag = !map.flagged.empty() && map.flagged[iy * nx + ix];
            os << "<rect x=\"" << px(x0) << "\" y=\"" << px(y0) << "\" width=\"" << px(x1 - x0) << "\" height=\""
               << px(y1 - y0) << "\" fill=\""
               << (std::isfinite(v) ? color_ramp((v - vr.lo) / (vr.hi - vr.lo)) : std::string("#ccc")) << '"'
               << (flag ? " stroke=\"black\" stroke-width=\"2\"" : "") << "><title>" << num(map.x[ix]) << ", "
               << num(map.y[iy]) << ": " << num(v) << "</title></rect>\n";
        }
    }
    os << "</g>\n";
    frame.draw_series(os, overlays, "clipmap");
    os << "<text x=\"" << px(kLeft) << "\" y=\"" << px(kHeight - 6) << "\" font-size=\"11\">"
       << esc(map.colorbar_label) << ": " << num(vr.lo) << " (blue) to " << num(vr.hi) << " (red)</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace vfstab::svg
