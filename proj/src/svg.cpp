#include "dmp/svg.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>

#include "dmp/errors.hpp"

namespace dmp {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

void SvgPlot::add_polyline(const Eigen::MatrixXd& points, const std::string& color, bool dashed,
                           double width) {
    if (points.cols() != 2) throw ValidationError("SvgPlot: polylines must be N x 2");
    polylines_.push_back({points, color, dashed, width});
}

void SvgPlot::add_outline(const Superquadric& sq, const std::string& color) {
    const auto boundary = discretize_boundary(sq, 200);
    Eigen::MatrixXd points(boundary.size() + 1, 2);
    for (std::size_t i = 0; i < boundary.size(); ++i) points.row(i) = boundary[i].position;
    points.row(boundary.size()) = boundary.front().position;  // close the loop
    polylines_.push_back({std::move(points), color, false, 1.5});
}

void SvgPlot::add_dots(const std::vector<PointObstacle>& points, const std::string& color,
                       double radius) {
    for (const auto& p : points) {
        if (p.position.size() != 2) throw ValidationError("SvgPlot: dots must be planar");
        dots_.push_back({p.position, color, radius});
    }
}

void SvgPlot::add_marker(const Eigen::Vector2d& point, const std::string& color, double radius) {
    dots_.push_back({point, color, radius});
}

std::string SvgPlot::render(bool with_timestamp) const {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    const auto grow = [&](double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    for (const auto& pl : polylines_) {
        for (Eigen::Index k = 0; k < pl.points.rows(); ++k) grow(pl.points(k, 0), pl.points(k, 1));
    }
    for (const auto& dot : dots_) grow(dot.point[0], dot.point[1]);
    if (!(xmax >= xmin)) {
        xmin = ymin = 0.0;
        xmax = ymax = 1.0;
    }
    const double span_x = std::max(xmax - xmin, 1e-9);
    const double span_y = std::max(ymax - ymin, 1e-9);
    const double view_w = 640.0, view_h = 480.0, margin = 30.0;
    const double scale = std::min((view_w - 2 * margin) / span_x, (view_h - 2 * margin) / span_y);
    const auto map_x = [&](double x) { return margin + (x - xmin) * scale; };
    const auto map_y = [&](double y) { return view_h - margin - (y - ymin) * scale; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(view_w) + "\" height=\"" +
           fmt(view_h) + "\" viewBox=\"0 0 " + fmt(view_w) + " " + fmt(view_h) + "\">\n";
    if (with_timestamp) {
        char stamp[64];
        const std::time_t now = std::time(nullptr);
        std::tm tm_utc;
        gmtime_r(&now, &tm_utc);
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        out += std::string("<!-- generated ") + stamp + " -->\n";
    }
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& pl : polylines_) {
        out += "<polyline fill=\"none\" stroke=\"" + pl.color + "\" stroke-width=\"" +
               fmt(pl.width) + "\"";
        if (pl.dashed) out += " stroke-dasharray=\"6 4\"";
        out += " points=\"";
        for (Eigen::Index k = 0; k < pl.points.rows(); ++k) {
            if (k > 0) out += " ";
            out += fmt(map_x(pl.points(k, 0))) + "," + fmt(map_y(pl.points(k, 1)));
        }
        out += "\"/>\n";
    }
    for (const auto& dot : dots_) {
        out += "<circle cx=\"" + fmt(map_x(dot.point[0])) + "\" cy=\"" + fmt(map_y(dot.point[1])) +
               "\" r=\"" + fmt(dot.radius) + "\" fill=\"" + dot.color + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

void SvgPlot::write(const std::string& path, bool with_timestamp) const {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open for writing: " + path);
    file << render(with_timestamp);
    if (!file) throw IoError("write failed: " + path);
}

}  // namespace dmp
