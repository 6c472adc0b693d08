#ifndef DMP_SVG_HPP_
#define DMP_SVG_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dmp/obstacles.hpp"

namespace dmp {

/**
 * @brief Minimal deterministic SVG emitter for planar overlay plots.
 *
 * Collects polylines (trajectories), superquadric outlines and dot markers,
 * then renders everything into one auto-scaled viewport with the y axis
 * pointing up. Output bytes depend only on the added content, except for the
 * optional timestamp comment.
 */
class SvgPlot {
public:
    void add_polyline(const Eigen::MatrixXd& points, const std::string& color, bool dashed,
                      double width = 1.5);
    /// Zero-level set of a planar superquadric, sampled at 200 boundary points.
    void add_outline(const Superquadric& sq, const std::string& color);
    void add_dots(const std::vector<PointObstacle>& points, const std::string& color,
                  double radius = 2.0);
    void add_marker(const Eigen::Vector2d& point, const std::string& color, double radius = 4.0);

    std::string render(bool with_timestamp) const;
    void write(const std::string& path, bool with_timestamp) const;

private:
    struct Polyline {
        Eigen::MatrixXd points;
        std::string color;
        bool dashed;
        double width;
    };
    struct Dot {
        Eigen::Vector2d point;
        std::string color;
        double radius;
    };
    std::vector<Polyline> polylines_;
    std::vector<Dot> dots_;
};

}  // namespace dmp

#endif  // DMP_SVG_HPP_
