#include "relaynet/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <random>

#include "relaynet/errors.hpp"

namespace relaynet::geometry {

double SimWindow::area() const { return std::numbers::pi * radius * radius; }

void SimWindow::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ConfigError("SimWindow: radius must be positive and finite");
    }
}

SimWindow default_window(double d, double p, double lambda) {
    double radius = 10.0 * d;
    if (p > 0.0 && lambda > 0.0) {
        radius = std::max(radius, 5.0 / std::sqrt(p * lambda));
    }
    return {radius};
}

void SectorRegion::validate() const {
    if (!(max_angle > 0.0) || max_angle > 2.0 * std::numbers::pi + 1e-12) {
        throw ConfigError("SectorRegion: max angle must lie in (0, 2 pi]");
    }
    if (!(max_distance > 0.0)) {
        throw ConfigError("SectorRegion: max distance must be positive");
    }
}

std::vector<Point> sample_ppp(double intensity, const SimWindow& window, RngStream& rng) {
    if (!(intensity >= 0.0)) {
        throw ConfigError("sample_ppp: intensity must be non-negative");
    }
    window.validate();
    const double mean = intensity * window.area();
    if (mean == 0.0) {
        return {};
    }
    std::poisson_distribution<long> count_dist(mean);
    const long count = count_dist(rng);
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double r = window.radius * std::sqrt(rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        points.push_back(Point::polar(r, theta));
    }
    return points;
}

double path_gain(double distance, double alpha) {
    if (!(distance > 0.0)) {
        throw SingularityError("path_gain: zero distance (co-located nodes)");
    }
    return std::pow(distance, -alpha);
}

double path_gain_sq(double distance_sq, double alpha) {
    if (!(distance_sq > 0.0)) {
        throw SingularityError("path_gain: zero distance (co-located nodes)");
    }
    if (alpha == 4.0) {
        return 1.0 / (distance_sq * distance_sq);
    }
    return std::pow(distance_sq, -0.5 * alpha);
}

double relay_dest_distance(double r, double theta, double d) {
    const double sq = d * d + r * r - 2.0 * r * d * std::cos(theta);
    return std::sqrt(std::max(sq, 0.0));
}

double wrap_angle(double angle) {
    angle = std::remainder(angle, 2.0 * std::numbers::pi);
    return angle <= -std::numbers::pi ? angle + 2.0 * std::numbers::pi : angle;
}

bool in_sector(Point p, const SectorRegion& region) {
    const double dsq = distance_sq(p, region.apex);
    if (dsq > region.max_distance * region.max_distance) {
        return false;
    }
    if (dsq == 0.0 || region.max_angle >= std::numbers::pi) {
        return true;
    }
    const double bearing = std::atan2(p.y - region.apex.y, p.x - region.apex.x);
    return std::fabs(wrap_angle(bearing - region.orientation)) <= region.max_angle;
}

}  // namespace relaynet::geometry
