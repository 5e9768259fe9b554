#pragma once

#include <cmath>
#include <vector>

#include "relaynet/rng.hpp"

namespace relaynet::geometry {

struct Point {
    double x = 0.0;
    double y = 0.0;

    static Point polar(double r, double theta) {
        return {r * std::cos(theta), r * std::sin(theta)};
    }

    static Point polar(double r, double theta, Point origin) {
        return {origin.x + r * std::cos(theta), origin.y + r * std::sin(theta)};
    }

    friend bool operator==(const Point&, const Point&) = default;
};

inline double distance_sq(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::sqrt(distance_sq(a, b)); }

/// Disc of the given radius centred at the origin; the finite stand-in for
/// the infinite plane.
struct SimWindow {
    double radius = 0.0;

    double area() const;
    void validate() const;
};

/// max(10 d, 5 / sqrt(p lambda)).
SimWindow default_window(double d, double p, double lambda);

/// Sector with apex `apex`, axis along `orientation`, admitting directions
/// within +/- `max_angle` of the axis (max_angle >= pi covers the disc) and
/// distances up to `max_distance`.
struct SectorRegion {
    Point apex;
    double orientation = 0.0;
    double max_angle = 0.0;
    double max_distance = 0.0;

    void validate() const;
};

/// Homogeneous PPP on the window: Poisson count, then i.i.d. uniform points.
std::vector<Point> sample_ppp(double intensity, const SimWindow& window, RngStream& rng);

/// distance^-alpha.
double path_gain(double distance, double alpha);

/// Same as path_gain but from a squared distance, avoiding the sqrt.
double path_gain_sq(double distance_sq, double alpha);

/// Law-of-cosines distance from the polar point (r, theta) to (d, 0).
double relay_dest_distance(double r, double theta, double d);

bool in_sector(Point p, const SectorRegion& region);

/// Angle wrapped into (-pi, pi].
double wrap_angle(double angle);

}  // namespace relaynet::geometry
