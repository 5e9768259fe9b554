#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "relaynet/errors.hpp"
#include "relaynet/geometry.hpp"

using namespace relaynet;
using namespace relaynet::geometry;
constexpr double kPi = std::numbers::pi;

TEST(Window, DefaultRadius) {
    EXPECT_DOUBLE_EQ(default_window(10.0, 0.5, 1e-1).radius, 100.0);
    EXPECT_DOUBLE_EQ(default_window(10.0, 0.5, 1e-3).radius, 5.0 / std::sqrt(0.5e-3));
    EXPECT_DOUBLE_EQ(default_window(10.0, 0.5, 0.0).radius, 100.0);
    EXPECT_THROW(SimWindow{0.0}.validate(), ConfigError);
}

TEST(Ppp, CountIsPoisson) {
    // mean 50 per window; sample mean over 2000 draws within 4 sigma
    const SimWindow w{10.0};
    const double intensity = 50.0 / w.area();
    RngStream rng(3);
    double sum = 0.0, sum_sq = 0.0;
    const int reps = 2000;
    for (int i = 0; i < reps; ++i) {
        const double n = static_cast<double>(sample_ppp(intensity, w, rng).size());
        sum += n;
        sum_sq += n * n;
    }
    const double mean = sum / reps;
    const double var = sum_sq / reps - mean * mean;
    EXPECT_NEAR(mean, 50.0, 4.0 * std::sqrt(50.0 / reps));
    EXPECT_NEAR(var / 50.0, 1.0, 0.15);
}

TEST(Ppp, PointsUniformInDisc) {
    const SimWindow w{1.0};
    RngStream rng(11);
    const auto pts = sample_ppp(20000.0 / w.area(), w, rng);
    std::size_t inner = 0, right_half = 0;
    for (const auto& p : pts) {
        ASSERT_LE(distance(p, {}), 1.0 + 1e-12);
        inner += distance(p, {}) <= 0.5;
        right_half += p.x > 0.0;
    }
    const double n = static_cast<double>(pts.size());
    EXPECT_NEAR(inner / n, 0.25, 4.0 * std::sqrt(0.25 * 0.75 / n));
    EXPECT_NEAR(right_half / n, 0.5, 4.0 * std::sqrt(0.25 / n));
}

TEST(Ppp, ZeroIntensityAndDeterminism) {
    RngStream a(5), b(5);
    EXPECT_TRUE(sample_ppp(0.0, {10.0}, a).empty());
    const auto x = sample_ppp(0.3, {10.0}, a);
    b = RngStream(5);
    (void)sample_ppp(0.0, {10.0}, b);
    EXPECT_EQ(x, sample_ppp(0.3, {10.0}, b));
    EXPECT_THROW(sample_ppp(-1.0, {10.0}, a), ConfigError);
}

TEST(PathGain, ValuesAndSingularity) {
    EXPECT_DOUBLE_EQ(path_gain(10.0, 4.0), 1e-4);
    EXPECT_DOUBLE_EQ(path_gain_sq(100.0, 4.0), 1e-4);
    EXPECT_NEAR(path_gain_sq(9.0, 3.0), std::pow(3.0, -3.0), 1e-15);
    EXPECT_THROW(path_gain(0.0, 4.0), SingularityError);
    EXPECT_THROW(path_gain_sq(0.0, 4.0), SingularityError);
}

TEST(Geometry, RelayDestinationDistance) {
    EXPECT_DOUBLE_EQ(relay_dest_distance(0.0, 1.0, 10.0), 10.0);
    EXPECT_NEAR(relay_dest_distance(7.0, 0.0, 10.0), 3.0, 1e-12);
    EXPECT_NEAR(relay_dest_distance(7.0, kPi, 10.0), 17.0, 1e-12);
    EXPECT_NEAR(relay_dest_distance(10.0, 0.0, 10.0), 0.0, 1e-12);
    const Point p = Point::polar(5.0, 0.7);
    EXPECT_NEAR(relay_dest_distance(5.0, 0.7, 10.0), distance(p, {10.0, 0.0}), 1e-12);
}

TEST(Geometry, WrapAngle) {
    EXPECT_NEAR(wrap_angle(3.0 * kPi / 2), -kPi / 2, 1e-12);
    EXPECT_NEAR(wrap_angle(-kPi), kPi, 1e-12);
    EXPECT_NEAR(wrap_angle(0.25), 0.25, 1e-15);
}

TEST(Sector, MembershipAndBoundary) {
    const SectorRegion s{{0.0, 0.0}, 0.0, kPi / 3, 7.0};
    EXPECT_TRUE(in_sector({3.0, 0.0}, s));
    EXPECT_TRUE(in_sector({0.0, 0.0}, s));
    EXPECT_TRUE(in_sector(Point::polar(6.9999999, kPi / 3 - 1e-12), s));
    EXPECT_TRUE(in_sector(Point::polar(6.0, -kPi / 3 + 1e-12), s));
    EXPECT_FALSE(in_sector(Point::polar(6.0, kPi / 3 + 1e-9), s));
    EXPECT_FALSE(in_sector(Point::polar(7.0 + 1e-9, 0.0), s));
    EXPECT_FALSE(in_sector({-1.0, 0.0}, s));
}

TEST(Sector, OrientedAndFullDisc) {
    const SectorRegion s{{5.0, 5.0}, kPi / 2, kPi / 6, 2.0};
    EXPECT_TRUE(in_sector({5.0, 6.5}, s));
    EXPECT_FALSE(in_sector({6.5, 5.0}, s));
    const SectorRegion disc{{0.0, 0.0}, 1.0, kPi, 2.0};
    EXPECT_TRUE(in_sector({-1.9, 0.0}, disc));
    const SectorRegion bad{{0.0, 0.0}, 0.0, 0.0, 1.0};
    EXPECT_THROW(bad.validate(), ConfigError);
}
