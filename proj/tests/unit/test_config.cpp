#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "relaynet/config.hpp"
#include "relaynet/errors.hpp"

using namespace relaynet;

TEST(Config, DefaultsMatchReferenceBlock) {
    const NetworkConfig c;
    EXPECT_DOUBLE_EQ(c.alpha, 4.0);
    EXPECT_NEAR(c.beta_direct, std::pow(10.0, 0.3), 1e-15);
    EXPECT_NEAR(c.beta_coop, 2.0 * c.beta_direct, 1e-15);
    EXPECT_DOUBLE_EQ(c.d, 10.0);
    EXPECT_DOUBLE_EQ(c.d_s, 7.0);
    EXPECT_NEAR(c.phi, std::numbers::pi / 3, 1e-15);
    EXPECT_DOUBLE_EQ(c.p, 0.5);
    EXPECT_NO_THROW(c.validate());
}

TEST(Config, DbConversion) {
    EXPECT_NEAR(db_to_linear(3.0), 1.9952623149688795, 1e-15);
    EXPECT_DOUBLE_EQ(db_to_linear(0.0), 1.0);
}

TEST(Config, ValidationNamesField) {
    auto expect_field = [](NetworkConfig c, const std::string& field) {
        try {
            c.validate();
            FAIL() << "expected ConfigError for " << field;
        } catch (const ConfigError& e) {
            EXPECT_EQ(std::string(e.what()).rfind(field + ":", 0), 0u) << e.what();
        }
    };
    NetworkConfig c;
    c.p = 1.0;
    expect_field(c, "p");
    c = {};
    c.alpha = 2.0;
    expect_field(c, "alpha");
    c = {};
    c.phi = 7.0;
    expect_field(c, "phi");
    c = {};
    c.lambda = -1.0;
    expect_field(c, "lambda");
    c = {};
    c.window_radius = 5.0;
    expect_field(c, "window_radius");
    c = {};
    c.beta_coop = 0.0;
    expect_field(c, "beta_coop");
}

TEST(Config, EnumRoundTrip) {
    for (Scheme s : {Scheme::direct, Scheme::oc, Scheme::mrc, Scheme::sc}) {
        EXPECT_EQ(parse_scheme(to_string(s)), s);
    }
    for (Selection s : kSelections) {
        EXPECT_EQ(parse_selection(to_string(s)), s);
    }
    EXPECT_EQ(parse_interferer_mode("full"), InterfererMode::full);
    EXPECT_EQ(parse_composition("printed"), Composition::printed);
    EXPECT_EQ(parse_density("weighted"), DensityInterpretation::weighted);
    EXPECT_EQ(parse_decode_threshold("fixed"), DecodeThreshold::fixed);
    EXPECT_EQ(parse_sweep_variable("phi"), SweepVariable::phi);
    EXPECT_THROW(parse_interferer_mode("partial"), ConfigError);
    EXPECT_THROW(parse_scheme("egc"), ConfigError);
}

TEST(Config, EffectiveHalfAngleCapsAtPi) {
    NetworkConfig c;
    c.phi = 5.0;
    EXPECT_DOUBLE_EQ(c.effective_half_angle(), std::numbers::pi);
    EXPECT_DOUBLE_EQ(c.typical_sector().max_angle, std::numbers::pi);
}

TEST(Config, ApplySweepKeepsThresholdRatio) {
    const NetworkConfig base;
    const auto c = apply_sweep(base, SweepVariable::beta, 3.0);
    EXPECT_DOUBLE_EQ(c.beta_direct, 3.0);
    EXPECT_NEAR(c.beta_coop, 6.0, 1e-12);
    EXPECT_DOUBLE_EQ(apply_sweep(base, SweepVariable::lambda, 0.2).lambda, 0.2);
    EXPECT_DOUBLE_EQ(apply_sweep(base, SweepVariable::p, 0.3).p, 0.3);
    EXPECT_DOUBLE_EQ(apply_sweep(base, SweepVariable::phi, 1.0).phi, 1.0);
}

TEST(Config, GridValidation) {
    EXPECT_NO_THROW(validate_grid({1.0}));
    EXPECT_THROW(validate_grid({}), ConfigError);
    EXPECT_THROW(validate_grid({1.0, 1.0}), ConfigError);
    EXPECT_THROW(validate_grid({2.0, 1.0}), ConfigError);
}
