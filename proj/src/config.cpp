#include "relaynet/config.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "relaynet/errors.hpp"

namespace relaynet {
namespace {

template <class Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<Enum, N>& values, const char* what) {
    for (Enum value : values) {
        if (to_string(value) == text) {
            return value;
        }
    }
    std::ostringstream msg;
    msg << "unknown " << what << " '" << text << "' (expected one of:";
    for (Enum value : values) {
        msg << ' ' << to_string(value);
    }
    msg << ')';
    throw ConfigError(msg.str());
}

void require(bool ok, const char* field, const char* rule) {
    if (!ok) {
        throw ConfigError(std::string(field) + ": " + rule);
    }
}

}  // namespace

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::direct: return "direct";
        case Scheme::oc: return "oc";
        case Scheme::mrc: return "mrc";
        case Scheme::sc: return "sc";
    }
    return "?";
}

std::string_view to_string(Selection s) {
    return s == Selection::best ? "best" : "random";
}

std::string_view to_string(InterfererMode m) {
    return m == InterfererMode::thinned ? "thinned" : "full";
}

std::string_view to_string(Composition c) {
    return c == Composition::corrected ? "corrected" : "printed";
}

std::string_view to_string(DensityInterpretation d) {
    return d == DensityInterpretation::uniform ? "uniform" : "weighted";
}

std::string_view to_string(DecodeThreshold t) {
    return t == DecodeThreshold::printed ? "printed" : "fixed";
}

std::string_view to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::lambda: return "lambda";
        case SweepVariable::phi: return "phi";
        case SweepVariable::beta: return "beta";
        case SweepVariable::p: return "p";
    }
    return "?";
}

SweepVariable parse_sweep_variable(std::string_view s) {
    return parse_enum(s,
                      std::array{SweepVariable::lambda, SweepVariable::phi, SweepVariable::beta,
                                 SweepVariable::p},
                      "sweep variable");
}

Scheme parse_scheme(std::string_view s) {
    return parse_enum(s, std::array{Scheme::direct, Scheme::oc, Scheme::mrc, Scheme::sc}, "scheme");
}

Selection parse_selection(std::string_view s) {
    return parse_enum(s, kSelections, "selection");
}

InterfererMode parse_interferer_mode(std::string_view s) {
    return parse_enum(s, std::array{InterfererMode::thinned, InterfererMode::full},
                      "interferer mode");
}

Composition parse_composition(std::string_view s) {
    return parse_enum(s, std::array{Composition::corrected, Composition::printed}, "composition");
}

DensityInterpretation parse_density(std::string_view s) {
    return parse_enum(
        s, std::array{DensityInterpretation::uniform, DensityInterpretation::weighted},
        "density interpretation");
}

DecodeThreshold parse_decode_threshold(std::string_view s) {
    return parse_enum(s, std::array{DecodeThreshold::printed, DecodeThreshold::fixed},
                      "decode threshold");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void NetworkConfig::validate() const {
    require(std::isfinite(lambda) && lambda >= 0.0, "lambda", "must be finite and >= 0");
    require(p > 0.0 && p < 1.0, "p", "must lie in (0, 1)");
    require(std::isfinite(alpha) && alpha > 2.0, "alpha", "must exceed 2");
    require(beta_direct > 0.0, "beta_direct", "must be positive");
    require(beta_coop > 0.0, "beta_coop", "must be positive");
    require(std::isfinite(d) && d > 0.0, "d", "must be positive");
    require(std::isfinite(d_s) && d_s > 0.0, "d_s", "must be positive");
    require(phi > 0.0 && phi <= 2.0 * std::numbers::pi + 1e-12, "phi", "must lie in (0, 2 pi]");
    require(window_radius >= 0.0, "window_radius", "must be >= 0 (0 = automatic)");
    if (window_radius > 0.0) {
        require(window_radius > d && window_radius > d_s, "window_radius",
                "must contain the destination and the selection region");
    }
}

geometry::SimWindow NetworkConfig::window() const {
    return window_radius > 0.0 ? geometry::SimWindow{window_radius}
                               : geometry::default_window(d, p, lambda);
}

double NetworkConfig::effective_half_angle() const { return std::min(phi, std::numbers::pi); }

geometry::SectorRegion NetworkConfig::typical_sector() const {
    return {{0.0, 0.0}, 0.0, effective_half_angle(), d_s};
}

NetworkConfig apply_sweep(const NetworkConfig& base, SweepVariable variable, double value) {
    NetworkConfig config = base;
    switch (variable) {
        case SweepVariable::lambda: config.lambda = value; break;
        case SweepVariable::phi: config.phi = value; break;
        case SweepVariable::p: config.p = value; break;
        case SweepVariable::beta: {
            const double ratio = base.beta_coop / base.beta_direct;
            config.beta_direct = value;
            config.beta_coop = ratio * value;
            break;
        }
    }
    return config;
}

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) {
        throw ConfigError("grid: must contain at least one value");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw ConfigError("grid: values must be strictly ascending");
        }
    }
}

}  // namespace relaynet
