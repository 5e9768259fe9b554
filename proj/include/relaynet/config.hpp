#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "relaynet/geometry.hpp"

namespace relaynet {

enum class Scheme { direct, oc, mrc, sc };
enum class Selection { best, random };
enum class InterfererMode { thinned, full };
enum class Composition { corrected, printed };
/// Relay location density inside the selection region for the
/// random-selection closed forms.
enum class DensityInterpretation { uniform, weighted };
/// Decoding threshold inside the best-selection OC integral: `printed`
/// uses the running threshold (beta - y), `fixed` uses beta.
enum class DecodeThreshold { printed, fixed };

/// Parameter varied along a curve. `beta` sets beta_direct (linear) and
/// keeps the ratio beta_coop / beta_direct.
enum class SweepVariable { lambda, phi, beta, p };

inline constexpr std::array<Scheme, 3> kCooperativeSchemes = {Scheme::oc, Scheme::mrc, Scheme::sc};
inline constexpr std::array<Selection, 2> kSelections = {Selection::best, Selection::random};

std::string_view to_string(Scheme);
std::string_view to_string(Selection);
std::string_view to_string(InterfererMode);
std::string_view to_string(Composition);
std::string_view to_string(DensityInterpretation);
std::string_view to_string(DecodeThreshold);
std::string_view to_string(SweepVariable);

Scheme parse_scheme(std::string_view);
Selection parse_selection(std::string_view);
InterfererMode parse_interferer_mode(std::string_view);
Composition parse_composition(std::string_view);
DensityInterpretation parse_density(std::string_view);
DecodeThreshold parse_decode_threshold(std::string_view);
SweepVariable parse_sweep_variable(std::string_view);

double db_to_linear(double db);

/// All scenario parameters. Defaults are the reference parameter block:
/// alpha = 4, beta_direct = 3 dB, cooperative threshold twice that,
/// d = 10 m, d_s = 7 m, phi = pi / 3, p = 0.5.
struct NetworkConfig {
    double lambda = 1e-3;  ///< node intensity per m^2
    double p = 0.5;        ///< contention (transmit) probability
    double alpha = 4.0;    ///< path-loss exponent
    double beta_direct = 1.9952623149688795;  ///< 10^0.3
    double beta_coop = 2.0 * 1.9952623149688795;
    double d = 10.0;     ///< source-destination distance (m)
    double d_s = 7.0;    ///< selection-region radius (m)
    double phi = 1.0471975511965976;  ///< selection-region half-aperture (rad)
    /// 0 selects geometry::default_window(d, p, lambda).
    double window_radius = 0.0;
    InterfererMode interferer_mode = InterfererMode::thinned;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    geometry::SimWindow window() const;

    /// min(phi, pi): the sector never exceeds the full disc.
    double effective_half_angle() const;

    /// Selection region of the typical source at the origin, pointing at
    /// its destination at (d, 0).
    geometry::SectorRegion typical_sector() const;
};

/// Copy of `base` with `variable` set to `value`.
NetworkConfig apply_sweep(const NetworkConfig& base, SweepVariable variable, double value);

/// Throws ConfigError unless the grid is non-empty and strictly ascending.
void validate_grid(const std::vector<double>& grid);

}  // namespace relaynet
