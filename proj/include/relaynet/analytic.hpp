#pragma once

#include <vector>

#include "relaynet/config.hpp"
#include "relaynet/specfun.hpp"

namespace relaynet::analytic {

struct AnalyticOptions {
    DensityInterpretation density = DensityInterpretation::uniform;
    DecodeThreshold decode_threshold = DecodeThreshold::printed;
    Composition composition = Composition::corrected;
    specfun::QuadratureSettings quadrature{};
};

/// Closed-form mean measure of the potential-relay set in the sector
/// |theta| <= phi, r <= d_s at cooperative threshold `beta`:
///   phi (1 - p) lambda / (beta^delta lambda_cb) * (1 - exp(-lambda_cb beta^delta d_s^2)).
/// Well defined at lambda = 0 (returns 0).
double mean_measure(const NetworkConfig& config, double beta);

/// Relaying-phase interferer intensity p lambda (1 - exp(-mean_measure)).
double relay_interferer_intensity(const NetworkConfig& config, double beta);

/// Derived constants for one configuration, evaluated at beta_coop.
///
/// `eta` is the broadcasting-phase interference density constant
/// p lambda c; the same quantity appears in the SIR density of the direct
/// link, so a single member serves both roles.
struct AnalyticContext {
    NetworkConfig config;
    AnalyticOptions options;
    double delta = 0.0;
    double c = 0.0;
    double eta = 0.0;         ///< p lambda c
    double beta = 0.0;        ///< cooperative threshold
    double half_angle = 0.0;  ///< min(phi, pi)
    double area = 0.0;        ///< half_angle * d_s^2 (sector spans 2 half_angle)
    double mu_o = 0.0;
    double interferer_intensity = 0.0;  ///< Lambda_I
    double eta_i = 0.0;                 ///< Lambda_I c

    static AnalyticContext make(const NetworkConfig& config, const AnalyticOptions& options = {});

    /// Relay location density in the selection region (per m^2), per the
    /// density interpretation.
    double relay_density(double r) const;
};

/// Integral over the selection region |theta| <= phi, r <= d_s of
/// f(r, theta) dA. Integrands must be even in theta.
double integrate_region(const AnalyticContext& ctx, const specfun::PolarFn& f);

double direct_outage(const AnalyticContext& ctx);
double direct_outage(const AnalyticContext& ctx, double beta);
double empty_relay_prob(const AnalyticContext& ctx);
double interferer_intensity(const AnalyticContext& ctx);

/// Density of the direct-link SIR: eta d^2 delta y^(delta-1) exp(-eta d^2 y^delta).
double direct_sir_pdf(double y, const AnalyticContext& ctx);

/// Relay-link SIR cdf under random selection at threshold b.
double relay_cdf_random(double b, const AnalyticContext& ctx);

/// Jensen-type bound value for the best-relay link cdf at threshold b.
double relay_cdf_best_lb(double b, const AnalyticContext& ctx);

/// Probability that the OC statistic misses beta, random selection.
double p_oc_random(const AnalyticContext& ctx);

/// Bound on the same probability under best selection.
double p_oc_best_lb(const AnalyticContext& ctx);

enum class WVariant { w1, w2 };

/// MGF E[exp(-s W)] of W1 = u z / (u + v) (or W2 = v z / (u + v)) for
/// u ~ Exp(rate mu1), v ~ Exp(rate mu2), z ~ Exp(1), via G^{22}_{22}.
double mgf_w(double s, double mu1, double mu2, WVariant which,
             const specfun::QuadratureSettings& settings = {});

/// cdf of W1 = u z / (u + v); same rate convention as mgf_w.
double w1_cdf(double w, double mu1, double mu2);

/// Meijer-G term combination at relay position (r, theta); see mrc_exponent.
double mrc_psi(double r, double theta, const AnalyticContext& ctx);

/// Interference exponent coefficient of the MRC success probability at
/// (r, theta): eta + eta_I - psi, which equals
/// eta E[(u/(u+v))^delta] + eta_I E[(v/(u+v))^delta].
double mrc_exponent(double r, double theta, const AnalyticContext& ctx);

/// Probability that the MRC statistic misses beta, random selection.
double p_mrc_random(const AnalyticContext& ctx);

/// Relay-branch outage for selection combining.
double p_sc(const AnalyticContext& ctx, Selection selection);

/// corrected: P_d (P_r + (1 - P_r) P_x); printed: P_d ((1 - P_r)(1 - P_x) + P_x).
double compose_outage(double p_d, double p_r, double p_x, Composition convention);

/// True when a closed form (or bound) exists for the pair.
bool has_closed_form(Scheme scheme, Selection selection);

/// End-to-end outage for one configuration. Scheme::direct ignores the
/// selection and uses beta_direct.
double outage(const AnalyticContext& ctx, Scheme scheme, Selection selection);

struct CurvePoint {
    double sweep_value = 0.0;
    Scheme scheme = Scheme::direct;
    Selection selection = Selection::random;
    double value = 0.0;
};

std::vector<CurvePoint> analytic_curve(const NetworkConfig& base, SweepVariable variable,
                                       const std::vector<double>& grid, Scheme scheme,
                                       Selection selection, const AnalyticOptions& options = {});

}  // namespace relaynet::analytic
