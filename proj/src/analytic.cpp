#include "relaynet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "relaynet/errors.hpp"
#include "relaynet/geometry.hpp"

namespace relaynet::analytic {
namespace {

using specfun::incomplete_gamma_1;
using specfun::PolarFn;
using specfun::RealFn;

/// (1 - exp(-x)) / x, continuous at 0.
double gamma1_over_x(double x) {
    return x < 1e-12 ? 1.0 - 0.5 * x : -std::expm1(-x) / x;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void require_threshold(double b, const char* who) {
    if (!(b >= 0.0)) {
        throw DomainError(std::string(who) + ": threshold must be non-negative");
    }
}

/// 1 - F for the random-selection relay link at threshold b.
double relay_survival_random(double b, const AnalyticContext& ctx) {
    if (b == 0.0) {
        return 1.0;
    }
    const double bd = std::pow(b, ctx.delta);
    const double d = ctx.config.d;
    PolarFn integrand;
    if (ctx.options.density == DensityInterpretation::uniform) {
        integrand = [&](double r, double theta) {
            const double drd = geometry::relay_dest_distance(r, theta, d);
            return std::exp(-bd * (ctx.eta_i * drd * drd + ctx.eta * r * r)) / ctx.area;
        };
    } else {
        integrand = [&](double r, double theta) {
            const double drd = geometry::relay_dest_distance(r, theta, d);
            return std::exp(-bd * ctx.eta_i * drd * drd) * ctx.relay_density(r);
        };
    }
    return clamp01(integrate_region(ctx, integrand));
}

/// Exponent of the best-selection bound: integral over the region of
/// (1 - exp(-eta_I b^delta d_RD^2)) against the candidate intensity at the
/// decoding threshold `b_dec`.
double best_selection_functional(double b, double b_dec, const AnalyticContext& ctx) {
    if (b == 0.0) {
        return 0.0;
    }
    const double bd = std::pow(b, ctx.delta);
    const double decode = ctx.eta * std::pow(b_dec, ctx.delta);
    const double idle_intensity = (1.0 - ctx.config.p) * ctx.config.lambda;
    const double d = ctx.config.d;
    const PolarFn integrand = [&](double r, double theta) {
        const double drd = geometry::relay_dest_distance(r, theta, d);
        return idle_intensity * std::exp(-decode * r * r) * -std::expm1(-ctx.eta_i * bd * drd * drd);
    };
    return integrate_region(ctx, integrand);
}

/// gamma(1, eta beta^delta d^2) - int_0^beta f_SD(y) survival(beta - y) dy.
double combined_outage(const AnalyticContext& ctx, const RealFn& survival) {
    const double beta = ctx.beta;
    const double p_direct = direct_outage(ctx);
    if (ctx.eta == 0.0) {
        return 0.0;
    }
    const RealFn integrand = [&](double y) {
        return direct_sir_pdf(y, ctx) * survival(std::max(beta - y, 0.0));
    };
    const double rescued =
        specfun::integrate_endpoint_power(integrand, 0.0, beta, ctx.delta, ctx.options.quadrature);
    return std::clamp(p_direct - rescued, 0.0, p_direct);
}

double mrc_bracket(double drd, double exponent, const AnalyticContext& ctx) {
    const double d = ctx.config.d;
    if (drd < 1e-12 * d) {
        return 1.0;
    }
    const double rho = std::pow(drd / d, ctx.config.alpha);
    const double a = std::pow(ctx.beta, ctx.delta) * exponent;
    if (std::fabs(1.0 - rho) < 1e-6) {
        // rho -> 1 limit; d_RD^2 = d^2 rho^delta
        return std::exp(-d * d * a) * (1.0 + ctx.delta * d * d * a);
    }
    return (std::exp(-drd * drd * a) - rho * std::exp(-d * d * a)) / (1.0 - rho);
}

specfun::MeijerSpec mrc_meijer(double x, double delta) {
    return {2, 3, 3, 3, {-delta, -1.0, 0.0}, {0.0, 0.0, -1.0}, x};
}

}  // namespace

double mean_measure(const NetworkConfig& config, double beta) {
    const double c = specfun::interference_constant(config.alpha);
    const double delta = 2.0 / config.alpha;
    const double eta = config.p * config.lambda * c;
    const double half_angle = config.effective_half_angle();
    const double x = eta * std::pow(beta, delta) * config.d_s * config.d_s;
    return half_angle * (1.0 - config.p) * config.lambda * config.d_s * config.d_s *
           gamma1_over_x(x);
}

double relay_interferer_intensity(const NetworkConfig& config, double beta) {
    return config.p * config.lambda * incomplete_gamma_1(mean_measure(config, beta));
}

AnalyticContext AnalyticContext::make(const NetworkConfig& config, const AnalyticOptions& options) {
    config.validate();
    options.quadrature.validate();
    AnalyticContext ctx;
    ctx.config = config;
    ctx.options = options;
    ctx.delta = 2.0 / config.alpha;
    ctx.c = specfun::interference_constant(config.alpha);
    ctx.eta = config.p * config.lambda * ctx.c;
    ctx.beta = config.beta_coop;
    ctx.half_angle = config.effective_half_angle();
    ctx.area = ctx.half_angle * config.d_s * config.d_s;
    ctx.mu_o = mean_measure(config, ctx.beta);
    ctx.interferer_intensity = config.p * config.lambda * incomplete_gamma_1(ctx.mu_o);
    ctx.eta_i = ctx.interferer_intensity * ctx.c;
    return ctx;
}

double AnalyticContext::relay_density(double r) const {
    if (options.density == DensityInterpretation::uniform) {
        return 1.0 / area;
    }
    const double decode = eta * std::pow(beta, delta);
    const double x = decode * config.d_s * config.d_s;
    return std::exp(-decode * r * r) / (area * gamma1_over_x(x));
}

double integrate_region(const AnalyticContext& ctx, const specfun::PolarFn& f) {
    return 2.0 * specfun::integrate_sector(f, ctx.config.d_s, ctx.half_angle, ctx.options.quadrature);
}

double direct_outage(const AnalyticContext& ctx) { return direct_outage(ctx, ctx.beta); }

double direct_outage(const AnalyticContext& ctx, double beta) {
    const double d = ctx.config.d;
    return incomplete_gamma_1(ctx.eta * std::pow(beta, ctx.delta) * d * d);
}

double empty_relay_prob(const AnalyticContext& ctx) { return std::exp(-ctx.mu_o); }

double interferer_intensity(const AnalyticContext& ctx) { return ctx.interferer_intensity; }

double direct_sir_pdf(double y, const AnalyticContext& ctx) {
    if (!(y > 0.0)) {
        throw DomainError("direct_sir_pdf: SIR must be positive");
    }
    const double k = ctx.eta * ctx.config.d * ctx.config.d;
    return k * ctx.delta * std::pow(y, ctx.delta - 1.0) * std::exp(-k * std::pow(y, ctx.delta));
}

double relay_cdf_random(double b, const AnalyticContext& ctx) {
    require_threshold(b, "relay_cdf_random");
    if (std::isinf(b)) {
        return 1.0;
    }
    return 1.0 - relay_survival_random(b, ctx);
}

double relay_cdf_best_lb(double b, const AnalyticContext& ctx) {
    require_threshold(b, "relay_cdf_best_lb");
    const double b_dec = ctx.options.decode_threshold == DecodeThreshold::printed ? b : ctx.beta;
    return clamp01(-std::expm1(-best_selection_functional(b, b_dec, ctx)));
}

double p_oc_random(const AnalyticContext& ctx) {
    return combined_outage(ctx, [&](double b) { return relay_survival_random(b, ctx); });
}

double p_oc_best_lb(const AnalyticContext& ctx) {
    const bool printed = ctx.options.decode_threshold == DecodeThreshold::printed;
    return combined_outage(ctx, [&](double b) {
        return std::exp(-best_selection_functional(b, printed ? b : ctx.beta, ctx));
    });
}

double mgf_w(double s, double mu1, double mu2, WVariant which,
             const specfun::QuadratureSettings& settings) {
    if (!(s >= 0.0)) {
        throw DomainError("mgf_w: s must be non-negative");
    }
    if (!(mu1 > 0.0) || !(mu2 > 0.0)) {
        throw DomainError("mgf_w: rates must be positive");
    }
    if (s == 0.0) {
        return 1.0;
    }
    const double ratio = which == WVariant::w1 ? mu1 / mu2 : mu2 / mu1;
    const double x = ratio / (s + 1.0);
    const double g = specfun::meijer_g({2, 2, 2, 2, {-1.0, 0.0}, {0.0, 0.0}, x}, settings);
    return 1.0 - s / (s + 1.0) * (1.0 - x * g);
}

double w1_cdf(double w, double mu1, double mu2) {
    if (!(w >= 0.0)) {
        throw DomainError("w1_cdf: argument must be non-negative");
    }
    if (!(mu1 > 0.0) || !(mu2 > 0.0)) {
        throw DomainError("w1_cdf: rates must be positive");
    }
    if (w == 0.0) {
        return 0.0;
    }
    if (std::isinf(w)) {
        return 1.0;
    }
    const double kw = mu1 / mu2 * w;
    return clamp01(1.0 - std::exp(-w) * (1.0 - kw * specfun::tricomi_psi_1_1(kw)));
}

double mrc_psi(double r, double theta, const AnalyticContext& ctx) {
    const double d = ctx.config.d;
    const double drd = geometry::relay_dest_distance(r, theta, d);
    if (drd < 1e-12 * d) {
        return ctx.eta;
    }
    const double x = std::pow(d / drd, ctx.config.alpha);
    const double g_delta = specfun::gamma_fn(ctx.delta);
    const auto& q = ctx.options.quadrature;
    const double direct_term =
        ctx.eta / g_delta * x * specfun::meijer_g(mrc_meijer(x, ctx.delta), q);
    if (ctx.eta_i == 0.0) {
        return direct_term;
    }
    const double relay_term =
        ctx.eta_i / g_delta / x * specfun::meijer_g(mrc_meijer(1.0 / x, ctx.delta), q);
    return direct_term + relay_term;
}

double mrc_exponent(double r, double theta, const AnalyticContext& ctx) {
    return ctx.eta + ctx.eta_i - mrc_psi(r, theta, ctx);
}

double p_mrc_random(const AnalyticContext& ctx) {
    if (ctx.eta == 0.0) {
        return 0.0;
    }
    const double d = ctx.config.d;
    const PolarFn integrand = [&](double r, double theta) {
        const double drd = geometry::relay_dest_distance(r, theta, d);
        return mrc_bracket(drd, mrc_exponent(r, theta, ctx), ctx) * ctx.relay_density(r);
    };
    return clamp01(1.0 - integrate_region(ctx, integrand));
}

double p_sc(const AnalyticContext& ctx, Selection selection) {
    return selection == Selection::random ? relay_cdf_random(ctx.beta, ctx)
                                          : relay_cdf_best_lb(ctx.beta, ctx);
}

double compose_outage(double p_d, double p_r, double p_x, Composition convention) {
    for (double v : {p_d, p_r, p_x}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw DomainError("compose_outage: inputs must be probabilities");
        }
    }
    if (convention == Composition::corrected) {
        return p_d * (p_r + (1.0 - p_r) * p_x);
    }
    return p_d * ((1.0 - p_r) * (1.0 - p_x) + p_x);
}

bool has_closed_form(Scheme scheme, Selection selection) {
    return !(scheme == Scheme::mrc && selection == Selection::best);
}

double outage(const AnalyticContext& ctx, Scheme scheme, Selection selection) {
    if (scheme == Scheme::direct) {
        return direct_outage(ctx, ctx.config.beta_direct);
    }
    if (!has_closed_form(scheme, selection)) {
        throw UnsupportedParameters("outage: no closed form for MRC with best selection");
    }
    double p_x = 0.0;
    switch (scheme) {
        case Scheme::oc:
            p_x = selection == Selection::random ? p_oc_random(ctx) : p_oc_best_lb(ctx);
            break;
        case Scheme::mrc: p_x = p_mrc_random(ctx); break;
        case Scheme::sc: p_x = p_sc(ctx, selection); break;
        case Scheme::direct: break;
    }
    return compose_outage(direct_outage(ctx), empty_relay_prob(ctx), p_x, ctx.options.composition);
}

std::vector<CurvePoint> analytic_curve(const NetworkConfig& base, SweepVariable variable,
                                       const std::vector<double>& grid, Scheme scheme,
                                       Selection selection, const AnalyticOptions& options) {
    validate_grid(grid);
    std::vector<CurvePoint> curve;
    curve.reserve(grid.size());
    for (double value : grid) {
        const auto ctx = AnalyticContext::make(apply_sweep(base, variable, value), options);
        curve.push_back({value, scheme, selection, outage(ctx, scheme, selection)});
    }
    return curve;
}

}  // namespace relaynet::analytic
