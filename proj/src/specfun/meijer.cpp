#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "relaynet/errors.hpp"
#include "relaynet/specfun.hpp"

namespace relaynet::specfun {
namespace {

using cd = std::complex<double>;

bool at_pole(cd z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

void check_spec(const MeijerSpec& spec) {
    const auto bad = [](const char* what) {
        throw UnsupportedParameters(std::string("meijer_g: ") + what);
    };
    if (spec.m < 0 || spec.n < 0 || spec.p < 0 || spec.q < 0) bad("negative order");
    if (spec.m > spec.q || spec.n > spec.p) bad("need m <= q and n <= p");
    if (static_cast<int>(spec.a.size()) != spec.p) bad("size(a) != p");
    if (static_cast<int>(spec.b.size()) != spec.q) bad("size(b) != q");
    if (!(spec.z > 0.0) || !std::isfinite(spec.z)) {
        throw DomainError("meijer_g: argument must be positive and finite");
    }
    if (2 * (spec.m + spec.n) <= spec.p + spec.q) {
        bad("Mellin-Barnes integrand does not decay along a vertical line (m + n <= (p + q) / 2)");
    }
}

/// Real part of the separating line; throws if the pole families overlap.
double choose_contour(const MeijerSpec& spec) {
    double lower = -std::numeric_limits<double>::infinity();  // right-most left pole
    double upper = std::numeric_limits<double>::infinity();   // left-most right pole
    for (int j = 0; j < spec.n; ++j) lower = std::max(lower, spec.a[j] - 1.0);
    for (int j = 0; j < spec.m; ++j) upper = std::min(upper, spec.b[j]);
    if (!(lower < upper)) {
        std::ostringstream msg;
        msg << "meijer_g: no vertical contour separates the pole families (left poles up to "
            << lower << ", right poles from " << upper << ")";
        throw UnsupportedParameters(msg.str());
    }
    if (std::isinf(lower) && std::isinf(upper)) return 0.0;
    if (std::isinf(lower)) return upper - 0.5;
    if (std::isinf(upper)) return lower + 0.5;
    return 0.5 * (lower + upper);
}

/// Mellin-Barnes integrand Gamma-ratio times z^s.
cd integrand(const MeijerSpec& spec, cd s, double log_z) {
    cd log_value = s * log_z;
    for (int j = 0; j < spec.m; ++j) log_value += log_gamma(spec.b[j] - s);
    for (int j = 0; j < spec.n; ++j) log_value += log_gamma(1.0 - spec.a[j] + s);
    for (int j = spec.m; j < spec.q; ++j) {
        const cd arg = 1.0 - spec.b[j] + s;
        if (at_pole(arg)) return 0.0;  // 1/Gamma vanishes
        log_value -= log_gamma(arg);
    }
    for (int j = spec.n; j < spec.p; ++j) {
        const cd arg = spec.a[j] - s;
        if (at_pole(arg)) return 0.0;
        log_value -= log_gamma(arg);
    }
    return std::exp(log_value);
}

}  // namespace

MeijerResult meijer_g_detail(const MeijerSpec& spec, const QuadratureSettings& settings) {
    settings.validate();
    check_spec(spec);
    const double c = choose_contour(spec);
    const double log_z = std::log(spec.z);

    // G = (1 / 2 pi) int_{-inf}^{inf} F(c + i t) dt and F(c - i t) is the
    // conjugate of F(c + i t) for real parameters, so G = (1 / pi) int_0^inf Re F.
    const RealFn re_part = [&](double t) { return integrand(spec, cd(c, t), log_z).real(); };
    const auto magnitude = [&](double t) { return std::abs(integrand(spec, cd(c, t), log_z)); };

    constexpr double kPanel = 1.0;
    constexpr int kMaxPanels = 400;
    constexpr double kTruncation = 1e-16;
    double peak = magnitude(0.0);
    double sum = 0.0;
    double error = 0.0;
    for (int k = 0;; ++k) {
        if (k >= kMaxPanels) {
            std::ostringstream msg;
            msg << "meijer_g: Mellin-Barnes tail not negligible after t = " << k * kPanel
                << " (z = " << spec.z << ", contour Re(s) = " << c << ")";
            throw ConvergenceError(msg.str());
        }
        const double lo = k * kPanel;
        const double hi = lo + kPanel;
        QuadratureSettings panel = settings;
        panel.abs_tol = std::max(settings.abs_tol * 1e-3, kTruncation * peak);
        const Integral piece = integrate_1d_detail(re_part, lo, hi, panel);
        sum += piece.value;
        error += piece.error;
        const double edge = magnitude(hi);
        peak = std::max(peak, edge);
        if (edge < kTruncation * peak && std::fabs(piece.value) < kTruncation * peak) {
            break;
        }
    }
    return {sum / std::numbers::pi, error / std::numbers::pi, c};
}

double meijer_g(const MeijerSpec& spec, const QuadratureSettings& settings) {
    return meijer_g_detail(spec, settings).value;
}

}  // namespace relaynet::specfun
