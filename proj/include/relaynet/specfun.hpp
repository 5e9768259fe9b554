#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace relaynet::specfun {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct QuadratureSettings {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    /// Throws ConfigError unless both tolerances are positive and
    /// max_subdivisions >= 1.
    void validate() const;
};

/// Result of an adaptive integration together with its error estimate.
struct Integral {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

using RealFn = std::function<double(double)>;
using PolarFn = std::function<double(double r, double theta)>;

/// Lower regularized incomplete gamma at a = 1, i.e. 1 - exp(-x).
/// Uses expm1 so small arguments keep full relative precision.
double incomplete_gamma_1(double x);

/// Euler gamma for x > 0 (Lanczos, reflection below 1/2).
double gamma_fn(double x);

/// log Gamma(z) for complex z away from the non-positive integers.
/// Returns a value whose exponential is Gamma(z); the imaginary part is
/// not reduced to the principal branch.
std::complex<double> log_gamma(std::complex<double> z);

/// delta * pi * Gamma(delta) * Gamma(1 - delta) with delta = 2 / alpha.
/// Equals pi * delta * pi / sin(pi * delta) but is computed through
/// gamma_fn so both routes can be cross-checked.
double interference_constant(double alpha);

/// Exponential integral E1(x), x > 0.
double expint_e1(double x);

/// Tricomi confluent hypergeometric U(1, 1, x) = e^x E1(x), x > 0.
double tricomi_psi_1_1(double x);

/// Parameters of G^{m,n}_{p,q}(z | a; b).
struct MeijerSpec {
    int m = 0;
    int n = 0;
    int p = 0;
    int q = 0;
    std::vector<double> a;
    std::vector<double> b;
    double z = 1.0;
};

struct MeijerResult {
    double value = 0.0;
    double error = 0.0;
    double contour = 0.0;  // real part of the vertical integration line
};

/// Meijer G-function by direct quadrature of its Mellin-Barnes integral
/// along the vertical line Re(s) = c that separates the poles of
/// Gamma(b_j - s), j <= m, from those of Gamma(1 - a_j + s), j <= n.
///
/// Supported: real parameters, z > 0 and m + n > (p + q) / 2 so the
/// integrand decays exponentially along the line. Throws
/// UnsupportedParameters when no separating line exists or the decay
/// condition fails, ConvergenceError when the tail does not die out.
MeijerResult meijer_g_detail(const MeijerSpec& spec,
                             const QuadratureSettings& settings = {});

double meijer_g(const MeijerSpec& spec, const QuadratureSettings& settings = {});

/// Adaptive Gauss-Kronrod (7/15) quadrature on [a, b]; b may be +inf, in
/// which case the tail is mapped with x = a + t / (1 - t).
Integral integrate_1d_detail(const RealFn& f, double a, double b,
                             const QuadratureSettings& settings = {});

double integrate_1d(const RealFn& f, double a, double b,
                    const QuadratureSettings& settings = {});

/// Integral over [a, b] of f where f(y) behaves like (y - a)^(delta - 1)
/// at the left endpoint. Substitutes t = (y - a)^delta, which turns the
/// integrand into a bounded one: integral of f(a + t^(1/delta)) *
/// t^(1/delta - 1) / delta over [0, (b - a)^delta].
double integrate_endpoint_power(const RealFn& f, double a, double b, double delta,
                                const QuadratureSettings& settings = {});

/// Integral of f(r, theta) r dr dtheta over 0 <= theta <= phi,
/// 0 <= r <= d_s by nested adaptive quadrature (theta outer).
double integrate_sector(const PolarFn& f, double d_s, double phi,
                        const QuadratureSettings& settings = {});

}  // namespace relaynet::specfun
