#include <array>
#include <cmath>
#include <numbers>

#include "relaynet/errors.hpp"
#include "relaynet/specfun.hpp"

namespace relaynet::specfun {
namespace {

// Lanczos approximation, g = 7, nine terms. Relative error ~1e-15 for
// Re(z) >= 1/2.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

template <class T>
T lanczos_series(T zm1) {
    T acc = T(kLanczos[0]);
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        acc += kLanczos[i] / (zm1 + T(static_cast<double>(i)));
    }
    return acc;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("gamma_fn: argument must be positive and finite");
    }
    if (x < 0.5) {
        // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    const double zm1 = x - 1.0;
    const double t = zm1 + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, zm1 + 0.5) * std::exp(-t) *
           lanczos_series(zm1);
}

std::complex<double> log_gamma(std::complex<double> z) {
    using cd = std::complex<double>;
    // Shift right with the recurrence instead of reflecting: no sin() of a
    // large imaginary argument and no branch bookkeeping. Only exp() of the
    // result is ever used.
    cd shift(0.0, 0.0);
    while (z.real() < 0.5) {
        if (z.imag() == 0.0 && z.real() == std::round(z.real())) {
            throw DomainError("log_gamma: pole at non-positive integer");
        }
        shift += std::log(z);
        z += 1.0;
    }
    const cd zm1 = z - 1.0;
    const cd t = zm1 + kLanczosG + 0.5;
    const cd value = 0.5 * std::log(2.0 * std::numbers::pi) + (zm1 + 0.5) * std::log(t) - t +
                     std::log(lanczos_series(zm1));
    return value - shift;
}

double incomplete_gamma_1(double x) {
    if (std::isnan(x) || x < 0.0) {
        throw DomainError("incomplete_gamma_1: argument must be non-negative");
    }
    return -std::expm1(-x);
}

double interference_constant(double alpha) {
    if (!(alpha > 2.0) || !std::isfinite(alpha)) {
        throw DomainError("interference_constant: path-loss exponent must exceed 2");
    }
    const double delta = 2.0 / alpha;
    return delta * std::numbers::pi * gamma_fn(delta) * gamma_fn(1.0 - delta);
}

double expint_e1(double x) {
    if (!(x > 0.0)) {
        throw DomainError("expint_e1: argument must be positive");
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    if (x < 1.0) {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 200; ++k) {
            term *= -x / k;
            const double contrib = -term / k;
            sum += contrib;
            if (std::fabs(contrib) < 1e-17 * std::fabs(sum)) {
                break;
            }
        }
        return -std::numbers::egamma - std::log(x) + sum;
    }
    return tricomi_psi_1_1(x) * std::exp(-x);
}

double tricomi_psi_1_1(double x) {
    if (!(x > 0.0)) {
        throw DomainError("tricomi_psi_1_1: argument must be positive");
    }
    if (x < 1.0) {
        return std::exp(x) * expint_e1(x);
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    // Modified Lentz on the continued fraction
    // e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...)))
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) {
            return h;
        }
    }
    throw ConvergenceError("tricomi_psi_1_1: continued fraction did not converge");
}

}  // namespace relaynet::specfun
