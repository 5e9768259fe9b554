#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "relaynet/errors.hpp"
#include "relaynet/specfun.hpp"

namespace relaynet::specfun {
namespace {

// Kronrod 15-point abscissae (positive half) and weights; the 7-point
// Gauss rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod(const RealFn& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod_sum = fc * kWgk[7];
    double gauss_sum = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod_sum += kWgk[j] * pair;
        if (j % 2 == 1) {
            gauss_sum += kWg[j / 2] * pair;
        }
    }
    const double value = kronrod_sum * half;
    double error = std::fabs((kronrod_sum - gauss_sum) * half);
    // Round-off floor: an interval cannot be resolved below a few ulps of
    // the sum of |f| over it.
    error = std::max(error, 50.0 * std::numeric_limits<double>::epsilon() * std::fabs(value));
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "integrate_1d: non-finite integrand on [" << lo << ", " << hi << "]";
        throw ConvergenceError(msg.str());
    }
    return {lo, hi, value, error};
}

}  // namespace

void QuadratureSettings::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw ConfigError("QuadratureSettings: tolerances must be strictly positive");
    }
    if (max_subdivisions < 1) {
        throw ConfigError("QuadratureSettings: max_subdivisions must be at least 1");
    }
}

Integral integrate_1d_detail(const RealFn& f, double a, double b,
                             const QuadratureSettings& settings) {
    settings.validate();
    if (std::isnan(a) || std::isnan(b) || std::isinf(a)) {
        throw DomainError("integrate_1d: lower limit must be finite");
    }
    if (a == b) {
        return {};
    }
    if (std::isinf(b)) {
        if (b < 0.0) {
            throw DomainError("integrate_1d: upper limit -inf not supported");
        }
        const RealFn mapped = [&f, a](double t) {
            const double one_minus = 1.0 - t;
            const double x = a + t / one_minus;
            const double fx = f(x);
            return fx == 0.0 ? 0.0 : fx / (one_minus * one_minus);
        };
        return integrate_1d_detail(mapped, 0.0, 1.0, settings);
    }
    if (b < a) {
        Integral flipped = integrate_1d_detail(f, b, a, settings);
        flipped.value = -flipped.value;
        return flipped;
    }

    int evaluations = 15;
    std::priority_queue<Segment> heap;
    Segment first = kronrod(f, a, b);
    double total = first.value;
    double total_error = first.error;
    heap.push(first);

    for (int subdivision = 1;; ++subdivision) {
        const double target = std::max(settings.abs_tol, settings.rel_tol * std::fabs(total));
        if (total_error <= target) {
            break;
        }
        if (subdivision >= settings.max_subdivisions) {
            std::ostringstream msg;
            msg << "integrate_1d: no convergence on [" << a << ", " << b << "] after "
                << settings.max_subdivisions << " subdivisions (estimate " << total
                << ", error " << total_error << ", target " << target << ")";
            throw ConvergenceError(msg.str());
        }
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Interval exhausted at machine resolution; accept what we have.
            break;
        }
        heap.pop();
        const Segment left = kronrod(f, worst.lo, mid);
        const Segment right = kronrod(f, mid, worst.hi);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift accumulated by incremental updates.
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error, evaluations};
}

double integrate_1d(const RealFn& f, double a, double b, const QuadratureSettings& settings) {
    return integrate_1d_detail(f, a, b, settings).value;
}

double integrate_endpoint_power(const RealFn& f, double a, double b, double delta,
                                const QuadratureSettings& settings) {
    if (!(delta > 0.0)) {
        throw DomainError("integrate_endpoint_power: exponent must be positive");
    }
    if (!(b >= a)) {
        throw DomainError("integrate_endpoint_power: need b >= a");
    }
    const double inv = 1.0 / delta;
    const RealFn g = [&f, a, inv, delta](double t) {
        if (t <= 0.0) {
            return 0.0;
        }
        // f(y) dy with y = a + t^(1/delta); the Jacobian absorbs the
        // (y - a)^(delta - 1) factor of f.
        return f(a + std::pow(t, inv)) * std::pow(t, inv - 1.0) / delta;
    };
    return integrate_1d(g, 0.0, std::pow(b - a, delta), settings);
}

double integrate_sector(const PolarFn& f, double d_s, double phi,
                        const QuadratureSettings& settings) {
    if (!(d_s > 0.0)) {
        throw DomainError("integrate_sector: radius must be positive");
    }
    if (!(phi > 0.0) || phi > 2.0 * std::numbers::pi + 1e-12) {
        throw DomainError("integrate_sector: angle must lie in (0, 2 pi]");
    }
    const RealFn over_theta = [&](double theta) {
        const RealFn over_r = [&](double r) { return f(r, theta) * r; };
        return integrate_1d(over_r, 0.0, d_s, settings);
    };
    return integrate_1d(over_theta, 0.0, phi, settings);
}

}  // namespace relaynet::specfun
