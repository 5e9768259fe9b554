#include "relaynet/combining.hpp"

#include <algorithm>
#include <limits>

#include "relaynet/errors.hpp"

namespace relaynet::combining {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_relay(const LinkObservation& obs, const char* who) {
    if (!obs.relay_present) {
        throw ContractViolation(std::string(who) + ": no relay branch present");
    }
}

}  // namespace

double branch_sir(double gain, double interference) {
    if (interference > 0.0) {
        return gain / interference;
    }
    return gain > 0.0 ? kInf : 0.0;
}

double sir_direct(const LinkObservation& obs) { return branch_sir(obs.g_sd, obs.i_direct); }

double sir_relay(const LinkObservation& obs) {
    require_relay(obs, "sir_relay");
    return branch_sir(obs.g_rd, obs.i_relay);
}

double sir_oc(const LinkObservation& obs) {
    require_relay(obs, "sir_oc");
    return sir_direct(obs) + sir_relay(obs);
}

double sir_mrc(const LinkObservation& obs) {
    require_relay(obs, "sir_mrc");
    const double signal = obs.g_sd + obs.g_rd;
    const double numerator = signal * signal;
    const double denominator = obs.g_sd * obs.i_direct + obs.g_rd * obs.i_relay;
    if (denominator > 0.0) {
        return numerator / denominator;
    }
    if (numerator > 0.0) {
        throw SingularityError("sir_mrc: zero weighted interference with positive signal");
    }
    return 0.0;
}

double sir_sc(const LinkObservation& obs) {
    require_relay(obs, "sir_sc");
    return std::max(sir_direct(obs), sir_relay(obs));
}

double combined_sir(Scheme scheme, const LinkObservation& obs) {
    switch (scheme) {
        case Scheme::direct: return sir_direct(obs);
        case Scheme::oc: return sir_oc(obs);
        case Scheme::mrc: return sir_mrc(obs);
        case Scheme::sc: return sir_sc(obs);
    }
    throw ContractViolation("combined_sir: unknown scheme");
}

bool outage_verdict(Scheme scheme, const LinkObservation& obs, double beta_coop,
                    double beta_direct) {
    if (!(beta_coop > 0.0) || !(beta_direct > 0.0)) {
        throw ContractViolation("outage_verdict: thresholds must be positive");
    }
    const double direct = sir_direct(obs);
    if (scheme == Scheme::direct) {
        return direct < beta_direct;
    }
    if (direct >= beta_coop) {
        return false;
    }
    if (!obs.relay_present || !obs.relay_decoded) {
        return true;
    }
    return combined_sir(scheme, obs) < beta_coop;
}

}  // namespace relaynet::combining
