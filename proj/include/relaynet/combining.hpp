#pragma once

#include "relaynet/config.hpp"

namespace relaynet::combining {

/// What the destination sees for one source-destination pair.
struct LinkObservation {
    double g_sd = 0.0;       ///< direct-link gain
    double i_direct = 0.0;   ///< broadcasting-phase interference at D
    bool relay_present = false;
    double g_rd = 0.0;       ///< relay-link gain
    double i_relay = 0.0;    ///< relaying-phase interference at D
    bool relay_decoded = false;
};

/// g / I with the interference-free limit mapped to +inf (0 if g == 0).
double branch_sir(double gain, double interference);

double sir_direct(const LinkObservation& obs);
double sir_relay(const LinkObservation& obs);

/// Sum of branch SIRs. Throws ContractViolation without a relay.
double sir_oc(const LinkObservation& obs);

/// (g_sd + g_rd)^2 / (g_sd I_direct + g_rd I_relay). Throws
/// SingularityError for a zero denominator under a positive numerator.
double sir_mrc(const LinkObservation& obs);

/// max(direct SIR, relay SIR).
double sir_sc(const LinkObservation& obs);

double combined_sir(Scheme scheme, const LinkObservation& obs);

/// Outage for one transmission mode. Scheme::direct compares the direct SIR
/// against beta_direct; cooperative schemes are in outage iff the direct
/// link misses beta_coop and either no decoded relay exists or the combined
/// statistic misses beta_coop. Thresholds are inclusive.
bool outage_verdict(Scheme scheme, const LinkObservation& obs, double beta_coop,
                    double beta_direct);

}  // namespace relaynet::combining
