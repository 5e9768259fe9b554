#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "relaynet/config.hpp"
#include "relaynet/netsim.hpp"

namespace relaynet::montecarlo {

inline constexpr double kWilsonZ95 = 1.959963984540054;
inline constexpr std::uint64_t kMinTrials = 100;
inline constexpr std::uint64_t kDefaultTrials = 20000;

/// Integer counts over a batch of trials. Merging is exact, so any
/// partition of the trial range yields the same totals.
struct OutageTally {
    std::uint64_t trials = 0;
    std::uint64_t direct_outage = 0;     ///< at beta_direct
    std::uint64_t direct_fail_coop = 0;  ///< direct SIR below beta_coop
    std::uint64_t empty = 0;             ///< no candidate relay
    std::uint64_t direct_fail_and_empty = 0;
    std::uint64_t zero_interference = 0;
    std::uint64_t candidates = 0;  ///< summed candidate-set sizes
    std::array<std::array<std::uint64_t, 3>, 2> outage{};  ///< [selection][oc, mrc, sc]
    std::array<std::uint64_t, 2> relay_fail{};  ///< relay present, relay SIR below beta_coop
    std::array<std::uint64_t, 2> interferers{};
    std::array<std::uint64_t, 2> probe_interferers{};
    std::uint64_t multi_decode_idles = 0;
    std::uint64_t evaluated_idles = 0;

    void add(const netsim::TrialOutcome& outcome, double beta_coop);
    OutageTally& merge(const OutageTally& other);

    std::uint64_t outage_count(Scheme scheme, Selection selection) const;

    friend bool operator==(const OutageTally&, const OutageTally&) = default;
};

OutageTally operator+(OutageTally a, const OutageTally& b);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval for k successes out of n.
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z = kWilsonZ95);

struct OutageEstimate {
    Scheme scheme = Scheme::direct;
    Selection selection = Selection::random;
    double estimate = 0.0;
    std::uint64_t n_trials = 0;
    double std_error = 0.0;  ///< sqrt(p (1 - p) / n)
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    std::uint64_t seed = 0;
    InterfererMode mode = InterfererMode::thinned;
};

OutageEstimate make_estimate(const OutageTally& tally, Scheme scheme, Selection selection,
                             std::uint64_t seed, InterfererMode mode);

/// Worker count from RELAYNET_THREADS, else the hardware concurrency.
unsigned thread_count();

/// Trials [first, first + n) of the stream `seed`, split across `threads`
/// workers (0 = thread_count()) and merged in index order.
OutageTally run_trials(const netsim::TrialPlan& plan, std::uint64_t n, std::uint64_t seed,
                       std::uint64_t first = 0, unsigned threads = 0);

/// Throws ConfigError when n_trials < kMinTrials.
OutageEstimate estimate_outage(const NetworkConfig& config, Scheme scheme, Selection selection,
                               std::uint64_t n_trials, std::uint64_t seed);

struct SweepPoint {
    double sweep_value = 0.0;
    OutageTally tally;
};

struct SweepRow {
    double sweep_value = 0.0;
    OutageEstimate estimate;
};

/// Tallies per grid point. Every point reuses the master seed, so curve
/// shapes are compared on paired streams.
std::vector<SweepPoint> sweep_tallies(const NetworkConfig& base, SweepVariable variable,
                                      const std::vector<double>& grid, std::uint64_t n_trials,
                                      std::uint64_t seed);

/// One row per grid point, scheme and selection, in that nesting order.
std::vector<SweepRow> sweep(const NetworkConfig& base, SweepVariable variable,
                            const std::vector<double>& grid, std::uint64_t n_trials,
                            std::uint64_t seed,
                            const std::vector<Scheme>& schemes = {Scheme::direct, Scheme::oc,
                                                                  Scheme::mrc, Scheme::sc},
                            const std::vector<Selection>& selections = {Selection::best,
                                                                        Selection::random});

}  // namespace relaynet::montecarlo
