#include "relaynet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "relaynet/errors.hpp"

namespace relaynet::montecarlo {

void OutageTally::add(const netsim::TrialOutcome& o, double beta_coop) {
    ++trials;
    direct_outage += o.direct_outage;
    direct_fail_coop += o.direct_fail_coop;
    const bool is_empty = o.candidate_count == 0;
    empty += is_empty;
    direct_fail_and_empty += is_empty && o.direct_fail_coop;
    zero_interference += o.zero_interference;
    candidates += o.candidate_count;
    for (std::size_t s = 0; s < 2; ++s) {
        const auto& so = o.by_selection[s];
        for (std::size_t k = 0; k < 3; ++k) {
            outage[s][k] += so.outage[k];
        }
        relay_fail[s] += so.relay_present && so.relay_sir < beta_coop;
        interferers[s] += so.interferer_count;
        probe_interferers[s] += so.probe_count;
    }
    multi_decode_idles += o.multi_decode_idles;
    evaluated_idles += o.evaluated_idles;
}

OutageTally& OutageTally::merge(const OutageTally& b) {
    trials += b.trials;
    direct_outage += b.direct_outage;
    direct_fail_coop += b.direct_fail_coop;
    empty += b.empty;
    direct_fail_and_empty += b.direct_fail_and_empty;
    zero_interference += b.zero_interference;
    candidates += b.candidates;
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t k = 0; k < 3; ++k) {
            outage[s][k] += b.outage[s][k];
        }
        relay_fail[s] += b.relay_fail[s];
        interferers[s] += b.interferers[s];
        probe_interferers[s] += b.probe_interferers[s];
    }
    multi_decode_idles += b.multi_decode_idles;
    evaluated_idles += b.evaluated_idles;
    return *this;
}

OutageTally operator+(OutageTally a, const OutageTally& b) { return a.merge(b); }

std::uint64_t OutageTally::outage_count(Scheme scheme, Selection selection) const {
    if (scheme == Scheme::direct) {
        return direct_outage;
    }
    return outage[static_cast<std::size_t>(selection)]
                 [static_cast<std::size_t>(netsim::scheme_slot(scheme))];
}

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
    if (n == 0 || k > n) {
        throw ContractViolation("wilson_interval: need 0 <= k <= n and n > 0");
    }
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (phat + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
    Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (k == 0) {
        out.lo = 0.0;
    }
    if (k == n) {
        out.hi = 1.0;
    }
    return out;
}

OutageEstimate make_estimate(const OutageTally& tally, Scheme scheme, Selection selection,
                             std::uint64_t seed, InterfererMode mode) {
    const std::uint64_t k = tally.outage_count(scheme, selection);
    const double n = static_cast<double>(tally.trials);
    const double phat = static_cast<double>(k) / n;
    const Interval ci = wilson_interval(k, tally.trials);
    return {scheme, selection, phat, tally.trials, std::sqrt(phat * (1.0 - phat) / n),
            ci.lo, ci.hi, seed, mode};
}

unsigned thread_count() {
    if (const char* env = std::getenv("RELAYNET_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (*end != '\0' || value < 1 || value > 1024) {
            throw ConfigError(std::string("RELAYNET_THREADS: expected a positive integer, got '") +
                              env + "'");
        }
        return static_cast<unsigned>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

OutageTally run_trials(const netsim::TrialPlan& plan, std::uint64_t n, std::uint64_t seed,
                       std::uint64_t first, unsigned threads) {
    if (threads == 0) {
        threads = thread_count();
    }
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(n, 1)));
    const double beta = plan.config.beta_coop;
    auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        OutageTally t;
        for (std::uint64_t i = lo; i < hi; ++i) {
            t.add(netsim::simulate_trial(plan, seed, i), beta);
        }
        return t;
    };
    if (threads <= 1) {
        return run_range(first, first + n);
    }
    std::vector<OutageTally> parts(threads);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        const std::uint64_t lo = first + n * w / threads;
        const std::uint64_t hi = first + n * (w + 1) / threads;
        pool.emplace_back([&, w, lo, hi] {
            try {
                parts[w] = run_range(lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    OutageTally total;
    for (unsigned w = 0; w < threads; ++w) {
        if (errors[w]) {
            std::rethrow_exception(errors[w]);
        }
        total.merge(parts[w]);
    }
    return total;
}

OutageEstimate estimate_outage(const NetworkConfig& config, Scheme scheme, Selection selection,
                               std::uint64_t n_trials, std::uint64_t seed) {
    if (n_trials < kMinTrials) {
        throw ConfigError("trials: at least " + std::to_string(kMinTrials) + " required");
    }
    const auto plan = netsim::TrialPlan::make(config);
    return make_estimate(run_trials(plan, n_trials, seed), scheme, selection, seed,
                         config.interferer_mode);
}

std::vector<SweepPoint> sweep_tallies(const NetworkConfig& base, SweepVariable variable,
                                      const std::vector<double>& grid, std::uint64_t n_trials,
                                      std::uint64_t seed) {
    validate_grid(grid);
    if (n_trials < kMinTrials) {
        throw ConfigError("trials: at least " + std::to_string(kMinTrials) + " required");
    }
    std::vector<SweepPoint> out;
    out.reserve(grid.size());
    for (double value : grid) {
        const auto plan = netsim::TrialPlan::make(apply_sweep(base, variable, value));
        out.push_back({value, run_trials(plan, n_trials, seed)});
    }
    return out;
}

std::vector<SweepRow> sweep(const NetworkConfig& base, SweepVariable variable,
                            const std::vector<double>& grid, std::uint64_t n_trials,
                            std::uint64_t seed, const std::vector<Scheme>& schemes,
                            const std::vector<Selection>& selections) {
    std::vector<SweepRow> rows;
    for (const auto& point : sweep_tallies(base, variable, grid, n_trials, seed)) {
        for (Scheme scheme : schemes) {
            for (Selection sel : selections) {
                rows.push_back({point.sweep_value,
                                make_estimate(point.tally, scheme, sel, seed, base.interferer_mode)});
            }
        }
    }
    return rows;
}

}  // namespace relaynet::montecarlo
