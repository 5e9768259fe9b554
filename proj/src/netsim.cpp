#include "relaynet/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "relaynet/analytic.hpp"
#include "relaynet/combining.hpp"
#include "relaynet/errors.hpp"

namespace relaynet::netsim {
namespace {

double link_gain(Point a, Point b, double alpha) {
    const double r2 = geometry::distance_sq(a, b);
    if (r2 == 0.0) {
        throw SingularityError("co-located transmitter and receiver");
    }
    return geometry::path_gain_sq(r2, alpha);
}

}  // namespace

Contention split_contention(const std::vector<Point>& nodes, double p, RngStream& rng) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ConfigError("p: must lie in (0, 1)");
    }
    Contention out;
    for (const Point& node : nodes) {
        (rng.uniform() < p ? out.sources : out.idles).push_back(node);
    }
    return out;
}

double aggregate_interference(Point receiver, std::span<const Point> transmitters,
                              std::span<const double> fading, double alpha) {
    if (transmitters.size() != fading.size()) {
        throw ContractViolation("aggregate_interference: one fading draw per transmitter");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < transmitters.size(); ++k) {
        total += fading[k] * link_gain(transmitters[k], receiver, alpha);
    }
    return total;
}

bool decode_success(double gain, double interference, double beta) {
    if (interference == 0.0) {
        return gain > 0.0;
    }
    return gain >= beta * interference;
}

double FadingField::operator()(std::uint64_t tx, std::uint64_t rx, Phase phase) const {
    const std::uint64_t link =
        splitmix64(tx ^ splitmix64(rx * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(phase)));
    const std::uint64_t bits = splitmix64(key_ ^ link);
    const double u = static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    return -std::log(u);
}

SpatialGrid::SpatialGrid(const std::vector<Point>& points, double cell)
    : points_(&points), cell_(cell) {
    if (!(cell > 0.0)) {
        throw ContractViolation("SpatialGrid: cell size must be positive");
    }
    if (points.empty()) {
        return;
    }
    double min_x = points[0].x, max_x = points[0].x;
    double min_y = points[0].y, max_y = points[0].y;
    for (const Point& pt : points) {
        min_x = std::min(min_x, pt.x);
        max_x = std::max(max_x, pt.x);
        min_y = std::min(min_y, pt.y);
        max_y = std::max(max_y, pt.y);
    }
    // cap the bucket count near 4 per point when the query radius is tiny
    const double span = std::max(max_x - min_x, max_y - min_y);
    cell_ = std::max(cell_, span / (2.0 * std::sqrt(static_cast<double>(points.size())) + 1.0));
    min_ix_ = cell_of(min_x);
    min_iy_ = cell_of(min_y);
    nx_ = cell_of(max_x) - min_ix_ + 1;
    ny_ = cell_of(max_y) - min_iy_ + 1;
    buckets_.resize(static_cast<std::size_t>(nx_ * ny_));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto ix = cell_of(points[i].x) - min_ix_;
        const auto iy = cell_of(points[i].y) - min_iy_;
        buckets_[static_cast<std::size_t>(iy * nx_ + ix)].push_back(i);
    }
}

std::int64_t SpatialGrid::cell_of(double v) const {
    return static_cast<std::int64_t>(std::floor(v / cell_));
}

std::vector<std::size_t> SpatialGrid::within(Point center, double radius) const {
    std::vector<std::size_t> out;
    if (buckets_.empty()) {
        return out;
    }
    const auto x0 = std::max(cell_of(center.x - radius) - min_ix_, std::int64_t{0});
    const auto x1 = std::min(cell_of(center.x + radius) - min_ix_, nx_ - 1);
    const auto y0 = std::max(cell_of(center.y - radius) - min_iy_, std::int64_t{0});
    const auto y1 = std::min(cell_of(center.y + radius) - min_iy_, ny_ - 1);
    const double r2 = radius * radius;
    for (auto iy = y0; iy <= y1; ++iy) {
        for (auto ix = x0; ix <= x1; ++ix) {
            for (std::size_t i : buckets_[static_cast<std::size_t>(iy * nx_ + ix)]) {
                if (geometry::distance_sq((*points_)[i], center) <= r2) {
                    out.push_back(i);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BroadcastState::BroadcastState(Contention contention, FadingField fading, double alpha, double d_s)
    : contention_(std::move(contention)),
      fading_(fading),
      alpha_(alpha),
      idle_grid_(contention_.idles, d_s),
      power_(contention_.idles.size(), std::numeric_limits<double>::quiet_NaN()),
      top_signal_(contention_.idles.size(), 0.0),
      second_signal_(contention_.idles.size(), 0.0) {}

std::uint64_t BroadcastState::tx_id(std::size_t tx) const {
    return tx == kTypical ? ids::typical_source : ids::source(tx);
}

Point BroadcastState::tx_pos(std::size_t tx) const {
    return tx == kTypical ? typical_source() : contention_.sources[tx];
}

double BroadcastState::signal_at_idle(std::size_t tx, std::size_t j) const {
    return fading_(tx_id(tx), ids::idle(j), Phase::broadcast) *
           link_gain(tx_pos(tx), contention_.idles[j], alpha_);
}

double BroadcastState::received_power(std::size_t j) {
    if (!std::isnan(power_[j])) {
        return power_[j];
    }
    double total = 0.0, top = 0.0, second = 0.0;
    auto add = [&](double s) {
        total += s;
        if (s > top) {
            second = top;
            top = s;
        } else if (s > second) {
            second = s;
        }
    };
    add(signal_at_idle(kTypical, j));
    for (std::size_t k = 0; k < contention_.sources.size(); ++k) {
        add(signal_at_idle(k, j));
    }
    power_[j] = total;
    top_signal_[j] = top;
    second_signal_[j] = second;
    evaluated_.push_back(j);
    return total;
}

int BroadcastState::decoded_count(std::size_t j, double beta) {
    const double total = received_power(j);
    int count = 0;
    for (double s : {top_signal_[j], second_signal_[j]}) {
        if (s > 0.0 && decode_success(s, std::max(total - s, 0.0), beta)) {
            ++count;
        }
    }
    return count;
}

RelayCandidateSet find_potential_relays(BroadcastState& state, std::size_t tx,
                                        const geometry::SectorRegion& sector, Point destination,
                                        std::uint64_t destination_id, double beta) {
    RelayCandidateSet out;
    out.source = tx == BroadcastState::kTypical ? ids::typical_source : ids::source(tx);
    const auto& idles = state.contention().idles;
    for (std::size_t j : state.idle_grid().within(sector.apex, sector.max_distance)) {
        if (!geometry::in_sector(idles[j], sector)) {
            continue;
        }
        const double total = state.received_power(j);
        const double signal = state.signal_at_idle(tx, j);
        if (!decode_success(signal, std::max(total - signal, 0.0), beta)) {
            continue;
        }
        const double gain = state.fading()(ids::idle(j), destination_id, Phase::relay) *
                            link_gain(idles[j], destination, state.alpha());
        out.members.push_back({j, idles[j], gain});
    }
    return out;
}

std::optional<RelayCandidate> select_relay_best(const RelayCandidateSet& candidates) {
    std::optional<RelayCandidate> best;
    for (const auto& c : candidates.members) {
        if (!best || c.gain_to_destination > best->gain_to_destination) {
            best = c;
        }
    }
    return best;
}

std::optional<RelayCandidate> select_relay_random(const RelayCandidateSet& candidates,
                                                  RngStream& rng) {
    const double u = rng.uniform();
    const std::size_t n = candidates.members.size();
    if (n == 0) {
        return std::nullopt;
    }
    const auto idx = std::min(static_cast<std::size_t>(u * static_cast<double>(n)), n - 1);
    return candidates.members[idx];
}

std::vector<Emitter> second_phase_interferers(InterfererMode mode, BroadcastState& state,
                                              const RelayPhaseContext& ctx, RngStream& rng) {
    if (ctx.config == nullptr) {
        throw ContractViolation("second_phase_interferers: missing config");
    }
    std::vector<Emitter> out;
    if (mode == InterfererMode::thinned) {
        const auto points = geometry::sample_ppp(ctx.thinned_intensity, ctx.window, rng);
        out.reserve(points.size());
        for (std::size_t k = 0; k < points.size(); ++k) {
            out.push_back({points[k], ids::thinned(k)});
        }
        return out;
    }
    if (mode != InterfererMode::full) {
        throw ConfigError("interferer_mode: unknown mode");
    }
    const NetworkConfig& cfg = *ctx.config;
    const auto& sources = state.contention().sources;
    std::vector<std::size_t> chosen;
    for (std::size_t k = 0; k < sources.size(); ++k) {
        const double heading = 2.0 * std::numbers::pi * rng.uniform();
        const Point dest = Point::polar(cfg.d, heading, sources[k]);
        const geometry::SectorRegion sector{sources[k], heading, cfg.effective_half_angle(),
                                            cfg.d_s};
        const auto candidates =
            find_potential_relays(state, k, sector, dest, ids::destination(k), cfg.beta_coop);
        const auto random_pick = select_relay_random(candidates, rng);
        const auto pick =
            ctx.selection == Selection::best ? select_relay_best(candidates) : random_pick;
        if (pick && pick->idle_index != ctx.typical_relay) {
            chosen.push_back(pick->idle_index);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    out.reserve(chosen.size());
    for (std::size_t j : chosen) {
        out.push_back({state.contention().idles[j], ids::idle(j)});
    }
    return out;
}

int scheme_slot(Scheme cooperative) {
    switch (cooperative) {
        case Scheme::oc: return 0;
        case Scheme::mrc: return 1;
        case Scheme::sc: return 2;
        case Scheme::direct: break;
    }
    throw ContractViolation("scheme_slot: direct has no cooperative slot");
}

bool TrialOutcome::outage(Scheme scheme, Selection selection) const {
    if (scheme == Scheme::direct) {
        return direct_outage;
    }
    return at(selection).outage[static_cast<std::size_t>(scheme_slot(scheme))];
}

TrialPlan TrialPlan::make(const NetworkConfig& config) {
    config.validate();
    TrialPlan plan;
    plan.config = config;
    plan.window = config.window();
    plan.window.validate();
    plan.thinned_intensity = analytic::relay_interferer_intensity(config, config.beta_coop);
    plan.probe_radius = 0.5 * plan.window.radius;
    return plan;
}

TrialOutcome simulate_trial(const TrialPlan& plan, std::uint64_t master_seed,
                            std::uint64_t trial_index) {
    const NetworkConfig& cfg = plan.config;
    RngStream rng = RngStream::for_trial(master_seed, trial_index);
    auto contention = split_contention(geometry::sample_ppp(cfg.lambda, plan.window, rng), cfg.p, rng);
    const FadingField fading(rng());
    BroadcastState state(std::move(contention), fading, cfg.alpha, cfg.d_s);

    const Point dest{cfg.d, 0.0};
    const auto& sources = state.contention().sources;
    const double g_sd = fading(ids::typical_source, ids::typical_destination, Phase::broadcast) *
                        geometry::path_gain(cfg.d, cfg.alpha);
    double i_direct = 0.0;
    for (std::size_t k = 0; k < sources.size(); ++k) {
        i_direct += fading(ids::source(k), ids::typical_destination, Phase::broadcast) *
                    link_gain(sources[k], dest, cfg.alpha);
    }

    TrialOutcome out;
    out.index = trial_index;
    out.direct_sir = combining::branch_sir(g_sd, i_direct);
    out.direct_outage = out.direct_sir < cfg.beta_direct;
    out.direct_fail_coop = out.direct_sir < cfg.beta_coop;
    out.zero_interference = i_direct == 0.0;

    const auto candidates =
        find_potential_relays(state, BroadcastState::kTypical, cfg.typical_sector(), dest,
                              ids::typical_destination, cfg.beta_coop);
    out.candidate_count = candidates.members.size();
    const std::array<std::optional<RelayCandidate>, 2> picks{select_relay_best(candidates),
                                                             select_relay_random(candidates, rng)};

    const RngStream relay_stream = rng;
    const double probe_r2 = plan.probe_radius * plan.probe_radius;
    for (Selection sel : kSelections) {
        const auto& pick = picks[static_cast<std::size_t>(sel)];
        RelayPhaseContext ctx{&cfg, plan.window, plan.thinned_intensity, sel, std::nullopt};
        if (pick) {
            ctx.typical_relay = pick->idle_index;
        }
        RngStream stream = relay_stream;
        const auto interferers = second_phase_interferers(cfg.interferer_mode, state, ctx, stream);

        SelectionOutcome& so = out.by_selection[static_cast<std::size_t>(sel)];
        so.interferer_count = interferers.size();
        double i_relay = 0.0;
        for (const Emitter& e : interferers) {
            i_relay += fading(e.id, ids::typical_destination, Phase::relay) *
                       link_gain(e.position, dest, cfg.alpha);
            if (geometry::distance_sq(e.position, {}) <= probe_r2) {
                ++so.probe_count;
            }
        }
        so.relay_present = pick.has_value();
        so.i_relay = i_relay;
        combining::LinkObservation obs{g_sd, i_direct, so.relay_present, 0.0, i_relay,
                                       so.relay_present};
        if (pick) {
            obs.g_rd = pick->gain_to_destination;
            so.relay_sir = combining::branch_sir(obs.g_rd, i_relay);
            out.zero_interference = out.zero_interference || i_relay == 0.0;
        }
        for (Scheme scheme : kCooperativeSchemes) {
            so.outage[static_cast<std::size_t>(scheme_slot(scheme))] =
                combining::outage_verdict(scheme, obs, cfg.beta_coop, cfg.beta_direct);
        }
    }

    for (std::size_t j : state.evaluated_idles()) {
        if (state.decoded_count(j, cfg.beta_coop) >= 2) {
            ++out.multi_decode_idles;
        }
    }
    out.evaluated_idles = state.evaluated_idles().size();
    return out;
}

}  // namespace relaynet::netsim
