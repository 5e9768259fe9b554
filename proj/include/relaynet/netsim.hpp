#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "relaynet/config.hpp"
#include "relaynet/geometry.hpp"
#include "relaynet/rng.hpp"

namespace relaynet::netsim {

using geometry::Point;

struct Contention {
    std::vector<Point> sources;
    std::vector<Point> idles;
};

/// Independent Bernoulli(p) labelling; transmitters go to `sources`.
/// Order within each group follows the input order.
Contention split_contention(const std::vector<Point>& nodes, double p, RngStream& rng);

/// sum_k fading[k] * |transmitters[k] - receiver|^-alpha.
double aggregate_interference(Point receiver, std::span<const Point> transmitters,
                              std::span<const double> fading, double alpha);

/// gain / interference >= beta, with interference == 0 counted as success
/// for any positive gain.
bool decode_success(double gain, double interference, double beta);

enum class Phase : std::uint32_t { broadcast = 1, relay = 2 };

/// Node identifiers used to key fading draws.
namespace ids {
inline constexpr std::uint64_t typical_source = 0;
inline constexpr std::uint64_t typical_destination = 1;
inline constexpr std::uint64_t source(std::size_t k) { return (1ULL << 40) | k; }
inline constexpr std::uint64_t idle(std::size_t j) { return (2ULL << 40) | j; }
inline constexpr std::uint64_t destination(std::size_t k) { return (3ULL << 40) | k; }
inline constexpr std::uint64_t thinned(std::size_t k) { return (4ULL << 40) | k; }
}  // namespace ids

/// Counter-based block fading: h(tx, rx, phase) is a fixed unit-mean
/// exponential for a given key, so a link queried twice in the same phase
/// sees the same draw, and phases are independent.
class FadingField {
  public:
    explicit FadingField(std::uint64_t key = 0) : key_(key) {}

    double operator()(std::uint64_t tx, std::uint64_t rx, Phase phase) const;

  private:
    std::uint64_t key_;
};

/// Transmitters and their fading toward one receiver.
struct PhaseRealization {
    std::vector<Point> transmitters;
    std::vector<double> fading;
    Point receiver;

    double interference(double alpha) const {
        return aggregate_interference(receiver, transmitters, fading, alpha);
    }
};

struct RelayCandidate {
    std::size_t idle_index = 0;
    Point position;
    /// Broadcast-slot measured gain toward the destination; reused in the
    /// relaying slot.
    double gain_to_destination = 0.0;
};

struct RelayCandidateSet {
    std::uint64_t source = 0;
    std::vector<RelayCandidate> members;
};

/// Bucket grid over a point set for fixed-radius neighbour queries.
class SpatialGrid {
  public:
    SpatialGrid() = default;
    SpatialGrid(const std::vector<Point>& points, double cell);

    /// Indices of points within `radius` of `center`, in ascending order.
    std::vector<std::size_t> within(Point center, double radius) const;

  private:
    std::int64_t cell_of(double v) const;

    const std::vector<Point>* points_ = nullptr;
    double cell_ = 1.0;
    std::int64_t min_ix_ = 0, min_iy_ = 0, nx_ = 0, ny_ = 0;
    std::vector<std::vector<std::size_t>> buckets_;
};

/// Broadcast slot of one network realization. The typical source sits at the
/// origin and its destination at (d, 0); neither belongs to the PPP.
class BroadcastState {
  public:
    BroadcastState(Contention contention, FadingField fading, double alpha, double d_s);
    BroadcastState(const BroadcastState&) = delete;
    BroadcastState& operator=(const BroadcastState&) = delete;

    const Contention& contention() const { return contention_; }
    const FadingField& fading() const { return fading_; }
    double alpha() const { return alpha_; }

    Point typical_source() const { return {0.0, 0.0}; }

    /// Broadcast-slot signal power from transmitter `tx` (kTypical = the
    /// typical source) at idle j.
    double signal_at_idle(std::size_t tx, std::size_t j) const;

    /// Total broadcast-slot received power at idle j from every transmitter,
    /// the typical source included. Cached.
    double received_power(std::size_t j);

    /// Number of distinct transmitters idle j decodes at threshold beta.
    /// Only meaningful after received_power(j).
    int decoded_count(std::size_t j, double beta);

    /// Indices of idles whose received power has been evaluated.
    const std::vector<std::size_t>& evaluated_idles() const { return evaluated_; }

    const SpatialGrid& idle_grid() const { return idle_grid_; }

    static constexpr std::size_t kTypical = static_cast<std::size_t>(-1);

  private:
    std::uint64_t tx_id(std::size_t tx) const;
    Point tx_pos(std::size_t tx) const;

    Contention contention_;
    FadingField fading_;
    double alpha_;
    SpatialGrid idle_grid_;
    std::vector<double> power_;
    std::vector<double> top_signal_;
    std::vector<double> second_signal_;
    std::vector<std::size_t> evaluated_;
};

/// Idles inside `sector` that decode transmitter `tx` at threshold beta
/// (interference = every other broadcast-slot transmitter). Gains toward
/// `destination` use the relaying-phase draw keyed by `destination_id`.
RelayCandidateSet find_potential_relays(BroadcastState& state, std::size_t tx,
                                        const geometry::SectorRegion& sector, Point destination,
                                        std::uint64_t destination_id, double beta);

/// Candidate with the largest gain toward the destination; lowest index on ties.
std::optional<RelayCandidate> select_relay_best(const RelayCandidateSet& candidates);

/// Uniform pick. Always consumes exactly one uniform from `rng` so streams
/// stay aligned whether or not the set is empty.
std::optional<RelayCandidate> select_relay_random(const RelayCandidateSet& candidates,
                                                  RngStream& rng);

struct Emitter {
    Point position;
    std::uint64_t id = 0;
};

/// Everything the relaying slot needs beyond the broadcast state.
struct RelayPhaseContext {
    const NetworkConfig* config = nullptr;
    geometry::SimWindow window;
    double thinned_intensity = 0.0;  ///< used by the thinned mode
    Selection selection = Selection::random;
    std::optional<std::size_t> typical_relay;  ///< idle index of R
};

/// Relaying-slot interferers seen by the typical destination.
/// thinned: fresh PPP of intensity `thinned_intensity` on the window.
/// full: every other source draws a destination at distance d in a uniform
/// direction, discovers candidates in its own sector and selects one; the
/// distinct selected relays other than R are returned.
std::vector<Emitter> second_phase_interferers(InterfererMode mode, BroadcastState& state,
                                              const RelayPhaseContext& ctx, RngStream& rng);

struct SelectionOutcome {
    bool relay_present = false;
    double relay_sir = 0.0;
    double i_relay = 0.0;
    std::array<bool, 3> outage{};  ///< indexed by scheme: oc, mrc, sc
    std::size_t interferer_count = 0;
    std::size_t probe_count = 0;  ///< relaying-slot interferers in the probe disc

    friend bool operator==(const SelectionOutcome&, const SelectionOutcome&) = default;
};

struct TrialOutcome {
    std::uint64_t index = 0;
    double direct_sir = 0.0;
    bool direct_outage = false;     ///< direct-only, at beta_direct
    bool direct_fail_coop = false;  ///< direct SIR below beta_coop
    std::size_t candidate_count = 0;
    bool zero_interference = false;  ///< some SIR hit the interference-free convention
    std::array<SelectionOutcome, 2> by_selection{};  ///< indexed by Selection
    std::size_t multi_decode_idles = 0;
    std::size_t evaluated_idles = 0;

    const SelectionOutcome& at(Selection s) const { return by_selection[static_cast<int>(s)]; }
    /// Outage verdict for a scheme; direct ignores the selection.
    bool outage(Scheme scheme, Selection selection) const;

    friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

int scheme_slot(Scheme cooperative);

/// Per-configuration constants shared by all trials.
struct TrialPlan {
    NetworkConfig config;
    geometry::SimWindow window;
    double thinned_intensity = 0.0;
    double probe_radius = 0.0;

    static TrialPlan make(const NetworkConfig& config);
};

/// One two-slot realization for the typical pair, evaluated for both
/// selection rules and every scheme on shared draws.
TrialOutcome simulate_trial(const TrialPlan& plan, std::uint64_t master_seed,
                            std::uint64_t trial_index);

}  // namespace relaynet::netsim
