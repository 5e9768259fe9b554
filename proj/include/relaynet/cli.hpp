#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relaynet/analytic.hpp"
#include "relaynet/config.hpp"
#include "relaynet/montecarlo.hpp"

namespace relaynet::cli {

enum class Verb { simulate, analyze, compare, sweep };

std::string_view to_string(Verb);
Verb parse_verb(std::string_view);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidSpec = 2;
inline constexpr int kExitNonConvergence = 3;

struct ExperimentSpec {
    Verb verb = Verb::simulate;
    NetworkConfig config;
    double coop_factor = 2.0;  ///< beta_coop = coop_factor * beta_direct
    SweepVariable sweep_variable = SweepVariable::lambda;
    bool has_sweep = false;
    std::vector<double> grid;  ///< empty: the configured value of the sweep variable
    std::uint64_t trials = montecarlo::kDefaultTrials;
    std::uint64_t seed = 1;
    std::vector<Scheme> schemes{Scheme::direct, Scheme::oc, Scheme::mrc, Scheme::sc};
    std::vector<Selection> selections{Selection::best, Selection::random};
    analytic::AnalyticOptions analytic;
    double tolerance = 0.05;  ///< compare: absolute agreement allowance
    std::string out = "-";    ///< CSV destination, "-" for stdout
    std::string summary;      ///< compare: JSON destination, default out + ".json"

    /// Grid actually evaluated.
    std::vector<double> effective_grid() const;
    /// Throws ConfigError.
    void validate() const;
};

/// Applies one `key = value` setting. Keys match the long flag names with
/// '-' replaced by '_'. Throws ConfigError naming the key.
void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value);

/// Reads a flat `key = value` file; '#' starts a comment. Errors carry
/// `origin:line`.
void apply_config_text(ExperimentSpec& spec, std::istream& in, const std::string& origin);

/// Sets beta_coop from beta_direct and coop_factor.
void finalize(ExperimentSpec& spec);

/// printf-style %.9g rendering.
std::string format_number(double v);

std::string simulate_csv(const std::vector<montecarlo::SweepRow>& rows);

struct AnalyzeRow {
    double sweep_value = 0.0;
    Scheme scheme = Scheme::direct;
    Selection selection = Selection::random;
    double value = 0.0;
};

std::vector<AnalyzeRow> analyze_rows(const ExperimentSpec& spec);
std::string analyze_csv(const std::vector<AnalyzeRow>& rows, const ExperimentSpec& spec);

enum class AgreementKind { exact, bound, none };
std::string_view to_string(AgreementKind);
AgreementKind agreement_kind(Scheme scheme, Selection selection);

struct CompareRow {
    montecarlo::SweepRow sim;
    std::optional<double> analytic;
    AgreementKind kind = AgreementKind::none;
    bool covered = false;    ///< exact rows: agreement within CI or tolerance
    bool violation = false;  ///< bound rows: analytic > estimate + 2 stderr
};

struct CompareSummary {
    double max_abs_deviation = 0.0;  ///< over exact rows
    double ci_coverage_fraction = 1.0;
    std::size_t bound_violation_count = 0;
    std::size_t exact_rows = 0;
    std::size_t bound_rows = 0;
};

std::vector<CompareRow> join_rows(const std::vector<montecarlo::SweepRow>& sim,
                                  const std::vector<AnalyzeRow>& ana, double tolerance);
CompareSummary summarize(const std::vector<CompareRow>& rows);
std::string compare_csv(const std::vector<CompareRow>& rows);
std::string summary_json(const CompareSummary& summary, const ExperimentSpec& spec);

/// Executes the verb and writes outputs. Returns an exit code; diagnostics
/// go to `err`.
int run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int main_entry(int argc, char** argv);

}  // namespace relaynet::cli
