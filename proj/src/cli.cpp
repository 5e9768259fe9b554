#include "relaynet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "relaynet/errors.hpp"

namespace relaynet::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) {
            return out;
        }
        s.remove_prefix(comma + 1);
    }
}

std::optional<double> parse_plain(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != end) {
        return std::nullopt;
    }
    return v;
}

/// Plain decimal, or a multiple of pi: "pi", "pi/3", "2pi/3", "2*pi/3".
double parse_real(std::string_view key, std::string_view text) {
    const std::string_view s = trim(text);
    if (const auto pos = s.find("pi"); pos != std::string_view::npos) {
        std::string_view head = trim(s.substr(0, pos));
        if (!head.empty() && head.back() == '*') {
            head = trim(head.substr(0, head.size() - 1));
        }
        const std::string_view tail = trim(s.substr(pos + 2));
        const auto factor = head.empty() ? std::optional<double>(1.0) : parse_plain(head);
        std::optional<double> divisor = 1.0;
        if (!tail.empty()) {
            divisor = tail.front() == '/' ? parse_plain(trim(tail.substr(1))) : std::nullopt;
        }
        if (factor && divisor && *divisor != 0.0) {
            return *factor * std::numbers::pi / *divisor;
        }
    } else if (const auto v = parse_plain(s)) {
        return *v;
    }
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
    const std::string_view s = trim(text);
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" +
                          std::string(text) + "'");
    }
    return v;
}

template <class Parse>
auto with_key(std::string_view key, Parse parse) {
    try {
        return parse();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
    }
}

double sweep_value_of(const NetworkConfig& c, SweepVariable v) {
    switch (v) {
        case SweepVariable::lambda: return c.lambda;
        case SweepVariable::phi: return c.phi;
        case SweepVariable::p: return c.p;
        case SweepVariable::beta: return c.beta_direct;
    }
    return c.lambda;
}

std::string describe(const NetworkConfig& c) {
    std::ostringstream s;
    s << "lambda=" << format_number(c.lambda) << " p=" << format_number(c.p)
      << " alpha=" << format_number(c.alpha) << " beta_coop=" << format_number(c.beta_coop)
      << " d=" << format_number(c.d) << " ds=" << format_number(c.d_s)
      << " phi=" << format_number(c.phi);
    return s.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path == "-") {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("out: cannot open '" + path + "' for writing");
    }
    file << text;
}

std::string summary_path(const ExperimentSpec& spec) {
    if (!spec.summary.empty()) {
        return spec.summary;
    }
    return spec.out == "-" ? std::string() : spec.out + ".json";
}

constexpr const char* kSimulateHeader =
    "sweep_value,scheme,selection,estimate,stderr,ci_lo,ci_hi,n_trials,seed,mode";

void append_sim_fields(std::ostringstream& s, const montecarlo::SweepRow& row) {
    const auto& e = row.estimate;
    s << format_number(row.sweep_value) << ',' << to_string(e.scheme) << ','
      << to_string(e.selection) << ',' << format_number(e.estimate) << ','
      << format_number(e.std_error) << ',' << format_number(e.ci_lo) << ','
      << format_number(e.ci_hi) << ',' << e.n_trials << ',' << e.seed << ','
      << to_string(e.mode);
}

const std::vector<std::pair<std::string, std::string>> kOptions = {
    {"lambda", "node intensity per m^2"},
    {"p", "contention probability"},
    {"alpha", "path-loss exponent"},
    {"beta-db", "direct-link SIR threshold in dB"},
    {"beta-direct", "direct-link SIR threshold (linear)"},
    {"coop-factor", "cooperative threshold as a multiple of the direct one"},
    {"d", "source-destination distance (m)"},
    {"ds", "selection-region radius (m)"},
    {"phi", "selection-region half-aperture (rad; accepts pi/3 style)"},
    {"window-radius", "simulation window radius (m); 0 = automatic"},
    {"interferer-mode", "thinned | full"},
    {"scheme", "comma list of direct, oc, mrc, sc, or all"},
    {"selection", "comma list of best, random, or all"},
    {"trials", "Monte Carlo trials per grid point"},
    {"seed", "master seed"},
    {"composition", "corrected | printed"},
    {"density", "uniform | weighted"},
    {"decode-threshold", "printed | fixed"},
    {"sweep", "lambda | phi | beta | p"},
    {"grid", "comma list of ascending sweep values"},
    {"tolerance", "compare: absolute agreement allowance"},
    {"out", "CSV output path, - for stdout"},
    {"summary", "compare: JSON summary path"},
};

}  // namespace

std::string_view to_string(Verb v) {
    switch (v) {
        case Verb::simulate: return "simulate";
        case Verb::analyze: return "analyze";
        case Verb::compare: return "compare";
        case Verb::sweep: return "sweep";
    }
    return "?";
}

Verb parse_verb(std::string_view s) {
    for (Verb v : {Verb::simulate, Verb::analyze, Verb::compare, Verb::sweep}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw ConfigError("unknown verb '" + std::string(s) + "'");
}

std::vector<double> ExperimentSpec::effective_grid() const {
    return grid.empty() ? std::vector<double>{sweep_value_of(config, sweep_variable)} : grid;
}

void ExperimentSpec::validate() const {
    config.validate();
    if (!(coop_factor > 0.0)) {
        throw ConfigError("coop_factor: must be positive");
    }
    if (trials < montecarlo::kMinTrials) {
        throw ConfigError("trials: at least " + std::to_string(montecarlo::kMinTrials) +
                          " required");
    }
    if (!(tolerance >= 0.0)) {
        throw ConfigError("tolerance: must be >= 0");
    }
    if (schemes.empty() || selections.empty()) {
        throw ConfigError("scheme/selection: lists must not be empty");
    }
    if (verb == Verb::sweep && (!has_sweep || grid.empty())) {
        throw ConfigError("sweep: requires both 'sweep' and 'grid'");
    }
    analytic.quadrature.validate();
    if (!grid.empty()) {
        validate_grid(grid);
        for (double v : grid) {
            try {
                apply_sweep(config, sweep_variable, v).validate();
            } catch (const ConfigError& e) {
                throw ConfigError("grid value " + format_number(v) + ": " + e.what());
            }
        }
    }
}

void apply_setting(ExperimentSpec& spec, std::string_view raw_key, std::string_view value) {
    std::string key(trim(raw_key));
    for (char& ch : key) {
        if (ch == '-') {
            ch = '_';
        }
    }
    const std::string_view v = trim(value);
    auto real = [&] { return parse_real(key, v); };
    NetworkConfig& c = spec.config;
    if (key == "lambda") {
        c.lambda = real();
    } else if (key == "p") {
        c.p = real();
    } else if (key == "alpha") {
        c.alpha = real();
    } else if (key == "beta_db") {
        c.beta_direct = db_to_linear(real());
    } else if (key == "beta_direct") {
        c.beta_direct = real();
    } else if (key == "coop_factor") {
        spec.coop_factor = real();
    } else if (key == "d") {
        c.d = real();
    } else if (key == "ds") {
        c.d_s = real();
    } else if (key == "phi") {
        c.phi = real();
    } else if (key == "window_radius") {
        c.window_radius = real();
    } else if (key == "interferer_mode") {
        c.interferer_mode = with_key(key, [&] { return parse_interferer_mode(v); });
    } else if (key == "scheme") {
        spec.schemes.clear();
        for (auto item : split_list(v)) {
            if (item == "all") {
                spec.schemes = {Scheme::direct, Scheme::oc, Scheme::mrc, Scheme::sc};
            } else {
                spec.schemes.push_back(with_key(key, [&] { return parse_scheme(item); }));
            }
        }
    } else if (key == "selection") {
        spec.selections.clear();
        for (auto item : split_list(v)) {
            if (item == "all") {
                spec.selections = {Selection::best, Selection::random};
            } else {
                spec.selections.push_back(with_key(key, [&] { return parse_selection(item); }));
            }
        }
    } else if (key == "trials") {
        spec.trials = parse_count(key, v);
    } else if (key == "seed") {
        spec.seed = parse_count(key, v);
    } else if (key == "composition") {
        spec.analytic.composition = with_key(key, [&] { return parse_composition(v); });
    } else if (key == "density") {
        spec.analytic.density = with_key(key, [&] { return parse_density(v); });
    } else if (key == "decode_threshold") {
        spec.analytic.decode_threshold = with_key(key, [&] { return parse_decode_threshold(v); });
    } else if (key == "sweep") {
        spec.sweep_variable = with_key(key, [&] { return parse_sweep_variable(v); });
        spec.has_sweep = true;
    } else if (key == "grid") {
        spec.grid.clear();
        for (auto item : split_list(v)) {
            spec.grid.push_back(parse_real(key, item));
        }
    } else if (key == "tolerance") {
        spec.tolerance = real();
    } else if (key == "out") {
        spec.out = std::string(v);
    } else if (key == "summary") {
        spec.summary = std::string(v);
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

void apply_config_text(ExperimentSpec& spec, std::istream& in, const std::string& origin) {
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view s = line;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) {
            s = s.substr(0, hash);
        }
        s = trim(s);
        if (s.empty()) {
            continue;
        }
        const auto eq = s.find('=');
        const std::string where = origin + ":" + std::to_string(number) + ": ";
        if (eq == std::string_view::npos) {
            throw ConfigError(where + "expected 'key = value'");
        }
        try {
            apply_setting(spec, s.substr(0, eq), s.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
}

void finalize(ExperimentSpec& spec) {
    spec.config.beta_coop = spec.coop_factor * spec.config.beta_direct;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string simulate_csv(const std::vector<montecarlo::SweepRow>& rows) {
    std::ostringstream s;
    s << kSimulateHeader << '\n';
    for (const auto& row : rows) {
        append_sim_fields(s, row);
        s << '\n';
    }
    return s.str();
}

std::vector<AnalyzeRow> analyze_rows(const ExperimentSpec& spec) {
    std::vector<AnalyzeRow> rows;
    for (double value : spec.effective_grid()) {
        const NetworkConfig config = apply_sweep(spec.config, spec.sweep_variable, value);
        const auto ctx = analytic::AnalyticContext::make(config, spec.analytic);
        for (Scheme scheme : spec.schemes) {
            for (Selection sel : spec.selections) {
                if (!analytic::has_closed_form(scheme, sel)) {
                    continue;
                }
                try {
                    rows.push_back({value, scheme, sel, analytic::outage(ctx, scheme, sel)});
                } catch (const ConvergenceError& e) {
                    throw ConvergenceError("analytic outage (scheme=" +
                                           std::string(to_string(scheme)) + ", selection=" +
                                           std::string(to_string(sel)) + ", " +
                                           describe(config) + "): " + e.what());
                }
            }
        }
    }
    return rows;
}

std::string analyze_csv(const std::vector<AnalyzeRow>& rows, const ExperimentSpec& spec) {
    std::ostringstream s;
    s << "sweep_value,scheme,selection,value,convention,density_interpretation\n";
    for (const auto& r : rows) {
        s << format_number(r.sweep_value) << ',' << to_string(r.scheme) << ','
          << to_string(r.selection) << ',' << format_number(r.value) << ','
          << to_string(spec.analytic.composition) << ',' << to_string(spec.analytic.density)
          << '\n';
    }
    return s.str();
}

std::string_view to_string(AgreementKind k) {
    switch (k) {
        case AgreementKind::exact: return "exact";
        case AgreementKind::bound: return "bound";
        case AgreementKind::none: return "none";
    }
    return "?";
}

AgreementKind agreement_kind(Scheme scheme, Selection selection) {
    if (scheme == Scheme::direct || selection == Selection::random) {
        return AgreementKind::exact;
    }
    return analytic::has_closed_form(scheme, selection) ? AgreementKind::bound
                                                        : AgreementKind::none;
}

std::vector<CompareRow> join_rows(const std::vector<montecarlo::SweepRow>& sim,
                                  const std::vector<AnalyzeRow>& ana, double tolerance) {
    std::map<std::tuple<double, Scheme, Selection>, double> lookup;
    for (const auto& a : ana) {
        lookup[{a.sweep_value, a.scheme, a.selection}] = a.value;
    }
    std::vector<CompareRow> out;
    out.reserve(sim.size());
    for (const auto& s : sim) {
        CompareRow row{s, std::nullopt, agreement_kind(s.estimate.scheme, s.estimate.selection)};
        if (auto it = lookup.find({s.sweep_value, s.estimate.scheme, s.estimate.selection});
            it != lookup.end()) {
            row.analytic = it->second;
        }
        if (row.analytic) {
            const auto& e = s.estimate;
            if (row.kind == AgreementKind::exact) {
                row.covered = *row.analytic >= e.ci_lo - tolerance &&
                              *row.analytic <= e.ci_hi + tolerance;
            } else if (row.kind == AgreementKind::bound) {
                row.violation = *row.analytic > e.estimate + 2.0 * e.std_error;
            }
        }
        out.push_back(row);
    }
    return out;
}

CompareSummary summarize(const std::vector<CompareRow>& rows) {
    CompareSummary s;
    std::size_t covered = 0;
    for (const auto& r : rows) {
        if (!r.analytic) {
            continue;
        }
        if (r.kind == AgreementKind::exact) {
            ++s.exact_rows;
            covered += r.covered;
            s.max_abs_deviation =
                std::max(s.max_abs_deviation, std::fabs(*r.analytic - r.sim.estimate.estimate));
        } else if (r.kind == AgreementKind::bound) {
            ++s.bound_rows;
            s.bound_violation_count += r.violation;
        }
    }
    s.ci_coverage_fraction =
        s.exact_rows == 0 ? 1.0 : static_cast<double>(covered) / static_cast<double>(s.exact_rows);
    return s;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream s;
    s << kSimulateHeader << ",analytic,abs_deviation,kind,covered,violation\n";
    for (const auto& r : rows) {
        append_sim_fields(s, r.sim);
        s << ',';
        if (r.analytic) {
            s << format_number(*r.analytic) << ','
              << format_number(std::fabs(*r.analytic - r.sim.estimate.estimate));
        } else {
            s << ',';
        }
        s << ',' << to_string(r.kind) << ',' << (r.covered ? 1 : 0) << ','
          << (r.violation ? 1 : 0) << '\n';
    }
    return s.str();
}

std::string summary_json(const CompareSummary& summary, const ExperimentSpec& spec) {
    nlohmann::ordered_json j;
    j["max_abs_deviation"] = summary.max_abs_deviation;
    j["ci_coverage_fraction"] = summary.ci_coverage_fraction;
    j["bound_violation_count"] = summary.bound_violation_count;
    j["exact_rows"] = summary.exact_rows;
    j["bound_rows"] = summary.bound_rows;
    j["tolerance"] = spec.tolerance;
    j["n_trials"] = spec.trials;
    j["seed"] = spec.seed;
    j["mode"] = to_string(spec.config.interferer_mode);
    j["composition"] = to_string(spec.analytic.composition);
    j["density_interpretation"] = to_string(spec.analytic.density);
    j["decode_threshold"] = to_string(spec.analytic.decode_threshold);
    return j.dump(2) + "\n";
}

int run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        spec.validate();
        const auto grid = spec.effective_grid();
        auto simulate = [&] {
            return montecarlo::sweep(spec.config, spec.sweep_variable, grid, spec.trials,
                                     spec.seed, spec.schemes, spec.selections);
        };
        switch (spec.verb) {
            case Verb::simulate:
            case Verb::sweep: write_output(spec.out, simulate_csv(simulate()), out); break;
            case Verb::analyze: write_output(spec.out, analyze_csv(analyze_rows(spec), spec), out); break;
            case Verb::compare: {
                const auto ana = analyze_rows(spec);
                const auto rows = join_rows(simulate(), ana, spec.tolerance);
                const std::string csv = compare_csv(rows);
                const std::string json = summary_json(summarize(rows), spec);
                write_output(spec.out, csv, out);
                const std::string path = summary_path(spec);
                if (path.empty()) {
                    err << json;
                } else {
                    write_output(path, json, out);
                }
                break;
            }
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "invalid spec: " << e.what() << '\n';
        return kExitInvalidSpec;
    } catch (const UnsupportedParameters& e) {
        err << "invalid spec: " << e.what() << '\n';
        return kExitInvalidSpec;
    } catch (const DomainError& e) {
        err << "invalid spec: " << e.what() << '\n';
        return kExitInvalidSpec;
    } catch (const ConvergenceError& e) {
        err << "non-convergence: " << e.what() << '\n';
        return kExitNonConvergence;
    }
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Outage simulator and analytic evaluator for cooperative relaying in "
                 "Poisson ad hoc networks"};
    app.require_subcommand(1);
    struct Bound {
        CLI::App* sub;
        std::string config_path;
        std::map<std::string, std::string> values;
        std::map<std::string, CLI::Option*> options;
    };
    std::vector<std::unique_ptr<Bound>> subs;
    for (Verb verb : {Verb::simulate, Verb::analyze, Verb::compare, Verb::sweep}) {
        auto b = std::make_unique<Bound>();
        const char* help = verb == Verb::simulate  ? "Monte Carlo outage estimates"
                           : verb == Verb::analyze ? "closed-form outage values"
                           : verb == Verb::compare ? "simulation joined with closed forms"
                                                   : "Monte Carlo estimates over a grid";
        b->sub = app.add_subcommand(std::string(to_string(verb)), help);
        b->sub->add_option("--config", b->config_path, "key = value configuration file");
        for (const auto& [flag, desc] : kOptions) {
            b->options[flag] = b->sub->add_option("--" + flag, b->values[flag], desc);
        }
        subs.push_back(std::move(b));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidSpec;
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const Bound& b = *subs[i];
        if (!b.sub->parsed()) {
            continue;
        }
        ExperimentSpec spec;
        try {
            spec.verb = parse_verb(b.sub->get_name());
            if (!b.config_path.empty()) {
                std::ifstream file(b.config_path);
                if (!file) {
                    throw ConfigError("config: cannot read '" + b.config_path + "'");
                }
                apply_config_text(spec, file, b.config_path);
            }
            for (const auto& [flag, desc] : kOptions) {
                if (b.options.at(flag)->count() > 0) {
                    try {
                        apply_setting(spec, flag, b.values.at(flag));
                    } catch (const ConfigError& e) {
                        throw ConfigError("--" + flag + ": " + e.what());
                    }
                }
            }
            finalize(spec);
        } catch (const ConfigError& e) {
            std::cerr << "invalid spec: " << e.what() << '\n';
            return kExitInvalidSpec;
        }
        return run(spec, std::cout, std::cerr);
    }
    return kExitInvalidSpec;
}

}  // namespace relaynet::cli
