// scenario.cpp — config schema, scenario dispatch, sweep harness, output
// writers
#include "decobec/scenario.hpp"

#include "decobec/dephasing.hpp"
#include "decobec/doublewell.hpp"
#include "decobec/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace decobec {

namespace {

using nlohmann::json;

constexpr const char* kArtifactVersion = "0.1.0";

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

// ---------------------------------------------------------------- parsing

struct Issues {
    std::vector<std::string> list;
    void add(std::string msg) { list.push_back(std::move(msg)); }
    bool empty() const { return list.empty(); }
};

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed, Issues& issues) {
    for (const auto& item : obj.items()) {
        if (allowed.find(item.key()) == allowed.end())
            issues.add("unknown key '" + item.key() + "' in " + path);
    }
}

// Typed field access.  A missing key with no default, or a type mismatch,
// records one issue and yields the fallback so parsing can continue and
// report everything at once.
double get_double(const json& obj, const std::string& path, const char* key,
                  std::optional<double> def, Issues& issues) {
    if (!obj.contains(key)) {
        if (def) return *def;
        issues.add(path + "." + key + ": required");
        return 0.0;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        issues.add(path + "." + key + ": must be a number");
        return def.value_or(0.0);
    }
    return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key,
            std::optional<int> def, Issues& issues) {
    if (!obj.contains(key)) {
        if (def) return *def;
        issues.add(path + "." + key + ": required");
        return 0;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        issues.add(path + "." + key + ": must be an integer");
        return def.value_or(0);
    }
    return v.get<int>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       std::optional<std::string> def, Issues& issues) {
    if (!obj.contains(key)) {
        if (def) return *def;
        issues.add(path + "." + key + ": required");
        return {};
    }
    const json& v = obj.at(key);
    if (!v.is_string()) {
        issues.add(path + "." + key + ": must be a string");
        return def.value_or(std::string{});
    }
    return v.get<std::string>();
}

// A complex field is a number (real) or a [re, im] pair.
std::complex<double> get_complex(const json& v, const std::string& where,
                                 Issues& issues) {
    if (v.is_number())
        return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    issues.add(where + ": must be a number or a [re, im] pair");
    return {0.0, 0.0};
}

const std::set<std::string>& sweep_whitelist() {
    static const std::set<std::string> paths = {
        "lambda",
        "pump.rabi_frequency",
        "pump.detuning",
        "pump.pump_frequency",
        "pump.dipole",
        "pump.coupling_scale",
        "density.xi_c",
        "atom_interaction",
        "double_well.alpha",
        "double_well.delta",
        "double_well.tail_tol",
        "k_max",
        "tol",
    };
    return paths;
}

void apply_parameter(ScenarioConfig& cfg, const std::string& path, double v) {
    if (path == "lambda") cfg.lambda = v;
    else if (path == "pump.rabi_frequency") cfg.pump.rabi_frequency = v;
    else if (path == "pump.detuning") cfg.pump.detuning = v;
    else if (path == "pump.pump_frequency") cfg.pump.pump_frequency = v;
    else if (path == "pump.dipole") cfg.pump.dipole = v;
    else if (path == "pump.coupling_scale") cfg.pump.coupling_scale = v;
    else if (path == "density.xi_c") {
        if (cfg.density.kind != SpectralDensity::Kind::CavityInverseCubic)
            throw InvalidArgumentError(
                "sweep parameter density.xi_c needs a cavity_inverse_cubic density");
        cfg.density.cavity_scale = v;
    } else if (path == "atom_interaction") cfg.atom_interaction = v;
    else if (path == "double_well.alpha") cfg.double_well.alpha = v;
    else if (path == "double_well.delta") cfg.double_well.delta = v;
    else if (path == "double_well.tail_tol") cfg.double_well.tail_tol = v;
    else if (path == "k_max") cfg.k_max = v;
    else if (path == "tol") cfg.tol = v;
    else
        throw InvalidArgumentError("unknown sweep parameter '" + path + "'");
}

// --------------------------------------------------------------- scenarios

ModeGrid resolve_grid(const ScenarioConfig& cfg) {
    if (cfg.has_explicit_modes) {
        ModeGrid grid;
        grid.modes = cfg.explicit_modes;
        grid.c = cfg.c;
        return grid;
    }
    if (cfg.grid)
        return build_mode_grid(cfg.pump, cfg.geometry, cfg.density, *cfg.grid,
                               cfg.hbar, cfg.c);
    throw InvalidArgumentError("scenario needs a mode register ('grid' or 'modes')");
}

double resolve_delta(const ScenarioConfig& cfg) {
    if (cfg.double_well.delta)
        return *cfg.double_well.delta;
    const auto* dw = std::get_if<DoubleWell>(&cfg.geometry);
    if (!dw)
        throw InvalidArgumentError(
            "tunneling scenarios need double_well.delta or a double-well geometry");
    return tunnel_splitting(*dw, cfg.hbar);
}

int poisson_truncation(double mean, double tail_tol) {
    int n = 0;
    double term = std::exp(-mean);
    double cum = term;
    while (1.0 - cum > tail_tol) {
        ++n;
        term *= mean / static_cast<double>(n);
        cum += term;
        if (n > 100000)
            throw AccuracyError("poisson_truncation: tail stall", 0.0);
    }
    return n;
}

// One column group: named columns plus a per-time row function.  Row
// functions may be stateful (evaluated in ascending time order, one thread
// per group).
struct Group {
    std::vector<std::pair<std::string, std::string>> columns; // (name, unit)
    std::function<std::vector<double>(double)> row;
};

// Column names are fixed per scenario so a failed group still renders the
// full header with its rows marked.
std::vector<std::pair<std::string, std::string>>
scenario_columns(const std::string& scenario) {
    if (scenario == "fig1a" || scenario == "fig1b")
        return {{"O_abs", "1"}, {"diverged", "bool"}};
    if (scenario == "single_well")
        return {{"purity", "1"}, {"O_abs", "1"}, {"rho_abs", "1"}};
    if (scenario == "fig2" || scenario == "double_well")
        return {{"p_exact", "atoms"}, {"p_compact", "atoms"}, {"J", "1"},
                {"S", "rad"},         {"theta", "rad"},       {"envelope_defined", "bool"}};
    if (scenario == "oracle_check")
        return {{"closed_re", "1"},
                {"closed_im", "1"},
                {"oracle_re", "1"},
                {"oracle_im", "1"},
                {"abs_deviation", "1"}};
    throw InvalidArgumentError("unknown scenario '" + scenario + "'");
}

Group make_decoherence_group(const ScenarioConfig& cfg) {
    Group g;
    g.columns = scenario_columns(cfg.scenario);
    g.row = [cfg](double t) -> std::vector<double> {
        if (cfg.density.kind == SpectralDensity::Kind::CavityInverseCubic) {
            const double v = decoherence_norm_cavity(cfg.sector_m, cfg.sector_n,
                                                     cfg.lambda,
                                                     cfg.pump.pump_frequency, t,
                                                     CavityVariant::Corrected);
            return {v, 0.0};
        }
        const ContinuumNorm norm = decoherence_norm_continuum(
            cfg.sector_m, cfg.sector_n, cfg.pump, cfg.density, t, cfg.tol,
            cfg.k_max, cfg.hbar, cfg.c);
        return {norm.value, norm.diverged ? 1.0 : 0.0};
    };
    return g;
}

Group make_single_well_group(const ScenarioConfig& cfg) {
    const auto* sw = std::get_if<SingleWell>(&cfg.geometry);
    if (!sw)
        throw InvalidArgumentError("single_well scenario needs a single-well geometry");
    const SingleWell well = *sw;
    const ModeGrid grid = resolve_grid(cfg);
    const double kappa = kappa_from_trap(well, cfg.atom_interaction);
    Group g;
    g.columns = scenario_columns(cfg.scenario);
    g.row = [cfg, well, grid, kappa](double t) -> std::vector<double> {
        const EntangledState state = evolve_entangled_state(
            cfg.state_coefficients, grid, well.trap_frequency, kappa, t);
        const Eigen::MatrixXcd rho = reduced_density_matrix(state, grid);
        const std::complex<double> O =
            decoherence_factor(cfg.sector_m, cfg.sector_n, grid, t);
        return {purity(rho), std::abs(O), std::abs(rho(cfg.sector_m, cfg.sector_n))};
    };
    return g;
}

Group make_tunneling_group(const ScenarioConfig& cfg) {
    const ModeGrid grid = resolve_grid(cfg);
    const double delta = resolve_delta(cfg);
    const double alpha = cfg.double_well.alpha;
    const double tail_tol = cfg.double_well.tail_tol;
    const int n_ref = cfg.double_well.n_ref > 0
                          ? cfg.double_well.n_ref
                          : static_cast<int>(std::ceil(alpha * alpha)) + 3;
    Group g;
    g.columns = scenario_columns(cfg.scenario);
    g.row = [grid, delta, alpha, tail_tol, n_ref](double t) -> std::vector<double> {
        const double p =
            population_difference_exact(alpha, grid, delta, t, tail_tol);
        const EnvelopeFit fit = fit_overlap_envelope(grid, n_ref, t);
        const double pc = population_difference_compact(alpha, fit.magnitude,
                                                        fit.phase_step, delta, t);
        double theta = 0.0;
        bool defined = fit.defined;
        if (defined) {
            theta = phase_shift(fit.phase_step, alpha);
            if (!std::isfinite(theta)) {
                theta = 0.0;
                defined = false;
            }
        }
        return {p, pc, fit.magnitude, fit.phase_step, theta, defined ? 1.0 : 0.0};
    };
    return g;
}

Group make_oracle_check_group(const ScenarioConfig& cfg, double* max_deviation) {
    const ModeGrid grid = resolve_grid(cfg);
    oracle::TruncationSpec trunc = cfg.truncation;
    trunc.num_modes = static_cast<int>(grid.modes.size());

    Group g;
    g.columns = scenario_columns(cfg.scenario);

    if (const auto* sw = std::get_if<SingleWell>(&cfg.geometry)) {
        const SingleWell well = *sw;
        const double kappa = kappa_from_trap(well, cfg.atom_interaction);
        const auto coeffs = cfg.state_coefficients;
        if (static_cast<int>(coeffs.size()) - 1 > trunc.max_atoms)
            throw InvalidArgumentError(
                "oracle_check: truncation.max_atoms below the highest occupied sector");
        const oracle::BasisLayout layout(oracle::ModelKind::SingleWell, trunc);
        const Eigen::MatrixXcd H = oracle::build_hamiltonian_single(
            grid, well.trap_frequency, kappa, trunc);
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(layout.dimension());
        for (std::size_t n = 0; n < coeffs.size(); ++n)
            psi[layout.sector_offset(static_cast<int>(n))] = coeffs[n];
        auto state = std::make_shared<std::pair<double, Eigen::VectorXcd>>(0.0, psi);
        const double tol = cfg.tol;
        const int m = cfg.sector_m, n = cfg.sector_n;
        g.row = [cfg, well, grid, kappa, coeffs, layout, H, state, tol, m, n,
                 max_deviation](double t) -> std::vector<double> {
            if (t > state->first) {
                state->second = oracle::evolve(H, state->second, t - state->first, tol);
                state->first = t;
            }
            const Eigen::MatrixXcd rho_oracle =
                oracle::partial_trace_field({state->second, layout});
            const std::complex<double> oracle_mn =
                rho_oracle(layout.atomic_index(m, 0), layout.atomic_index(n, 0));
            const EntangledState closed_state = evolve_entangled_state(
                coeffs, grid, well.trap_frequency, kappa, t);
            const Eigen::MatrixXcd rho_closed =
                reduced_density_matrix(closed_state, grid);
            const std::complex<double> closed_mn = rho_closed(m, n);
            const double dev = std::abs(oracle_mn - closed_mn);
            if (max_deviation)
                *max_deviation = std::max(*max_deviation, dev);
            return {closed_mn.real(), closed_mn.imag(), oracle_mn.real(),
                    oracle_mn.imag(), dev};
        };
        return g;
    }

    // Double-well model: population difference against the brute-force state.
    const double delta = resolve_delta(cfg);
    const double alpha = cfg.double_well.alpha;
    const double tail_tol = cfg.double_well.tail_tol;
    const int n_max = poisson_truncation(alpha * alpha, tail_tol);
    if (n_max > trunc.max_atoms)
        throw InvalidArgumentError(
            "oracle_check: truncation.max_atoms = " + std::to_string(trunc.max_atoms) +
            " below the Poisson truncation " + std::to_string(n_max));
    const oracle::BasisLayout layout(oracle::ModelKind::DoubleWell, trunc);
    const Eigen::MatrixXcd H = oracle::build_hamiltonian_double(grid, 0.0, delta, trunc);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(layout.dimension());
    for (int n = 0; n <= n_max; ++n) {
        // raw truncated coherent-state weight over the all-left atomic state
        const double log_amp = -0.5 * alpha * alpha
                               + n * std::log(alpha > 0 ? alpha : 1.0)
                               - 0.5 * std::lgamma(static_cast<double>(n) + 1.0);
        psi[layout.sector_offset(n)] = (alpha > 0 || n == 0) ? std::exp(log_amp) : 0.0;
    }
    auto state = std::make_shared<std::pair<double, Eigen::VectorXcd>>(0.0, psi);
    const double tol = cfg.tol;
    g.row = [grid, delta, alpha, tail_tol, layout, H, state, tol,
             max_deviation](double t) -> std::vector<double> {
        if (t > state->first) {
            state->second = oracle::evolve(H, state->second, t - state->first, tol);
            state->first = t;
        }
        double p_oracle = 0.0;
        const std::int64_t F = layout.fock_dim();
        for (int n = 0; n <= layout.truncation().max_atoms; ++n) {
            const std::int64_t off = layout.sector_offset(n);
            for (int j = 0; j <= n; ++j) {
                double weight = 0.0;
                for (std::int64_t f = 0; f < F; ++f)
                    weight += std::norm(state->second[off + j * F + f]);
                p_oracle += weight * static_cast<double>(2 * j - n);
            }
        }
        const double p_closed =
            population_difference_exact(alpha, grid, delta, t, tail_tol);
        const double dev = std::abs(p_oracle - p_closed);
        if (max_deviation)
            *max_deviation = std::max(*max_deviation, dev);
        return {p_closed, 0.0, p_oracle, 0.0, dev};
    };
    return g;
}

Group make_group(const ScenarioConfig& cfg, double* max_deviation) {
    if (cfg.scenario == "fig1a" || cfg.scenario == "fig1b")
        return make_decoherence_group(cfg);
    if (cfg.scenario == "single_well")
        return make_single_well_group(cfg);
    if (cfg.scenario == "fig2" || cfg.scenario == "double_well")
        return make_tunneling_group(cfg);
    if (cfg.scenario == "oracle_check")
        return make_oracle_check_group(cfg, max_deviation);
    throw InvalidArgumentError("unknown scenario '" + cfg.scenario + "'");
}

// ------------------------------------------------------------------ tables

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> cells; // column-major, equal lengths
};

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    const std::size_t rows = table.cells.empty() ? 0 : table.cells.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.cells.size(); ++c) {
            if (c) out += ',';
            out += format_double(table.cells[c][r]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& table) {
    json out;
    out["columns"] = table.columns;
    json rows = json::array();
    const std::size_t n_rows = table.cells.empty() ? 0 : table.cells.front().size();
    for (std::size_t r = 0; r < n_rows; ++r) {
        json row = json::array();
        for (const auto& col : table.cells)
            row.push_back(col[r]);
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    return out.dump(2) + "\n";
}

struct GroupResult {
    std::vector<std::pair<std::string, std::string>> columns;
    std::vector<std::vector<double>> cells; // per column, then failed marker
    std::vector<double> failed;
    std::string label;
    std::vector<std::string> warnings;
};

GroupResult evaluate_group(const ScenarioConfig& cfg, const std::string& label,
                           const std::vector<double>& times, double* max_deviation) {
    GroupResult result;
    result.label = label;
    result.failed.assign(times.size(), 0.0);
    result.columns = scenario_columns(cfg.scenario);
    result.cells.assign(result.columns.size(),
                        std::vector<double>(times.size(), 0.0));
    try {
        Group group = make_group(cfg, max_deviation);
        for (std::size_t i = 0; i < times.size(); ++i) {
            try {
                std::vector<double> row = group.row(times[i]);
                bool finite = row.size() == result.columns.size();
                for (double v : row)
                    if (!std::isfinite(v)) finite = false;
                if (!finite) {
                    result.failed[i] = 1.0;
                    result.warnings.push_back("point" + label + " t=" +
                                              format_double(times[i]) +
                                              ": non-finite result suppressed");
                    continue;
                }
                for (std::size_t c = 0; c < row.size(); ++c)
                    result.cells[c][i] = row[c];
            } catch (const std::exception& e) {
                result.failed[i] = 1.0;
                result.warnings.push_back("point" + label + " t=" +
                                          format_double(times[i]) + " failed: " +
                                          e.what());
            }
        }
    } catch (const std::exception& e) {
        // whole group unavailable: zeroed columns with every row marked
        std::fill(result.failed.begin(), result.failed.end(), 1.0);
        result.warnings.push_back("group" + label + " failed: " + e.what());
    }
    return result;
}

} // namespace

// ----------------------------------------------------------------- config

ScenarioConfig validate_config(const std::string& raw_text) {
    json root;
    try {
        root = json::parse(raw_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw InvalidArgumentError(std::string("config syntax error: ") + e.what());
    }
    if (!root.is_object())
        throw InvalidArgumentError("config root must be a JSON object");

    Issues issues;
    check_keys(root, "config",
               {"scenario", "lambda", "sectors", "pump", "density", "geometry",
                "grid", "modes", "times", "sweep", "truncation", "units", "tol",
                "k_max", "state_coefficients", "atom_interaction", "double_well",
                "deviation_tolerance", "output"},
               issues);

    ScenarioConfig cfg;
    json canon;

    // scenario
    cfg.scenario = get_string(root, "config", "scenario", std::nullopt, issues);
    static const std::set<std::string> scenarios = {
        "fig1a", "fig1b", "fig2", "single_well", "double_well", "oracle_check"};
    if (!cfg.scenario.empty() && scenarios.find(cfg.scenario) == scenarios.end())
        issues.add("scenario: unknown scenario '" + cfg.scenario + "'");
    const bool tunneling =
        cfg.scenario == "fig2" || cfg.scenario == "double_well";
    canon["scenario"] = cfg.scenario;

    // units
    if (root.contains("units")) {
        const json& u = root.at("units");
        if (!u.is_object()) {
            issues.add("units: must be an object");
        } else {
            check_keys(u, "units", {"hbar", "c"}, issues);
            cfg.hbar = get_double(u, "units", "hbar", 1.0, issues);
            cfg.c = get_double(u, "units", "c", 1.0, issues);
        }
    }
    if (!(cfg.hbar > 0)) issues.add("units.hbar: must be > 0");
    if (!(cfg.c > 0)) issues.add("units.c: must be > 0");
    canon["units"] = {{"hbar", cfg.hbar}, {"c", cfg.c}};

    // pump
    cfg.pump.rabi_frequency = 1.0;
    cfg.pump.detuning = 100.0;
    cfg.pump.pump_frequency = 1.0;
    cfg.pump.dipole = 1.0;
    cfg.pump.coupling_scale = calibrated_coupling_scale(cfg.hbar);
    if (root.contains("pump")) {
        const json& p = root.at("pump");
        if (!p.is_object()) {
            issues.add("pump: must be an object");
        } else {
            check_keys(p, "pump",
                       {"rabi_frequency", "detuning", "pump_frequency", "dipole",
                        "coupling_scale"},
                       issues);
            cfg.pump.rabi_frequency =
                get_double(p, "pump", "rabi_frequency", cfg.pump.rabi_frequency, issues);
            cfg.pump.detuning =
                get_double(p, "pump", "detuning", cfg.pump.detuning, issues);
            cfg.pump.pump_frequency = get_double(p, "pump", "pump_frequency",
                                                 cfg.pump.pump_frequency, issues);
            cfg.pump.dipole = get_double(p, "pump", "dipole", cfg.pump.dipole, issues);
            cfg.pump.coupling_scale = get_double(p, "pump", "coupling_scale",
                                                 cfg.pump.coupling_scale, issues);
        }
    }
    if (cfg.pump.detuning == 0.0) issues.add("pump.detuning: must be nonzero");
    if (!(cfg.pump.pump_frequency > 0)) issues.add("pump.pump_frequency: must be > 0");
    if (!(cfg.pump.coupling_scale > 0)) issues.add("pump.coupling_scale: must be > 0");
    if (std::abs(cfg.pump.detuning) < std::abs(cfg.pump.rabi_frequency))
        cfg.warnings.push_back(
            "pump: |detuning| < |rabi_frequency| — the far-detuned elimination "
            "behind the closed forms is marginal");
    canon["pump"] = {{"rabi_frequency", cfg.pump.rabi_frequency},
                     {"detuning", cfg.pump.detuning},
                     {"pump_frequency", cfg.pump.pump_frequency},
                     {"dipole", cfg.pump.dipole},
                     {"coupling_scale", cfg.pump.coupling_scale}};

    // density
    cfg.density.kind = (cfg.scenario == "fig1a" || cfg.scenario == "fig1b")
                           ? SpectralDensity::Kind::CavityInverseCubic
                           : SpectralDensity::Kind::FreeSpace;
    cfg.density.cavity_scale = 1.0;
    if (root.contains("density")) {
        const json& d = root.at("density");
        if (!d.is_object()) {
            issues.add("density: must be an object");
        } else {
            check_keys(d, "density", {"type", "xi_c", "samples"}, issues);
            const std::string type =
                get_string(d, "density", "type", std::nullopt, issues);
            if (type == "free_space") {
                cfg.density.kind = SpectralDensity::Kind::FreeSpace;
                if (d.contains("xi_c") || d.contains("samples"))
                    issues.add("density: free_space takes no extra fields");
            } else if (type == "cavity_inverse_cubic") {
                cfg.density.kind = SpectralDensity::Kind::CavityInverseCubic;
                cfg.density.cavity_scale =
                    get_double(d, "density", "xi_c", std::nullopt, issues);
                if (!(cfg.density.cavity_scale > 0))
                    issues.add("density.xi_c: must be > 0");
            } else if (type == "tabulated") {
                cfg.density.kind = SpectralDensity::Kind::Tabulated;
                if (!d.contains("samples") || !d.at("samples").is_array() ||
                    d.at("samples").size() < 2) {
                    issues.add("density.samples: needs an array of >= 2 [k, mu] pairs");
                } else {
                    double prev = -1.0;
                    for (const json& s : d.at("samples")) {
                        if (!s.is_array() || s.size() != 2 || !s[0].is_number() ||
                            !s[1].is_number()) {
                            issues.add("density.samples: entries must be [k, mu] pairs");
                            break;
                        }
                        const double k = s[0].get<double>();
                        const double mu = s[1].get<double>();
                        if (!(k > prev))
                            issues.add("density.samples: k values must be increasing");
                        if (mu < 0) issues.add("density.samples: mu must be >= 0");
                        prev = k;
                        cfg.density.samples.emplace_back(k, mu);
                    }
                }
            } else if (!type.empty()) {
                issues.add("density.type: unknown type '" + type + "'");
            }
        }
    }
    {
        json d;
        switch (cfg.density.kind) {
            case SpectralDensity::Kind::FreeSpace:
                d = {{"type", "free_space"}};
                break;
            case SpectralDensity::Kind::CavityInverseCubic:
                d = {{"type", "cavity_inverse_cubic"},
                     {"xi_c", cfg.density.cavity_scale}};
                break;
            case SpectralDensity::Kind::Tabulated: {
                d["type"] = "tabulated";
                json samples = json::array();
                for (const auto& [k, mu] : cfg.density.samples)
                    samples.push_back({k, mu});
                d["samples"] = std::move(samples);
                break;
            }
        }
        canon["density"] = std::move(d);
    }

    // geometry
    const bool default_double_geometry = tunneling;
    if (default_double_geometry)
        cfg.geometry = DoubleWell{5.0, 1.0, 0.5, 1.0, 1.0};
    if (root.contains("geometry")) {
        const json& gj = root.at("geometry");
        if (!gj.is_object()) {
            issues.add("geometry: must be an object");
        } else {
            const std::string type =
                get_string(gj, "geometry", "type", std::nullopt, issues);
            if (type == "single_well") {
                check_keys(gj, "geometry", {"type", "width", "trap_frequency"}, issues);
                SingleWell sw;
                sw.width = get_double(gj, "geometry", "width", 1.0, issues);
                sw.trap_frequency =
                    get_double(gj, "geometry", "trap_frequency", 1.0, issues);
                if (!(sw.width > 0)) issues.add("geometry.width: must be > 0");
                cfg.geometry = sw;
            } else if (type == "double_well") {
                check_keys(gj, "geometry",
                           {"type", "separation", "local_width", "barrier_height",
                            "mass", "splitting_scale"},
                           issues);
                DoubleWell dw;
                dw.separation = get_double(gj, "geometry", "separation", 5.0, issues);
                dw.local_width = get_double(gj, "geometry", "local_width", 1.0, issues);
                dw.barrier_height =
                    get_double(gj, "geometry", "barrier_height", 0.5, issues);
                dw.mass = get_double(gj, "geometry", "mass", 1.0, issues);
                dw.splitting_scale =
                    get_double(gj, "geometry", "splitting_scale", 1.0, issues);
                if (!(dw.separation > 0)) issues.add("geometry.separation: must be > 0");
                if (!(dw.local_width > 0))
                    issues.add("geometry.local_width: must be > 0");
                if (!(dw.barrier_height > 0))
                    issues.add("geometry.barrier_height: must be > 0");
                if (!(dw.mass > 0)) issues.add("geometry.mass: must be > 0");
                if (!(dw.splitting_scale > 0))
                    issues.add("geometry.splitting_scale: must be > 0");
                cfg.geometry = dw;
            } else if (!type.empty()) {
                issues.add("geometry.type: unknown type '" + type + "'");
            }
        }
    }
    if (const auto* dw = std::get_if<DoubleWell>(&cfg.geometry)) {
        if (dw->separation < 4.0 * dw->local_width)
            cfg.warnings.push_back(
                "geometry: separation < 4×local_width — the local orbitals overlap "
                "appreciably and the two-mode picture degrades");
        canon["geometry"] = {{"type", "double_well"},
                             {"separation", dw->separation},
                             {"local_width", dw->local_width},
                             {"barrier_height", dw->barrier_height},
                             {"mass", dw->mass},
                             {"splitting_scale", dw->splitting_scale}};
    } else {
        const auto& sw = std::get<SingleWell>(cfg.geometry);
        canon["geometry"] = {{"type", "single_well"},
                             {"width", sw.width},
                             {"trap_frequency", sw.trap_frequency}};
    }

    // grid / modes
    if (root.contains("grid") && root.contains("modes"))
        issues.add("config: 'grid' and 'modes' are mutually exclusive");
    if (root.contains("grid")) {
        const json& gj = root.at("grid");
        if (!gj.is_object()) {
            issues.add("grid: must be an object");
        } else {
            check_keys(gj, "grid", {"k_min", "k_max", "n_radial", "n_angular"}, issues);
            GridSpec spec;
            spec.k_min = get_double(gj, "grid", "k_min", 0.0, issues);
            spec.k_max = get_double(gj, "grid", "k_max", std::nullopt, issues);
            spec.n_radial = get_int(gj, "grid", "n_radial", 64, issues);
            spec.n_angular = get_int(gj, "grid", "n_angular", 8, issues);
            if (!(spec.k_min >= 0)) issues.add("grid.k_min: must be >= 0");
            if (!(spec.k_max > spec.k_min)) issues.add("grid.k_max: must exceed k_min");
            if (spec.n_radial < 1) issues.add("grid.n_radial: must be >= 1");
            if (spec.n_angular < 1) issues.add("grid.n_angular: must be >= 1");
            cfg.grid = spec;
        }
    } else if (root.contains("modes")) {
        const json& mj = root.at("modes");
        if (!mj.is_array() || mj.empty()) {
            issues.add("modes: must be a non-empty array");
        } else {
            int idx = 0;
            for (const json& entry : mj) {
                const std::string where = "modes[" + std::to_string(idx) + "]";
                if (!entry.is_object()) {
                    issues.add(where + ": must be an object");
                    ++idx;
                    continue;
                }
                check_keys(entry, where,
                           {"omega", "weight", "number_coupling", "exchange_coupling"},
                           issues);
                Mode mode;
                mode.omega = get_double(entry, where, "omega", std::nullopt, issues);
                mode.weight = get_double(entry, where, "weight", 1.0, issues);
                if (!(mode.weight > 0)) issues.add(where + ".weight: must be > 0");
                if (entry.contains("number_coupling"))
                    mode.number_coupling = get_complex(entry.at("number_coupling"),
                                                       where + ".number_coupling",
                                                       issues);
                if (entry.contains("exchange_coupling"))
                    mode.exchange_coupling = get_complex(entry.at("exchange_coupling"),
                                                         where + ".exchange_coupling",
                                                         issues);
                mode.k = (mode.omega + cfg.pump.pump_frequency) / cfg.c;
                cfg.explicit_modes.push_back(mode);
                ++idx;
            }
            cfg.has_explicit_modes = !cfg.explicit_modes.empty();
        }
    } else if (tunneling || cfg.scenario == "single_well" ||
               cfg.scenario == "oracle_check") {
        // documented default register: one weakly coupled mode
        Mode mode;
        mode.omega = 1.0;
        mode.weight = 1.0;
        mode.k = (mode.omega + cfg.pump.pump_frequency) / cfg.c;
        if (std::holds_alternative<DoubleWell>(cfg.geometry))
            mode.exchange_coupling = 0.1;
        else
            mode.number_coupling = 0.1;
        cfg.explicit_modes.push_back(mode);
        cfg.has_explicit_modes = true;
    }
    if (cfg.grid)
        canon["grid"] = {{"k_min", cfg.grid->k_min},
                         {"k_max", cfg.grid->k_max},
                         {"n_radial", cfg.grid->n_radial},
                         {"n_angular", cfg.grid->n_angular}};
    if (cfg.has_explicit_modes) {
        json modes = json::array();
        for (const Mode& mode : cfg.explicit_modes)
            modes.push_back(
                {{"omega", mode.omega},
                 {"weight", mode.weight},
                 {"number_coupling",
                  {mode.number_coupling.real(), mode.number_coupling.imag()}},
                 {"exchange_coupling",
                  {mode.exchange_coupling.real(), mode.exchange_coupling.imag()}}});
        canon["modes"] = std::move(modes);
    }

    // times
    if (root.contains("times")) {
        const json& tj = root.at("times");
        if (!tj.is_object()) {
            issues.add("times: must be an object");
        } else {
            check_keys(tj, "times", {"t_start", "t_end", "steps"}, issues);
            cfg.times.t_start = get_double(tj, "times", "t_start", 0.0, issues);
            cfg.times.t_end = get_double(tj, "times", "t_end", 50.0, issues);
            cfg.times.steps = get_int(tj, "times", "steps", 500, issues);
        }
    }
    if (!(cfg.times.t_start >= 0)) issues.add("times.t_start: must be >= 0");
    if (!(cfg.times.t_end > cfg.times.t_start))
        issues.add("times.t_end: must exceed t_start");
    if (cfg.times.steps < 2) issues.add("times.steps: must be >= 2");
    canon["times"] = {{"t_start", cfg.times.t_start},
                      {"t_end", cfg.times.t_end},
                      {"steps", cfg.times.steps}};

    // sweep (explicit, or the documented figure defaults)
    if (root.contains("sweep")) {
        const json& sj = root.at("sweep");
        if (!sj.is_array()) {
            issues.add("sweep: must be an array of {parameter, values} entries");
        } else if (sj.size() > 1) {
            issues.add("sweep: only a single swept parameter is supported");
        } else if (sj.size() == 1) {
            const json& entry = sj[0];
            if (!entry.is_object()) {
                issues.add("sweep[0]: must be an object");
            } else {
                check_keys(entry, "sweep[0]", {"parameter", "values"}, issues);
                SweepSpec sweep;
                sweep.parameter =
                    get_string(entry, "sweep[0]", "parameter", std::nullopt, issues);
                if (!sweep.parameter.empty() &&
                    sweep_whitelist().find(sweep.parameter) == sweep_whitelist().end())
                    issues.add("sweep[0].parameter: '" + sweep.parameter +
                               "' is not a sweepable parameter");
                if (sweep.parameter == "density.xi_c" &&
                    cfg.density.kind != SpectralDensity::Kind::CavityInverseCubic)
                    issues.add(
                        "sweep[0].parameter: density.xi_c needs a cavity density");
                if (!entry.contains("values") || !entry.at("values").is_array() ||
                    entry.at("values").empty()) {
                    issues.add("sweep[0].values: needs a non-empty array of numbers");
                } else {
                    for (const json& v : entry.at("values")) {
                        if (!v.is_number()) {
                            issues.add("sweep[0].values: entries must be numbers");
                            break;
                        }
                        sweep.values.push_back(v.get<double>());
                    }
                }
                cfg.sweep = std::move(sweep);
            }
        }
    } else if (cfg.scenario == "fig1a") {
        cfg.sweep = SweepSpec{"lambda", {1e-3, 5e-3, 2e-2}};
    } else if (cfg.scenario == "fig1b") {
        cfg.sweep = SweepSpec{"pump.pump_frequency", {0.5, 1.0, 2.0, 4.0}};
    }
    if (cfg.sweep && cfg.scenario == "oracle_check")
        issues.add("sweep: not supported for oracle_check");
    if (cfg.sweep) {
        canon["sweep"] = json::array(
            {{{"parameter", cfg.sweep->parameter}, {"values", cfg.sweep->values}}});
    }

    // truncation
    cfg.truncation.max_atoms = 4;
    cfg.truncation.max_photons_per_mode = 12;
    if (root.contains("truncation")) {
        const json& tj = root.at("truncation");
        if (!tj.is_object()) {
            issues.add("truncation: must be an object");
        } else {
            check_keys(tj, "truncation",
                       {"max_atoms", "max_photons_per_mode", "dimension_cap"}, issues);
            cfg.truncation.max_atoms =
                get_int(tj, "truncation", "max_atoms", 4, issues);
            cfg.truncation.max_photons_per_mode =
                get_int(tj, "truncation", "max_photons_per_mode", 12, issues);
            cfg.truncation.dimension_cap =
                get_int(tj, "truncation", "dimension_cap", 200000, issues);
        }
    }
    if (cfg.truncation.max_atoms < 0) issues.add("truncation.max_atoms: must be >= 0");
    if (cfg.truncation.max_photons_per_mode < 1)
        issues.add("truncation.max_photons_per_mode: must be >= 1");
    if (cfg.truncation.dimension_cap < 1)
        issues.add("truncation.dimension_cap: must be >= 1");
    canon["truncation"] = {
        {"max_atoms", cfg.truncation.max_atoms},
        {"max_photons_per_mode", cfg.truncation.max_photons_per_mode},
        {"dimension_cap", cfg.truncation.dimension_cap}};

    // scalars
    cfg.tol = get_double(root, "config", "tol", 1e-10, issues);
    if (!(cfg.tol > 0)) issues.add("tol: must be > 0");
    cfg.k_max = get_double(root, "config", "k_max", 1e4, issues);
    if (!(cfg.k_max > 0)) issues.add("k_max: must be > 0");
    cfg.lambda = get_double(root, "config", "lambda", 1e-3, issues);
    if (!(cfg.lambda > 0)) issues.add("lambda: must be > 0");
    cfg.deviation_tolerance =
        get_double(root, "config", "deviation_tolerance", 1e-6, issues);
    if (!(cfg.deviation_tolerance > 0))
        issues.add("deviation_tolerance: must be > 0");
    cfg.atom_interaction =
        get_double(root, "config", "atom_interaction", 0.0, issues);
    if (cfg.atom_interaction < 0) issues.add("atom_interaction: must be >= 0");
    canon["tol"] = cfg.tol;
    canon["k_max"] = cfg.k_max;
    canon["lambda"] = cfg.lambda;
    canon["deviation_tolerance"] = cfg.deviation_tolerance;
    canon["atom_interaction"] = cfg.atom_interaction;

    // sectors
    if (root.contains("sectors")) {
        const json& sj = root.at("sectors");
        if (!sj.is_array() || sj.size() != 2 || !sj[0].is_number_integer() ||
            !sj[1].is_number_integer()) {
            issues.add("sectors: must be a pair of integers [m, n]");
        } else {
            cfg.sector_m = sj[0].get<int>();
            cfg.sector_n = sj[1].get<int>();
        }
    }
    if (cfg.sector_m < 0 || cfg.sector_n < 0)
        issues.add("sectors: indices must be >= 0");
    canon["sectors"] = {cfg.sector_m, cfg.sector_n};

    // state coefficients (single-well scenarios)
    if (root.contains("state_coefficients")) {
        const json& cj = root.at("state_coefficients");
        if (!cj.is_array() || cj.empty()) {
            issues.add("state_coefficients: must be a non-empty array");
        } else {
            int idx = 0;
            for (const json& v : cj) {
                cfg.state_coefficients.push_back(get_complex(
                    v, "state_coefficients[" + std::to_string(idx) + "]", issues));
                ++idx;
            }
        }
    } else {
        cfg.state_coefficients = {std::complex<double>(1.0 / std::sqrt(2.0), 0.0),
                                  std::complex<double>(1.0 / std::sqrt(2.0), 0.0)};
    }
    {
        double norm2 = 0.0;
        for (const auto& cv : cfg.state_coefficients) norm2 += std::norm(cv);
        if (std::abs(norm2 - 1.0) > 1e-9)
            issues.add("state_coefficients: must be normalized (|c|^2 sums to " +
                       format_double(norm2) + ")");
        json arr = json::array();
        for (const auto& cv : cfg.state_coefficients)
            arr.push_back({cv.real(), cv.imag()});
        canon["state_coefficients"] = std::move(arr);
    }

    // double-well run block
    if (root.contains("double_well")) {
        const json& dj = root.at("double_well");
        if (!dj.is_object()) {
            issues.add("double_well: must be an object");
        } else {
            check_keys(dj, "double_well", {"alpha", "delta", "n_ref", "tail_tol"},
                       issues);
            cfg.double_well.alpha = get_double(dj, "double_well", "alpha", 1.0, issues);
            if (dj.contains("delta"))
                cfg.double_well.delta =
                    get_double(dj, "double_well", "delta", std::nullopt, issues);
            cfg.double_well.n_ref = get_int(dj, "double_well", "n_ref", 0, issues);
            cfg.double_well.tail_tol =
                get_double(dj, "double_well", "tail_tol", 1e-9, issues);
        }
    }
    if (!(cfg.double_well.alpha >= 0)) issues.add("double_well.alpha: must be >= 0");
    if (!(cfg.double_well.tail_tol > 0))
        issues.add("double_well.tail_tol: must be > 0");
    {
        json dj = {{"alpha", cfg.double_well.alpha},
                   {"n_ref", cfg.double_well.n_ref},
                   {"tail_tol", cfg.double_well.tail_tol}};
        if (cfg.double_well.delta) dj["delta"] = *cfg.double_well.delta;
        canon["double_well"] = std::move(dj);
    }

    // output
    if (root.contains("output")) {
        const json& oj = root.at("output");
        if (!oj.is_object()) {
            issues.add("output: must be an object");
        } else {
            check_keys(oj, "output", {"directory", "format"}, issues);
            cfg.output.directory = get_string(oj, "output", "directory", "", issues);
            const std::string fmt = get_string(oj, "output", "format", "csv", issues);
            if (fmt == "csv")
                cfg.output.format = OutputFormat::Csv;
            else if (fmt == "json")
                cfg.output.format = OutputFormat::Json;
            else
                issues.add("output.format: must be 'csv' or 'json'");
        }
    }
    canon["output"] = {
        {"directory", cfg.output.directory},
        {"format", cfg.output.format == OutputFormat::Csv ? "csv" : "json"}};

    // scenario-specific coherence between blocks
    if (cfg.scenario == "single_well" &&
        !std::holds_alternative<SingleWell>(cfg.geometry))
        issues.add("single_well scenario needs geometry.type = single_well");
    if (tunneling && !std::holds_alternative<DoubleWell>(cfg.geometry) &&
        !cfg.double_well.delta)
        issues.add(cfg.scenario +
                   " scenario needs a double-well geometry or double_well.delta");
    const bool needs_state =
        cfg.scenario == "single_well" ||
        (cfg.scenario == "oracle_check" &&
         std::holds_alternative<SingleWell>(cfg.geometry));
    if (needs_state) {
        const int size = static_cast<int>(cfg.state_coefficients.size());
        if (cfg.sector_m >= size || cfg.sector_n >= size)
            issues.add("sectors: indices must lie within state_coefficients");
        if (cfg.scenario == "oracle_check" && size - 1 > cfg.truncation.max_atoms)
            issues.add("truncation.max_atoms: below the highest occupied sector");
    }
    if (cfg.has_explicit_modes &&
        !std::holds_alternative<DoubleWell>(cfg.geometry)) {
        for (std::size_t i = 0; i < cfg.explicit_modes.size(); ++i)
            if (std::abs(cfg.explicit_modes[i].exchange_coupling) != 0.0)
                issues.add("modes[" + std::to_string(i) +
                           "].exchange_coupling: only meaningful with a double-well "
                           "geometry");
    }

    if (!issues.empty()) {
        std::string msg = "config invalid:";
        for (const std::string& item : issues.list) msg += "\n  - " + item;
        throw InvalidArgumentError(msg);
    }

    cfg.canonical = canon.dump();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidArgumentError("cannot open config file '" + path + "'");
    std::string raw((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    return validate_config(raw);
}

std::string config_hash(const ScenarioConfig& config) {
    return hex64(fnv1a64(config.canonical));
}

// -------------------------------------------------------------------- run

RunManifest run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();

    std::vector<double> times(static_cast<std::size_t>(config.times.steps));
    const double dt = (config.times.t_end - config.times.t_start) /
                      static_cast<double>(config.times.steps - 1);
    for (std::size_t i = 0; i < times.size(); ++i)
        times[i] = config.times.t_start + dt * static_cast<double>(i);

    // group per sweep value (or a single unswept group)
    struct GroupJob {
        ScenarioConfig cfg;
        std::string label;
    };
    std::vector<GroupJob> jobs;
    if (config.sweep) {
        for (double v : config.sweep->values) {
            GroupJob job{config, "[" + config.sweep->parameter + "=" +
                                     format_double(v) + "]"};
            job.cfg.sweep.reset();
            apply_parameter(job.cfg, config.sweep->parameter, v);
            jobs.push_back(std::move(job));
        }
    } else {
        jobs.push_back({config, ""});
    }

    double max_deviation = 0.0;
    double* dev_slot = config.scenario == "oracle_check" ? &max_deviation : nullptr;

    std::vector<GroupResult> results(jobs.size());
    const int workers = std::clamp(options.workers, 1,
                                   static_cast<int>(jobs.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            results[i] = evaluate_group(jobs[i].cfg, jobs[i].label, times, dev_slot);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                results[i] =
                    evaluate_group(jobs[i].cfg, jobs[i].label, times, dev_slot);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    // ordered assembly
    Table table;
    table.columns.push_back("t [time]");
    table.cells.push_back(times);
    std::vector<std::string> warnings = config.warnings;
    for (const GroupResult& result : results) {
        for (std::size_t c = 0; c < result.columns.size(); ++c) {
            table.columns.push_back(result.columns[c].first + result.label + " [" +
                                    result.columns[c].second + "]");
            table.cells.push_back(result.cells[c]);
        }
        table.columns.push_back("failed" + result.label + " [bool]");
        table.cells.push_back(result.failed);
        warnings.insert(warnings.end(), result.warnings.begin(),
                        result.warnings.end());
    }

    // resolve output directory: CLI override > config > environment > cwd
    std::string dir = options.out_dir;
    if (dir.empty()) dir = config.output.directory;
    if (dir.empty()) {
        if (const char* env = std::getenv("DECOBEC_OUTPUT_DIR")) dir = env;
    }
    if (dir.empty()) dir = ".";
    std::filesystem::create_directories(dir);

    const OutputFormat format = options.format.value_or(config.output.format);
    const std::string hash = config_hash(config);
    const std::string stem = config.scenario + "_" + hash;
    const std::filesystem::path data_path =
        std::filesystem::path(dir) /
        (stem + (format == OutputFormat::Csv ? ".csv" : ".json"));
    const std::filesystem::path manifest_path =
        std::filesystem::path(dir) / "manifest.json";

    {
        std::ofstream out(data_path, std::ios::binary);
        if (!out)
            throw InvalidArgumentError("cannot write output file '" +
                                       data_path.generic_string() + "'");
        out << (format == OutputFormat::Csv ? render_csv(table)
                                            : render_json(table));
    }

    RunManifest manifest;
    manifest.config_hash = hash;
    manifest.artifact_version = kArtifactVersion;
    manifest.outputs.push_back(data_path.generic_string());
    manifest.warnings = warnings;
    if (config.scenario == "oracle_check") manifest.max_abs_deviation = max_deviation;
    manifest.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    {
        json mj;
        mj["artifact_version"] = manifest.artifact_version;
        mj["config_hash"] = manifest.config_hash;
        if (manifest.max_abs_deviation)
            mj["max_abs_deviation"] = *manifest.max_abs_deviation;
        mj["outputs"] = manifest.outputs;
        mj["wall_time_seconds"] = manifest.wall_time_seconds;
        mj["warnings"] = manifest.warnings;
        std::ofstream out(manifest_path, std::ios::binary);
        if (!out)
            throw InvalidArgumentError("cannot write manifest '" +
                                       manifest_path.generic_string() + "'");
        out << mj.dump(2) << "\n";
    }

    if (config.scenario == "oracle_check" &&
        !(max_deviation < config.deviation_tolerance))
        throw AccuracyError("oracle check deviation " + format_double(max_deviation) +
                                " exceeds tolerance " +
                                format_double(config.deviation_tolerance),
                            max_deviation);

    return manifest;
}

} // namespace decobec
