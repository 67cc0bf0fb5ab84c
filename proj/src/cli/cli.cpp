#include "nqa/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "nqa/errors.hpp"
#include "nqa/reference.hpp"
#include "nqa/solver.hpp"

#ifndef NQA_VERSION
#define NQA_VERSION "0.0.0"
#endif

namespace nqa {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) {
        throw ConfigError("'" + key + "': expected a number, got '" + value + "'");
    }
    return x;
}

std::size_t parse_size(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    std::size_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("'" + key + "': expected a positive integer, got '" + value + "'");
    }
    return x;
}

bool parse_bool(const std::string& key, const std::string& value)
{
    std::string v = trim(value);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("'" + key + "': expected true or false, got '" + value + "'");
}

std::string fmt(double x, int digits = 17)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string fixed(double x, int decimals)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

// Relative to the energy scale of the preset: enough digits to show sigma.
int table_decimals(const std::string& unit)
{
    return unit == "keV" ? 7 : 6;
}

} // namespace

std::string version_string()
{
    return NQA_VERSION;
}

OutputFormat parse_format(const std::string& name)
{
    if (name == "table") {
        return OutputFormat::table;
    }
    if (name == "json") {
        return OutputFormat::json;
    }
    if (name == "csv") {
        return OutputFormat::csv;
    }
    throw ConfigError("unknown output format '" + name + "'");
}

void RunConfig::validate() const
{
    if (states.empty()) {
        throw ConfigError("no states requested");
    }
    if (grids.empty()) {
        throw ConfigError("no grid sizes given");
    }
    for (std::size_t n : grids) {
        if (n < 8) {
            throw ConfigError("grid sizes must be at least 8");
        }
    }
    for (const auto& m : {m1, m2}) {
        if (m && !(*m > 0.0)) {
            throw ConfigError("masses must be positive");
        }
    }
    if (alpha && !(*alpha >= 0.0 && *alpha < 1.0)) {
        throw ConfigError("alpha must lie in [0, 1)");
    }
    if (lambda && !(*lambda > 0.0)) {
        throw ConfigError("mapping scale must be positive");
    }
    if (export_state && export_path.empty()) {
        throw ConfigError("wave-function export needs an output path");
    }
}

void apply_setting(RunConfig& c, const std::string& raw_key, const std::string& value)
{
    const std::string key = trim(raw_key);
    const std::string v = trim(value);
    if (key == "system") {
        c.preset = v;
    } else if (key == "m1") {
        c.m1 = parse_double(key, v);
    } else if (key == "m2") {
        c.m2 = parse_double(key, v);
    } else if (key == "alpha") {
        c.alpha = parse_double(key, v);
    } else if (key == "states") {
        c.states = split_list(v);
    } else if (key == "grids") {
        c.grids.clear();
        for (const auto& s : split_list(v)) {
            c.grids.push_back(parse_size(key, s));
        }
    } else if (key == "lambda") {
        c.lambda = parse_double(key, v);
    } else if (key == "mapping") {
        try {
            c.mapping = parse_mapping(v);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "out") {
        c.out = v;
    } else if (key == "format") {
        c.format = parse_format(v);
    } else if (key == "compare-dirac") {
        c.compare_dirac = parse_bool(key, v);
    } else if (key == "swap-masses") {
        c.swap_masses = parse_bool(key, v);
    } else if (key == "drop-small-terms") {
        c.drop_small_terms = parse_bool(key, v);
    } else if (key == "diagnostics") {
        c.diagnostics = parse_bool(key, v);
    } else if (key == "export-state") {
        c.export_state = v;
    } else if (key == "export-path") {
        c.export_path = v;
    } else if (key == "electron-mass") {
        c.constants.electron_mass = parse_double(key, v);
    } else if (key == "muon-mass") {
        c.constants.muon_mass = parse_double(key, v);
    } else if (key == "proton-mass") {
        c.constants.proton_mass = parse_double(key, v);
    } else if (key == "alpha-constant") {
        c.constants.alpha = parse_double(key, v);
    } else {
        throw ConfigError("unknown setting '" + key + "'");
    }
}

RunConfig parse_config(std::istream& in)
{
    RunConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        apply_setting(c, line.substr(0, eq), line.substr(eq + 1));
    }
    return c;
}

TwoBodySystem resolve_system(const RunConfig& c)
{
    const double alpha = c.alpha.value_or(c.constants.alpha);
    TwoBodySystem sys = [&] {
        if (c.m1 && c.m2 && c.preset == "custom") {
            return TwoBodySystem(*c.m1, *c.m2, alpha, "custom");
        }
        if (c.preset == "custom") {
            throw ConfigError("system 'custom' needs both m1 and m2");
        }
        PhysicalConstants k = c.constants;
        k.alpha = alpha;
        const TwoBodySystem base = make_preset(c.preset, k);
        return TwoBodySystem(c.m1.value_or(base.m1()), c.m2.value_or(base.m2()), alpha, base.label());
    }();
    return c.swap_masses ? sys.swapped() : sys;
}

GridMapping resolve_mapping(const RunConfig& c, const TwoBodySystem& system)
{
    GridMapping m = default_mapping(system);
    m.type = c.mapping;
    if (c.lambda) {
        m.scale = *c.lambda;
    }
    return m;
}

QuantumState parse_state_label(const std::string& text)
{
    const std::string t = trim(text);
    auto fail = [&](const std::string& why) -> QuantumState {
        throw ConfigError("state label '" + text + "': " + why);
    };
    std::size_t pos = 0;
    auto read_int = [&](int& out) {
        const auto [ptr, ec] = std::from_chars(t.data() + pos, t.data() + t.size(), out);
        if (ec != std::errc() || ptr == t.data() + pos) {
            return false;
        }
        pos = static_cast<std::size_t>(ptr - t.data());
        return true;
    };

    QuantumState s;
    if (!read_int(s.n)) {
        return fail("expected principal quantum number");
    }
    if (pos >= t.size() || !std::isupper(static_cast<unsigned char>(t[pos]))) {
        return fail("expected orbital letter");
    }
    const char letter = t[pos++];
    s.L = -1;
    for (int L = 0; L < 17; ++L) {
        if (orbital_letter(L) == letter) {
            s.L = L;
            break;
        }
    }
    if (s.L < 0) {
        return fail(std::string("unknown orbital letter '") + letter + "'");
    }
    if (!read_int(s.S)) {
        return fail("expected spin 0 or 1");
    }
    if (pos >= t.size() || t[pos] != 'F') {
        return fail("expected 'F' before total angular momentum");
    }
    ++pos;
    if (!read_int(s.F) || pos != t.size()) {
        return fail("expected total angular momentum at the end");
    }
    s.mF = s.F;
    try {
        s.validate();
    } catch (const DomainError& e) {
        return fail(e.what());
    }
    return s;
}

EnergyUnit report_unit(const TwoBodySystem& system, const PhysicalConstants& constants)
{
    // Muonic atoms bind at keV, electronic ones at eV.
    if (system.reduced_mass() > 10.0 * constants.electron_mass) {
        return {"keV", 1e-3};
    }
    return {"eV", 1.0};
}

bool SpectrumReport::all_ok() const
{
    return std::all_of(records.begin(), records.end(), [](const StateRecord& r) { return r.ok; });
}

SpectrumReport run_spectrum(const RunConfig& config)
{
    config.validate();
    const TwoBodySystem system = resolve_system(config);
    const GridMapping mapping = resolve_mapping(config, system);
    const EnergyUnit unit = report_unit(system, config.constants);
    const double mu = system.reduced_mass_units();
    auto to_unit = [&](double eps) { return system.to_ev(eps) * unit.per_ev; };

    SpectrumReport report;
    Provenance& pv = report.provenance;
    pv.version = version_string();
    pv.system = system.label().empty() ? config.preset : system.label();
    pv.m1 = system.m1();
    pv.m2 = system.m2();
    pv.alpha = system.alpha();
    pv.constants = config.constants;
    pv.grids = config.grids;
    pv.mapping = to_string(mapping.type);
    pv.scale = mapping.scale;
    pv.swap_masses = config.swap_masses;
    pv.drop_small_terms = config.drop_small_terms;

    AssemblyOptions assembly;
    assembly.include_small_terms = !config.drop_small_terms;

    for (const std::string& label : config.states) {
        StateRecord rec;
        rec.label = label;
        rec.unit = unit.name;
        try {
            const QuantumState st = parse_state_label(label);
            RadialSolution best;
            if (config.grids.size() >= 2) {
                const RefineResult r = refine_uncertainty(system, st, config.grids, assembly, mapping);
                best = r.best;
                rec.sigma = to_unit(r.sigma);
                for (const auto& [n, e] : r.per_size) {
                    rec.per_grid.emplace_back(n, to_unit(e));
                }
            } else {
                best = solve_state(system, st, config.grids.front(), assembly, {}, mapping);
                rec.per_grid.emplace_back(config.grids.front(), to_unit(best.epsilon));
            }
            rec.epsilon = to_unit(best.epsilon);
            rec.residual = best.residual;
            rec.node_count = best.node_count;
            if (config.compare_dirac && system.alpha() > 0.0) {
                const int j2 = st.L == 0 ? 1 : 2 * st.L + 1;
                rec.dirac_energy = to_unit(dirac_coulomb_energy(st.n, 0.5 * j2, mu, system.alpha()));
                if (st.L > 0) {
                    rec.dirac_energy_alt = to_unit(dirac_coulomb_energy(st.n, st.L - 0.5, mu, system.alpha()));
                }
                rec.delta = rec.epsilon - *rec.dirac_energy;
            }
            rec.ok = !best.flagged;
            if (best.flagged) {
                rec.error = "residual above tolerance";
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            rec.ok = false;
            rec.error = e.what();
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

namespace {

nlohmann::ordered_json provenance_json(const Provenance& p)
{
    nlohmann::ordered_json j;
    j["version"] = p.version;
    j["system"] = p.system;
    j["m1_MeV"] = p.m1;
    j["m2_MeV"] = p.m2;
    j["alpha"] = p.alpha;
    j["constants"] = {{"electron_mass_MeV", p.constants.electron_mass},
                      {"muon_mass_MeV", p.constants.muon_mass},
                      {"proton_mass_MeV", p.constants.proton_mass},
                      {"alpha", p.constants.alpha}};
    j["grids"] = p.grids;
    j["mapping"] = p.mapping;
    j["mapping_scale_over_m1"] = p.scale;
    j["swap_masses"] = p.swap_masses;
    j["drop_small_terms"] = p.drop_small_terms;
    return j;
}

void write_provenance_comments(std::ostream& out, const Provenance& p)
{
    out << "# nqa " << p.version << '\n'
        << "# system " << p.system << " m1_MeV=" << fmt(p.m1) << " m2_MeV=" << fmt(p.m2)
        << " alpha=" << fmt(p.alpha) << '\n'
        << "# constants electron=" << fmt(p.constants.electron_mass) << " muon=" << fmt(p.constants.muon_mass)
        << " proton=" << fmt(p.constants.proton_mass) << " alpha=" << fmt(p.constants.alpha) << '\n'
        << "# grids";
    for (std::size_t n : p.grids) {
        out << ' ' << n;
    }
    out << " mapping=" << p.mapping << " scale_over_m1=" << fmt(p.scale) << '\n'
        << "# swap_masses=" << (p.swap_masses ? "true" : "false")
        << " drop_small_terms=" << (p.drop_small_terms ? "true" : "false") << '\n';
}

template <class T>
std::string opt(const std::optional<T>& v, int digits = 17)
{
    return v ? fmt(*v, digits) : std::string{};
}

} // namespace

void write_report(std::ostream& out, const SpectrumReport& report, OutputFormat format)
{
    if (format == OutputFormat::json) {
        nlohmann::ordered_json j;
        j["provenance"] = provenance_json(report.provenance);
        j["states"] = nlohmann::ordered_json::array();
        for (const StateRecord& r : report.records) {
            nlohmann::ordered_json s;
            s["label"] = r.label;
            s["ok"] = r.ok;
            s["unit"] = r.unit;
            if (!r.ok) {
                s["error"] = r.error;
            }
            s["epsilon"] = r.epsilon;
            s["sigma"] = r.sigma ? nlohmann::ordered_json(*r.sigma) : nlohmann::ordered_json();
            s["dirac_energy"] = r.dirac_energy ? nlohmann::ordered_json(*r.dirac_energy) : nlohmann::ordered_json();
            if (r.dirac_energy_alt) {
                s["dirac_energy_alt"] = *r.dirac_energy_alt;
            }
            s["delta"] = r.delta ? nlohmann::ordered_json(*r.delta) : nlohmann::ordered_json();
            s["residual"] = r.residual;
            s["node_count"] = r.node_count;
            nlohmann::ordered_json per = nlohmann::ordered_json::array();
            for (const auto& [n, e] : r.per_grid) {
                per.push_back({{"grid", n}, {"epsilon", e}});
            }
            s["per_grid"] = per;
            j["states"].push_back(s);
        }
        out << j.dump(2) << '\n';
        return;
    }

    if (format == OutputFormat::csv) {
        write_provenance_comments(out, report.provenance);
        out << "label,unit,epsilon,sigma,dirac_energy,dirac_energy_alt,delta,residual,node_count,status\n";
        for (const StateRecord& r : report.records) {
            out << r.label << ',' << r.unit << ',' << (r.ok ? fmt(r.epsilon) : "") << ',' << opt(r.sigma) << ','
                << opt(r.dirac_energy) << ',' << opt(r.dirac_energy_alt) << ',' << opt(r.delta) << ','
                << fmt(r.residual, 3) << ',' << r.node_count << ',' << (r.ok ? "ok" : "failed") << '\n';
        }
        return;
    }

    const Provenance& p = report.provenance;
    out << "system " << p.system << "  m1 = " << fmt(p.m1, 10) << " MeV  m2 = " << fmt(p.m2, 10)
        << " MeV  alpha = " << fmt(p.alpha, 11) << '\n';
    out << "grids";
    for (std::size_t n : p.grids) {
        out << ' ' << n;
    }
    out << "  mapping " << p.mapping << " (scale " << fmt(p.scale, 6) << " m1)  nqa " << p.version << "\n\n";

    char line[256];
    std::snprintf(line, sizeof line, "%-8s %-4s %16s %12s %16s %12s %10s %5s\n", "state", "unit", "epsilon", "sigma",
                  "dirac", "delta", "residual", "nodes");
    out << line;
    for (const StateRecord& r : report.records) {
        if (!r.ok) {
            std::snprintf(line, sizeof line, "%-8s %-4s failed: %s\n", r.label.c_str(), r.unit.c_str(),
                          r.error.c_str());
            out << line;
            continue;
        }
        const int d = table_decimals(r.unit);
        std::snprintf(line, sizeof line, "%-8s %-4s %16s %12s %16s %12s %10.2e %5d\n", r.label.c_str(),
                      r.unit.c_str(), fixed(r.epsilon, d).c_str(), r.sigma ? fmt(*r.sigma, 3).c_str() : "-",
                      r.dirac_energy ? fixed(*r.dirac_energy, d).c_str() : "-",
                      r.delta ? fmt(*r.delta, 3).c_str() : "-", r.residual, r.node_count);
        out << line;
        if (r.dirac_energy_alt) {
            std::snprintf(line, sizeof line, "%-8s %-4s %16s %12s %16s  (j = L - 1/2)\n", "", "", "", "",
                          fixed(*r.dirac_energy_alt, d).c_str());
            out << line;
        }
    }
}

WavefunctionTable export_wavefunction(const RunConfig& config, const QuantumState& state, std::ostream& out)
{
    config.validate();
    const TwoBodySystem system = resolve_system(config);
    const GridMapping mapping = resolve_mapping(config, system);
    const std::size_t n = *std::max_element(config.grids.begin(), config.grids.end());
    auto grid = std::make_shared<const MomentumGrid>(build_grid(n, mapping));

    AssemblyOptions assembly;
    assembly.include_small_terms = !config.drop_small_terms;
    const RadialSolution sol =
        normalize(select_state(solve_bound_states(assemble(system, state, grid, assembly)), state.n, state.L));
    const RadialSolution dirac = dirac_reference_wavefunction(system, system.reduced_mass_units(), state, grid);

    WavefunctionTable t;
    t.p = grid->nodes;
    t.g = sol.g;
    t.h = sol.h;
    t.g_dirac = dirac.g;
    t.difference.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.difference[i] = t.g[i] - t.g_dirac[i];
    }

    Provenance p;
    p.version = version_string();
    p.system = system.label().empty() ? config.preset : system.label();
    p.m1 = system.m1();
    p.m2 = system.m2();
    p.alpha = system.alpha();
    p.constants = config.constants;
    p.grids = {n};
    p.mapping = to_string(mapping.type);
    p.scale = mapping.scale;
    p.swap_masses = config.swap_masses;
    p.drop_small_terms = config.drop_small_terms;
    write_provenance_comments(out, p);
    out << "# state " << state.label() << " epsilon_over_m1=" << fmt(sol.epsilon)
        << " dirac_mass_over_m1=" << fmt(system.reduced_mass_units()) << " norm=discrete_l2\n";
    out << "p_over_m1,g,h,g_dirac,g_minus_g_dirac\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << fmt(t.p[i]) << ',' << fmt(t.g[i]) << ',' << fmt(t.h[i]) << ',' << fmt(t.g_dirac[i]) << ','
            << fmt(t.difference[i]) << '\n';
    }
    if (!out) {
        throw std::runtime_error("export_wavefunction: write failed");
    }
    return t;
}

WavefunctionTable read_wavefunction_csv(std::istream& in)
{
    WavefunctionTable t;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            if (trim(line) != "p_over_m1,g,h,g_dirac,g_minus_g_dirac") {
                throw ConfigError("wave-function CSV: unexpected header");
            }
            header = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(row, cell, ',')) {
            v.push_back(std::strtod(cell.c_str(), nullptr));
        }
        if (v.size() != 5) {
            throw ConfigError("wave-function CSV: expected 5 columns");
        }
        t.p.push_back(v[0]);
        t.g.push_back(v[1]);
        t.h.push_back(v[2]);
        t.g_dirac.push_back(v[3]);
        t.difference.push_back(v[4]);
    }
    return t;
}

bool DiagnosticsReport::all_passed() const
{
    return std::all_of(results.begin(), results.end(), [](const DiagnosticResult& r) { return r.passed; });
}

DiagnosticsReport run_diagnostics(const RunConfig& config, const DiagnosticHooks& hooks)
{
    config.validate();
    const TwoBodySystem system = resolve_system(config);
    const QuantumState state = parse_state_label(config.states.front());
    std::vector<std::size_t> grids = config.grids;
    if (grids.size() < 2) {
        grids = {800, 1000, 1200};
    }
    const std::size_t largest = *std::max_element(grids.begin(), grids.end());
    const EnergyUnit unit = report_unit(system, config.constants);
    auto in_unit = [&](double eps) { return system.to_ev(eps) * unit.per_ev; };

    DiagnosticsReport report;

    const MassInterchangeReport mi = mass_interchange_check(system, state, grids);
    report.results.push_back({"mass_interchange", mi.delta <= 2.0 * mi.sigma, mi.delta_in_sigma, 2.0,
                              "delta = " + fmt(in_unit(mi.delta), 4) + " " + unit.name +
                                  ", sigma = " + fmt(in_unit(mi.sigma), 4) + " " + unit.name});

    const SmallTermsReport st = drop_small_terms_check(system, state, largest);
    // The dropped terms are O(alpha^2 (m1/m2)^2) relative; for muonic systems that exceeds sigma.
    const double small_limit = std::max(mi.sigma, st.expected_scale);
    report.results.push_back({"small_terms", st.bound && st.delta <= small_limit, in_unit(st.delta),
                              in_unit(small_limit), "shift from dropping S(p')-weighted terms, " + unit.name});

    {
        const TwoBodySystem heavy(system.m1(), 1e6 * system.m1(), system.alpha(), "dirac-limit");
        const QuantumState ground{1, state.S, 0, state.S, state.S};
        const RadialSolution s = solve_state(heavy, ground, 800);
        const double ref = dirac_coulomb_energy(1, 0.5, 1.0, system.alpha());
        const double rel = std::abs(s.epsilon - ref) / std::abs(ref);
        report.results.push_back({"dirac_limit", rel <= 1e-6, rel, 1e-6,
                                  "m2 = 1e6 m1, N = 800, relative to the analytic ground state"});
    }

    {
        double worst = 0.0;
        std::string where;
        for (int F = 0; F <= 3; ++F) {
            for (int mF = -F; mF <= F; ++mF) {
                CouplingTable left = *coupling_table(F, mF, CouplingSide::left);
                const CouplingTable right = *coupling_table(F, mF, CouplingSide::right);
                if (hooks.tamper_coupling) {
                    hooks.tamper_coupling(left);
                }
                const SumRuleReport r = verify_sum_rules(left, right);
                for (std::size_t k = 0; k < r.max_deviation.size(); ++k) {
                    if (r.max_deviation[k] > worst) {
                        worst = r.max_deviation[k];
                        where = std::string(SumRuleReport::names[k]) + " at F=" + std::to_string(F) +
                                " mF=" + std::to_string(mF);
                    }
                }
            }
        }
        report.results.push_back(
            {"sum_rules", worst <= 1e-14, worst, 1e-14, where.empty() ? "all identities exact" : where});
    }
    return report;
}

void write_diagnostics(std::ostream& out, const DiagnosticsReport& report, OutputFormat format)
{
    if (format == OutputFormat::json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& r : report.results) {
            j.push_back({{"name", r.name},
                         {"passed", r.passed},
                         {"value", r.value},
                         {"threshold", r.threshold},
                         {"detail", r.detail}});
        }
        out << nlohmann::ordered_json{{"diagnostics", j}, {"all_passed", report.all_passed()}}.dump(2) << '\n';
        return;
    }
    if (format == OutputFormat::csv) {
        out << "name,passed,value,threshold,detail\n";
        for (const auto& r : report.results) {
            out << r.name << ',' << (r.passed ? "true" : "false") << ',' << fmt(r.value) << ','
                << fmt(r.threshold) << ",\"" << r.detail << "\"\n";
        }
        return;
    }
    char line[256];
    for (const auto& r : report.results) {
        std::snprintf(line, sizeof line, "%-4s %-18s value %-12s limit %-10s %s\n", r.passed ? "ok" : "FAIL",
                      r.name.c_str(), fmt(r.value, 4).c_str(), fmt(r.threshold, 3).c_str(), r.detail.c_str());
        out << line;
    }
}

} // namespace nqa
