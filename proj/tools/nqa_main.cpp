// nqa: bound-state spectra of two-body Coulomb systems.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "nqa/cli.hpp"
#include "nqa/errors.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Two-body Coulomb bound states in the N-quantum approach"};
    app.set_version_flag("--version", nqa::version_string());

    std::string config_path;
    app.add_option("--config", config_path, "key = value config file; flags override it")->check(CLI::ExistingFile);

    std::map<std::string, std::string> opts;
    auto add = [&](const std::string& name, const std::string& help) {
        return app.add_option("--" + name, opts[name], help);
    };
    add("system", "preset: hydrogen-e, hydrogen-mu, positronium, e-mu, mu-mu, or custom");
    add("m1", "off-shell constituent mass in MeV");
    add("m2", "on-shell constituent mass in MeV");
    add("alpha", "coupling constant");
    add("states", "comma-separated labels such as 1S0F0,2S1F1");
    add("grids", "comma-separated grid sizes; two or more give sigma");
    add("lambda", "mapping scale in units of m1");
    add("mapping", "rational or tangent");
    add("out", "output file (default stdout)");
    add("format", "table, json or csv");
    add("electron-mass", "override the electron mass (MeV)");
    add("muon-mass", "override the muon mass (MeV)");
    add("proton-mass", "override the proton mass (MeV)");
    add("export-state", "write the wave function of this state as CSV");
    add("export-path", "destination of the wave-function CSV");

    std::map<std::string, bool> toggles;
    const std::pair<const char*, const char*> toggle_help[] = {
        {"compare-dirac", "add Dirac reduced-mass columns (default on)"},
        {"swap-masses", "interchange m1 and m2"},
        {"drop-small-terms", "omit the S(p')-weighted kernel terms"},
        {"diagnostics", "run the self-checks on the first state instead of a spectrum"},
    };
    for (const auto& [name, help] : toggle_help) {
        toggles[name] = false;
        app.add_flag(std::string("--") + name, toggles[name], help);
    }
    bool no_dirac = false;
    app.add_flag("--no-compare-dirac", no_dirac, "omit the Dirac comparison columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? nqa::kExitOk : nqa::kExitConfig;
    }

    nqa::RunConfig config;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            config = nqa::parse_config(in);
        }
        for (const auto& [name, value] : opts) {
            if (app.count("--" + name) > 0) {
                nqa::apply_setting(config, name, value);
            }
        }
        for (const auto& [name, on] : toggles) {
            if (on) {
                nqa::apply_setting(config, name, "true");
            }
        }
        if (no_dirac) {
            config.compare_dirac = false;
        }
        config.validate();
        nqa::resolve_system(config);
        for (const auto& s : config.states) {
            nqa::parse_state_label(s);
        }
    } catch (const std::exception& e) {
        std::cerr << "nqa: " << e.what() << '\n';
        return nqa::kExitConfig;
    }

    std::ofstream file;
    if (!config.out.empty()) {
        file.open(config.out);
        if (!file) {
            std::cerr << "nqa: cannot open " << config.out << '\n';
            return nqa::kExitConfig;
        }
    }
    std::ostream& out = config.out.empty() ? std::cout : file;

    try {
        const nqa::SpectrumReport report = nqa::run_spectrum(config);
        nqa::write_report(out, report, config.format);
        int code = report.all_ok() ? nqa::kExitOk : nqa::kExitSolver;

        if (config.export_state) {
            std::ofstream csv(config.export_path);
            if (!csv) {
                std::cerr << "nqa: cannot open " << config.export_path << '\n';
                return nqa::kExitConfig;
            }
            nqa::export_wavefunction(config, nqa::parse_state_label(*config.export_state), csv);
        }

        if (config.diagnostics) {
            const nqa::DiagnosticsReport diag = nqa::run_diagnostics(config);
            if (config.format == nqa::OutputFormat::table) {
                out << '\n';
            }
            nqa::write_diagnostics(out, diag, config.format);
            if (!diag.all_passed() && code == nqa::kExitOk) {
                code = nqa::kExitDiagnostic;
            }
        }
        return code;
    } catch (const nqa::ConfigError& e) {
        std::cerr << "nqa: " << e.what() << '\n';
        return nqa::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "nqa: " << e.what() << '\n';
        return nqa::kExitSolver;
    }
}
