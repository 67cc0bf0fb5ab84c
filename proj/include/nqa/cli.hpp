#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nqa/angular.hpp"
#include "nqa/grid.hpp"
#include "nqa/system.hpp"

namespace nqa {

enum class OutputFormat { table, json, csv };

OutputFormat parse_format(const std::string& name);

struct RunConfig {
    std::string preset = "hydrogen-e";
    std::optional<double> m1; ///< MeV, overrides the preset
    std::optional<double> m2;
    std::optional<double> alpha;
    PhysicalConstants constants;

    std::vector<std::string> states{"1S0F0"};
    std::vector<std::size_t> grids{800, 1000, 1200};
    MappingType mapping = MappingType::rational;
    std::optional<double> lambda; ///< mapping scale in units of m1; default alpha mu

    OutputFormat format = OutputFormat::table;
    std::string out; ///< empty: stdout
    bool compare_dirac = true;
    bool swap_masses = false;
    bool drop_small_terms = false;
    bool diagnostics = false;

    std::optional<std::string> export_state; ///< wave-function CSV for this state
    std::string export_path;

    /// Throws ConfigError for an empty state list, a grid below 8 points,
    /// a nonpositive mass or scale.
    void validate() const;
};

/// Applies one "key = value" setting; keys are the long flag names without dashes.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Flat key-value text: one "key = value" per line, '#' starts a comment.
RunConfig parse_config(std::istream& in);

TwoBodySystem resolve_system(const RunConfig& config);
GridMapping resolve_mapping(const RunConfig& config, const TwoBodySystem& system);

/// "<n><L-letter><S>F<F>", e.g. "1S0F0" or "2P1F2"; mF is set to F.
/// Throws ConfigError for malformed text or invalid quantum numbers.
QuantumState parse_state_label(const std::string& text);

/// Reporting unit: keV when the reduced mass is muonic or heavier, eV otherwise.
struct EnergyUnit {
    std::string name;
    double per_ev = 1.0; ///< report value = energy_ev * per_ev
};
EnergyUnit report_unit(const TwoBodySystem& system, const PhysicalConstants& constants);

struct StateRecord {
    std::string label;
    bool ok = false;
    std::string error;
    std::string unit;
    double epsilon = 0.0;
    std::optional<double> sigma;
    std::optional<double> dirac_energy;     ///< j = L + 1/2 (j = 1/2 for S states)
    std::optional<double> dirac_energy_alt; ///< j = L - 1/2, L > 0 only
    std::optional<double> delta;            ///< epsilon - dirac_energy
    double residual = 0.0;
    int node_count = 0;
    std::vector<std::pair<std::size_t, double>> per_grid;
};

struct Provenance {
    std::string version;
    std::string system;
    double m1 = 0.0;
    double m2 = 0.0;
    double alpha = 0.0;
    PhysicalConstants constants;
    std::vector<std::size_t> grids;
    std::string mapping;
    double scale = 0.0;
    bool swap_masses = false;
    bool drop_small_terms = false;
};

struct SpectrumReport {
    std::vector<StateRecord> records;
    Provenance provenance;

    bool all_ok() const;
};

SpectrumReport run_spectrum(const RunConfig& config);

void write_report(std::ostream& out, const SpectrumReport& report, OutputFormat format);

struct WavefunctionTable {
    std::vector<double> p;
    std::vector<double> g;
    std::vector<double> h;
    std::vector<double> g_dirac;
    std::vector<double> difference;
};

/// Solves `state` on the largest configured grid and writes
/// p_over_m1,g,h,g_dirac,g_minus_g_dirac at 17 significant digits after a
/// '#' provenance block. Both g and g_dirac use the discrete L2 norm.
WavefunctionTable export_wavefunction(const RunConfig& config, const QuantumState& state, std::ostream& out);

/// Reads the CSV written by export_wavefunction.
WavefunctionTable read_wavefunction_csv(std::istream& in);

struct DiagnosticResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct DiagnosticsReport {
    std::vector<DiagnosticResult> results;
    bool all_passed() const;
};

struct DiagnosticHooks {
    /// Applied to each left coupling table before the sum rules are checked.
    std::function<void(CouplingTable&)> tamper_coupling;
};

/// Mass interchange (within 2 sigma), dropped small terms (within sigma or the
/// alpha^2 (m1/m2)^2 |epsilon| estimate, whichever is larger),
/// the m2 = 1e6 m1 Dirac limit (1e-6 relative, N = 800) and the F <= 3 sum rules,
/// all for the first configured state.
DiagnosticsReport run_diagnostics(const RunConfig& config, const DiagnosticHooks& hooks = {});

void write_diagnostics(std::ostream& out, const DiagnosticsReport& report, OutputFormat format);

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitDiagnostic = 3;

std::string version_string();

} // namespace nqa
