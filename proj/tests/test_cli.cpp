#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "nqa/cli.hpp"
#include "nqa/errors.hpp"
#include "nqa/solver.hpp"

using namespace nqa;

namespace {

RunConfig small_config(const std::string& preset)
{
    RunConfig c;
    c.preset = preset;
    c.grids = {150, 200};
    return c;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("state labels")
    {
        const QuantumState a = parse_state_label("1S0F0");
        CHECK(a == QuantumState{1, 0, 0, 0, 0});
        const QuantumState b = parse_state_label("2S1F1");
        CHECK(b == QuantumState{2, 1, 0, 1, 1});
        const QuantumState c = parse_state_label("3D1F3");
        CHECK(c.L == 2);
        CHECK(c.F == 3);
        CHECK(c.mF == 3);
        CHECK(parse_state_label("4F1F2").L == 3);
        CHECK(parse_state_label("12P0F1").n == 12);

        CHECK_THROWS_AS(parse_state_label("1S0F1"), ConfigError); // triangle rule
        CHECK_THROWS_AS(parse_state_label("1P0F1"), ConfigError); // n <= L
        CHECK_THROWS_AS(parse_state_label("1s0F0"), ConfigError);
        CHECK_THROWS_AS(parse_state_label("1S2F2"), ConfigError);
        CHECK_THROWS_AS(parse_state_label("1S0"), ConfigError);
        CHECK_THROWS_AS(parse_state_label("1S0F0x"), ConfigError);
        CHECK_THROWS_AS(parse_state_label(""), ConfigError);
        CHECK_THROWS_AS(parse_state_label("1J0F0"), ConfigError);
    }

    TEST_CASE("config text and overrides")
    {
        std::istringstream in("# batch run\n"
                              "system = hydrogen-mu\n"
                              "states = 1S0F0, 2S1F1\n"
                              "grids = 400,600\n"
                              "mapping = tangent   # comment\n"
                              "format = json\n"
                              "swap-masses = true\n"
                              "muon-mass = 105.66\n");
        RunConfig c = parse_config(in);
        CHECK(c.preset == "hydrogen-mu");
        CHECK(c.states == std::vector<std::string>{"1S0F0", "2S1F1"});
        CHECK(c.grids == std::vector<std::size_t>{400, 600});
        CHECK(c.mapping == MappingType::tangent);
        CHECK(c.format == OutputFormat::json);
        CHECK(c.swap_masses);
        CHECK(c.constants.muon_mass == 105.66);
        apply_setting(c, "grids", "1200");
        CHECK(c.grids == std::vector<std::size_t>{1200});

        const TwoBodySystem s = resolve_system(c);
        CHECK(s.m1() == c.constants.proton_mass); // swapped
        CHECK(s.m2() == 105.66);

        std::istringstream bad1("nonsense = 1\n");
        CHECK_THROWS_AS(parse_config(bad1), ConfigError);
        std::istringstream bad2("grids 100\n");
        CHECK_THROWS_AS(parse_config(bad2), ConfigError);
        CHECK_THROWS_AS(apply_setting(c, "alpha", "abc"), ConfigError);
        CHECK_THROWS_AS(apply_setting(c, "format", "xml"), ConfigError);
        CHECK_THROWS_AS(apply_setting(c, "compare-dirac", "maybe"), ConfigError);
    }

    TEST_CASE("config validation")
    {
        RunConfig c;
        CHECK_NOTHROW(c.validate());
        c.grids = {4};
        CHECK_THROWS_AS(c.validate(), ConfigError);
        c.grids = {100};
        c.states.clear();
        CHECK_THROWS_AS(c.validate(), ConfigError);
        c.states = {"1S0F0"};
        c.m1 = -1.0;
        CHECK_THROWS_AS(c.validate(), ConfigError);
        c.m1.reset();
        c.preset = "custom";
        CHECK_THROWS_AS(resolve_system(c), ConfigError);
        c.m1 = 1.0;
        c.m2 = 2.0;
        CHECK(resolve_system(c).xi() == 2.0);
        c.preset = "helium";
        c.m1.reset();
        c.m2.reset();
        CHECK_THROWS_AS(resolve_system(c), ConfigError);
    }

    TEST_CASE("reporting units follow the constants")
    {
        const PhysicalConstants k;
        CHECK(report_unit(make_preset("hydrogen-e", k), k).name == "eV");
        CHECK(report_unit(make_preset("positronium", k), k).name == "eV");
        CHECK(report_unit(make_preset("e-mu", k), k).name == "eV");
        const EnergyUnit mu = report_unit(make_preset("hydrogen-mu", k), k);
        CHECK(mu.name == "keV");
        CHECK(mu.per_ev == 1e-3);
        CHECK(report_unit(make_preset("mu-mu", k), k).name == "keV");
    }

    TEST_CASE("spectrum report contents")
    {
        RunConfig c = small_config("hydrogen-e");
        c.states = {"1S0F0", "2P0F1"};
        const SpectrumReport r = run_spectrum(c);
        REQUIRE(r.records.size() == 2);
        CHECK(r.all_ok());
        const StateRecord& s = r.records[0];
        CHECK(s.unit == "eV");
        CHECK(s.epsilon == doctest::Approx(-13.5985).epsilon(1e-4));
        REQUIRE(s.sigma.has_value());
        REQUIRE(s.dirac_energy.has_value());
        CHECK(*s.delta == doctest::Approx(s.epsilon - *s.dirac_energy));
        CHECK(s.per_grid.size() == 2);
        CHECK_FALSE(s.dirac_energy_alt.has_value());
        CHECK(r.records[1].dirac_energy_alt.has_value());
        CHECK(r.records[1].node_count == 0);
        CHECK(r.provenance.grids == c.grids);
        CHECK(r.provenance.version == version_string());

        c.states = {"9S0F0"};
        c.grids = {16};
        const SpectrumReport f = run_spectrum(c);
        CHECK_FALSE(f.all_ok());
        CHECK_FALSE(f.records[0].error.empty());
    }

    TEST_CASE("reports are deterministic")
    {
        RunConfig c = small_config("hydrogen-mu");
        c.states = {"1S1F1"};
        for (OutputFormat f : {OutputFormat::json, OutputFormat::csv, OutputFormat::table}) {
            std::ostringstream a, b;
            write_report(a, run_spectrum(c), f);
            write_report(b, run_spectrum(c), f);
            CHECK(a.str() == b.str());
            CHECK(a.str().find("keV") != std::string::npos);
        }
    }

    TEST_CASE("positronium is symmetric under mass interchange")
    {
        RunConfig c = small_config("positronium");
        const SpectrumReport a = run_spectrum(c);
        c.swap_masses = true;
        const SpectrumReport b = run_spectrum(c);
        CHECK(a.records[0].epsilon == b.records[0].epsilon);
    }

    TEST_CASE("wave-function export round-trips")
    {
        RunConfig c = small_config("hydrogen-e");
        std::ostringstream out;
        const WavefunctionTable t = export_wavefunction(c, parse_state_label("1S0F0"), out);
        const std::string text = out.str();
        CHECK(text.rfind("# nqa", 0) == 0);
        CHECK(text.find("p_over_m1,g,h,g_dirac,g_minus_g_dirac") != std::string::npos);

        std::istringstream in(text);
        const WavefunctionTable r = read_wavefunction_csv(in);
        CHECK(r.p == t.p);
        CHECK(r.g == t.g);
        CHECK(r.h == t.h);
        CHECK(r.g_dirac == t.g_dirac);
        CHECK(r.difference == t.difference);
        REQUIRE(t.p.size() == 200);
        // positive wherever it rises above rounding noise in the far tail
        const double gmax = *std::max_element(t.g.begin(), t.g.end());
        for (std::size_t i = 0; i < t.g.size(); ++i) {
            CHECK(t.g[i] > -1e-8 * gmax);
        }
        CHECK(count_nodes(t.g) == 0);

        std::istringstream bad("a,b\n1,2\n");
        CHECK_THROWS_AS(read_wavefunction_csv(bad), ConfigError);
    }

    TEST_CASE("diagnostics and fault injection")
    {
        RunConfig c = small_config("custom");
        c.m1 = 0.51099895;
        c.m2 = 1e6 * 0.51099895;
        const DiagnosticsReport r = run_diagnostics(c);
        REQUIRE(r.results.size() == 4);
        for (const auto& d : r.results) {
            CAPTURE(d.name);
            CAPTURE(d.value);
            CHECK(d.passed);
        }

        DiagnosticHooks hooks;
        hooks.tamper_coupling = [](CouplingTable& t) {
            auto& e = t.entries.begin()->second.front();
            e.value *= 1.01;
            e.exact.reset();
        };
        const DiagnosticsReport bad = run_diagnostics(c, hooks);
        CHECK_FALSE(bad.all_passed());
        CHECK_FALSE(bad.results.back().passed);
        CHECK(bad.results.back().name == "sum_rules");

        std::ostringstream out;
        write_diagnostics(out, bad, OutputFormat::table);
        CHECK(out.str().find("FAIL") != std::string::npos);
    }
}
