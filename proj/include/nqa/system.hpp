#pragma once

#include <string>

namespace nqa {

/// Default physical constants (MeV and dimensionless). Overridable at the CLI.
struct PhysicalConstants {
    double electron_mass = 0.51099895;
    double muon_mass = 105.6583755;
    double proton_mass = 938.2720882;
    double alpha = 7.2973525693e-3;
};

/// Two constituents bound by one-photon (Coulomb) exchange.
///
/// m1 is the off-shell constituent and the unit of every momentum and energy
/// used internally; m2 is the on-shell spectator. Masses are in MeV.
class TwoBodySystem {
public:
    TwoBodySystem(double m1, double m2, double alpha, std::string label = {});

    double m1() const { return m1_; }
    double m2() const { return m2_; }
    double alpha() const { return alpha_; }
    const std::string& label() const { return label_; }

    /// m2 / m1, the only mass parameter of the dimensionless equations.
    double xi() const { return m2_ / m1_; }
    /// Reduced mass in MeV.
    double reduced_mass() const { return m1_ * m2_ / (m1_ + m2_); }
    /// Reduced mass in units of m1.
    double reduced_mass_units() const { return xi() / (1.0 + xi()); }

    /// Same system with the constituents interchanged.
    TwoBodySystem swapped() const;

    /// Energy in units of m1 converted to eV.
    double to_ev(double energy_units) const { return energy_units * m1_ * 1.0e6; }
    double from_ev(double energy_ev) const { return energy_ev / (m1_ * 1.0e6); }

private:
    double m1_;
    double m2_;
    double alpha_;
    std::string label_;
};

/// Presets: hydrogen-e, hydrogen-mu, positronium, e-mu, mu-mu.
TwoBodySystem make_preset(const std::string& name, const PhysicalConstants& constants = {});

/// Quantum numbers of a state in the nL_S^F scheme (orbital L, combined
/// constituent spin S, total F). All are integers since S is 0 or 1.
struct QuantumState {
    int n = 1;
    int F = 0;
    int L = 0;
    int S = 0;
    int mF = 0;

    /// Throws DomainError when the triangle rule, S in {0,1}, n > L or |mF| <= F fails.
    void validate() const;
    /// Canonical text form, e.g. "2S1F1".
    std::string label() const;

    friend bool operator==(const QuantumState&, const QuantumState&) = default;
};

/// Letter for an orbital quantum number: S P D F G H I K ...
char orbital_letter(int L);

} // namespace nqa
