#include "nqa/system.hpp"

#include <cstdlib>
#include <string_view>

#include "nqa/errors.hpp"

namespace nqa {

namespace {
constexpr std::string_view kOrbitalLetters = "SPDFGHIKLMNOQRTUV";
}

TwoBodySystem::TwoBodySystem(double m1, double m2, double alpha, std::string label)
    : m1_(m1), m2_(m2), alpha_(alpha), label_(std::move(label))
{
    if (!(m1 > 0.0) || !(m2 > 0.0)) {
        throw DomainError("TwoBodySystem: masses must be positive");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        // alpha = 0 is allowed as a degenerate free system for kinetic checks
        if (alpha != 0.0) {
            throw DomainError("TwoBodySystem: coupling must satisfy 0 <= alpha < 1");
        }
    }
}

TwoBodySystem TwoBodySystem::swapped() const
{
    return TwoBodySystem(m2_, m1_, alpha_, label_.empty() ? label_ : label_ + " (swapped)");
}

TwoBodySystem make_preset(const std::string& name, const PhysicalConstants& c)
{
    if (name == "hydrogen-e") {
        return {c.electron_mass, c.proton_mass, c.alpha, name};
    }
    if (name == "hydrogen-mu") {
        return {c.muon_mass, c.proton_mass, c.alpha, name};
    }
    if (name == "positronium") {
        return {c.electron_mass, c.electron_mass, c.alpha, name};
    }
    if (name == "e-mu") {
        return {c.electron_mass, c.muon_mass, c.alpha, name};
    }
    if (name == "mu-mu") {
        return {c.muon_mass, c.muon_mass, c.alpha, name};
    }
    throw ConfigError("unknown system preset '" + name + "'");
}

void QuantumState::validate() const
{
    if (S != 0 && S != 1) {
        throw DomainError("QuantumState: S must be 0 or 1");
    }
    if (L < 0 || F < 0) {
        throw DomainError("QuantumState: L and F must be nonnegative");
    }
    if (F < std::abs(L - S) || F > L + S) {
        throw DomainError("QuantumState: triangle rule |L-S| <= F <= L+S violated");
    }
    if (n < L + 1) {
        throw DomainError("QuantumState: principal quantum number must exceed L");
    }
    if (std::abs(mF) > F) {
        throw DomainError("QuantumState: |mF| must not exceed F");
    }
}

std::string QuantumState::label() const
{
    return std::to_string(n) + orbital_letter(L) + std::to_string(S) + "F" + std::to_string(F);
}

char orbital_letter(int L)
{
    if (L < 0 || L >= static_cast<int>(kOrbitalLetters.size())) {
        throw DomainError("orbital_letter: L out of range");
    }
    return kOrbitalLetters[static_cast<std::size_t>(L)];
}

} // namespace nqa
