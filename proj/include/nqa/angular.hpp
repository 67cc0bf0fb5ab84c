#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nqa/exact.hpp"

namespace nqa {

/// Angular momentum (j, m) stored as (2j, 2m) so half-integers are exact.
class AngularMomentum {
public:
    /// Throws DomainError unless twice_j >= 0, |twice_m| <= twice_j and the parities agree.
    AngularMomentum(int twice_j, int twice_m);

    static AngularMomentum integer(int j, int m) { return {2 * j, 2 * m}; }

    int twice_j() const { return twice_j_; }
    int twice_m() const { return twice_m_; }
    double j() const { return 0.5 * twice_j_; }
    double m() const { return 0.5 * twice_m_; }

private:
    int twice_j_;
    int twice_m_;
};

/// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention, exactly.
/// Zero whenever M != m1 + m2 or the triangle rule fails.
SignedSqrtRational clebsch_gordan_exact(const AngularMomentum& j1, const AngularMomentum& j2,
                                        const AngularMomentum& J);

double clebsch_gordan(const AngularMomentum& j1, const AngularMomentum& j2, const AngularMomentum& J);

using Spinor2x2 = Eigen::Matrix2cd;

/// Y_lm(theta, phi) with the Condon-Shortley phase.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

/// Two-constituent spin state phi_{S mS} as a 2x2 matrix (row: first
/// constituent, column: second constituent).
Eigen::Matrix2d spin_matrix(int S, int mS);

/// Spin-angle function sum_{mL} <L S; mL mF-mL | F mF> phi_{S, mF-mL} Y_{L mL}
/// evaluated at a unit vector. Throws DomainError for S not in {0, 1} or a
/// violated triangle rule.
Spinor2x2 spin_angle_value(int F, int mF, int L, int S, const Eigen::Vector3d& direction);

/// The same function with its Clebsch-Gordan expansion precomputed, for
/// repeated evaluation.
class SpinAngleFunction {
public:
    SpinAngleFunction(int F, int mF, int L, int S);
    Spinor2x2 operator()(const Eigen::Vector3d& direction) const;

private:
    struct Term {
        int mL;
        double coefficient;
        Eigen::Matrix2cd spin;
    };
    int L_;
    std::vector<Term> terms_;
};

/// sigma . n as a 2x2 matrix.
Eigen::Matrix2cd sigma_dot(const Eigen::Vector3d& n);

/// Which side sigma . p-hat multiplies the spin-angle function from.
///   left:  sigma.p Y      = sum C  Y'   (acts on the first constituent)
///   right: Y (sigma.p)^T  = sum C^T Y'  (acts on the second constituent)
enum class CouplingSide { left, right };

struct Channel {
    int L = 0;
    int S = 0;
    auto operator<=>(const Channel&) const = default;
};

struct CouplingEntry {
    Channel to;
    double value = 0.0;
    std::optional<SignedSqrtRational> exact;
};

/// Coefficients of sigma . p-hat acting on the spin-angle functions of fixed (F, mF).
struct CouplingTable {
    int F = 0;
    int mF = 0;
    CouplingSide side = CouplingSide::left;
    std::map<Channel, std::vector<CouplingEntry>> entries;

    /// Channels (L, S) allowed for this F: (F, 0) and (F-1, 1), (F, 1), (F+1, 1).
    std::vector<Channel> channels() const;
    /// Coefficient from -> to, zero if not tabulated.
    double coefficient(const Channel& from, const Channel& to) const;
    /// Exact coefficient (RadicalSum, zero if absent) when all entries are exact.
    std::optional<RadicalSum> exact_coefficient(const Channel& from, const Channel& to) const;
};

/// Channels coupled to total F (including L = F - 1 only when F >= 1).
std::vector<Channel> channels_for(int F);

/// Builds the table from spherical components of sigma and p-hat projected with
/// Clebsch-Gordan coefficients, in exact arithmetic.
CouplingTable build_coupling_table(int F, int mF, CouplingSide side);

/// Immutable cached table, built on first use. Safe to call concurrently.
std::shared_ptr<const CouplingTable> coupling_table(int F, int mF, CouplingSide side);

/// Per-identity maximum deviation for the six coefficient identities:
///   C = -C^T when S = 0; C = -C^T when S = 1, S' = 0; C = C^T when S = S' = 1;
///   C symmetric in (LS) <-> (L'S'); C C = 1; C^T C^T = 1.
struct SumRuleReport {
    static constexpr std::array<const char*, 6> names = {
        "antisymmetric_singlet_source", "antisymmetric_singlet_target", "symmetric_triplet",
        "exchange_symmetry",            "completeness_left",            "completeness_right"};
    std::array<double, 6> max_deviation{};
    std::array<bool, 6> passed{};
    bool exact = false; ///< deviations computed in exact arithmetic
    bool all_passed() const;
};

SumRuleReport verify_sum_rules(const CouplingTable& left, const CouplingTable& right,
                               double tolerance = 1e-14);

/// Weights per partial wave L that the radial equations need for channel (F, mF, L, S):
///   g_main  : V_L with weight 1
///   g_small : sum_{S'} (C^T_{LS,L'S'})^2
///   h_main  : sum_{S'} (C_{LS,L'S'})^2
///   h_small : sum C_{LS,L'S'} C^T_{L'S',L''S''} C^T_{L''S'',L'''S'''} C_{LS,L'''S'''} grouped by L''
struct ChannelWeights {
    std::map<int, double> g_main;
    std::map<int, double> g_small;
    std::map<int, double> h_main;
    std::map<int, double> h_small;

    int max_L() const;
};

struct ExactChannelWeights {
    std::map<int, RadicalSum> g_small;
    std::map<int, RadicalSum> h_main;
    std::map<int, RadicalSum> h_small;
    int L = 0;

    ChannelWeights to_double() const;
};

ExactChannelWeights contract_channel_weights_exact(int F, int mF, int L, int S);
ChannelWeights contract_channel_weights(int F, int mF, int L, int S);

/// Plain-text dump "F mF L S L' S' value", 17 significant digits, one entry per line.
void write_coupling_table(std::ostream& out, const CouplingTable& table);

} // namespace nqa
