#pragma once

#include <string>
#include <vector>

namespace nqa {

enum class MappingType {
    rational, ///< p = scale * t / (1 - t)
    tangent,  ///< p = scale * tan(pi t / 2)
};

MappingType parse_mapping(const std::string& name);
std::string to_string(MappingType type);

struct GridMapping {
    MappingType type = MappingType::rational;
    double scale = 1.0; ///< Lambda, in units of m1
};

/// Quadrature grid on (0, inf). Momenta are in units of m1.
///
/// Nodes come from an N-point Gauss-Legendre rule on [0, 1] pushed through
/// the mapping; t = 1 is never a node, so infinite momenta are excluded
/// while the rule still integrates over the whole half line.
struct MomentumGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    GridMapping mapping;

    std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre nodes (ascending) and weights on [a, b].
void gauss_legendre(std::size_t n, double a, double b, std::vector<double>& x, std::vector<double>& w);

/// Throws DomainError for N < 8 or a nonpositive scale.
MomentumGrid build_grid(std::size_t N, const GridMapping& mapping);

} // namespace nqa
