#include "nqa/grid.hpp"

#include <cmath>
#include <numbers>

#include "nqa/errors.hpp"

namespace nqa {

MappingType parse_mapping(const std::string& name)
{
    if (name == "rational") {
        return MappingType::rational;
    }
    if (name == "tangent") {
        return MappingType::tangent;
    }
    throw ConfigError("unknown grid mapping '" + name + "'");
}

std::string to_string(MappingType type)
{
    return type == MappingType::rational ? "rational" : "tangent";
}

void gauss_legendre(std::size_t n, double a, double b, std::vector<double>& x, std::vector<double>& w)
{
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const double mid = 0.5 * (b + a);
    const double half = 0.5 * (b - a);
    const std::size_t m = (n + 1) / 2;
    const auto nd = static_cast<double>(n);
    for (std::size_t i = 0; i < m; ++i) {
        // Tricomi initial guess for the i-th largest root
        const auto id = static_cast<double>(i);
        double z = std::cos(std::numbers::pi * (id + 0.75) / (nd + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const auto jd = static_cast<double>(j);
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * jd + 1.0) * z * p2 - jd * p3) / (jd + 1.0);
            }
            dp = nd * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        // recompute derivative at the converged root
        double p1 = 1.0;
        double p2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const auto jd = static_cast<double>(j);
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * jd + 1.0) * z * p2 - jd * p3) / (jd + 1.0);
        }
        dp = nd * (z * p1 - p2) / (z * z - 1.0);
        const double wi = 2.0 * half / ((1.0 - z * z) * dp * dp);
        x[i] = mid - half * z;
        x[n - 1 - i] = mid + half * z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
}

MomentumGrid build_grid(std::size_t N, const GridMapping& mapping)
{
    if (N < 8) {
        throw DomainError("build_grid: need at least 8 nodes");
    }
    if (!(mapping.scale > 0.0) || !std::isfinite(mapping.scale)) {
        throw DomainError("build_grid: mapping scale must be positive");
    }
    std::vector<double> t;
    std::vector<double> wt;
    gauss_legendre(N, 0.0, 1.0, t, wt);

    MomentumGrid grid;
    grid.mapping = mapping;
    grid.nodes.resize(N);
    grid.weights.resize(N);
    const double s = mapping.scale;
    for (std::size_t i = 0; i < N; ++i) {
        if (mapping.type == MappingType::rational) {
            // the rule is symmetric, so 1 - t_i is t_{N-1-i} without cancellation
            const double u = t[N - 1 - i];
            grid.nodes[i] = s * t[i] / u;
            grid.weights[i] = wt[i] * s / (u * u);
        } else {
            const double arg = 0.5 * std::numbers::pi * t[i];
            const double c = std::sin(0.5 * std::numbers::pi * t[N - 1 - i]);
            grid.nodes[i] = s * std::sin(arg) / c;
            grid.weights[i] = wt[i] * s * 0.5 * std::numbers::pi / (c * c);
        }
    }
    return grid;
}

} // namespace nqa
