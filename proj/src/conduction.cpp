#include "passim/conduction.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "passim/error.hpp"

namespace passim {

double WallGrid::resistance() const {
    double r = 0.0;
    for (double g : conductances) r += 1.0 / g;
    return r;
}

WallGrid discretize(const Construction& construction, double max_node_thickness) {
    if (!(max_node_thickness > 0.0)) throw InputError("max_node_thickness must be > 0");
    if (construction.layers.empty()) throw InputError("construction has no layers");

    WallGrid grid;
    grid.positions.push_back(0.0);
    grid.capacities.push_back(0.0);
    double x0 = 0.0;
    for (const auto& layer : construction.layers) {
        const auto& m = layer.material;
        const std::size_t n =
            m.massless ? 1
                       : std::max<std::size_t>(
                             1, static_cast<std::size_t>(std::ceil(layer.thickness / max_node_thickness)));
        const double dx = layer.thickness / static_cast<double>(n);
        const double half_cap = m.massless ? 0.0 : 0.5 * m.density * m.specific_heat * dx;
        for (std::size_t i = 0; i < n; ++i) {
            grid.conductances.push_back(m.conductivity / dx);
            grid.capacities.back() += half_cap;
            grid.capacities.push_back(half_cap);
            grid.positions.push_back(x0 + dx * static_cast<double>(i + 1));
        }
        x0 += layer.thickness;
        grid.positions.back() = x0;
    }
    return grid;
}

std::vector<double> step_wall(const WallGrid& grid, const std::vector<double>& temps,
                              FaceCondition exterior, FaceCondition interior, double dt) {
    const std::size_t n = grid.node_count();
    if (temps.size() != n) throw InputError("temperature array does not match the grid");
    if (!(dt > 0.0)) throw InputError("dt must be > 0");

    // Tridiagonal system: lower a, diagonal b, upper c, rhs d.
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = grid.capacities[i] / dt;
        d[i] = grid.capacities[i] / dt * temps[i];
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double g = grid.conductances[k];
        b[k] += g;
        c[k] -= g;
        b[k + 1] += g;
        a[k + 1] -= g;
    }
    auto apply = [&](std::size_t i, const FaceCondition& fc) {
        switch (fc.kind) {
            case FaceCondition::Kind::Temperature:
                a[i] = 0.0;
                c[i] = 0.0;
                b[i] = 1.0;
                d[i] = fc.temperature;
                break;
            case FaceCondition::Kind::Convective:
                b[i] += fc.h;
                d[i] += fc.h * fc.temperature;
                break;
            case FaceCondition::Kind::Adiabatic: break;
        }
    };
    apply(0, exterior);
    apply(n - 1, interior);

    // Thomas algorithm
    std::vector<double> cp(n, 0.0), dp(n, 0.0);
    cp[0] = c[0] / b[0];
    dp[0] = d[0] / b[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = b[i] - a[i] * cp[i - 1];
        if (m == 0.0) throw ConvergenceError("singular wall system");
        cp[i] = c[i] / m;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / m;
    }
    std::vector<double> out(n);
    out[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) out[i] = dp[i] - cp[i] * out[i + 1];
    return out;
}

}  // namespace passim
