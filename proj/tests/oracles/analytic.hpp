#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

// Closed-form references for the conduction, airflow and lumped thermal tests.
namespace oracle {

struct SlabLayer {
    double thickness;     // m
    double conductivity;  // W/(m K)
};

// Steady temperature at depth x (m from the exterior face) of a layered slab
// held at t_ext and t_int: the drop is proportional to the resistance crossed.
inline double slab_temperature(const std::vector<SlabLayer>& layers, double t_ext, double t_int, double x) {
    double total = 0.0;
    for (const auto& l : layers) total += l.thickness / l.conductivity;
    double crossed = 0.0;
    double depth = 0.0;
    for (const auto& l : layers) {
        const double part = std::min(std::max(x - depth, 0.0), l.thickness);
        crossed += part / l.conductivity;
        depth += l.thickness;
    }
    return t_ext + (t_int - t_ext) * crossed / total;
}

// Ideal-gas density of dry air at sea-level pressure.
inline double density(double celsius) { return 101325.0 / (287.055 * (celsius + 273.15)); }

struct StackFlow {
    double zone_pressure;  // Pa at height 0, relative to outdoors at height 0
    double mass_flow;      // kg/s through each opening
};

// One zone, two identical power-law openings at heights h_low < h_high and
// no wind. Equal and opposite pressure drops across the two openings give the
// neutral plane at mid-height and a drop of g (rho_out - rho_in) (h_high - h_low) / 2.
inline StackFlow two_opening_stack(double c, double n, double h_low, double h_high, double t_in, double t_out) {
    constexpr double g = 9.80665;
    const double drho = density(t_out) - density(t_in);
    const double dp = g * drho * (h_high - h_low) / 2.0;
    return {-g * drho * (h_low + h_high) / 2.0, c * std::pow(std::abs(dp), n)};
}

// First-order response of a lumped capacity C behind conductance G to a step in
// the driving temperature from t0 to t_inf.
inline double rc_response(double t0, double t_inf, double capacity, double conductance, double seconds) {
    return t_inf + (t0 - t_inf) * std::exp(-seconds * conductance / capacity);
}

}  // namespace oracle
