#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "passim/building.hpp"

namespace passim {

inline constexpr double kGravity = 9.80665;
inline constexpr double kAirGasConstant = 287.055;  ///< J/(kg K)
inline constexpr double kAirPressure = 101325.0;    ///< Pa
inline constexpr double kAirCp = 1005.0;            ///< J/(kg K)

/// Ideal-gas air density at kAirPressure.
double air_density(double temperature_c);

inline constexpr double kWindwardCp = 0.6;
inline constexpr double kLeewardCp = -0.3;

/// Wind pressure coefficient of a facade: windward when the wind blows from
/// within 90 degrees of its outward normal.
double wind_pressure_coefficient(double facade_azimuth, double wind_direction);

/// One opening resolved to node indices (-1 is the exterior).
struct FlowPath {
    int from = -1;
    int to = -1;
    double flow_coefficient = 0.0;
    double exponent = 0.65;
    double height = 0.0;
    std::optional<double> facade_azimuth;
};

/// Opening graph of a model with zones numbered in model order.
struct AirflowNetwork {
    std::size_t zone_count = 0;
    std::vector<FlowPath> paths;

    static AirflowNetwork from_model(const BuildingModel& model);
};

struct AirflowBoundary {
    double exterior_temperature = 20.0;
    double wind_speed = 0.0;
    double wind_direction = 0.0;
};

struct AirflowSolution {
    std::vector<double> zone_pressures;  ///< Pa relative to the exterior at height 0
    std::vector<double> mass_flows;      ///< kg/s per path, positive from -> to
    std::vector<double> residuals;       ///< kg/s net inflow per zone
    int iterations = 0;

    double max_residual() const;
};

inline constexpr double kAirflowTolerance = 1e-9;  ///< kg/s
inline constexpr int kAirflowMaxIterations = 100;

/// Solves zone pressures so every zone's net mass inflow is below
/// kAirflowTolerance. `initial_pressures` warm-starts the damped Newton
/// iteration. Throws ConvergenceError carrying the residuals on failure.
AirflowSolution solve_airflow(const AirflowNetwork& network, const std::vector<double>& zone_temps,
                              const AirflowBoundary& boundary,
                              const std::vector<double>& initial_pressures = {});

/// Convenience overload resolving the network from the model.
AirflowSolution solve_airflow(const BuildingModel& model, const std::vector<double>& zone_temps,
                              double exterior_temp, double wind_speed, double wind_direction);

}  // namespace passim
