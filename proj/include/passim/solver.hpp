#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "passim/airflow.hpp"
#include "passim/building.hpp"
#include "passim/conduction.hpp"
#include "passim/results.hpp"
#include "passim/weather.hpp"

namespace passim {

struct SimConfig {
    double dt = 600.0;                  ///< s
    double max_node_thickness = 0.03;   ///< m
    double h_conv_interior = 3.5;       ///< W/(m2 K)
    double h_conv_exterior = 18.0;      ///< W/(m2 K) at zero wind
    double h_conv_exterior_wind = 4.0;  ///< W/(m2 K) per m/s of wind
    double h_rad_linearized = 5.1;      ///< W/(m2 K)
    double ground_temperature = 19.5;   ///< degC
    double sky_temp_depression = 10.0;  ///< K
    double solar_to_floor_fraction = 0.6;
    int warmup_max_days = 10;
    double warmup_tol = 0.01;           ///< K
};

/// Throws InputError when a field is out of range.
void check_config(const SimConfig& config);

/// Angular transmittance modifier of a single pane for the beam component.
double incidence_factor(double cos_incidence);

/// Irradiance on the exterior side of one surface.
struct SurfaceSolar {
    SurfaceIrradiance irradiance;
    double cos_incidence = 1.0;  ///< beam incidence on the surface
};

/// Where the solar radiation reaching a building ends up, watts.
struct SolarGains {
    std::vector<double> transmitted;     ///< [zone] through the zone's glazing
    std::vector<double> floor_absorbed;  ///< [zone]
    std::vector<double> lost;            ///< [zone] reflected back out through glazing
    std::vector<std::vector<double>> inner_face;  ///< [zone][surface] absorbed on the zone side
    std::vector<std::vector<double>> outer_face;  ///< [zone][surface] absorbed on the far side
};

/// Transmitted and absorbed solar power for per-surface exterior irradiance
/// indexed [zone][surface] (entries of non-exterior surfaces are ignored).
///
/// Glazing transmits area x shgc x incidence-weighted irradiance. A share
/// solar_to_floor_fraction x floor absorptance lands on the floor; the rest is
/// spread over the zone's other interior surfaces by gross area, and the part
/// falling on glazing leaves the zone. Opaque exterior surfaces absorb
/// absorptance x total irradiance on their outer face.
SolarGains solar_gains(const BuildingModel& model,
                       const std::vector<std::vector<SurfaceSolar>>& irradiance,
                       const SimConfig& config);

/// Daily clearness index of a cloudless sky.
inline constexpr double kClearSkyClearness = 0.7;

/// Share of the sky taken as cloud-free for a day with the given clearness
/// index: clearness / kClearSkyClearness clamped to [0, 1].
double cloud_free_fraction(double clearness);

/// Outdoor conditions held over one time step.
struct WeatherInstant {
    double dry_bulb = 20.0;
    double wind_speed = 0.0;
    double wind_direction = 0.0;
    double sky_weight = 0.0;  ///< 0..1 multiplier of the sky temperature depression
    SolarGains solar;         ///< empty vectors mean no sun
    std::vector<double> internal_gains;  ///< [zone] W to the air, optional
};

/// Builds the instant for one weather hour (sun evaluated at mid-hour).
WeatherInstant make_instant(const BuildingModel& model, const SiteInfo& site,
                            const WeatherRecord& record, double sky_weight, const SimConfig& config);

struct SimState {
    std::vector<std::vector<double>> surface_nodes;  ///< [surface in model order][node], degC
    std::vector<double> zone_air;                    ///< degC
    std::vector<double> zone_radiant;                ///< area-weighted mean surface temperature
    std::vector<double> mass_flows;                  ///< kg/s per opening in model order
    std::vector<double> zone_pressures;              ///< Pa
};

struct StepDiagnostics {
    double stored_energy = 0.0;    ///< J, sum of capacity x temperature change
    double boundary_energy = 0.0;  ///< J, net heat entering through boundaries over the step
    double boundary_scale = 0.0;   ///< J, sum of magnitudes of the boundary terms
    double max_mass_residual = 0.0;
};

/// Assembled thermal and airflow network of one building.
///
/// Unknowns are every wall node, every zone air node, and one radiant node
/// per zone whose temperature is the area-weighted mean of the zone's
/// surfaces. Each step solves the airflow from the current temperatures, then
/// takes one backward-Euler step of the coupled linear system.
class ThermalNetwork {
public:
    ThermalNetwork(const BuildingModel& model, const SimConfig& config);
    ThermalNetwork(const BuildingModel& model, std::vector<WallGrid> grids, const SimConfig& config);
    ~ThermalNetwork();
    ThermalNetwork(ThermalNetwork&&) noexcept;
    ThermalNetwork& operator=(ThermalNetwork&&) noexcept;

    const std::vector<WallGrid>& grids() const;
    std::size_t unknown_count() const;

    /// Uniform initial state at `temperature` (ground-facing faces at the ground temperature).
    SimState uniform_state(double temperature) const;

    SimState advance(const SimState& state, const WeatherInstant& weather, double dt,
                     StepDiagnostics* diagnostics = nullptr);

    /// Per-zone mean radiant temperature via the comfort module.
    std::vector<double> mean_radiant(const SimState& state) const;

    /// Air changes per hour from total inflow.
    std::vector<double> air_changes(const SimState& state) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One backward-Euler step on a freshly assembled network.
SimState step(const BuildingModel& model, const std::vector<WallGrid>& grids, const SimState& state,
              const WeatherInstant& weather, const SimConfig& config,
              StepDiagnostics* diagnostics = nullptr);

/// Runs the model over the weather: steady initialisation on the day-1 mean,
/// day-1 repetition until the hourly air temperature profile settles, then
/// the full sequence with sub-hourly steps averaged to hourly outputs.
ResultSeries simulate(const BuildingModel& model, const WeatherSeries& weather, const SimConfig& config);
ResultSeries simulate(const BuildingModel& model, const TypicalSequence& weather, const SimConfig& config);

}  // namespace passim
