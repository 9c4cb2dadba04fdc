#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "passim/solar.hpp"

namespace passim {

struct Material {
    std::string name;
    double conductivity = 1.0;     ///< W/(m K)
    double density = 1000.0;       ///< kg/m3
    double specific_heat = 1000.0; ///< J/(kg K)
    /// Layer acts as a pure thermal resistance (its heat capacity is ignored).
    bool massless = false;

    bool operator==(const Material&) const = default;
};

struct Layer {
    Material material;
    double thickness = 0.0;  ///< m

    double resistance() const { return thickness / material.conductivity; }

    bool operator==(const Layer&) const = default;
};

/// Layered assembly, layers ordered from the exterior (or neighbouring
/// zone, or ground) side to the interior side.
struct Construction {
    std::string name;
    std::vector<Layer> layers;
    /// Solar absorptance of the exterior face; for floors it is the
    /// absorptance applied to transmitted solar reaching the floor.
    double exterior_absorptance = 0.6;
    double exterior_emissivity = 0.9;
    double interior_emissivity = 0.9;

    /// Sum of layer thickness / conductivity, m2 K/W.
    double resistance() const;

    bool operator==(const Construction&) const = default;
};

struct Glazing {
    double area = 0.0;     ///< m2
    double u_value = 5.8;  ///< W/(m2 K)
    double shgc = 0.85;

    bool operator==(const Glazing&) const = default;
};

enum class SurfaceKind { Wall, Door, Roof, Floor, Partition };

struct Boundary {
    enum class Kind { Exterior, Zone, Ground, Adiabatic };
    Kind kind = Kind::Exterior;
    std::string zone;  ///< neighbouring zone name when kind == Zone

    static Boundary exterior() { return {Kind::Exterior, {}}; }
    static Boundary ground() { return {Kind::Ground, {}}; }
    static Boundary adiabatic() { return {Kind::Adiabatic, {}}; }
    static Boundary adjacent(std::string zone) { return {Kind::Zone, std::move(zone)}; }

    bool operator==(const Boundary&) const = default;
};

struct Surface {
    std::string name;
    SurfaceKind kind = SurfaceKind::Wall;
    double gross_area = 0.0;  ///< m2, glazing included
    double tilt = 90.0;       ///< angle between outward normal and zenith, degrees
    double azimuth = 0.0;     ///< outward normal, degrees clockwise from north
    Construction construction;
    Boundary boundary;
    std::vector<Glazing> glazings;

    double glazing_area() const;
    double opaque_area() const { return gross_area - glazing_area(); }

    bool operator==(const Surface&) const = default;
};

/// Name used for the outdoor node in opening connections.
inline constexpr const char* kExteriorNode = "exterior";

/// Power-law crack or orifice: m = C * sign(dp) * |dp|^n, positive from `from` to `to`.
struct Opening {
    std::string name;
    std::string from;  ///< zone name or kExteriorNode
    std::string to;    ///< zone name or kExteriorNode
    double flow_coefficient = 0.0;  ///< kg/(s Pa^n)
    double exponent = 0.65;
    double height = 1.0;            ///< m above the floor reference
    /// Outward normal of the facade an exterior opening sits in (wind pressure).
    std::optional<double> facade_azimuth;

    bool operator==(const Opening&) const = default;
};

struct Zone {
    std::string name;
    double volume = 0.0;  ///< m3
    std::vector<Surface> surfaces;
    std::vector<Opening> openings;
    std::string floor_surface;  ///< name of the surface in `surfaces` that is the floor

    const Surface* find_surface(const std::string& surface_name) const;

    bool operator==(const Zone&) const = default;
};

struct BuildingModel {
    SiteInfo site;
    std::vector<Zone> zones;
    double orientation = 0.0;  ///< whole-building rotation already applied to azimuths

    const Zone* find_zone(const std::string& zone_name) const;

    bool operator==(const BuildingModel&) const = default;
};

struct Violation {
    std::string path;     ///< e.g. zones[0].surfaces[2].construction.layers[1].thickness
    std::string message;
};

/// Every invariant violation of the model; empty when valid.
std::vector<Violation> validate(const BuildingModel& model);

enum class Cardinal { North, East, South, West };

/// Nearest cardinal direction of an azimuth (ties resolve clockwise).
Cardinal nearest_cardinal(double azimuth);

using GlazingFractions = std::map<Cardinal, double>;

enum class WallFace { Interior, Exterior };

/// Returns a copy with the orientation and every azimuth shifted by `degrees` (mod 360).
BuildingModel rotate(const BuildingModel& model, double degrees);

/// Sets glazing := fraction x gross area on each exterior wall whose unrotated
/// facade direction appears in `fractions`. Throws InputError for fractions
/// outside [0, 0.9].
BuildingModel set_glazing_fractions(const BuildingModel& model, const GlazingFractions& fractions);

/// Adds `material` as the innermost layer of every roof. Zero thickness is a no-op.
BuildingModel add_roof_insulation(const BuildingModel& model, const Material& material,
                                  double thickness);

/// Adds `material` on the given face of every exterior wall. Zero thickness is a no-op.
BuildingModel add_wall_insulation(const BuildingModel& model, const Material& material,
                                  double thickness, WallFace face);

/// Sets the absorptance of transmitted solar at every floor; alpha in (0, 1].
BuildingModel set_floor_absorptance(const BuildingModel& model, double alpha);

namespace materials {

Material unburned_brick();
Material pine();
Material tile();
Material roof_air_gap();
Material plaster();
Material straw();
Material torchi();
Material cement_screed();
Material compacted_earth();

/// Looks up one of the materials above by its name; throws InputError if unknown.
Material by_name(const std::string& name);

}  // namespace materials

/// Geometry and construction knobs of the typical house not fixed by the
/// source data (see typical_house.cpp for the reconstructed plan).
struct TypicalHouseOptions {
    SiteInfo site;
    double ceiling_height = 2.6;
    double roof_pitch = 20.0;
    double partition_thickness = 0.11;
    double wall_absorptance = 0.7;
    double roof_absorptance = 0.7;
    double floor_absorptance = 0.75;
    double earth_depth = 1.0;
    double target_ach = 0.5;  ///< air changes per hour at 4 Pa over all exterior cracks
};

/// The typical Antananarivo dwelling: two bedrooms, living room, kitchen,
/// bathroom and toilet in unburned brick under a tile/air/plaster roof.
BuildingModel typical_house(const TypicalHouseOptions& options = {});

}  // namespace passim
