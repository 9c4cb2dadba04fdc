#pragma once

#include <cstddef>
#include <vector>

#include "passim/building.hpp"

namespace passim {

/// Vertex-centred finite-volume discretisation of one construction, per m2.
///
/// Each layer of thickness L is split into ceil(L / max_node_thickness) equal
/// control volumes. Nodes sit on the volume faces (node 0 is the exterior
/// face, the last node the interior face) and each node carries half the heat
/// capacity of every volume it bounds. Massless layers are a single volume
/// contributing resistance only.
struct WallGrid {
    std::vector<double> positions;     ///< m from the exterior face
    std::vector<double> capacities;    ///< J/(K m2), one per node
    std::vector<double> conductances;  ///< W/(K m2), between node i and i+1

    std::size_t node_count() const { return positions.size(); }
    std::size_t volume_count() const { return conductances.size(); }

    /// Series sum of the inter-node resistances, m2 K/W.
    double resistance() const;
};

WallGrid discretize(const Construction& construction, double max_node_thickness);

/// Boundary condition on one face of a standalone wall.
struct FaceCondition {
    enum class Kind { Temperature, Convective, Adiabatic };
    Kind kind = Kind::Adiabatic;
    double temperature = 0.0;  ///< imposed face temperature, or fluid temperature
    double h = 0.0;            ///< W/(m2 K) for Convective

    static FaceCondition fixed(double t) { return {Kind::Temperature, t, 0.0}; }
    static FaceCondition convective(double t, double h) { return {Kind::Convective, t, h}; }
};

/// One backward-Euler step of an isolated wall, per m2. Returns the new node temperatures.
std::vector<double> step_wall(const WallGrid& grid, const std::vector<double>& temps,
                              FaceCondition exterior, FaceCondition interior, double dt);

}  // namespace passim
