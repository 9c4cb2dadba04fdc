#include "passim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "passim/comfort.hpp"
#include "passim/error.hpp"

namespace passim {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kAirVolumetricCapacity = 1.2 * kAirCp;  // J/(m3 K)
constexpr double kIncidenceModifierB0 = 0.1;

bool positive(double v) { return v > 0.0 && std::isfinite(v); }
bool fraction(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void check_config(const SimConfig& c) {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw InputError(fmt::format("invalid simulation config: {}", what));
    };
    need(positive(c.dt), "dt must be > 0");
    need(positive(c.max_node_thickness), "max_node_thickness must be > 0");
    need(positive(c.h_conv_interior), "h_conv_interior must be > 0");
    need(positive(c.h_conv_exterior), "h_conv_exterior must be > 0");
    need(c.h_conv_exterior_wind >= 0.0 && std::isfinite(c.h_conv_exterior_wind),
         "h_conv_exterior_wind must be >= 0");
    need(positive(c.h_rad_linearized), "h_rad_linearized must be > 0");
    need(std::isfinite(c.ground_temperature), "ground_temperature must be finite");
    need(c.sky_temp_depression >= 0.0 && std::isfinite(c.sky_temp_depression),
         "sky_temp_depression must be >= 0");
    need(fraction(c.solar_to_floor_fraction), "solar_to_floor_fraction outside [0, 1]");
    need(c.warmup_max_days >= 0, "warmup_max_days must be >= 0");
    need(positive(c.warmup_tol), "warmup_tol must be > 0");
}

double incidence_factor(double cos_incidence) {
    if (cos_incidence <= 0.0) return 0.0;
    return std::clamp(1.0 - kIncidenceModifierB0 * (1.0 / cos_incidence - 1.0), 0.0, 1.0);
}

SolarGains solar_gains(const BuildingModel& model,
                       const std::vector<std::vector<SurfaceSolar>>& irradiance,
                       const SimConfig& config) {
    const std::size_t nz = model.zones.size();
    if (irradiance.size() != nz) throw InputError("irradiance must be given per zone");
    std::map<std::string, std::size_t> zone_index;
    for (std::size_t z = 0; z < nz; ++z) zone_index[model.zones[z].name] = z;

    SolarGains g;
    g.transmitted.assign(nz, 0.0);
    g.floor_absorbed.assign(nz, 0.0);
    g.lost.assign(nz, 0.0);
    g.inner_face.resize(nz);
    g.outer_face.resize(nz);
    for (std::size_t z = 0; z < nz; ++z) {
        const auto& zone = model.zones[z];
        if (irradiance[z].size() != zone.surfaces.size()) {
            throw InputError(fmt::format("irradiance for zone '{}' must be given per surface", zone.name));
        }
        g.inner_face[z].assign(zone.surfaces.size(), 0.0);
        g.outer_face[z].assign(zone.surfaces.size(), 0.0);
    }

    // Faces seen from inside each zone other than the floor: (zone, surface, inner side?).
    struct Face {
        std::size_t zone, surface;
        bool inner;
    };
    std::vector<std::vector<Face>> faces(nz);
    for (std::size_t z = 0; z < nz; ++z) {
        const auto& zone = model.zones[z];
        for (std::size_t s = 0; s < zone.surfaces.size(); ++s) {
            const auto& surf = zone.surfaces[s];
            if (surf.name != zone.floor_surface) faces[z].push_back({z, s, true});
            if (surf.boundary.kind == Boundary::Kind::Zone) {
                faces[zone_index.at(surf.boundary.zone)].push_back({z, s, false});
            }
        }
    }

    for (std::size_t z = 0; z < nz; ++z) {
        const auto& zone = model.zones[z];
        for (std::size_t s = 0; s < zone.surfaces.size(); ++s) {
            const auto& surf = zone.surfaces[s];
            if (surf.boundary.kind != Boundary::Kind::Exterior) continue;
            const auto& in = irradiance[z][s];
            const auto& irr = in.irradiance;
            g.outer_face[z][s] = surf.construction.exterior_absorptance * irr.total * surf.opaque_area();
            const double through =
                irr.beam * incidence_factor(in.cos_incidence) + irr.sky_diffuse + irr.ground_reflected;
            for (const auto& glz : surf.glazings) g.transmitted[z] += glz.area * glz.shgc * through;
        }
        if (g.transmitted[z] == 0.0) continue;

        std::size_t floor_idx = 0;
        for (std::size_t s = 0; s < zone.surfaces.size(); ++s) {
            if (zone.surfaces[s].name == zone.floor_surface) floor_idx = s;
        }
        const double floor_alpha = zone.surfaces[floor_idx].construction.exterior_absorptance;
        double remainder = g.transmitted[z];
        if (!faces[z].empty()) {
            g.floor_absorbed[z] = config.solar_to_floor_fraction * floor_alpha * g.transmitted[z];
            remainder -= g.floor_absorbed[z];
        } else {
            g.floor_absorbed[z] = g.transmitted[z];
            remainder = 0.0;
        }
        g.inner_face[z][floor_idx] += g.floor_absorbed[z];

        double gross = 0.0;
        for (const auto& f : faces[z]) gross += model.zones[f.zone].surfaces[f.surface].gross_area;
        for (const auto& f : faces[z]) {
            const auto& surf = model.zones[f.zone].surfaces[f.surface];
            const double share = remainder * surf.gross_area / gross;
            const double escaped = share * surf.glazing_area() / surf.gross_area;
            g.lost[z] += escaped;
            (f.inner ? g.inner_face : g.outer_face)[f.zone][f.surface] += share - escaped;
        }
    }
    return g;
}

WeatherInstant make_instant(const BuildingModel& model, const SiteInfo& site,
                            const WeatherRecord& record, double sky_weight, const SimConfig& config) {
    WeatherInstant w;
    w.dry_bulb = record.dry_bulb;
    w.wind_speed = record.wind_speed;
    w.wind_direction = record.wind_direction;
    w.sky_weight = sky_weight;
    if (record.global_horizontal <= 0.0) return w;

    const auto sun = solar_position(site, record.timestamp, 30.0);
    std::vector<std::vector<SurfaceSolar>> irr(model.zones.size());
    for (std::size_t z = 0; z < model.zones.size(); ++z) {
        for (const auto& s : model.zones[z].surfaces) {
            SurfaceSolar ss;
            if (s.boundary.kind == Boundary::Kind::Exterior) {
                ss.irradiance = tilt_irradiance(record, sun, s.tilt, s.azimuth, site.ground_albedo);
                ss.cos_incidence = incidence_cosine(sun, s.tilt, s.azimuth);
            }
            irr[z].push_back(ss);
        }
    }
    w.solar = solar_gains(model, irr, config);
    return w;
}

// ---------------------------------------------------------------------------

struct ThermalNetwork::Impl {
    struct SurfaceInfo {
        std::size_t zone = 0;
        std::size_t index = 0;   // within its zone
        std::size_t offset = 0;  // first unknown
        std::size_t nodes = 0;
        double area = 0.0;       // opaque
        Boundary::Kind boundary = Boundary::Kind::Exterior;
        std::size_t neighbour = 0;
        double sky_view = 0.5;
        double emissivity = 0.9;
        double glazing_ua = 0.0;

        std::size_t inner() const { return offset + nodes - 1; }
        std::size_t outer() const { return offset; }
    };
    struct Face {
        std::size_t surface;  // flat index
        bool inner;
    };

    BuildingModel model;
    SimConfig cfg;
    std::vector<WallGrid> grids;
    std::vector<SurfaceInfo> surfaces;
    std::vector<std::vector<Face>> zone_faces;
    std::vector<double> zone_volume;
    AirflowNetwork airflow;
    std::size_t nz = 0;
    std::size_t air0 = 0;
    std::size_t star0 = 0;
    std::size_t n = 0;
    std::vector<bool> dirichlet;

    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    bool analyzed = false;

    Impl(const BuildingModel& m, std::vector<WallGrid> g, const SimConfig& c)
        : model(m), cfg(c), grids(std::move(g)) {
        check_config(cfg);
        nz = model.zones.size();
        std::map<std::string, std::size_t> zone_index;
        for (std::size_t z = 0; z < nz; ++z) zone_index[model.zones[z].name] = z;

        std::size_t count = 0;
        for (const auto& zone : model.zones) count += zone.surfaces.size();
        if (grids.empty()) {
            for (const auto& zone : model.zones) {
                for (const auto& s : zone.surfaces) grids.push_back(discretize(s.construction, cfg.max_node_thickness));
            }
        }
        if (grids.size() != count) throw InputError("one wall grid per surface is required");

        std::size_t offset = 0;
        std::size_t flat = 0;
        zone_faces.resize(nz);
        for (std::size_t z = 0; z < nz; ++z) {
            const auto& zone = model.zones[z];
            zone_volume.push_back(zone.volume);
            for (std::size_t s = 0; s < zone.surfaces.size(); ++s, ++flat) {
                const auto& surf = zone.surfaces[s];
                SurfaceInfo info;
                info.zone = z;
                info.index = s;
                info.offset = offset;
                info.nodes = grids[flat].node_count();
                info.area = surf.opaque_area();
                info.boundary = surf.boundary.kind;
                if (info.boundary == Boundary::Kind::Zone) {
                    const auto it = zone_index.find(surf.boundary.zone);
                    if (it == zone_index.end()) {
                        throw InputError(fmt::format("surface '{}' faces unknown zone '{}'", surf.name,
                                                     surf.boundary.zone));
                    }
                    info.neighbour = it->second;
                }
                info.sky_view = (1.0 + std::cos(surf.tilt * kDeg)) / 2.0;
                info.emissivity = surf.construction.exterior_emissivity;
                if (info.boundary == Boundary::Kind::Exterior) {
                    for (const auto& glz : surf.glazings) info.glazing_ua += glz.u_value * glz.area;
                }
                offset += info.nodes;
                surfaces.push_back(info);
                zone_faces[z].push_back({flat, true});
                if (info.boundary == Boundary::Kind::Zone) zone_faces[info.neighbour].push_back({flat, false});
            }
        }
        air0 = offset;
        star0 = air0 + nz;
        n = star0 + nz;
        dirichlet.assign(n, false);
        for (const auto& s : surfaces) {
            if (s.boundary == Boundary::Kind::Ground) dirichlet[s.outer()] = true;
        }
        airflow = AirflowNetwork::from_model(model);
    }

    double exterior_h(double wind) const { return cfg.h_conv_exterior + cfg.h_conv_exterior_wind * wind; }

    SimState uniform(double t) const {
        SimState s;
        for (const auto& info : surfaces) {
            std::vector<double> nodes(info.nodes, t);
            if (info.boundary == Boundary::Kind::Ground) nodes.front() = cfg.ground_temperature;
            s.surface_nodes.push_back(std::move(nodes));
        }
        s.zone_air.assign(nz, t);
        s.zone_radiant.assign(nz, t);
        s.mass_flows.assign(airflow.paths.size(), 0.0);
        s.zone_pressures.assign(nz, 0.0);
        return s;
    }

    double solar_at(const std::vector<std::vector<double>>& v, const SurfaceInfo& s) const {
        if (v.empty()) return 0.0;
        return v[s.zone][s.index];
    }

    SimState advance(const SimState& old, const WeatherInstant& w, double dt, StepDiagnostics* diag) {
        if (!(dt > 0.0)) throw InputError("dt must be > 0");
        if (old.surface_nodes.size() != surfaces.size() || old.zone_air.size() != nz) {
            throw InputError("state shape does not match the network");
        }
        for (std::size_t i = 0; i < surfaces.size(); ++i) {
            if (old.surface_nodes[i].size() != surfaces[i].nodes) {
                throw InputError("state node count does not match the wall grid");
            }
        }
        const bool has_gains = !w.internal_gains.empty();
        if (has_gains && w.internal_gains.size() != nz) throw InputError("internal gains must be given per zone");

        // Airflow from the current temperatures.
        const auto flow = solve_airflow(airflow, old.zone_air,
                                        AirflowBoundary{w.dry_bulb, w.wind_speed, w.wind_direction},
                                        old.zone_pressures);

        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(n * 5 + airflow.paths.size() * 4);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        auto at = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
        auto add = [&](std::size_t r, std::size_t c, double v) {
            if (!dirichlet[r]) trip.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
        };
        auto source = [&](std::size_t r, double q) {
            if (!dirichlet[r]) rhs[at(r)] += q;
        };
        auto couple = [&](std::size_t i, std::size_t j, double g) {
            add(i, i, g);
            add(i, j, -g);
            add(j, j, g);
            add(j, i, -g);
        };
        auto to_known = [&](std::size_t i, double g, double t) {
            add(i, i, g);
            source(i, g * t);
        };

        const double h_ext = exterior_h(w.wind_speed);
        const double sky_loss = cfg.h_rad_linearized * cfg.sky_temp_depression * w.sky_weight;
        const double hc = cfg.h_conv_interior;
        const double hr = cfg.h_rad_linearized;

        for (std::size_t si = 0; si < surfaces.size(); ++si) {
            const auto& s = surfaces[si];
            const auto& grid = grids[si];
            const auto& told = old.surface_nodes[si];
            for (std::size_t k = 0; k < s.nodes; ++k) {
                const double c = grid.capacities[k] * s.area / dt;
                add(s.offset + k, s.offset + k, c);
                source(s.offset + k, c * told[k]);
            }
            for (std::size_t k = 0; k + 1 < s.nodes; ++k) {
                couple(s.offset + k, s.offset + k + 1, grid.conductances[k] * s.area);
            }
            // zone side
            couple(s.inner(), air0 + s.zone, hc * s.area);
            couple(s.inner(), star0 + s.zone, hr * s.area);
            source(s.inner(), solar_at(w.solar.inner_face, s));
            // far side
            switch (s.boundary) {
                case Boundary::Kind::Exterior:
                    to_known(s.outer(), h_ext * s.area, w.dry_bulb);
                    source(s.outer(), solar_at(w.solar.outer_face, s) -
                                          s.emissivity * s.sky_view * sky_loss * s.area);
                    if (s.glazing_ua > 0.0) to_known(air0 + s.zone, s.glazing_ua, w.dry_bulb);
                    break;
                case Boundary::Kind::Zone:
                    couple(s.outer(), air0 + s.neighbour, hc * s.area);
                    couple(s.outer(), star0 + s.neighbour, hr * s.area);
                    source(s.outer(), solar_at(w.solar.outer_face, s));
                    break;
                case Boundary::Kind::Ground:
                case Boundary::Kind::Adiabatic: break;
            }
        }
        for (std::size_t z = 0; z < nz; ++z) {
            const double cap = kAirVolumetricCapacity * zone_volume[z] / dt;
            add(air0 + z, air0 + z, cap);
            source(air0 + z, cap * old.zone_air[z]);
            if (has_gains) source(air0 + z, w.internal_gains[z]);
            if (zone_faces[z].empty()) add(star0 + z, star0 + z, 1.0);
        }
        // Upwind enthalpy transport; both directions always stamped so the pattern is fixed.
        for (std::size_t k = 0; k < airflow.paths.size(); ++k) {
            const auto& p = airflow.paths[k];
            const double m = flow.mass_flows[k];
            const double fwd = m > 0.0 ? m * kAirCp : 0.0;
            const double back = m < 0.0 ? -m * kAirCp : 0.0;
            auto inflow = [&](int dst, int src, double f) {
                if (dst < 0) return;
                const auto d = air0 + static_cast<std::size_t>(dst);
                add(d, d, f);
                if (src >= 0) {
                    add(d, air0 + static_cast<std::size_t>(src), -f);
                } else {
                    source(d, f * w.dry_bulb);
                }
            };
            inflow(p.to, p.from, fwd);
            inflow(p.from, p.to, back);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (dirichlet[i]) {
                trip.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
                rhs[at(i)] = cfg.ground_temperature;
            }
        }

        Eigen::SparseMatrix<double> a(at(n), at(n));
        a.setFromTriplets(trip.begin(), trip.end());
        a.makeCompressed();
        if (!analyzed) {
            lu.analyzePattern(a);
            analyzed = true;
        }
        lu.factorize(a);
        if (lu.info() != Eigen::Success) {
            throw ConvergenceError("thermal system is singular (check the building model)");
        }
        const Eigen::VectorXd t = lu.solve(rhs);
        if (lu.info() != Eigen::Success || !t.allFinite()) {
            throw ConvergenceError("thermal system solve failed");
        }

        SimState next;
        next.surface_nodes.resize(surfaces.size());
        for (std::size_t si = 0; si < surfaces.size(); ++si) {
            const auto& s = surfaces[si];
            next.surface_nodes[si].assign(t.data() + s.offset, t.data() + s.offset + s.nodes);
        }
        next.zone_air.assign(t.data() + air0, t.data() + air0 + nz);
        next.zone_radiant.assign(t.data() + star0, t.data() + star0 + nz);
        next.mass_flows = flow.mass_flows;
        next.zone_pressures = flow.zone_pressures;

        if (diag) {
            diag->max_mass_residual = flow.max_residual();
            double stored = 0.0;
            double inflow = 0.0;
            double scale = 0.0;
            auto term = [&](double q) {
                inflow += q;
                scale += std::abs(q);
            };
            for (std::size_t si = 0; si < surfaces.size(); ++si) {
                const auto& s = surfaces[si];
                const auto& grid = grids[si];
                for (std::size_t k = 0; k < s.nodes; ++k) {
                    if (dirichlet[s.offset + k]) continue;
                    stored += grid.capacities[k] * s.area * (t[at(s.offset + k)] - old.surface_nodes[si][k]);
                }
                term(solar_at(w.solar.inner_face, s));
                switch (s.boundary) {
                    case Boundary::Kind::Exterior:
                        term(h_ext * s.area * (w.dry_bulb - t[at(s.outer())]));
                        term(solar_at(w.solar.outer_face, s));
                        term(-s.emissivity * s.sky_view * sky_loss * s.area);
                        term(s.glazing_ua * (w.dry_bulb - t[at(air0 + s.zone)]));
                        break;
                    case Boundary::Kind::Zone: term(solar_at(w.solar.outer_face, s)); break;
                    case Boundary::Kind::Ground:
                        term(grid.conductances[0] * s.area * (cfg.ground_temperature - t[at(s.outer() + 1)]));
                        break;
                    case Boundary::Kind::Adiabatic: break;
                }
            }
            for (std::size_t z = 0; z < nz; ++z) {
                stored += kAirVolumetricCapacity * zone_volume[z] * (t[at(air0 + z)] - old.zone_air[z]);
                if (has_gains) term(w.internal_gains[z]);
            }
            for (std::size_t k = 0; k < airflow.paths.size(); ++k) {
                const auto& p = airflow.paths[k];
                const double m = flow.mass_flows[k];
                // only exchanges with the exterior cross the boundary
                if (p.from < 0 && p.to >= 0) {
                    term(m > 0.0 ? m * kAirCp * w.dry_bulb : m * kAirCp * t[at(air0 + std::size_t(p.to))]);
                } else if (p.to < 0 && p.from >= 0) {
                    term(m > 0.0 ? -m * kAirCp * t[at(air0 + std::size_t(p.from))] : -m * kAirCp * w.dry_bulb);
                }
            }
            diag->stored_energy = stored;
            diag->boundary_energy = inflow * dt;
            diag->boundary_scale = scale * dt;
        }
        return next;
    }

    std::vector<double> mean_radiant(const SimState& st) const {
        std::vector<double> out(nz, 0.0);
        std::vector<AreaTemperature> faces;
        for (std::size_t z = 0; z < nz; ++z) {
            faces.clear();
            for (const auto& f : zone_faces[z]) {
                const auto& nodes = st.surface_nodes[f.surface];
                const auto& s = surfaces[f.surface];
                if (!(s.area > 0.0)) continue;
                faces.push_back({s.area, f.inner ? nodes.back() : nodes.front()});
            }
            out[z] = faces.empty() ? st.zone_air[z] : mean_radiant_temperature(faces);
        }
        return out;
    }

    std::vector<double> air_changes(const SimState& st) const {
        std::vector<double> inflow(nz, 0.0);
        for (std::size_t k = 0; k < airflow.paths.size(); ++k) {
            const auto& p = airflow.paths[k];
            const double m = st.mass_flows.empty() ? 0.0 : st.mass_flows[k];
            if (m > 0.0 && p.to >= 0) inflow[std::size_t(p.to)] += m;
            if (m < 0.0 && p.from >= 0) inflow[std::size_t(p.from)] -= m;
        }
        std::vector<double> out(nz);
        for (std::size_t z = 0; z < nz; ++z) {
            out[z] = inflow[z] * 3600.0 / (air_density(st.zone_air[z]) * zone_volume[z]);
        }
        return out;
    }
};

ThermalNetwork::ThermalNetwork(const BuildingModel& model, const SimConfig& config)
    : impl_(std::make_unique<Impl>(model, std::vector<WallGrid>{}, config)) {}

ThermalNetwork::ThermalNetwork(const BuildingModel& model, std::vector<WallGrid> grids,
                               const SimConfig& config)
    : impl_(std::make_unique<Impl>(model, std::move(grids), config)) {}

ThermalNetwork::~ThermalNetwork() = default;
ThermalNetwork::ThermalNetwork(ThermalNetwork&&) noexcept = default;
ThermalNetwork& ThermalNetwork::operator=(ThermalNetwork&&) noexcept = default;

const std::vector<WallGrid>& ThermalNetwork::grids() const { return impl_->grids; }
std::size_t ThermalNetwork::unknown_count() const { return impl_->n; }
SimState ThermalNetwork::uniform_state(double temperature) const { return impl_->uniform(temperature); }

SimState ThermalNetwork::advance(const SimState& state, const WeatherInstant& weather, double dt,
                                 StepDiagnostics* diagnostics) {
    return impl_->advance(state, weather, dt, diagnostics);
}

std::vector<double> ThermalNetwork::mean_radiant(const SimState& state) const {
    return impl_->mean_radiant(state);
}

std::vector<double> ThermalNetwork::air_changes(const SimState& state) const {
    return impl_->air_changes(state);
}

SimState step(const BuildingModel& model, const std::vector<WallGrid>& grids, const SimState& state,
              const WeatherInstant& weather, const SimConfig& config, StepDiagnostics* diagnostics) {
    ThermalNetwork net(model, grids, config);
    return net.advance(state, weather, config.dt, diagnostics);
}

// ---------------------------------------------------------------------------

namespace {

bool same_site(const SiteInfo& a, const SiteInfo& b) {
    return std::abs(a.latitude - b.latitude) < 1e-6 && std::abs(a.longitude - b.longitude) < 1e-6 &&
           std::abs(a.utc_offset - b.utc_offset) < 1e-6;
}

void accumulate(std::vector<std::vector<double>>& into, const std::vector<std::vector<double>>& v,
                double weight) {
    if (v.empty()) return;
    if (into.empty()) {
        into = v;
        for (auto& row : into) std::fill(row.begin(), row.end(), 0.0);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v[i].size(); ++j) into[i][j] += weight * v[i][j];
    }
}

WeatherInstant mean_instant(std::span<const WeatherInstant> hours) {
    WeatherInstant m;
    const double w = 1.0 / static_cast<double>(hours.size());
    m.dry_bulb = 0.0;
    m.wind_direction = hours.front().wind_direction;
    for (const auto& h : hours) {
        m.dry_bulb += w * h.dry_bulb;
        m.wind_speed += w * h.wind_speed;
        m.sky_weight += w * h.sky_weight;
        accumulate(m.solar.inner_face, h.solar.inner_face, w);
        accumulate(m.solar.outer_face, h.solar.outer_face, w);
    }
    return m;
}

}  // namespace

double cloud_free_fraction(double clearness) {
    return std::clamp(clearness / kClearSkyClearness, 0.0, 1.0);
}

ResultSeries simulate(const BuildingModel& model, const WeatherSeries& weather, const SimConfig& config) {
    check_config(config);
    const auto violations = validate(model);
    if (!violations.empty()) {
        throw InputError(fmt::format("building model is invalid: {}: {}", violations.front().path,
                                     violations.front().message));
    }
    check_series(weather);
    if (weather.site && !same_site(*weather.site, model.site)) {
        throw InputError(fmt::format(
            "weather site (lat {}, lon {}, utc {}) does not match building site (lat {}, lon {}, utc {})",
            weather.site->latitude, weather.site->longitude, weather.site->utc_offset,
            model.site.latitude, model.site.longitude, model.site.utc_offset));
    }
    const SiteInfo& site = model.site;

    ThermalNetwork net(model, config);
    const auto clearness = daily_clearness(weather, site);
    std::vector<WeatherInstant> hourly;
    hourly.reserve(weather.records.size());
    for (std::size_t i = 0; i < weather.records.size(); ++i) {
        hourly.push_back(make_instant(model, site, weather.records[i], cloud_free_fraction(clearness[i]), config));
    }

    const int substeps = std::max(1, static_cast<int>(std::ceil(3600.0 / config.dt - 1e-9)));
    const double dt = 3600.0 / substeps;
    const std::size_t nz = model.zones.size();

    ResultSeries out;
    for (const auto& z : model.zones) out.zones.push_back(z.name);

    // Steady state on the first day's mean forcing.
    const std::size_t first_day = std::min<std::size_t>(24, hourly.size());
    const auto mean = mean_instant(std::span(hourly).first(first_day));
    SimState state = net.uniform_state(mean.dry_bulb);
    for (int i = 0; i < 3; ++i) state = net.advance(state, mean, 1e12);

    auto run_hour = [&](const WeatherInstant& w, std::vector<ZoneHour>* hour_out) {
        std::vector<ZoneHour> acc(nz);
        StepDiagnostics diag;
        for (int k = 0; k < substeps; ++k) {
            state = net.advance(state, w, dt, &diag);
            out.max_mass_residual = std::max(out.max_mass_residual, diag.max_mass_residual);
            if (!hour_out) continue;
            const auto mrt = net.mean_radiant(state);
            const auto ach = net.air_changes(state);
            for (std::size_t z = 0; z < nz; ++z) {
                acc[z].t_air += state.zone_air[z];
                acc[z].t_mrt += mrt[z];
                acc[z].t_res += resultant_temperature(state.zone_air[z], mrt[z]);
                acc[z].ach += ach[z];
            }
        }
        if (hour_out) {
            for (auto& v : acc) {
                v.t_air /= substeps;
                v.t_mrt /= substeps;
                v.t_res /= substeps;
                v.ach /= substeps;
            }
            *hour_out = std::move(acc);
        }
    };

    // Warm-up: repeat day 1 until the hourly air temperature profile settles.
    std::vector<std::vector<ZoneHour>> previous;
    for (int day = 0; day < config.warmup_max_days; ++day) {
        std::vector<std::vector<ZoneHour>> profile(first_day);
        for (std::size_t h = 0; h < first_day; ++h) run_hour(hourly[h], &profile[h]);
        if (!previous.empty()) {
            double change = 0.0;
            for (std::size_t h = 0; h < first_day; ++h) {
                for (std::size_t z = 0; z < nz; ++z) {
                    change = std::max(change, std::abs(profile[h][z].t_air - previous[h][z].t_air));
                }
            }
            if (change < config.warmup_tol) break;
        }
        previous = std::move(profile);
    }

    out.timestamps.reserve(hourly.size());
    out.hours.reserve(hourly.size());
    for (std::size_t h = 0; h < hourly.size(); ++h) {
        std::vector<ZoneHour> row;
        run_hour(hourly[h], &row);
        out.timestamps.push_back(weather.records[h].timestamp);
        out.hours.push_back(std::move(row));
    }
    return out;
}

ResultSeries simulate(const BuildingModel& model, const TypicalSequence& weather, const SimConfig& config) {
    return simulate(model, weather.series, config);
}

}  // namespace passim
