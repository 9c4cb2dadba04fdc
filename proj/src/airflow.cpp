#include "passim/airflow.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "passim/error.hpp"

namespace passim {

namespace {

// Floor on |dp| when differentiating the power law; the true slope is
// unbounded at dp = 0 for exponents below one.
constexpr double kMinSlopePressure = 1e-12;

constexpr double kSufficientDecrease = 0.25;

struct PathFlow {
    double flow;
    double slope;  // d flow / d dp
};

PathFlow power_law(double c, double n, double dp) {
    const double mag = std::abs(dp);
    const double flow = mag == 0.0 ? 0.0 : std::copysign(c * std::pow(mag, n), dp);
    const double slope = n * c * std::pow(std::max(mag, kMinSlopePressure), n - 1.0);
    return {flow, slope};
}

}  // namespace

double air_density(double temperature_c) {
    return kAirPressure / (kAirGasConstant * (temperature_c + 273.15));
}

double wind_pressure_coefficient(double facade_azimuth, double wind_direction) {
    const double c = std::cos((wind_direction - facade_azimuth) * std::numbers::pi / 180.0);
    return c > 0.0 ? kWindwardCp : kLeewardCp;
}

double AirflowSolution::max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, std::abs(r));
    return m;
}

AirflowNetwork AirflowNetwork::from_model(const BuildingModel& model) {
    AirflowNetwork net;
    net.zone_count = model.zones.size();
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < model.zones.size(); ++i) index[model.zones[i].name] = static_cast<int>(i);
    auto node = [&](const std::string& name) {
        if (name == kExteriorNode) return -1;
        const auto it = index.find(name);
        if (it == index.end()) throw InputError(fmt::format("opening refers to unknown zone '{}'", name));
        return it->second;
    };
    for (const auto& zone : model.zones) {
        for (const auto& o : zone.openings) {
            net.paths.push_back(
                {node(o.from), node(o.to), o.flow_coefficient, o.exponent, o.height, o.facade_azimuth});
        }
    }
    return net;
}

AirflowSolution solve_airflow(const AirflowNetwork& net, const std::vector<double>& zone_temps,
                              const AirflowBoundary& bc, const std::vector<double>& initial_pressures) {
    const std::size_t nz = net.zone_count;
    if (zone_temps.size() != nz) throw InputError("zone temperature count does not match the network");

    std::vector<double> rho(nz);
    for (std::size_t i = 0; i < nz; ++i) rho[i] = air_density(zone_temps[i]);
    const double rho_ext = air_density(bc.exterior_temperature);
    const double dynamic = 0.5 * rho_ext * bc.wind_speed * bc.wind_speed;

    // Exterior-side pressure at each path, independent of the unknowns.
    std::vector<double> ext_pressure(net.paths.size(), 0.0);
    for (std::size_t k = 0; k < net.paths.size(); ++k) {
        const auto& p = net.paths[k];
        double wind = 0.0;
        if (p.facade_azimuth && bc.wind_speed > 0.0) {
            wind = wind_pressure_coefficient(*p.facade_azimuth, bc.wind_direction) * dynamic;
        }
        ext_pressure[k] = -rho_ext * kGravity * p.height + wind;
    }

    std::vector<double> pressures =
        initial_pressures.size() == nz ? initial_pressures : std::vector<double>(nz, 0.0);
    std::vector<double> flows(net.paths.size(), 0.0);
    std::vector<double> slopes(net.paths.size(), 0.0);
    std::vector<double> residuals(nz, 0.0);

    auto node_pressure = [&](const std::vector<double>& P, int node, std::size_t k) {
        if (node < 0) return ext_pressure[k];
        return P[static_cast<std::size_t>(node)] - rho[static_cast<std::size_t>(node)] * kGravity *
                                                       net.paths[k].height;
    };
    auto evaluate = [&](const std::vector<double>& P) {
        std::fill(residuals.begin(), residuals.end(), 0.0);
        double worst = 0.0;
        for (std::size_t k = 0; k < net.paths.size(); ++k) {
            const auto& p = net.paths[k];
            const double dp = node_pressure(P, p.from, k) - node_pressure(P, p.to, k);
            const auto pf = power_law(p.flow_coefficient, p.exponent, dp);
            flows[k] = pf.flow;
            slopes[k] = pf.slope;
            if (p.from >= 0) residuals[static_cast<std::size_t>(p.from)] -= pf.flow;
            if (p.to >= 0) residuals[static_cast<std::size_t>(p.to)] += pf.flow;
        }
        for (double r : residuals) worst = std::max(worst, std::abs(r));
        return worst;
    };

    double norm = evaluate(pressures);
    int iter = 0;
    while (norm >= kAirflowTolerance) {
        if (iter == kAirflowMaxIterations) {
            throw ConvergenceError(
                fmt::format("airflow network did not converge in {} iterations (max residual {:.3e} kg/s)",
                            kAirflowMaxIterations, norm),
                residuals);
        }
        ++iter;
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nz), static_cast<Eigen::Index>(nz));
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(nz));
        for (std::size_t i = 0; i < nz; ++i) rhs[static_cast<Eigen::Index>(i)] = -residuals[i];
        for (std::size_t k = 0; k < net.paths.size(); ++k) {
            const auto& p = net.paths[k];
            const double s = slopes[k];
            // flow depends on +P_from and -P_to
            if (p.from >= 0) {
                jac(p.from, p.from) -= s;
                if (p.to >= 0) jac(p.from, p.to) += s;
            }
            if (p.to >= 0) {
                jac(p.to, p.to) -= s;
                if (p.from >= 0) jac(p.to, p.from) += s;
            }
        }
        for (Eigen::Index i = 0; i < jac.rows(); ++i) {
            if (jac(i, i) == 0.0) jac(i, i) = 1.0;  // isolated zone
        }
        const Eigen::VectorXd delta = jac.partialPivLu().solve(rhs);

        // Backtracking with a sufficient-decrease test on the max-norm. Plain
        // decrease is not enough: a path with n = 0.5 near dp = 0 makes the full
        // step flip its sign with almost no change in the norm, forever.
        std::vector<double> trial(nz), best = pressures;
        double best_norm = norm;
        double lambda = 1.0;
        for (int halving = 0; halving < 40; ++halving) {
            for (std::size_t i = 0; i < nz; ++i) {
                trial[i] = pressures[i] + lambda * delta[static_cast<Eigen::Index>(i)];
            }
            const double trial_norm = evaluate(trial);
            if (trial_norm < best_norm) {
                best = trial;
                best_norm = trial_norm;
            }
            if (trial_norm <= (1.0 - kSufficientDecrease * lambda) * norm) break;
            lambda *= 0.5;
        }
        if (best_norm < norm) {
            pressures = best;
        } else {
            pressures = trial;  // stalled: take the shortest step and let the iteration cap decide
        }
        norm = evaluate(pressures);
    }

    AirflowSolution sol;
    sol.zone_pressures = std::move(pressures);
    sol.mass_flows = flows;
    sol.residuals = residuals;
    sol.iterations = iter;
    return sol;
}

AirflowSolution solve_airflow(const BuildingModel& model, const std::vector<double>& zone_temps,
                              double exterior_temp, double wind_speed, double wind_direction) {
    return solve_airflow(AirflowNetwork::from_model(model), zone_temps,
                         AirflowBoundary{exterior_temp, wind_speed, wind_direction});
}

}  // namespace passim
