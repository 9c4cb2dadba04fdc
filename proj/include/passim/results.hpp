#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "passim/time.hpp"

namespace passim {

struct ZoneHour {
    double t_air = 0.0;  ///< degC
    double t_mrt = 0.0;  ///< degC
    double t_res = 0.0;  ///< degC
    double ach = 0.0;    ///< 1/h, total inflow over zone air mass
};

/// Hourly simulation output, one row per timestamp and one column per zone.
struct ResultSeries {
    std::vector<std::string> zones;
    std::vector<LocalDateTime> timestamps;
    std::vector<std::vector<ZoneHour>> hours;  ///< [hour][zone]

    /// Largest per-zone airflow mass residual over every accepted step, kg/s.
    double max_mass_residual = 0.0;

    std::size_t zone_index(const std::string& zone) const;  ///< throws InputError if absent
};

/// `timestamp,zone,t_air_c,t_mrt_c,t_res_c,ach`, one row per zone-hour.
void write_results_csv(std::ostream& out, const ResultSeries& series);

}  // namespace passim
