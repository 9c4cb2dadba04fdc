#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "passim/results.hpp"

namespace passim {

struct AreaTemperature {
    double area = 0.0;         ///< m2
    double temperature = 0.0;  ///< degC
};

/// Area-weighted mean of the enclosing surface temperatures.
double mean_radiant_temperature(std::span<const AreaTemperature> surfaces);

/// Dry resultant temperature: mean of air and mean radiant temperature.
inline double resultant_temperature(double t_air, double t_mrt) { return 0.5 * (t_air + t_mrt); }

/// Resultant temperature from air and surface temperatures. Throws InputError
/// for an empty list or a non-positive area.
double resultant_temperature(double t_air, std::span<const AreaTemperature> surfaces);

/// Day hours are 07..18 inclusive; night hours 19..23 and 00..06.
constexpr bool is_day_hour(int hour) { return hour >= 7 && hour <= 18; }

struct DayNightAverages {
    std::optional<double> day;    ///< empty when the series has no day hour
    std::optional<double> night;  ///< empty when the series has no night hour
};

DayNightAverages day_night_averages(const ResultSeries& series, const std::string& zone);

struct ComfortThresholds {
    double night_threshold = 17.0;  ///< degC
    double day_threshold = 19.0;    ///< degC
};

struct ZoneComfort {
    std::string zone;
    std::optional<double> t_res_day;
    std::optional<double> t_res_night;
    int discomfort_hours_day = 0;
    int discomfort_hours_night = 0;
    int day_hours = 0;
    int night_hours = 0;

    int discomfort_hours() const { return discomfort_hours_day + discomfort_hours_night; }
};

struct ComfortSummary {
    std::vector<ZoneComfort> zones;

    const ZoneComfort& zone(const std::string& name) const;  ///< throws InputError if absent
    int total_discomfort_hours() const;
};

/// Counts hours with resultant temperature strictly below the threshold of
/// their period, alongside the day/night averages.
ComfortSummary summarize_comfort(const ResultSeries& series, const ComfortThresholds& thresholds);

/// `zone,t_res_day_c,t_res_night_c,discomfort_day_h,discomfort_night_h`; absent averages print `NA`.
void write_comfort_csv(std::ostream& out, const ComfortSummary& summary);

}  // namespace passim
