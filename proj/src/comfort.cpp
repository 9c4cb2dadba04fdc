#include "passim/comfort.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "passim/error.hpp"

namespace passim {

std::size_t ResultSeries::zone_index(const std::string& zone) const {
    for (std::size_t i = 0; i < zones.size(); ++i) {
        if (zones[i] == zone) return i;
    }
    throw InputError(fmt::format("zone '{}' is not in the result series", zone));
}

void write_results_csv(std::ostream& out, const ResultSeries& series) {
    out << "timestamp,zone,t_air_c,t_mrt_c,t_res_c,ach\n";
    for (std::size_t h = 0; h < series.timestamps.size(); ++h) {
        const auto ts = series.timestamps[h].to_string();
        for (std::size_t z = 0; z < series.zones.size(); ++z) {
            const auto& v = series.hours[h][z];
            out << fmt::format("{},{},{:.3f},{:.3f},{:.3f},{:.3f}\n", ts, series.zones[z], v.t_air,
                               v.t_mrt, v.t_res, v.ach);
        }
    }
}

double mean_radiant_temperature(std::span<const AreaTemperature> surfaces) {
    if (surfaces.empty()) throw InputError("mean radiant temperature needs at least one surface");
    double area = 0.0;
    double weighted = 0.0;
    for (const auto& s : surfaces) {
        if (!(s.area > 0.0)) throw InputError(fmt::format("surface area {} must be > 0", s.area));
        area += s.area;
        weighted += s.area * s.temperature;
    }
    return weighted / area;
}

double resultant_temperature(double t_air, std::span<const AreaTemperature> surfaces) {
    return resultant_temperature(t_air, mean_radiant_temperature(surfaces));
}

DayNightAverages day_night_averages(const ResultSeries& series, const std::string& zone) {
    const auto z = series.zone_index(zone);
    double day_sum = 0.0, night_sum = 0.0;
    int day_n = 0, night_n = 0;
    for (std::size_t h = 0; h < series.timestamps.size(); ++h) {
        const double t = series.hours[h][z].t_res;
        if (is_day_hour(series.timestamps[h].hour)) {
            day_sum += t;
            ++day_n;
        } else {
            night_sum += t;
            ++night_n;
        }
    }
    DayNightAverages out;
    if (day_n > 0) out.day = day_sum / day_n;
    if (night_n > 0) out.night = night_sum / night_n;
    return out;
}

const ZoneComfort& ComfortSummary::zone(const std::string& name) const {
    for (const auto& z : zones) {
        if (z.zone == name) return z;
    }
    throw InputError(fmt::format("zone '{}' is not in the comfort summary", name));
}

int ComfortSummary::total_discomfort_hours() const {
    int total = 0;
    for (const auto& z : zones) total += z.discomfort_hours();
    return total;
}

ComfortSummary summarize_comfort(const ResultSeries& series, const ComfortThresholds& thresholds) {
    ComfortSummary summary;
    for (std::size_t z = 0; z < series.zones.size(); ++z) {
        ZoneComfort zc;
        zc.zone = series.zones[z];
        const auto avg = day_night_averages(series, zc.zone);
        zc.t_res_day = avg.day;
        zc.t_res_night = avg.night;
        for (std::size_t h = 0; h < series.timestamps.size(); ++h) {
            const double t = series.hours[h][z].t_res;
            if (is_day_hour(series.timestamps[h].hour)) {
                ++zc.day_hours;
                if (t < thresholds.day_threshold) ++zc.discomfort_hours_day;
            } else {
                ++zc.night_hours;
                if (t < thresholds.night_threshold) ++zc.discomfort_hours_night;
            }
        }
        summary.zones.push_back(std::move(zc));
    }
    return summary;
}

namespace {

std::string format_optional(const std::optional<double>& v) {
    return v ? fmt::format("{:.3f}", *v) : std::string("NA");
}

}  // namespace

void write_comfort_csv(std::ostream& out, const ComfortSummary& summary) {
    out << "zone,t_res_day_c,t_res_night_c,discomfort_day_h,discomfort_night_h\n";
    for (const auto& z : summary.zones) {
        out << fmt::format("{},{},{},{},{}\n", z.zone, format_optional(z.t_res_day),
                           format_optional(z.t_res_night), z.discomfort_hours_day,
                           z.discomfort_hours_night);
    }
}

}  // namespace passim
