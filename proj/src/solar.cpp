#include "passim/solar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "passim/error.hpp"

namespace passim {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kSolarConstant = 1367.0;

constexpr double kTropicalYearDays = 365.2422;

// Spencer (1971) day angle, radians, from a continuous UTC day count. The
// series is fitted to calendar days of a single year; anchoring it to noon on
// 2004-01-01 and counting tropical years keeps its phase from slipping over
// the leap cycle.
double day_angle(double utc_serial_hours) {
    const double epoch = LocalDateTime{2004, 1, 1, 12}.serial_hour();
    return 2.0 * std::numbers::pi * (utc_serial_hours - epoch) / (24.0 * kTropicalYearDays);
}

double declination_rad(double g) {
    return 0.006918 - 0.399912 * std::cos(g) + 0.070257 * std::sin(g) -
           0.006758 * std::cos(2 * g) + 0.000907 * std::sin(2 * g) -
           0.002697 * std::cos(3 * g) + 0.00148 * std::sin(3 * g);
}

double equation_of_time_minutes(double g) {
    return 229.18 * (0.000075 + 0.001868 * std::cos(g) - 0.032077 * std::sin(g) -
                     0.014615 * std::cos(2 * g) - 0.040849 * std::sin(2 * g));
}

}  // namespace

void check_site(const SiteInfo& site) {
    if (!(std::abs(site.latitude) <= 90.0)) {
        throw InputError(fmt::format("site latitude {} outside [-90, 90]", site.latitude));
    }
    if (!(std::abs(site.longitude) <= 180.0)) {
        throw InputError(fmt::format("site longitude {} outside [-180, 180]", site.longitude));
    }
    if (!(site.ground_albedo >= 0.0 && site.ground_albedo <= 1.0)) {
        throw InputError(fmt::format("site ground_albedo {} outside [0, 1]", site.ground_albedo));
    }
    if (!(std::abs(site.utc_offset) <= 14.0)) {
        throw InputError(fmt::format("site utc_offset {} outside [-14, 14]", site.utc_offset));
    }
}

SolarPosition solar_position(const SiteInfo& site, const LocalDateTime& timestamp,
                             double minutes) {
    const double clock_hours = timestamp.hour + minutes / 60.0;
    const double g = day_angle(double(timestamp.serial_hour()) + minutes / 60.0 - site.utc_offset);
    const double decl = declination_rad(g);
    const double eot = equation_of_time_minutes(g);

    const double solar_hours =
        clock_hours + (4.0 * (site.longitude - 15.0 * site.utc_offset) + eot) / 60.0;
    const double hour_angle = (15.0 * (solar_hours - 12.0)) * kDeg;
    const double lat = site.latitude * kDeg;

    const double sin_alt = std::sin(lat) * std::sin(decl) +
                           std::cos(lat) * std::cos(decl) * std::cos(hour_angle);
    const double alt = std::asin(std::clamp(sin_alt, -1.0, 1.0));

    const double y = -std::cos(decl) * std::sin(hour_angle);
    const double x = std::sin(decl) * std::cos(lat) -
                     std::cos(decl) * std::sin(lat) * std::cos(hour_angle);
    double az = std::atan2(y, x) / kDeg;
    if (az < 0.0) az += 360.0;
    if (az >= 360.0) az -= 360.0;
    return SolarPosition{alt / kDeg, az};
}

double extraterrestrial_normal(int day_of_year) {
    return kSolarConstant *
           (1.0 + 0.033 * std::cos(2.0 * std::numbers::pi * day_of_year / 365.0));
}

double incidence_cosine(const SolarPosition& pos, double tilt, double surface_azimuth) {
    const double alt = pos.altitude * kDeg;
    const double t = tilt * kDeg;
    return std::sin(alt) * std::cos(t) +
           std::cos(alt) * std::sin(t) * std::cos((pos.azimuth - surface_azimuth) * kDeg);
}

SurfaceIrradiance tilt_irradiance(double global_horizontal, double diffuse_horizontal,
                                  const SolarPosition& pos, double tilt,
                                  double surface_azimuth, double albedo) {
    SurfaceIrradiance out;
    if (tilt == 0.0) {
        // Horizontal plane: no direct-normal reconstruction, the split is the input itself.
        out.beam = std::max(0.0, global_horizontal - diffuse_horizontal);
        out.sky_diffuse = diffuse_horizontal;
        out.total = global_horizontal;
        return out;
    }
    const double cos_tilt = std::cos(tilt * kDeg);
    if (pos.altitude > kLowSunAltitude) {
        const double dni = std::max(
            0.0, (global_horizontal - diffuse_horizontal) / std::sin(pos.altitude * kDeg));
        out.beam = std::max(0.0, dni * incidence_cosine(pos, tilt, surface_azimuth));
    }
    out.sky_diffuse = diffuse_horizontal * (1.0 + cos_tilt) / 2.0;
    out.ground_reflected = global_horizontal * albedo * (1.0 - cos_tilt) / 2.0;
    out.total = out.beam + out.sky_diffuse + out.ground_reflected;
    return out;
}

}  // namespace passim
