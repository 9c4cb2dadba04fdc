#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "passim/solar.hpp"
#include "passim/time.hpp"

namespace passim {

struct WeatherRecord {
    LocalDateTime timestamp;
    double dry_bulb = 0.0;            ///< degC
    double relative_humidity = 50.0;  ///< %
    double global_horizontal = 0.0;   ///< W/m2
    double diffuse_horizontal = 0.0;  ///< W/m2
    double wind_speed = 0.0;          ///< m/s
    double wind_direction = 0.0;      ///< degrees clockwise from north, direction wind blows from
};

/// Hourly driving data. `site` is empty when the source did not declare one;
/// the simulation then adopts the building's site.
struct WeatherSeries {
    std::optional<SiteInfo> site;
    std::vector<WeatherRecord> records;
};

/// Exact header line of the weather CSV format.
inline constexpr std::string_view kWeatherCsvHeader =
    "timestamp,dry_bulb_c,rh_pct,ghi_wm2,dhi_wm2,wind_ms,wind_dir_deg";

/// Checks record and series invariants; throws InputError naming the first offence.
void check_record(const WeatherRecord& r);
void check_series(const WeatherSeries& series);

/// Parses the weather CSV. Comment lines starting with `#` may precede the
/// header; a `# site: lat=.. lon=.. utc=.. albedo=..` comment declares the site.
WeatherSeries parse_weather_csv(std::istream& in);
WeatherSeries parse_weather_csv(std::string_view text);

/// Writes the weather CSV (2 decimals for temperature and wind speed, 1 for the rest).
void write_weather_csv(std::ostream& out, const WeatherSeries& series);

SurfaceIrradiance tilt_irradiance(const WeatherRecord& record, const SolarPosition& pos,
                                  double tilt, double surface_azimuth, double albedo);

struct TypicalSequence {
    WeatherSeries series;
    std::size_t start_index = 0;
    int length_days = 0;
    double score = 0.0;  ///< mean dry-bulb over the window; lower is more severe
};

/// Coldest contiguous window of `window_days` whole days (windows start at midnight).
///
/// Ties on the mean are broken first in favour of a window holding the
/// series' absolute minimum temperature, then by earliest start.
TypicalSequence select_cold_sequence(const WeatherSeries& series, int window_days);

struct SynthParams {
    LocalDateTime start{2001, 7, 1, 0};
    int days = 7;
    double t_min = 5.6;
    double t_max = 20.6;
    double clearness = 0.7;
    double relative_humidity = 80.0;
    double wind_speed = 2.0;
    double wind_direction = 120.0;
};

/// Synthetic design weather: asymmetric sinusoidal dry-bulb with the minimum
/// at 06:00 and maximum at 15:00, clear-sky-scaled irradiance, constant
/// humidity and wind.
WeatherSeries synth_weather(const SiteInfo& site, const SynthParams& params);

struct WeatherStats {
    double min_dry_bulb = 0.0;
    double mean_dry_bulb = 0.0;
    double max_dry_bulb = 0.0;
    int sunshine_hours = 0;
};

/// GHI above which an hour counts as sunshine.
inline constexpr double kSunshineThreshold = 120.0;

WeatherStats weather_stats(const WeatherSeries& series);

/// Daily clearness index (sum of GHI over sum of extraterrestrial horizontal)
/// for every record's calendar day; zero for days without any sun.
std::vector<double> daily_clearness(const WeatherSeries& series, const SiteInfo& site);

}  // namespace passim
