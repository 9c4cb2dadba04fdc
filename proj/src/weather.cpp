#include "passim/weather.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "passim/error.hpp"

namespace passim {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view text, std::string_view field, std::size_t line_no) {
    text = trim(text);
    double value = 0.0;
    const char* first = text.data();
    if (!text.empty() && text.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw InputError(
            fmt::format("line {}: field '{}' is not a decimal number: '{}'", line_no, field, text));
    }
    return value;
}

void check_record_fields(const WeatherRecord& r, const std::string& where) {
    auto fail = [&](std::string_view field, double v, std::string_view range) {
        throw InputError(fmt::format("{}field '{}' = {} violates {}", where, field, v, range));
    };
    if (!(r.relative_humidity >= 0.0 && r.relative_humidity <= 100.0)) {
        fail("rh_pct", r.relative_humidity, "0 <= rh <= 100");
    }
    if (!(r.diffuse_horizontal >= 0.0)) fail("dhi_wm2", r.diffuse_horizontal, "dhi >= 0");
    if (!(r.diffuse_horizontal <= r.global_horizontal)) {
        fail("dhi_wm2", r.diffuse_horizontal, "dhi <= ghi");
    }
    if (!(r.wind_speed >= 0.0)) fail("wind_ms", r.wind_speed, "wind >= 0");
    if (!(r.wind_direction >= 0.0 && r.wind_direction < 360.0)) {
        fail("wind_dir_deg", r.wind_direction, "0 <= direction < 360");
    }
    if (!std::isfinite(r.dry_bulb)) fail("dry_bulb_c", r.dry_bulb, "finite");
}

// Parses "lat=.. lon=.. utc=.. albedo=.." after "site:".
SiteInfo parse_site_comment(std::string_view body, std::size_t line_no) {
    SiteInfo site;
    bool lat = false, lon = false;
    for (auto token : split(trim(body), ' ')) {
        token = trim(token);
        if (token.empty()) continue;
        const auto eq = token.find('=');
        if (eq == std::string_view::npos) {
            throw InputError(fmt::format("line {}: malformed site comment token '{}'", line_no, token));
        }
        const auto key = token.substr(0, eq);
        const double v = parse_double(token.substr(eq + 1), key, line_no);
        if (key == "lat") {
            site.latitude = v;
            lat = true;
        } else if (key == "lon") {
            site.longitude = v;
            lon = true;
        } else if (key == "utc") {
            site.utc_offset = v;
        } else if (key == "albedo") {
            site.ground_albedo = v;
        } else {
            throw InputError(fmt::format("line {}: unknown site key '{}'", line_no, key));
        }
    }
    if (!lat || !lon) {
        throw InputError(fmt::format("line {}: site comment needs lat= and lon=", line_no));
    }
    check_site(site);
    return site;
}

}  // namespace

void check_record(const WeatherRecord& r) { check_record_fields(r, ""); }

void check_series(const WeatherSeries& series) {
    if (series.records.empty()) throw InputError("weather series is empty");
    if (series.site) check_site(*series.site);
    for (std::size_t i = 0; i < series.records.size(); ++i) {
        check_record_fields(series.records[i], fmt::format("record {}: ", i));
        if (i > 0 && series.records[i].timestamp.serial_hour() !=
                         series.records[i - 1].timestamp.serial_hour() + 1) {
            throw InputError(fmt::format("record {}: timestamp {} does not follow {} by one hour", i,
                                         series.records[i].timestamp.to_string(),
                                         series.records[i - 1].timestamp.to_string()));
        }
    }
}

WeatherSeries parse_weather_csv(std::istream& in) {
    WeatherSeries series;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::int64_t prev_serial = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
        if (!header_seen) {
            if (view.starts_with("#")) {
                auto body = trim(view.substr(1));
                if (body.starts_with("site:")) {
                    series.site = parse_site_comment(body.substr(5), line_no);
                }
                continue;
            }
            if (trim(view).empty()) continue;
            if (view != kWeatherCsvHeader) {
                throw InputError(fmt::format("line {}: expected header '{}'", line_no, kWeatherCsvHeader));
            }
            header_seen = true;
            continue;
        }
        if (trim(view).empty()) continue;
        const auto cols = split(view, ',');
        if (cols.size() != 7) {
            throw InputError(fmt::format("line {}: expected 7 columns, found {}", line_no, cols.size()));
        }
        WeatherRecord r;
        try {
            r.timestamp = LocalDateTime::parse(trim(cols[0]));
        } catch (const InputError& e) {
            throw InputError(fmt::format("line {}: {}", line_no, e.what()));
        }
        r.dry_bulb = parse_double(cols[1], "dry_bulb_c", line_no);
        r.relative_humidity = parse_double(cols[2], "rh_pct", line_no);
        r.global_horizontal = parse_double(cols[3], "ghi_wm2", line_no);
        r.diffuse_horizontal = parse_double(cols[4], "dhi_wm2", line_no);
        r.wind_speed = parse_double(cols[5], "wind_ms", line_no);
        r.wind_direction = parse_double(cols[6], "wind_dir_deg", line_no);
        check_record_fields(r, fmt::format("line {}: ", line_no));
        const auto serial = r.timestamp.serial_hour();
        if (!series.records.empty()) {
            if (serial <= prev_serial) {
                throw InputError(fmt::format("line {}: timestamp {} is not after the previous row",
                                             line_no, r.timestamp.to_string()));
            }
            if (serial != prev_serial + 1) {
                throw InputError(fmt::format("line {}: gap before timestamp {} (rows must be hourly)",
                                             line_no, r.timestamp.to_string()));
            }
        }
        prev_serial = serial;
        series.records.push_back(r);
    }
    if (!header_seen) throw InputError("weather file has no header row");
    if (series.records.empty()) throw InputError("weather file has no data rows");
    return series;
}

WeatherSeries parse_weather_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_weather_csv(in);
}

void write_weather_csv(std::ostream& out, const WeatherSeries& series) {
    if (series.site) {
        const auto& s = *series.site;
        out << fmt::format("# site: lat={} lon={} utc={} albedo={}\n", s.latitude, s.longitude,
                           s.utc_offset, s.ground_albedo);
    }
    out << kWeatherCsvHeader << '\n';
    for (const auto& r : series.records) {
        out << fmt::format("{},{:.2f},{:.1f},{:.1f},{:.1f},{:.2f},{:.1f}\n", r.timestamp.to_string(),
                           r.dry_bulb, r.relative_humidity, r.global_horizontal,
                           r.diffuse_horizontal, r.wind_speed, r.wind_direction);
    }
}

SurfaceIrradiance tilt_irradiance(const WeatherRecord& record, const SolarPosition& pos,
                                  double tilt, double surface_azimuth, double albedo) {
    return tilt_irradiance(record.global_horizontal, record.diffuse_horizontal, pos, tilt,
                           surface_azimuth, albedo);
}

TypicalSequence select_cold_sequence(const WeatherSeries& series, int window_days) {
    if (window_days < 1) throw InputError("window_days must be at least 1");
    const auto& recs = series.records;
    const std::size_t len = static_cast<std::size_t>(window_days) * 24;
    if (recs.size() < len) {
        throw InputError(fmt::format("window of {} days is longer than the {}-hour series",
                                     window_days, recs.size()));
    }
    double abs_min = std::numeric_limits<double>::infinity();
    for (const auto& r : recs) abs_min = std::min(abs_min, r.dry_bulb);

    bool found = false;
    std::size_t best_start = 0;
    double best_score = 0.0;
    bool best_has_min = false;
    for (std::size_t start = 0; start + len <= recs.size(); ++start) {
        if (recs[start].timestamp.hour != 0) continue;
        double sum = 0.0;
        bool has_min = false;
        for (std::size_t i = start; i < start + len; ++i) {
            sum += recs[i].dry_bulb;
            has_min = has_min || recs[i].dry_bulb == abs_min;
        }
        const double score = sum / static_cast<double>(len);
        const bool better = !found || score < best_score ||
                            (score == best_score && has_min && !best_has_min);
        if (better) {
            found = true;
            best_start = start;
            best_score = score;
            best_has_min = has_min;
        }
    }
    if (!found) {
        throw InputError(fmt::format("no {}-day window starting at midnight fits in the series",
                                     window_days));
    }
    TypicalSequence seq;
    seq.series.site = series.site;
    seq.series.records.assign(recs.begin() + static_cast<std::ptrdiff_t>(best_start),
                              recs.begin() + static_cast<std::ptrdiff_t>(best_start + len));
    seq.start_index = best_start;
    seq.length_days = window_days;
    seq.score = best_score;
    return seq;
}

WeatherSeries synth_weather(const SiteInfo& site, const SynthParams& p) {
    check_site(site);
    if (p.days < 1) throw InputError("synthetic weather needs at least one day");
    if (!(p.t_min <= p.t_max)) throw InputError("t_min must not exceed t_max");
    if (!(p.clearness >= 0.0 && p.clearness <= 1.0)) throw InputError("clearness outside [0, 1]");
    if (!(p.relative_humidity >= 0.0 && p.relative_humidity <= 100.0)) {
        throw InputError("relative humidity outside [0, 100]");
    }
    if (!(p.wind_speed >= 0.0)) throw InputError("wind speed must be non-negative");
    if (!(p.wind_direction >= 0.0 && p.wind_direction < 360.0)) {
        throw InputError("wind direction outside [0, 360)");
    }

    const double amplitude = p.t_max - p.t_min;
    auto dry_bulb = [&](int hour) {
        // rising half-cosine 06:00 -> 15:00, falling 15:00 -> 06:00 (+1 day)
        if (hour >= 6 && hour <= 15) {
            const double x = (hour - 6) / 9.0;
            return p.t_min + amplitude * (1.0 - std::cos(std::numbers::pi * x)) / 2.0;
        }
        const double x = ((hour + 24 - 15) % 24) / 15.0;
        return p.t_max - amplitude * (1.0 - std::cos(std::numbers::pi * x)) / 2.0;
    };

    WeatherSeries series;
    series.site = site;
    const auto start = LocalDateTime{p.start.year, p.start.month, p.start.day, 0};
    for (int h = 0; h < p.days * 24; ++h) {
        WeatherRecord r;
        r.timestamp = start.plus_hours(h);
        r.dry_bulb = dry_bulb(r.timestamp.hour);
        const auto pos = solar_position(site, r.timestamp, 30.0);
        const double sin_alt = std::sin(pos.altitude * std::numbers::pi / 180.0);
        r.global_horizontal = std::max(
            0.0, p.clearness * extraterrestrial_normal(r.timestamp.day_of_year()) * sin_alt);
        r.diffuse_horizontal = 0.25 * r.global_horizontal;
        r.relative_humidity = p.relative_humidity;
        r.wind_speed = p.wind_speed;
        r.wind_direction = p.wind_direction;
        series.records.push_back(r);
    }
    return series;
}

WeatherStats weather_stats(const WeatherSeries& series) {
    if (series.records.empty()) throw InputError("weather series is empty");
    WeatherStats s;
    s.min_dry_bulb = std::numeric_limits<double>::infinity();
    s.max_dry_bulb = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& r : series.records) {
        s.min_dry_bulb = std::min(s.min_dry_bulb, r.dry_bulb);
        s.max_dry_bulb = std::max(s.max_dry_bulb, r.dry_bulb);
        sum += r.dry_bulb;
        if (r.global_horizontal > kSunshineThreshold) ++s.sunshine_hours;
    }
    s.mean_dry_bulb = sum / static_cast<double>(series.records.size());
    return s;
}

std::vector<double> daily_clearness(const WeatherSeries& series, const SiteInfo& site) {
    std::map<std::int64_t, std::pair<double, double>> per_day;
    for (const auto& r : series.records) {
        const auto day = r.timestamp.serial_hour() / 24;
        const auto pos = solar_position(site, r.timestamp, 30.0);
        const double sin_alt = std::sin(pos.altitude * std::numbers::pi / 180.0);
        auto& [ghi, extra] = per_day[day];
        ghi += r.global_horizontal;
        extra += extraterrestrial_normal(r.timestamp.day_of_year()) * std::max(0.0, sin_alt);
    }
    std::vector<double> out;
    out.reserve(series.records.size());
    for (const auto& r : series.records) {
        const auto& [ghi, extra] = per_day[r.timestamp.serial_hour() / 24];
        out.push_back(extra > 0.0 ? std::clamp(ghi / extra, 0.0, 1.0) : 0.0);
    }
    return out;
}

}  // namespace passim
