#include "passim/time.hpp"

#include <charconv>
#include <chrono>

#include <fmt/format.h>

#include "passim/error.hpp"

namespace passim {

namespace {

namespace chr = std::chrono;

chr::year_month_day to_ymd(const LocalDateTime& t) {
    return chr::year{t.year} / chr::month{static_cast<unsigned>(t.month)} /
           chr::day{static_cast<unsigned>(t.day)};
}

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InputError(fmt::format("invalid timestamp '{}'", whole));
    }
    return value;
}

}  // namespace

int LocalDateTime::day_of_year() const {
    const auto ymd = to_ymd(*this);
    const chr::sys_days jan1{ymd.year() / chr::January / 1};
    return static_cast<int>((chr::sys_days{ymd} - jan1).count()) + 1;
}

std::int64_t LocalDateTime::serial_hour() const {
    const chr::sys_days days{to_ymd(*this)};
    return static_cast<std::int64_t>(days.time_since_epoch().count()) * 24 + hour;
}

LocalDateTime LocalDateTime::from_serial_hour(std::int64_t serial) {
    std::int64_t days = serial / 24;
    std::int64_t h = serial % 24;
    if (h < 0) {
        h += 24;
        --days;
    }
    const chr::year_month_day ymd{chr::sys_days{chr::days{days}}};
    return LocalDateTime{static_cast<int>(ymd.year()), static_cast<int>(unsigned(ymd.month())),
                         static_cast<int>(unsigned(ymd.day())), static_cast<int>(h)};
}

LocalDateTime LocalDateTime::plus_hours(std::int64_t hours) const {
    return from_serial_hour(serial_hour() + hours);
}

LocalDateTime LocalDateTime::parse(std::string_view text) {
    // YYYY-MM-DDTHH:00
    if (text.size() != 16 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
        text[13] != ':' || text.substr(14) != "00") {
        throw InputError(fmt::format("invalid timestamp '{}' (expected YYYY-MM-DDTHH:00)", text));
    }
    LocalDateTime t;
    t.year = parse_int(text.substr(0, 4), text);
    t.month = parse_int(text.substr(5, 2), text);
    t.day = parse_int(text.substr(8, 2), text);
    t.hour = parse_int(text.substr(11, 2), text);
    if (!to_ymd(t).ok() || t.hour < 0 || t.hour > 23) {
        throw InputError(fmt::format("invalid timestamp '{}' (no such date or hour)", text));
    }
    return t;
}

std::string LocalDateTime::to_string() const {
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:00", year, month, day, hour);
}

}  // namespace passim
