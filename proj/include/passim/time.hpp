#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace passim {

/// Local civil date-time at hour resolution (no daylight saving).
struct LocalDateTime {
    int year = 2001;
    int month = 1;
    int day = 1;
    int hour = 0;

    auto operator<=>(const LocalDateTime&) const = default;

    /// Day of year, 1 on January 1st.
    int day_of_year() const;

    /// Hours elapsed since 1970-01-01T00:00 in the same civil clock.
    std::int64_t serial_hour() const;

    LocalDateTime plus_hours(std::int64_t hours) const;

    static LocalDateTime from_serial_hour(std::int64_t serial);

    /// Parses `YYYY-MM-DDTHH:00`. Throws InputError on anything else.
    static LocalDateTime parse(std::string_view text);

    /// Formats as `YYYY-MM-DDTHH:00`.
    std::string to_string() const;
};

}  // namespace passim
