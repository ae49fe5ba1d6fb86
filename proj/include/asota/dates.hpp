#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace asota {

/// Day-precision calendar date (proleptic Gregorian, via std::chrono).
class Date {
public:
    Date() = default;
    explicit Date(std::chrono::sys_days d) : days_(d) {}

    static Date from_ymd(int year, unsigned month, unsigned day);

    /// Strict ISO-8601 "YYYY-MM-DD"; nullopt on anything else (including
    /// invalid calendar days such as 2021-02-30).
    static std::optional<Date> parse_iso(std::string_view text);

    std::string iso() const;

    int year() const;
    unsigned month() const;
    unsigned day() const;

    /// Days since the civil epoch; useful as a dense-grid key.
    long serial() const { return days_.time_since_epoch().count(); }

    std::chrono::sys_days sys() const { return days_; }

    Date plus_days(long n) const { return Date(days_ + std::chrono::days{n}); }
    long operator-(const Date& other) const { return (days_ - other.days_).count(); }

    friend auto operator<=>(const Date&, const Date&) = default;

private:
    std::chrono::sys_days days_{};
};

/// Year plus elapsed fraction of that year (Jan 1 -> y.0).
double fractional_year(const Date& d);

} // namespace asota
