#include "asota/dates.hpp"

#include <charconv>
#include <cstdio>

namespace asota {

namespace {

bool parse_uint(std::string_view s, unsigned& out) {
    if (s.empty()) return false;
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return false;
    out = v;
    return true;
}

} // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    using namespace std::chrono;
    return Date(sys_days{year_month_day{std::chrono::year{year}, std::chrono::month{month},
                                        std::chrono::day{day}}});
}

std::optional<Date> Date::parse_iso(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    unsigned y = 0, m = 0, d = 0;
    if (!parse_uint(text.substr(0, 4), y) || !parse_uint(text.substr(5, 2), m) ||
        !parse_uint(text.substr(8, 2), d)) {
        return std::nullopt;
    }
    std::chrono::year_month_day ymd{std::chrono::year{static_cast<int>(y)},
                                    std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return Date(std::chrono::sys_days{ymd});
}

std::string Date::iso() const {
    std::chrono::year_month_day ymd{days_};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

int Date::year() const {
    return static_cast<int>(std::chrono::year_month_day{days_}.year());
}

unsigned Date::month() const {
    return static_cast<unsigned>(std::chrono::year_month_day{days_}.month());
}

unsigned Date::day() const {
    return static_cast<unsigned>(std::chrono::year_month_day{days_}.day());
}

double fractional_year(const Date& d) {
    const int y = d.year();
    const Date jan1 = Date::from_ymd(y, 1, 1);
    const Date next_jan1 = Date::from_ymd(y + 1, 1, 1);
    const double span = static_cast<double>(next_jan1 - jan1);
    return y + static_cast<double>(d - jan1) / span;
}

} // namespace asota
