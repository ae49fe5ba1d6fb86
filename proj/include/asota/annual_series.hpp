#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <vector>

namespace asota {

enum class Units {
    usd_nominal,
    usd_real,      // constant prices at base_year
    flop_per_sec,
    persons,
    ratio,
    index_points,
    log_points,
};

/// Year-indexed real-valued series. Keys are strictly increasing by map
/// construction; values must stay finite (enforced at load/compute sites).
struct AnnualSeries {
    std::map<int, double> points;
    Units units = Units::ratio;
    std::optional<int> base_year; // required when units == usd_real

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
    int first_year() const { return points.begin()->first; }
    int last_year() const { return points.rbegin()->first; }

    std::optional<double> at(int year) const {
        auto it = points.find(year);
        if (it == points.end()) return std::nullopt;
        return it->second;
    }

    std::vector<int> years() const;
};

/// Years present in every series of the set (inner join).
std::vector<int> common_years(const std::vector<const AnnualSeries*>& series);

/// Loads a two-column `year,value` CSV (header required). Values must be
/// finite; years must be unique.
AnnualSeries load_annual_csv(const std::filesystem::path& path, Units units);

} // namespace asota
