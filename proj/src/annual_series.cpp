#include "asota/annual_series.hpp"

#include <cmath>

#include "asota/csv.hpp"
#include "asota/errors.hpp"

namespace asota {

std::vector<int> AnnualSeries::years() const {
    std::vector<int> out;
    out.reserve(points.size());
    for (const auto& [y, _] : points) out.push_back(y);
    return out;
}

std::vector<int> common_years(const std::vector<const AnnualSeries*>& series) {
    std::vector<int> out;
    if (series.empty()) return out;
    for (const auto& [y, _] : series.front()->points) {
        bool everywhere = true;
        for (std::size_t i = 1; i < series.size(); ++i) {
            if (!series[i]->points.count(y)) {
                everywhere = false;
                break;
            }
        }
        if (everywhere) out.push_back(y);
    }
    return out;
}

AnnualSeries load_annual_csv(const std::filesystem::path& path, Units units) {
    const csv::Table table = csv::read_table(path);
    AnnualSeries out;
    out.units = units;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        long year = 0;
        double value = 0.0;
        if (row.size() < 2 || !csv::parse_int(row[0], year) || !csv::parse_double(row[1], value)) {
            throw DataError("malformed row " + std::to_string(i + 2) + " in " + path.string());
        }
        if (!std::isfinite(value)) {
            throw DataError("non-finite value at year " + std::to_string(year) + " in " + path.string());
        }
        if (!out.points.emplace(static_cast<int>(year), value).second) {
            throw DataError("duplicate year " + std::to_string(year) + " in " + path.string());
        }
    }
    return out;
}

} // namespace asota
