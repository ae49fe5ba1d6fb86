#include "asota/factor_inputs.hpp"

#include <cmath>
#include <vector>

#include "asota/csv.hpp"
#include "asota/errors.hpp"

namespace asota::factors {

PriceSeries load_price_csv(const std::filesystem::path& path) {
    const csv::Table table = csv::read_table(path);
    PriceSeries out;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        double value = 0.0;
        auto date = row.size() >= 2 ? Date::parse_iso(row[0]) : std::nullopt;
        if (!date || !csv::parse_double(row[1], value)) {
            throw DataError("malformed price row " + std::to_string(i + 2) + " in " + path.string());
        }
        if (value <= 0.0 || !std::isfinite(value)) {
            throw DataError("price must be positive and finite at " + date->iso());
        }
        out.points[*date] = value;
    }
    return out;
}

namespace {

struct Anchor {
    double year;
    double log_price;
};

std::vector<Anchor> anchors_of(const PriceSeries& prices) {
    std::vector<Anchor> anchors;
    anchors.reserve(prices.points.size());
    for (const auto& [date, price] : prices.points) {
        if (price <= 0.0) throw DataError("price anchors must be positive");
        anchors.push_back({fractional_year(date), std::log(price)});
    }
    return anchors;
}

} // namespace

double price_at(const PriceSeries& prices, double year, Extrapolation policy, bool* extrapolated) {
    const auto anchors = anchors_of(prices);
    if (anchors.size() < 2) throw DataError("price interpolation needs at least two anchors");

    if (year <= anchors.front().year || year >= anchors.back().year) {
        const bool inside_hull =
            year >= anchors.front().year && year <= anchors.back().year;
        if (!inside_hull && extrapolated) *extrapolated = true;
        if (!inside_hull && policy == Extrapolation::hold_flat) {
            return std::exp(year < anchors.front().year ? anchors.front().log_price
                                                        : anchors.back().log_price);
        }
        // log_linear extends the terminal segment; exact hull endpoints fall
        // through to the segment formula below.
    }

    // Locate the segment (or terminal segment for log-linear extension).
    std::size_t hi = 1;
    while (hi + 1 < anchors.size() && anchors[hi].year < year) ++hi;
    const Anchor& a = anchors[hi - 1];
    const Anchor& b = anchors[hi];
    if (b.year == a.year) throw DataError("price anchors share a date");
    const double u = (year - a.year) / (b.year - a.year);
    return std::exp(a.log_price + u * (b.log_price - a.log_price));
}

AnnualSeries interpolate_price(const PriceSeries& prices, int first_year, int last_year,
                               Extrapolation policy, std::size_t* extrapolated_years) {
    if (last_year < first_year) throw DataError("empty price target range");
    AnnualSeries out;
    out.units = Units::usd_nominal;
    for (int y = first_year; y <= last_year; ++y) {
        bool ex = false;
        out.points[y] = price_at(prices, static_cast<double>(y), policy, &ex);
        if (ex && extrapolated_years) ++*extrapolated_years;
    }
    return out;
}

AnnualSeries deflate(const AnnualSeries& nominal, const AnnualSeries& deflator, int base_year) {
    const auto base = deflator.at(base_year);
    if (!base || *base <= 0.0) {
        throw DataError("deflator missing or non-positive at base year " + std::to_string(base_year));
    }
    AnnualSeries out;
    out.units = Units::usd_real;
    out.base_year = base_year;
    for (const auto& [year, value] : nominal.points) {
        const auto d = deflator.at(year);
        if (!d) throw DataError("deflator missing year " + std::to_string(year));
        if (*d <= 0.0) throw DataError("deflator non-positive at year " + std::to_string(year));
        out.points[year] = value * *base / *d;
    }
    return out;
}

AnnualSeries investment_flops(const AnnualSeries& invest_usd_real, const AnnualSeries& price_usd_real) {
    AnnualSeries out;
    out.units = Units::flop_per_sec;
    for (const auto& [year, invest] : invest_usd_real.points) {
        const auto price = price_usd_real.at(year);
        if (!price) throw DataError("price series missing year " + std::to_string(year));
        if (*price <= 0.0) {
            throw DataError("price must be positive at year " + std::to_string(year));
        }
        out.points[year] = invest / *price;
    }
    return out;
}

AnnualSeries implicit_depreciation(const AnnualSeries& net_stock_usd, const AnnualSeries& invest_usd,
                                   std::size_t* clipped) {
    AnnualSeries out;
    out.units = Units::ratio;
    if (net_stock_usd.size() < 2) throw DataError("net stock series needs at least two years");
    auto prev = net_stock_usd.points.begin();
    for (auto it = std::next(prev); it != net_stock_usd.points.end(); ++it, ++prev) {
        const int year = it->first;
        if (it->first != prev->first + 1) {
            throw DataError("net stock series must cover consecutive years; gap before " +
                            std::to_string(year));
        }
        const auto invest = invest_usd.at(year);
        if (!invest) throw DataError("investment series missing year " + std::to_string(year));
        const double k_prev = prev->second;
        const double k = it->second;
        const double denom = k_prev + 0.5 * *invest;
        if (denom <= 0.0) {
            throw DataError("implicit depreciation denominator non-positive at year " +
                            std::to_string(year));
        }
        double delta = (k_prev + *invest - k) / denom;
        if (delta < 0.0 || delta > 1.0) {
            delta = std::min(1.0, std::max(0.0, delta));
            if (clipped) ++*clipped;
        }
        out.points[year] = delta;
    }
    return out;
}

AnnualSeries accumulate_capital(const AnnualSeries& invest_flops, const AnnualSeries& delta,
                                double k0, int k0_year) {
    AnnualSeries out;
    out.units = Units::flop_per_sec;
    out.points[k0_year] = k0;
    double k = k0;
    for (const auto& [year, invest] : invest_flops.points) {
        if (year <= k0_year) continue;
        const auto d = delta.at(year);
        if (!d) throw DataError("depreciation series missing year " + std::to_string(year));
        if (*d < 0.0 || *d > 1.0) {
            throw DataError("depreciation rate outside [0,1] at year " + std::to_string(year));
        }
        if (!out.points.count(year - 1)) {
            throw DataError("investment series must cover consecutive years; gap before " +
                            std::to_string(year));
        }
        k = (1.0 - *d) * k + (1.0 - 0.5 * *d) * invest;
        out.points[year] = k;
    }
    return out;
}

AnnualSeries effective_compute_stock(const AnnualSeries& capital, const ScenarioConfig& cfg) {
    if (!(cfg.phi_ai > 0.0) || cfg.phi_ai > 1.0) {
        throw DataError("phi_ai must lie in (0, 1]");
    }
    AnnualSeries out = capital;
    for (auto& [_, v] : out.points) v *= cfg.phi_ai;
    return out;
}

AnnualSeries labor_series(const AnnualSeries& raw) {
    if (raw.size() < 2) throw DataError("labor interpolation needs at least two observed years");
    AnnualSeries out;
    out.units = Units::persons;
    auto prev = raw.points.begin();
    out.points[prev->first] = prev->second;
    for (auto it = std::next(prev); it != raw.points.end(); ++it, ++prev) {
        if (prev->second <= 0.0 || it->second <= 0.0) {
            throw DataError("labor counts must be positive for log interpolation");
        }
        const double ln0 = std::log(prev->second);
        const double ln1 = std::log(it->second);
        const int y0 = prev->first, y1 = it->first;
        for (int y = y0 + 1; y < y1; ++y) {
            const double u = static_cast<double>(y - y0) / static_cast<double>(y1 - y0);
            out.points[y] = std::exp(ln0 + u * (ln1 - ln0));
        }
        out.points[y1] = it->second;
    }
    return out;
}

WagePremiumResult wage_premium(const AnnualSeries& wage_cs, const AnnualSeries& wage_agg,
                               const AnnualSeries& cpi, int base_year) {
    WagePremiumResult result;
    result.real_cs = deflate(wage_cs, cpi, base_year);
    result.real_agg = deflate(wage_agg, cpi, base_year);
    result.premium.units = Units::ratio;
    for (const auto& [year, cs] : result.real_cs.points) {
        const auto agg = result.real_agg.at(year);
        if (!agg) continue;
        if (*agg <= 0.0) {
            throw DataError("aggregate wage non-positive at year " + std::to_string(year));
        }
        result.premium.points[year] = cs / *agg;
    }
    return result;
}

} // namespace asota::factors
