#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>

#include "asota/annual_series.hpp"
#include "asota/dates.hpp"

namespace asota::factors {

/// Sparse unit-price observations (USD per GFLOP/sec at a calendar date).
/// Interpolation between anchors is linear in log price over fractional
/// years.
struct PriceSeries {
    std::map<Date, double> points; // all > 0
};

PriceSeries load_price_csv(const std::filesystem::path& path);

enum class Extrapolation { hold_flat, log_linear };

/// Price at a (possibly fractional) year. Queries outside the anchor hull
/// follow the extrapolation policy; `extrapolated`, when given, reports
/// that the policy was exercised.
double price_at(const PriceSeries& prices, double year, Extrapolation policy = Extrapolation::hold_flat,
                bool* extrapolated = nullptr);

/// Annual evaluation of price_at over [first_year, last_year].
AnnualSeries interpolate_price(const PriceSeries& prices, int first_year, int last_year,
                               Extrapolation policy = Extrapolation::hold_flat,
                               std::size_t* extrapolated_years = nullptr);

/// real_t = nominal_t * deflator(base_year) / deflator(t).
AnnualSeries deflate(const AnnualSeries& nominal, const AnnualSeries& deflator, int base_year);

/// Investment flow in compute units: invest_t / price_t.
AnnualSeries investment_flops(const AnnualSeries& invest_usd_real, const AnnualSeries& price_usd_real);

/// Depreciation rate consistent with K_t = (1-d)K_{t-1} + (1-0.5d)I_t:
/// d_t = (K_{t-1} + I_t - K_t) / (K_{t-1} + 0.5 I_t), clipped to [0,1].
/// `clipped`, when given, counts years where clipping fired.
AnnualSeries implicit_depreciation(const AnnualSeries& net_stock_usd, const AnnualSeries& invest_usd,
                                   std::size_t* clipped = nullptr);

/// Perpetual-inventory recursion from a seed stock at k0_year.
AnnualSeries accumulate_capital(const AnnualSeries& invest_flops, const AnnualSeries& delta,
                                double k0, int k0_year);

struct ScenarioConfig {
    double phi_ai = 1.0;                    // fraction of compute applied, (0, 1]
    double seconds_per_year = 31'557'600.0; // 365.25 days
};

AnnualSeries effective_compute_stock(const AnnualSeries& capital, const ScenarioConfig& cfg);

/// Fills interior gaps of a census-style headcount series by log-linear
/// interpolation; observed years pass through unchanged and nothing is
/// extrapolated outside the observed range.
AnnualSeries labor_series(const AnnualSeries& raw);

struct WagePremiumResult {
    AnnualSeries premium;  // cs / aggregate, overlapping years
    AnnualSeries real_cs;  // CPI-deflated
    AnnualSeries real_agg; // CPI-deflated
};

/// The ratio is deflator-invariant; the real series are emitted for
/// plotting.
WagePremiumResult wage_premium(const AnnualSeries& wage_cs, const AnnualSeries& wage_agg,
                               const AnnualSeries& cpi, int base_year);

} // namespace asota::factors
