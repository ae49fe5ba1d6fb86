#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "asota/errors.hpp"
#include "asota/factor_inputs.hpp"

using namespace asota;
using namespace asota::factors;

namespace {

AnnualSeries series_of(std::initializer_list<std::pair<int, double>> points,
                       Units units = Units::ratio) {
    AnnualSeries s;
    s.units = units;
    for (const auto& [y, v] : points) s.points[y] = v;
    return s;
}

PriceSeries price_points(std::initializer_list<std::pair<const char*, double>> points) {
    PriceSeries p;
    for (const auto& [date, v] : points) p.points[*Date::parse_iso(date)] = v;
    return p;
}

} // namespace

TEST_CASE("price interpolation is log-linear over fractional years") {
    const auto prices = price_points({{"2000-01-01", 100.0}, {"2004-01-01", 1.0}});
    CHECK(price_at(prices, 2002.0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(price_at(prices, 2000.0) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(price_at(prices, 2004.0) == doctest::Approx(1.0).epsilon(1e-12));

    const auto ab = price_points({{"1997-01-01", 40.0}, {"1998-01-01", 10.0}});
    CHECK(price_at(ab, 1997.5) == doctest::Approx(std::sqrt(40.0 * 10.0)).epsilon(1e-12));
}

TEST_CASE("price extrapolation policies") {
    const auto prices = price_points({{"2000-01-01", 100.0}, {"2002-01-01", 25.0}});
    bool ex = false;
    CHECK(price_at(prices, 2005.0, Extrapolation::hold_flat, &ex) == doctest::Approx(25.0));
    CHECK(ex);
    ex = false;
    // log-linear continues the terminal slope: one more 2-year halving-squared
    CHECK(price_at(prices, 2004.0, Extrapolation::log_linear, &ex) ==
          doctest::Approx(25.0 / 16.0).epsilon(1e-9));
    CHECK(ex);
    ex = false;
    price_at(prices, 2001.0, Extrapolation::hold_flat, &ex);
    CHECK_FALSE(ex);

    std::size_t count = 0;
    const auto annual = interpolate_price(prices, 1999, 2003, Extrapolation::hold_flat, &count);
    CHECK(annual.size() == 5);
    CHECK(count == 2); // 1999 and 2003
    CHECK(*annual.at(1999) == doctest::Approx(100.0));
}

TEST_CASE("price interpolation is scale equivariant") {
    std::mt19937_64 rng(5);
    const auto prices = price_points(
        {{"1990-03-01", 80.0}, {"1995-07-15", 9.0}, {"2003-11-30", 0.5}, {"2010-01-02", 0.02}});
    PriceSeries scaled_prices;
    const double c = 7.25;
    for (const auto& [d, v] : prices.points) scaled_prices.points[d] = c * v;
    for (int i = 0; i < 50; ++i) {
        const double year = 1990.2 + 19.5 * static_cast<double>(rng() % 1000) / 1000.0;
        CHECK(price_at(scaled_prices, year) ==
              doctest::Approx(c * price_at(prices, year)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(price_at(price_points({{"2000-01-01", 1.0}}), 2000.5), DataError);
}

TEST_CASE("deflation to a base year") {
    const auto nominal = series_of({{2000, 50.0}, {2001, 60.0}}, Units::usd_nominal);
    const auto flat = series_of({{2000, 90.0}, {2001, 90.0}, {2017, 90.0}});
    const auto real_flat = deflate(nominal, flat, 2017);
    CHECK(*real_flat.at(2000) == doctest::Approx(50.0));
    CHECK(*real_flat.at(2001) == doctest::Approx(60.0));
    CHECK(real_flat.units == Units::usd_real);
    CHECK(real_flat.base_year == 2017);

    const auto doubling = series_of({{2000, 50.0}, {2001, 100.0}});
    const auto real = deflate(nominal, doubling, 2000);
    CHECK(*real.at(2001) == doctest::Approx(30.0)); // deflator doubled from base
    CHECK_THROWS_WITH_AS(deflate(series_of({{1999, 1.0}}), doubling, 2000).at(1999),
                         doctest::Contains("1999"), DataError);
}

TEST_CASE("investment conversion to compute units") {
    const auto invest = series_of({{2000, 100.0}});
    CHECK(*investment_flops(invest, series_of({{2000, 0.5}})).at(2000) == doctest::Approx(200.0));

    const auto flat = series_of({{2000, 100.0}, {2001, 100.0}});
    const auto halving = series_of({{2000, 1.0}, {2001, 0.5}});
    const auto flows = investment_flops(flat, halving);
    CHECK(*flows.at(2001) == doctest::Approx(2.0 * *flows.at(2000)));
    CHECK_THROWS_AS(investment_flops(flat, series_of({{2000, 0.0}, {2001, 1.0}})), DataError);
}

TEST_CASE("implicit depreciation closed form") {
    std::size_t clipped = 0;
    const auto d1 = implicit_depreciation(series_of({{2000, 100.0}, {2001, 70.0}}),
                                          series_of({{2001, 0.0}}), &clipped);
    CHECK(*d1.at(2001) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(clipped == 0);

    const auto d2 = implicit_depreciation(series_of({{2000, 100.0}, {2001, 120.0}}),
                                          series_of({{2001, 20.0}}));
    CHECK(*d2.at(2001) == doctest::Approx(0.0));

    const auto d3 = implicit_depreciation(series_of({{2000, 100.0}, {2001, 90.0}}),
                                          series_of({{2001, 20.0}}));
    CHECK(*d3.at(2001) == doctest::Approx(30.0 / 110.0).epsilon(1e-12));

    // Outside [0,1] -> clipped with a warning count.
    clipped = 0;
    const auto d4 = implicit_depreciation(series_of({{2000, 100.0}, {2001, 150.0}}),
                                          series_of({{2001, 10.0}}), &clipped);
    CHECK(*d4.at(2001) == 0.0);
    CHECK(clipped == 1);

    CHECK_THROWS_AS(implicit_depreciation(series_of({{2000, -10.0}, {2001, 5.0}}),
                                          series_of({{2001, 0.0}})),
                    DataError);
    CHECK_THROWS_AS(implicit_depreciation(series_of({{2000, 10.0}, {2002, 5.0}}),
                                          series_of({{2002, 0.0}})),
                    DataError);
}

TEST_CASE("capital accumulation") {
    AnnualSeries invest;
    invest.units = Units::flop_per_sec;
    AnnualSeries delta;
    for (int y = 2001; y <= 2060; ++y) {
        invest.points[y] = 100.0;
        delta.points[y] = 0.3;
    }

    SUBCASE("zero depreciation accumulates the flows") {
        AnnualSeries no_dep = delta;
        for (auto& [_, v] : no_dep.points) v = 0.0;
        const auto k = accumulate_capital(invest, no_dep, 50.0, 2000);
        CHECK(*k.at(2060) == doctest::Approx(50.0 + 60.0 * 100.0).epsilon(1e-12));
    }
    SUBCASE("steady state of the recursion") {
        const auto k = accumulate_capital(invest, delta, 0.0, 2000);
        CHECK(*k.at(2060) == doctest::Approx(100.0 * 0.85 / 0.3).epsilon(1e-3));
    }
    SUBCASE("single step") {
        const auto k = accumulate_capital(series_of({{2001, 10.0}}), series_of({{2001, 0.2}}),
                                          0.0, 2000);
        CHECK(*k.at(2001) == doctest::Approx(9.0).epsilon(1e-12));
    }
    SUBCASE("invalid depreciation is an error") {
        CHECK_THROWS_AS(accumulate_capital(series_of({{2001, 10.0}}), series_of({{2001, 1.5}}),
                                           0.0, 2000),
                        DataError);
    }
}

TEST_CASE("depreciation and accumulation round-trip") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        AnnualSeries invest, delta, stock;
        double k = 50.0 + static_cast<double>(rng() % 1000);
        stock.points[2000] = k;
        for (int y = 2001; y <= 2030; ++y) {
            const double i = 1.0 + static_cast<double>(rng() % 500);
            const double d = static_cast<double>(rng() % 1000) / 1000.0;
            invest.points[y] = i;
            delta.points[y] = d;
            k = (1.0 - d) * k + (1.0 - 0.5 * d) * i;
            stock.points[y] = k;
        }
        const auto implied = implicit_depreciation(stock, invest);
        const auto rebuilt = accumulate_capital(invest, implied, *stock.at(2000), 2000);
        for (const auto& [y, v] : stock.points) {
            CHECK(*rebuilt.at(y) == doctest::Approx(v).epsilon(1e-9));
        }
    }
}

TEST_CASE("capital accumulation is monotone in investment") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        AnnualSeries invest, bigger, delta;
        for (int y = 2001; y <= 2040; ++y) {
            const double i = 1.0 + static_cast<double>(rng() % 300);
            invest.points[y] = i;
            bigger.points[y] = i + 1.0 + static_cast<double>(rng() % 50);
            delta.points[y] = static_cast<double>(rng() % 900) / 1000.0;
        }
        const auto k1 = accumulate_capital(invest, delta, 10.0, 2000);
        const auto k2 = accumulate_capital(bigger, delta, 10.0, 2000);
        for (const auto& [y, v] : k1.points) CHECK(*k2.at(y) >= v);
    }
}

TEST_CASE("effective compute stock scales by phi") {
    const auto k = series_of({{2000, 10.0}, {2001, 20.0}}, Units::flop_per_sec);
    CHECK(*effective_compute_stock(k, {1.0, 3.15e7}).at(2001) == 20.0);
    const auto half = effective_compute_stock(k, {0.5, 3.15e7});
    CHECK(*half.at(2000) == 5.0);
    // Constant shift in logs.
    CHECK(std::log(*half.at(2001)) - std::log(*k.at(2001)) ==
          doctest::Approx(std::log(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(effective_compute_stock(k, {0.0, 3.15e7}), DataError);
    CHECK_THROWS_AS(effective_compute_stock(k, {1.5, 3.15e7}), DataError);
}

TEST_CASE("labor interpolation between censuses") {
    const auto raw = series_of({{1970, 100000.0}, {1980, 400000.0}}, Units::persons);
    const auto filled = labor_series(raw);
    CHECK(*filled.at(1975) == doctest::Approx(200000.0).epsilon(1e-12));
    CHECK(*filled.at(1970) == 100000.0);
    CHECK(*filled.at(1980) == 400000.0);
    CHECK_FALSE(filled.at(1969).has_value());
    CHECK_FALSE(filled.at(1981).has_value());

    // Closed-form check on a three-point series.
    const auto three = labor_series(series_of({{2000, 50.0}, {2004, 80.0}, {2010, 300.0}}));
    for (int y = 2001; y < 2004; ++y) {
        const double expected =
            std::exp(std::log(50.0) + (y - 2000) / 4.0 * (std::log(80.0) - std::log(50.0)));
        CHECK(*three.at(y) == doctest::Approx(expected).epsilon(1e-12));
    }
    for (int y = 2005; y < 2010; ++y) {
        const double expected =
            std::exp(std::log(80.0) + (y - 2004) / 6.0 * (std::log(300.0) - std::log(80.0)));
        CHECK(*three.at(y) == doctest::Approx(expected).epsilon(1e-12));
    }

    CHECK_THROWS_AS(labor_series(series_of({{1970, 100.0}})), DataError);
}

TEST_CASE("wage premium is the deflated ratio and deflator-invariant") {
    const auto cpi = series_of({{2000, 100.0}, {2001, 110.0}, {2017, 150.0}});
    const auto agg = series_of({{2000, 30000.0}, {2001, 31000.0}}, Units::usd_nominal);

    AnnualSeries cs = agg;
    const auto equal = wage_premium(cs, agg, cpi, 2017);
    CHECK(*equal.premium.at(2000) == doctest::Approx(1.0));
    CHECK(*equal.premium.at(2001) == doctest::Approx(1.0));

    for (auto& [_, v] : cs.points) v *= 1.5;
    const auto prem = wage_premium(cs, agg, cpi, 2017);
    CHECK(*prem.premium.at(2000) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(*prem.premium.at(2001) == doctest::Approx(1.5).epsilon(1e-12));

    // Any common positive deflator leaves the ratio unchanged.
    const auto other_cpi = series_of({{2000, 37.0}, {2001, 93.0}, {2017, 260.0}});
    const auto prem2 = wage_premium(cs, agg, other_cpi, 2017);
    CHECK(*prem2.premium.at(2001) == doctest::Approx(*prem.premium.at(2001)).epsilon(1e-12));

    AnnualSeries zero_agg = agg;
    zero_agg.points[2001] = 0.0;
    CHECK_THROWS_AS(wage_premium(cs, zero_agg, cpi, 2017), DataError);

    // Real series come out at the base-year price level.
    CHECK(*prem.real_agg.at(2000) == doctest::Approx(30000.0 * 1.5).epsilon(1e-12));
}
