#include "asota/production_fit.hpp"

#include <cmath>
#include <limits>

#include "asota/errors.hpp"

namespace asota::production {

FactorShares factor_share_alpha(double compensation, double value_added) {
    if (!(compensation > 0.0) || !(value_added > 0.0) || compensation >= value_added) {
        throw DataError("factor shares need 0 < compensation < value_added");
    }
    return {1.0 - compensation / value_added, "industry-accounts"};
}

ProxyTransform parse_transform(const std::string& token) {
    if (token == "natural-log") return ProxyTransform::natural_log;
    if (token == "elo-div-400") return ProxyTransform::elo_div_400;
    if (token == "already-log") return ProxyTransform::already_log;
    if (token == "bounded-unit-then-log") return ProxyTransform::bounded_unit_then_log;
    throw DataError("unknown proxy transform '" + token + "'");
}

UnitMap parse_unit_map(const std::string& token) {
    if (token == "identity") return UnitMap::identity;
    if (token == "reciprocal") return UnitMap::reciprocal;
    throw DataError("unknown unit map '" + token + "'");
}

AnnualSeries to_log_output(const OutputProxy& proxy) {
    AnnualSeries out;
    out.units = Units::log_points;
    for (const auto& [year, raw] : proxy.observations.points) {
        double v = raw;
        switch (proxy.transform) {
            case ProxyTransform::already_log:
                out.points[year] = v;
                continue;
            case ProxyTransform::elo_div_400:
                out.points[year] = v / 400.0;
                continue;
            case ProxyTransform::bounded_unit_then_log:
                if (proxy.unit_map == UnitMap::reciprocal) {
                    if (v <= 0.0) {
                        throw DataError(proxy.id + ": non-positive measure at year " +
                                        std::to_string(year));
                    }
                    v = 1.0 / v;
                }
                if (v <= 0.0 || v > 1.0) {
                    throw DataError(proxy.id + ": mapped measure outside (0,1] at year " +
                                    std::to_string(year));
                }
                out.points[year] = std::log(v);
                continue;
            case ProxyTransform::natural_log:
                if (v <= 0.0) {
                    throw DataError(proxy.id + ": cannot log non-positive value at year " +
                                    std::to_string(year));
                }
                out.points[year] = std::log(v);
                continue;
        }
    }
    return out;
}

CobbDouglasFit fit_mean_log_a(const AnnualSeries& log_y, const AnnualSeries& log_k,
                              const AnnualSeries& log_l, double alpha,
                              const std::string& proxy_id) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw DataError("alpha must lie in (0,1)");

    const auto years = common_years({&log_y, &log_k, &log_l});
    if (years.size() < 2) {
        throw DataError(proxy_id + ": need at least two joined observations, have " +
                        std::to_string(years.size()));
    }

    CobbDouglasFit fit;
    fit.proxy = proxy_id;
    fit.alpha = alpha;
    fit.n_obs = years.size();

    double sum = 0.0;
    for (int y : years) {
        sum += *log_y.at(y) - alpha * *log_k.at(y) - (1.0 - alpha) * *log_l.at(y);
    }
    fit.mean_log_a = sum / static_cast<double>(years.size());

    double mean_y = 0.0;
    for (int y : years) mean_y += *log_y.at(y);
    mean_y /= static_cast<double>(years.size());

    double ss_res = 0.0, ss_tot = 0.0;
    for (int y : years) {
        const double obs = *log_y.at(y);
        const double pred = fit.mean_log_a + alpha * *log_k.at(y) + (1.0 - alpha) * *log_l.at(y);
        fit.observed[y] = obs;
        fit.predicted[y] = pred;
        fit.residuals[y] = obs - pred;
        ss_res += (obs - pred) * (obs - pred);
        ss_tot += (obs - mean_y) * (obs - mean_y);
    }
    if (ss_tot == 0.0) {
        throw NumericError(proxy_id + ": R^2 undefined, observed log output has zero variance");
    }
    fit.r2 = 1.0 - ss_res / ss_tot;
    return fit;
}

AlignedSeries align_series(const std::vector<CobbDouglasFit>& fits, const std::string& reference,
                           const AnnualSeries& log_k, const AnnualSeries& log_l) {
    const CobbDouglasFit* ref = nullptr;
    for (const auto& f : fits) {
        if (f.proxy == reference) ref = &f;
    }
    if (!ref) throw DataError("reference proxy '" + reference + "' missing from fit set");

    constexpr double ln10 = 2.302585092994045684;
    AlignedSeries out;
    for (const auto& f : fits) {
        auto& dest = out.observed[f.proxy];
        for (const auto& [year, obs] : f.observed) {
            dest[year] = (obs - f.mean_log_a + ref->mean_log_a) / ln10;
        }
    }
    for (int y : common_years({&log_k, &log_l})) {
        out.model[y] =
            (ref->mean_log_a + ref->alpha * *log_k.at(y) + (1.0 - ref->alpha) * *log_l.at(y)) / ln10;
    }
    return out;
}

double doubling_time(double alpha, std::optional<double> k_doubling_years,
                     std::optional<double> l_doubling_years) {
    // alpha = 1 is allowed here: the labor term simply vanishes.
    if (!(alpha > 0.0) || alpha > 1.0) throw DataError("alpha must lie in (0,1]");
    if ((k_doubling_years && *k_doubling_years <= 0.0) ||
        (l_doubling_years && *l_doubling_years <= 0.0)) {
        throw DataError("doubling times must be positive");
    }
    double doublings_per_year = 0.0;
    if (k_doubling_years) doublings_per_year += alpha / *k_doubling_years;
    if (l_doubling_years) doublings_per_year += (1.0 - alpha) / *l_doubling_years;
    if (doublings_per_year == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / doublings_per_year;
}

AnnualSeries predict_output(const AnnualSeries& capital, const AnnualSeries& labor, double alpha,
                            double mean_log_a) {
    AnnualSeries out;
    out.units = Units::log_points;
    for (int y : common_years({&capital, &labor})) {
        const double k = *capital.at(y);
        const double l = *labor.at(y);
        if (k <= 0.0 || l <= 0.0) {
            throw DataError("inputs must be positive at year " + std::to_string(y));
        }
        out.points[y] = mean_log_a + alpha * std::log(k) + (1.0 - alpha) * std::log(l);
    }
    return out;
}

} // namespace asota::production
