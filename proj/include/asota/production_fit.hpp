#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asota/annual_series.hpp"

namespace asota::production {

struct FactorShares {
    double alpha = 0.0; // output elasticity of compute capital, (0,1)
    std::string source; // "industry-accounts" or "override"
};

/// alpha = 1 - compensation/value_added. Requires 0 < compensation < value_added.
FactorShares factor_share_alpha(double compensation, double value_added);

enum class ProxyTransform {
    natural_log,           // papers, patents
    elo_div_400,           // game-rating scale
    already_log,           // aggregate index levels
    bounded_unit_then_log, // benchmark measures mapped into (0,1]
};

enum class UnitMap { identity, reciprocal };

ProxyTransform parse_transform(const std::string& token);
UnitMap parse_unit_map(const std::string& token);

struct OutputProxy {
    std::string id;
    ProxyTransform transform = ProxyTransform::natural_log;
    UnitMap unit_map = UnitMap::identity; // applies to bounded_unit_then_log only
    AnnualSeries observations;
};

/// Log-scale output series per the proxy's declared transform. Throws
/// DataError naming the offending year when a log is taken of a
/// non-positive value or a bounded measure leaves (0,1].
AnnualSeries to_log_output(const OutputProxy& proxy);

struct CobbDouglasFit {
    std::string proxy;
    double alpha = 0.0;
    double mean_log_a = 0.0;
    double r2 = 0.0;
    std::size_t n_obs = 0;
    std::map<int, double> observed;  // log scale, joined years
    std::map<int, double> predicted; // mean_log_a + alpha*logK + (1-alpha)*logL
    std::map<int, double> residuals; // observed - predicted, zero mean
};

/// Mean log productivity by OLS on the alpha-constrained model: the single
/// free parameter is the intercept, so mean_log_a is the average of
/// logY - alpha*logK - (1-alpha)*logL over the joined years. R^2 compares
/// the constrained prediction against observed logY and can be negative.
CobbDouglasFit fit_mean_log_a(const AnnualSeries& log_y, const AnnualSeries& log_k,
                              const AnnualSeries& log_l, double alpha,
                              const std::string& proxy_id);

struct AlignedSeries {
    // Base-10 logs, shifted onto the reference proxy's level.
    std::map<std::string, std::map<int, double>> observed;
    std::map<int, double> model; // one common line for every proxy
};

/// Subtracts each proxy's mean_log_a, re-levels onto the reference proxy,
/// and converts to decadic logs for plotting.
AlignedSeries align_series(const std::vector<CobbDouglasFit>& fits, const std::string& reference,
                           const AnnualSeries& log_k, const AnnualSeries& log_l);

/// Output doubling time implied by factor doubling times:
/// 1 / (alpha/dk + (1-alpha)/dl); a missing doubling time means the factor
/// is constant. Returns +infinity when both factors are constant.
double doubling_time(double alpha, std::optional<double> k_doubling_years,
                     std::optional<double> l_doubling_years);

/// Log-scale model prediction over the K/L joined years.
AnnualSeries predict_output(const AnnualSeries& capital, const AnnualSeries& labor, double alpha,
                            double mean_log_a);

} // namespace asota::production
