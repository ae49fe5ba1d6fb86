#include "asota/index_engine.hpp"

#include <algorithm>
#include <cmath>

#include "asota/errors.hpp"

namespace asota::index_engine {

const char* variant_name(IndexVariant v) {
    switch (v) {
        case IndexVariant::n_metrics: return "n_metrics";
        case IndexVariant::ew: return "ew";
        case IndexVariant::aw: return "aw";
        case IndexVariant::ewe: return "ewe";
        case IndexVariant::awe: return "awe";
        case IndexVariant::ewr: return "ewr";
        case IndexVariant::awr: return "awr";
    }
    return "?";
}

double improvement_rate(double value, double best_prev, MetricKind kind) {
    if (best_prev <= 0.0) {
        throw NumericError("improvement rate undefined: previous best " +
                           std::to_string(best_prev) + " is not positive");
    }
    const double raw = kind == MetricKind::accuracy_like ? value / best_prev - 1.0
                                                         : 1.0 - value / best_prev;
    return std::max(0.0, raw);
}

DailyScan scan_daily(const BenchmarkCorpus& corpus, const IndexOptions& options) {
    DailyScan scan;
    if (corpus.series.empty()) return scan;

    struct ComboState {
        const ingest::MetricSeries* series = nullptr;
        std::size_t next_obs = 0;     // cursor into observations
        double best = 0.0;            // through the previous day
        bool seeded = false;
        std::size_t entries_seen = 0; // through the previous day
    };

    std::vector<ComboState> combos;
    combos.reserve(corpus.series.size());
    Date first, last;
    bool any = false;
    std::vector<Date> first_dates;
    for (const auto& [id, series] : corpus.series) {
        if (series.observations.empty()) continue;
        scan.combo_ids.push_back(id);
        combos.push_back({&series, 0, 0.0, false, 0});
        const Date f = series.observations.front().date;
        const Date l = series.observations.back().date;
        if (!any) {
            first = f;
            last = l;
            any = true;
        } else {
            first = std::min(first, f);
            last = std::max(last, l);
        }
        first_dates.push_back(f);
    }
    if (!any) return scan;
    std::sort(first_dates.begin(), first_dates.end());

    // Bucket observation ranges by day so the grid walk touches each entry once.
    const std::size_t n_days = static_cast<std::size_t>(last - first) + 1;
    struct DayGroup {
        std::size_t combo;
        std::size_t begin, end; // observation range for that day
    };
    std::vector<std::vector<DayGroup>> day_groups(n_days);
    for (std::size_t c = 0; c < combos.size(); ++c) {
        const auto& obs = combos[c].series->observations;
        std::size_t i = 0;
        while (i < obs.size()) {
            std::size_t j = i;
            while (j + 1 < obs.size() && obs[j + 1].date == obs[i].date) ++j;
            day_groups[static_cast<std::size_t>(obs[i].date - first)].push_back({c, i, j + 1});
            i = j + 1;
        }
    }

    scan.start = first;
    scan.days.resize(n_days);
    std::size_t seeded_cursor = 0, lagged_cursor = 0;

    for (std::size_t di = 0; di < n_days; ++di) {
        DayRecord& day = scan.days[di];
        day.date = first.plus_days(static_cast<long>(di));
        while (seeded_cursor < first_dates.size() && first_dates[seeded_cursor] <= day.date)
            ++seeded_cursor;
        const Date lag_date = day.date.plus_days(-options.renewing_window_days);
        while (lagged_cursor < first_dates.size() && first_dates[lagged_cursor] <= lag_date)
            ++lagged_cursor;
        day.n_metrics = seeded_cursor;
        day.n_metrics_lagged = lagged_cursor;

        for (const DayGroup& group : day_groups[di]) {
            ComboState& state = combos[group.combo];
            const auto& obs = state.series->observations;
            const bool acc = state.series->kind == MetricKind::accuracy_like;
            const bool prefer_min = !acc && !options.strict_formula;

            double day_best = obs[group.begin].value;
            for (std::size_t k = group.begin + 1; k < group.end; ++k) {
                day_best = prefer_min ? std::min(day_best, obs[k].value)
                                      : std::max(day_best, obs[k].value);
            }

            ComboDayStat stat;
            stat.combo = group.combo;
            stat.weight = static_cast<double>(state.entries_seen + (group.end - group.begin));
            if (!state.seeded) {
                stat.z = 0.0; // first entry seeds the best, no prior to rate against
            } else if (state.best <= 0.0) {
                stat.excluded = true;
                ++scan.excluded_rate_days;
            } else {
                stat.z = improvement_rate(day_best, state.best, state.series->kind);
            }
            if (!stat.excluded && stat.z > 0.0) ++day.improver_count;
            day.stats.push_back(stat);

            // Close of day: fold today's entries into the running state.
            state.entries_seen += group.end - group.begin;
            if (!state.seeded) {
                state.best = day_best;
                state.seeded = true;
            } else {
                state.best = prefer_min ? std::min(state.best, day_best)
                                        : std::max(state.best, day_best);
            }
        }
    }
    return scan;
}

double daily_delta(const DayRecord& day, IndexVariant variant, bool* renewing_fell_back) {
    if (variant == IndexVariant::n_metrics) {
        throw NumericError("n_metrics is a count series, not a cumulative delta");
    }
    if (day.improver_count == 0) return 0.0;

    double sum_z = 0.0, sum_zw = 0.0, improver_weight = 0.0;
    for (const ComboDayStat& s : day.stats) {
        if (s.excluded) continue;
        sum_z += s.z;
        sum_zw += s.z * s.weight;
        if (s.z > 0.0) improver_weight += s.weight;
    }
    const double improvers = static_cast<double>(day.improver_count);
    const double ew = sum_z / improvers;
    const double aw = sum_zw / improver_weight;

    switch (variant) {
        case IndexVariant::ew: return ew;
        case IndexVariant::aw: return aw;
        default: break;
    }

    const double included = static_cast<double>(day.n_metrics);
    if (variant == IndexVariant::ewe) return ew * improvers / included;
    if (variant == IndexVariant::awe) return aw * improvers / included;

    double window = static_cast<double>(day.n_metrics - day.n_metrics_lagged);
    if (window == 0.0) {
        // Improvers exist but nothing was included inside the window; renew
        // against everything included instead of dividing by zero.
        window = included;
        if (renewing_fell_back) *renewing_fell_back = true;
    }
    if (variant == IndexVariant::ewr) return ew * improvers / window;
    return aw * improvers / window; // awr
}

IndexSeries accumulate(const std::vector<double>& deltas, Date start, IndexVariant variant) {
    IndexSeries series;
    series.variant = variant;
    series.start = start;
    series.values.reserve(deltas.size());
    double level = 1.0;
    for (double d : deltas) {
        level *= 1.0 + d;
        series.values.push_back(level);
    }
    return series;
}

const IndexSeries& IndexSet::by_variant(IndexVariant v) const {
    switch (v) {
        case IndexVariant::n_metrics: return n_metrics;
        case IndexVariant::ew: return ew;
        case IndexVariant::aw: return aw;
        case IndexVariant::ewe: return ewe;
        case IndexVariant::awe: return awe;
        case IndexVariant::ewr: return ewr;
        case IndexVariant::awr: return awr;
    }
    return ew;
}

IndexSet compute_indices(const DailyScan& scan) {
    IndexSet set;
    constexpr IndexVariant cumulative[kCumulativeVariants] = {
        IndexVariant::ew,  IndexVariant::aw,  IndexVariant::ewe,
        IndexVariant::awe, IndexVariant::ewr, IndexVariant::awr};

    std::vector<std::vector<double>> deltas(kCumulativeVariants);
    for (auto& d : deltas) d.reserve(scan.days.size());

    set.n_metrics.variant = IndexVariant::n_metrics;
    set.n_metrics.start = scan.start;
    set.n_metrics.values.reserve(scan.days.size());

    for (const DayRecord& day : scan.days) {
        set.n_metrics.values.push_back(static_cast<double>(day.n_metrics));
        bool fell_back = false;
        for (std::size_t v = 0; v < kCumulativeVariants; ++v) {
            deltas[v].push_back(daily_delta(day, cumulative[v], &fell_back));
        }
        if (fell_back) ++set.renewing_fallback_days;
    }

    set.ew = accumulate(deltas[0], scan.start, IndexVariant::ew);
    set.aw = accumulate(deltas[1], scan.start, IndexVariant::aw);
    set.ewe = accumulate(deltas[2], scan.start, IndexVariant::ewe);
    set.awe = accumulate(deltas[3], scan.start, IndexVariant::awe);
    set.ewr = accumulate(deltas[4], scan.start, IndexVariant::ewr);
    set.awr = accumulate(deltas[5], scan.start, IndexVariant::awr);
    return set;
}

std::size_t metrics_count(const BenchmarkCorpus& corpus, const Date& t) {
    std::size_t n = 0;
    for (const auto& [_, series] : corpus.series) {
        if (!series.observations.empty() && series.observations.front().date <= t) ++n;
    }
    return n;
}

AsotaSeries finalize_asota(const IndexSeries& awr, const IndexSeries& n_metrics, int threshold) {
    if (awr.empty() || n_metrics.empty() || awr.start != n_metrics.start ||
        awr.values.size() != n_metrics.values.size()) {
        throw NumericError("AWR and metric-count series must share a non-empty grid");
    }
    std::size_t base = n_metrics.values.size();
    for (std::size_t i = 0; i < n_metrics.values.size(); ++i) {
        if (n_metrics.values[i] >= static_cast<double>(threshold)) {
            base = i;
            break;
        }
    }
    if (base == n_metrics.values.size()) {
        throw NumericError("metric count never reaches the standardization threshold of " +
                           std::to_string(threshold));
    }
    const double ln_base = std::log(awr.values[base]);
    if (ln_base <= 0.0) {
        throw NumericError("normalization undefined: no improvements before the base date " +
                           awr.date_at(base).iso());
    }

    AsotaSeries out;
    out.start = awr.start;
    out.base_date = awr.date_at(base);
    out.values.reserve(awr.values.size());
    for (std::size_t i = 0; i < awr.values.size(); ++i) {
        out.values.push_back(i == base ? 1.0 : std::log(awr.values[i]) / ln_base);
    }
    return out;
}

} // namespace asota::index_engine
