#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "asota/benchmark_ingest.hpp"
#include "asota/dates.hpp"

namespace asota::index_engine {

using ingest::BenchmarkCorpus;
using ingest::MetricKind;

enum class IndexVariant { n_metrics, ew, aw, ewe, awe, ewr, awr };

const char* variant_name(IndexVariant v);
constexpr std::size_t kCumulativeVariants = 6;

struct IndexOptions {
    /// Literal-formula audit mode: loss-like running best uses the maximum,
    /// as printed, instead of the state-of-the-art minimum.
    bool strict_formula = false;
    int renewing_window_days = 365;
    int asota_threshold = 50;
};

/// Clamped improvement rate of `value` against the previous best.
/// Raw form: value/best - 1 for accuracy-like, 1 - value/best for
/// loss-like; regressions contribute zero. Throws NumericError when
/// best_prev <= 0 (rate undefined).
double improvement_rate(double value, double best_prev, MetricKind kind);

struct ComboDayStat {
    std::size_t combo = 0;   // position in DailyScan::combo_ids
    double z = 0.0;          // clamped improvement rate; 0 when excluded
    double weight = 0.0;     // entries recorded through end of this day
    bool excluded = false;   // undefined rate (previous best <= 0)
};

struct DayRecord {
    Date date;
    std::vector<ComboDayStat> stats; // combos with entries this day, id order
    std::size_t improver_count = 0;
    std::size_t n_metrics = 0;         // combos seeded on or before this day
    std::size_t n_metrics_lagged = 0;  // same, one renewing window earlier
};

struct DailyScan {
    Date start;
    std::vector<DayRecord> days; // contiguous daily grid
    std::vector<std::string> combo_ids;
    std::size_t excluded_rate_days = 0;
    bool empty() const { return days.empty(); }
};

/// One pass over the corpus producing per-day improvement statistics.
/// Running bests update after each day closes: every entry on day t is
/// rated against the best through day t-1, and a combo's first day seeds
/// the best with rate zero.
DailyScan scan_daily(const BenchmarkCorpus& corpus, const IndexOptions& options = {});

/// Day increment for one cumulative variant. Zero when nobody improved.
/// When the renewing window holds no newly included combos but improvers
/// exist, the denominator falls back to all included combos and
/// `renewing_fell_back` (if given) is set.
double daily_delta(const DayRecord& day, IndexVariant variant, bool* renewing_fell_back = nullptr);

struct IndexSeries {
    IndexVariant variant = IndexVariant::ew;
    Date start;
    std::vector<double> values; // contiguous daily grid

    bool empty() const { return values.empty(); }
    Date date_at(std::size_t i) const { return start.plus_days(static_cast<long>(i)); }
    double at(const Date& d) const { return values.at(static_cast<std::size_t>(d - start)); }
};

/// Cumulative product of (1 + delta) over the grid; carry-forward is
/// implied by zero deltas.
IndexSeries accumulate(const std::vector<double>& deltas, Date start, IndexVariant variant);

struct IndexSet {
    IndexSeries n_metrics; // raw count series, not cumulative
    IndexSeries ew, aw, ewe, awe, ewr, awr;
    std::size_t renewing_fallback_days = 0;

    const IndexSeries& by_variant(IndexVariant v) const;
};

IndexSet compute_indices(const DailyScan& scan);

/// Combos with at least one entry dated on or before t.
std::size_t metrics_count(const BenchmarkCorpus& corpus, const Date& t);

struct AsotaSeries {
    Date start;
    std::vector<double> values;
    Date base_date; // first grid date with n_metrics >= threshold

    double at(const Date& d) const { return values.at(static_cast<std::size_t>(d - start)); }
};

/// ln(AWR_t) / ln(AWR_base); equals 1 at the base date by construction.
/// Throws NumericError when no date reaches the threshold or when the
/// base value is 1 (no improvements before base, normalization undefined).
AsotaSeries finalize_asota(const IndexSeries& awr, const IndexSeries& n_metrics, int threshold = 50);

} // namespace asota::index_engine
