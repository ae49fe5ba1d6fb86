#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "asota/errors.hpp"
#include "asota/index_engine.hpp"
#include "index_oracle.hpp"
#include "test_helpers.hpp"

using namespace asota;
using namespace asota::index_engine;
using testutil::parse_text;
using testutil::record_line;

namespace {

BenchmarkCorpus corpus_of(const std::string& text) {
    auto result = parse_text(text);
    REQUIRE(result.rejections.empty());
    return std::move(result.corpus);
}

} // namespace

TEST_CASE("improvement rate formulas") {
    CHECK(improvement_rate(0.88, 0.80, MetricKind::accuracy_like) == doctest::Approx(0.10).epsilon(1e-12));
    CHECK(improvement_rate(0.80, 0.80, MetricKind::accuracy_like) == 0.0);
    CHECK(improvement_rate(0.40, 0.50, MetricKind::loss_like) == doctest::Approx(0.20).epsilon(1e-12));
    CHECK(improvement_rate(0.70, 0.80, MetricKind::accuracy_like) == 0.0); // clamped regression
    CHECK(improvement_rate(0.90, 0.50, MetricKind::loss_like) == 0.0);
    CHECK_THROWS_AS(improvement_rate(0.5, 0.0, MetricKind::accuracy_like), NumericError);
    CHECK_THROWS_AS(improvement_rate(0.5, -1.0, MetricKind::loss_like), NumericError);
}

TEST_CASE("daily scan: simple improvement and counts") {
    const auto corpus = corpus_of(record_line("c", "2020-01-01", "accuracy", 0.5, "e1") +
                                  record_line("c", "2020-01-03", "accuracy", 0.6, "e2"));
    const auto scan = scan_daily(corpus);
    REQUIRE(scan.days.size() == 3);
    CHECK(scan.days[0].stats.at(0).z == 0.0); // seed day
    CHECK(scan.days[0].n_metrics == 1);
    CHECK(scan.days[1].stats.empty());
    CHECK(scan.days[2].stats.at(0).z == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(scan.days[2].improver_count == 1);
    CHECK(scan.days[2].stats.at(0).weight == 2.0);
}

TEST_CASE("daily scan: a combo that never improves contributes zero") {
    const auto corpus = corpus_of(record_line("c", "2020-01-01", "accuracy", 0.5, "e1") +
                                  record_line("c", "2020-01-05", "accuracy", 0.5, "e2") +
                                  record_line("c", "2020-01-09", "accuracy", 0.4, "e3"));
    const auto scan = scan_daily(corpus);
    for (const auto& day : scan.days) {
        for (const auto& stat : day.stats) CHECK(stat.z == 0.0);
        CHECK(day.improver_count == 0);
    }
}

TEST_CASE("daily scan: within-day pair on the first day seeds the best") {
    const auto corpus = corpus_of(record_line("c", "2020-01-01", "accuracy", 0.5, "e1") +
                                  record_line("c", "2020-01-01", "accuracy", 0.7, "e2") +
                                  record_line("c", "2020-01-02", "accuracy", 0.77, "e3"));
    const auto scan = scan_daily(corpus);
    CHECK(scan.days[0].stats.at(0).z == 0.0);
    CHECK(scan.days[0].stats.at(0).weight == 2.0);
    // Next day rates against the full first day's best of 0.7.
    CHECK(scan.days[1].stats.at(0).z == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("daily deltas for every variant") {
    DayRecord day;
    day.date = Date::from_ymd(2020, 1, 10);
    day.stats = {{0, 0.1, 1.0, false}, {1, 0.3, 3.0, false}};
    day.improver_count = 2;
    day.n_metrics = 4;
    day.n_metrics_lagged = 2;

    CHECK(daily_delta(day, IndexVariant::ew) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(daily_delta(day, IndexVariant::aw) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(daily_delta(day, IndexVariant::ewe) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(daily_delta(day, IndexVariant::awe) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(daily_delta(day, IndexVariant::ewr) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(daily_delta(day, IndexVariant::awr) == doctest::Approx(0.25).epsilon(1e-12));

    DayRecord quiet;
    quiet.improver_count = 0;
    quiet.n_metrics = 4;
    for (auto v : {IndexVariant::ew, IndexVariant::aw, IndexVariant::ewe, IndexVariant::awe,
                   IndexVariant::ewr, IndexVariant::awr}) {
        CHECK(daily_delta(quiet, v) == 0.0);
    }
    CHECK_THROWS_AS(daily_delta(day, IndexVariant::n_metrics), NumericError);
}

TEST_CASE("renewing denominator falls back when the window is empty") {
    DayRecord day;
    day.stats = {{0, 0.2, 1.0, false}};
    day.improver_count = 1;
    day.n_metrics = 2;
    day.n_metrics_lagged = 2; // nothing new within the window
    bool fell_back = false;
    CHECK(daily_delta(day, IndexVariant::ewr, &fell_back) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(fell_back);
}

TEST_CASE("accumulate is a cumulative product with carry-forward") {
    const Date start = Date::from_ymd(2020, 1, 1);
    const auto series = accumulate({0.0, 0.1, 0.0}, start, IndexVariant::ew);
    REQUIRE(series.values.size() == 3);
    CHECK(series.values[0] == 1.0);
    CHECK(series.values[1] == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(series.values[2] == doctest::Approx(1.1).epsilon(1e-12));

    const auto flat = accumulate({0.0, 0.0, 0.0, 0.0}, start, IndexVariant::ew);
    for (double v : flat.values) CHECK(v == 1.0);

    const auto single = accumulate({0.5}, start, IndexVariant::ew);
    CHECK(single.values[0] == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("asota finalization normalizes by the base-date log") {
    const Date start = Date::from_ymd(2009, 1, 1);
    IndexSeries awr;
    awr.variant = IndexVariant::awr;
    awr.start = start;
    awr.values = {std::exp(0.5), std::exp(1.0), std::exp(2.0)};
    IndexSeries counts;
    counts.variant = IndexVariant::n_metrics;
    counts.start = start;
    counts.values = {49.0, 50.0, 52.0};

    const auto asota = finalize_asota(awr, counts, 50);
    CHECK(asota.base_date == start.plus_days(1));
    CHECK(asota.at(asota.base_date) == 1.0); // exact by contract
    CHECK(asota.values[2] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(asota.values[0] == doctest::Approx(0.5).epsilon(1e-12));

    counts.values = {10.0, 20.0, 30.0};
    CHECK_THROWS_AS(finalize_asota(awr, counts, 50), NumericError);

    counts.values = {49.0, 50.0, 52.0};
    awr.values = {1.0, 1.0, 2.0}; // no improvements before base
    CHECK_THROWS_AS(finalize_asota(awr, counts, 50), NumericError);
}

TEST_CASE("metrics count by date") {
    const auto corpus = corpus_of(record_line("a", "2020-01-05", "accuracy", 0.5, "e1") +
                                  record_line("b", "2020-03-01", "loss", 9.0, "e2"));
    CHECK(metrics_count(corpus, Date::from_ymd(2020, 1, 4)) == 0);
    CHECK(metrics_count(corpus, Date::from_ymd(2020, 1, 5)) == 1);
    CHECK(metrics_count(corpus, Date::from_ymd(2021, 1, 1)) == 2);

    const auto scan = scan_daily(corpus);
    for (std::size_t i = 0; i < scan.days.size(); ++i) {
        CHECK(scan.days[i].n_metrics == metrics_count(corpus, scan.days[i].date));
    }
}

TEST_CASE("oracle equivalence on random corpora") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const auto corpus = testutil::random_corpus(rng);
        const auto scan = scan_daily(corpus);
        const auto set = compute_indices(scan);
        const auto oracle = testutil::oracle_indices(corpus);
        REQUIRE(oracle.size() == scan.days.size());
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            CHECK(set.n_metrics.values[i] == oracle[i][0]);
            CHECK(set.ew.values[i] == doctest::Approx(oracle[i][1]).epsilon(1e-12));
            CHECK(set.aw.values[i] == doctest::Approx(oracle[i][2]).epsilon(1e-12));
            CHECK(set.ewe.values[i] == doctest::Approx(oracle[i][3]).epsilon(1e-12));
            CHECK(set.awe.values[i] == doctest::Approx(oracle[i][4]).epsilon(1e-12));
            CHECK(set.ewr.values[i] == doctest::Approx(oracle[i][5]).epsilon(1e-12));
            CHECK(set.awr.values[i] == doctest::Approx(oracle[i][6]).epsilon(1e-12));
        }
    }
}

TEST_CASE("cumulative indices are monotone and expanding <= equal") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto corpus = testutil::random_corpus(rng);
        const auto scan = scan_daily(corpus);
        const auto set = compute_indices(scan);
        for (const auto* s : {&set.ew, &set.aw, &set.ewe, &set.awe, &set.ewr, &set.awr}) {
            for (std::size_t i = 1; i < s->values.size(); ++i) {
                CHECK(s->values[i] >= s->values[i - 1]);
            }
            for (double v : s->values) CHECK(v >= 1.0);
        }
        for (const auto& day : scan.days) {
            CHECK(day.improver_count <= day.n_metrics);
            CHECK(daily_delta(day, IndexVariant::ewe) <=
                  daily_delta(day, IndexVariant::ew) + 1e-15);
        }
    }
}

TEST_CASE("single-combo corpus: equal and activity weighting coincide") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 10; ++trial) {
        const auto corpus = testutil::random_corpus(rng, 1, 60);
        const auto set = compute_indices(scan_daily(corpus));
        for (std::size_t i = 0; i < set.ew.values.size(); ++i) {
            CHECK(set.ew.values[i] == doctest::Approx(set.aw.values[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("same-day input order of different combos does not matter") {
    const std::string a = record_line("x", "2020-01-01", "accuracy", 0.5, "x1");
    const std::string b = record_line("y", "2020-01-01", "accuracy", 0.6, "y1");
    const std::string a2 = record_line("x", "2020-01-07", "accuracy", 0.9, "x2");
    const std::string b2 = record_line("y", "2020-01-07", "accuracy", 0.8, "y2");

    const auto set1 = compute_indices(scan_daily(corpus_of(a + b + a2 + b2)));
    const auto set2 = compute_indices(scan_daily(corpus_of(b2 + a2 + b + a)));
    REQUIRE(set1.awr.values.size() == set2.awr.values.size());
    for (std::size_t i = 0; i < set1.awr.values.size(); ++i) {
        CHECK(set1.awr.values[i] == set2.awr.values[i]);
        CHECK(set1.ewe.values[i] == set2.ewe.values[i]);
    }
}

TEST_CASE("strict formula mode rates loss metrics against the running maximum") {
    // Loss series: 10 -> 6 -> 8. Preferred mode: the 8 is a regression.
    // Strict mode keeps the literal maximum (10) as the reference, so the 8
    // still counts as an improvement.
    const auto corpus = corpus_of(record_line("c", "2020-01-01", "loss", 10.0, "e1") +
                                  record_line("c", "2020-01-03", "loss", 6.0, "e2") +
                                  record_line("c", "2020-01-05", "loss", 8.0, "e3"));
    IndexOptions preferred;
    const auto scan_pref = scan_daily(corpus, preferred);
    CHECK(scan_pref.days[2].stats.at(0).z == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(scan_pref.days[4].stats.at(0).z == 0.0);

    IndexOptions strict;
    strict.strict_formula = true;
    const auto scan_strict = scan_daily(corpus, strict);
    CHECK(scan_strict.days[2].stats.at(0).z == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(scan_strict.days[4].stats.at(0).z == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("non-positive previous best excludes the combo for that day") {
    const auto corpus = corpus_of(record_line("c", "2020-01-01", "accuracy", -1.0, "e1") +
                                  record_line("c", "2020-01-02", "accuracy", 0.5, "e2"));
    const auto scan = scan_daily(corpus);
    CHECK(scan.days[1].stats.at(0).excluded);
    CHECK(scan.days[1].improver_count == 0);
    CHECK(scan.excluded_rate_days == 1);
    CHECK(scan.days[1].n_metrics == 1); // still counted as included
}

TEST_CASE("renewing fallback integrates into the index stream") {
    // Single combo seeded in 2018; its next improvement arrives more than a
    // renewing window later, when no combination is newly included.
    const auto corpus = corpus_of(record_line("c", "2018-01-01", "accuracy", 0.5, "e1") +
                                  record_line("c", "2019-06-01", "accuracy", 0.6, "e2"));
    const auto scan = scan_daily(corpus);
    const auto set = compute_indices(scan);
    CHECK(set.renewing_fallback_days == 1);
    // Fallback divides by N_t = 1, so EWR == EW on that day.
    CHECK(set.ewr.values.back() == doctest::Approx(set.ew.values.back()).epsilon(1e-12));
}
