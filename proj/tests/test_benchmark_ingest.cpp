#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "asota/benchmark_ingest.hpp"
#include "asota/errors.hpp"
#include "test_helpers.hpp"

using namespace asota;
using namespace asota::ingest;
using testutil::parse_text;
using testutil::record_line;

TEST_CASE("empty stream yields an empty corpus") {
    const auto result = parse_text("");
    CHECK(result.corpus.series.empty());
    CHECK(result.corpus.counts().combos == 0);
    CHECK(result.rejections.empty());
}

TEST_CASE("shuffled dates come out sorted within a series") {
    std::string text;
    text += record_line("c", "2011-05-02", "accuracy", 0.7, "e1");
    text += record_line("c", "2009-01-15", "accuracy", 0.5, "e2");
    text += record_line("c", "2010-12-31", "accuracy", 0.6, "e3");
    const auto result = parse_text(text);
    REQUIRE(result.corpus.series.size() == 1);
    const auto& obs = result.corpus.series.at("c").observations;
    REQUIRE(obs.size() == 3);
    CHECK(obs[0].date.iso() == "2009-01-15");
    CHECK(obs[1].date.iso() == "2010-12-31");
    CHECK(obs[2].date.iso() == "2011-05-02");
}

TEST_CASE("csv rows and json lines can be mixed; header row is skipped") {
    std::string text = "combo_id,date,metric_name,value,entry_id\n";
    text += "c,2020-01-01,accuracy,0.5,e1\n";
    text += record_line("c", "2020-02-01", "accuracy", 0.6, "e2");
    const auto result = parse_text(text);
    CHECK(result.rejections.empty());
    CHECK(result.corpus.series.at("c").observations.size() == 2);
}

TEST_CASE("metric classification") {
    const auto table = testutil::basic_table();
    CHECK(classify_metric("Top 5 Accuracy", table) == MetricKind::accuracy_like);
    CHECK(classify_metric("Perplexity", table) == MetricKind::loss_like);
    CHECK_FALSE(classify_metric("FooScore", table).has_value());

    // Unmapped names reject the record without aborting the parse.
    std::string text;
    text += record_line("c", "2020-01-01", "FooScore", 1.0, "e1");
    text += record_line("c", "2020-01-02", "accuracy", 1.0, "e2");
    const auto result = parse_text(text);
    REQUIRE(result.rejections.size() == 1);
    CHECK(result.rejections[0].line_no == 1);
    CHECK(result.corpus.counts().entries == 1);
}

TEST_CASE("malformed lines are rejected with their line numbers") {
    std::string text;
    text += record_line("c", "2020-01-01", "accuracy", 0.5, "e1");
    text += "{not json\n";
    text += "a,b\n";
    text += record_line("c", "2020-13-40", "accuracy", 0.5, "e2");
    text += record_line("c", "2020-01-02", "accuracy", 0.6, "e3");
    const auto result = parse_text(text);
    REQUIRE(result.rejections.size() == 3);
    CHECK(result.rejections[0].line_no == 2);
    CHECK(result.rejections[1].line_no == 3);
    CHECK(result.rejections[2].line_no == 4);
    CHECK(result.corpus.counts().entries == 2);
}

TEST_CASE("non-finite values are rejected") {
    std::istringstream in(
        "{\"combo_id\":\"c\",\"date\":\"2020-01-01\",\"metric_name\":\"accuracy\","
        "\"value\":1e999,\"entry_id\":\"e1\"}\n"
        "c,2020-01-02,accuracy,nan,e2\n");
    const auto result = parse_records(in, testutil::basic_table());
    CHECK(result.corpus.counts().entries == 0);
    CHECK(result.rejections.size() == 2);
}

TEST_CASE("duplicate entry ids are dropped, duplicate values are kept") {
    std::string text;
    text += record_line("c", "2020-01-01", "accuracy", 0.5, "e1");
    text += record_line("c", "2020-01-01", "accuracy", 0.5, "e1"); // resubmission
    text += record_line("c", "2020-01-01", "accuracy", 0.5, "e2"); // new entry, same triple
    const auto result = parse_text(text);
    CHECK(result.corpus.counts().entries == 2);
    REQUIRE(result.rejections.size() == 1);
    CHECK(result.rejections[0].reason.find("duplicate entry_id") != std::string::npos);

    const auto report = validate_corpus(result.corpus);
    CHECK(report.duplicate_triples == 1);
}

TEST_CASE("validation buckets and reach date") {
    std::string text;
    for (int i = 0; i < 12; ++i) {
        text += record_line("big", "2020-01-" + std::string(i < 9 ? "0" : "") + std::to_string(i + 1),
                            "accuracy", 0.5, "b" + std::to_string(i));
    }
    text += record_line("small", "2021-03-04", "accuracy", 0.9, "s1");
    const auto result = parse_text(text);
    const auto report = validate_corpus(result.corpus, 2);
    CHECK(report.counts.combos == 2);
    CHECK(report.buckets.at("10+") == 1);
    CHECK(report.buckets.at("1") == 1);
    CHECK(report.counts.with_ten_plus == 1);
    REQUIRE(report.reach_date.has_value());
    CHECK(report.reach_date->iso() == "2021-03-04");
    REQUIRE(report.first_date.has_value());
    CHECK(report.first_date->iso() == "2020-01-01");
    CHECK(report.last_date->iso() == "2021-03-04");
}

TEST_CASE("first improvement respects metric orientation") {
    std::string text;
    text += record_line("acc", "2020-01-01", "accuracy", 0.5, "a1");
    text += record_line("acc", "2020-02-01", "accuracy", 0.4, "a2"); // regression
    text += record_line("lss", "2020-01-01", "loss", 10.0, "l1");
    text += record_line("lss", "2020-03-01", "loss", 8.0, "l2"); // improvement
    const auto report = validate_corpus(parse_text(text).corpus);
    REQUIRE(report.first_improvement.has_value());
    CHECK(report.first_improvement->iso() == "2020-03-01");
}

TEST_CASE("kind conflict for one combo rejects the later record") {
    std::string text;
    text += record_line("c", "2020-01-01", "accuracy", 0.5, "e1");
    text += record_line("c", "2020-01-02", "Perplexity", 80.0, "e2");
    const auto result = parse_text(text);
    CHECK(result.corpus.counts().entries == 1);
    REQUIRE(result.rejections.size() == 1);
}

TEST_CASE("unreadable stream is fatal") {
    CHECK_THROWS_AS(parse_records_file("/nonexistent/dump.jsonl", testutil::basic_table()),
                    DataError);
}

TEST_CASE("round trip: parse(serialize(corpus)) is a fixed point") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        std::string text;
        const int combos = 1 + static_cast<int>(rng() % 6);
        int id = 0;
        for (int c = 0; c < combos; ++c) {
            const std::string combo = "combo-" + std::to_string(c);
            const bool loss = rng() % 4 == 0;
            const int entries = 1 + static_cast<int>(rng() % 8);
            for (int e = 0; e < entries; ++e) {
                const int day = 1 + static_cast<int>(rng() % 27);
                const int month = 1 + static_cast<int>(rng() % 12);
                char date[16];
                std::snprintf(date, sizeof(date), "20%02d-%02d-%02d",
                              10 + static_cast<int>(rng() % 10), month, day);
                const double value =
                    0.01 + static_cast<double>(rng() % 10000) / (loss ? 13.0 : 10007.0);
                text += record_line(combo, date, loss ? "loss" : "accuracy", value,
                                    "e" + std::to_string(id++));
            }
        }
        const auto first = parse_text(text);
        REQUIRE(first.rejections.empty());
        const auto second = parse_text(serialize_corpus(first.corpus));
        REQUIRE(second.rejections.empty());
        CHECK(first.corpus == second.corpus);

        // Counts always agree with a brute-force recount.
        const auto counts = first.corpus.counts();
        std::size_t combos_seen = 0, ten_plus = 0, entries = 0;
        for (const auto& [_, s] : first.corpus.series) {
            ++combos_seen;
            entries += s.observations.size();
            if (s.observations.size() >= 10) ++ten_plus;
        }
        CHECK(counts.combos == combos_seen);
        CHECK(counts.with_ten_plus == ten_plus);
        CHECK(counts.entries == entries);
    }
}

TEST_CASE("bundled orientation table covers the canonical tokens") {
    const auto table = load_orientation_table(testutil::fixtures_dir() / "metric_orientation.csv");
    CHECK(classify_metric("accuracy", table) == MetricKind::accuracy_like);
    CHECK(classify_metric("loss", table) == MetricKind::loss_like);
    CHECK(classify_metric("Top 5 Accuracy", table) == MetricKind::accuracy_like);
    CHECK(classify_metric("Perplexity", table) == MetricKind::loss_like);
}
