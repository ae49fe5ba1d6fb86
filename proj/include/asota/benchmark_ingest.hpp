#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asota/dates.hpp"

namespace asota::ingest {

enum class MetricKind { accuracy_like, loss_like };

const char* kind_token(MetricKind k); // "accuracy" / "loss"

/// One leaderboard entry for a task-dataset combination.
struct MetricObservation {
    std::string combo_id;
    Date date;
    double value = 0.0; // finite by parse contract
    MetricKind kind = MetricKind::accuracy_like;
    std::string entry_id;
};

/// All entries for one combination, sorted by date; entries sharing a day
/// keep their input order.
struct MetricSeries {
    std::string combo_id;
    MetricKind kind = MetricKind::accuracy_like;
    std::vector<MetricObservation> observations;
};

struct CorpusCounts {
    std::size_t combos = 0;          // series with at least one entry
    std::size_t with_ten_plus = 0;   // series with >= 10 entries
    std::size_t entries = 0;
};

struct BenchmarkCorpus {
    std::map<std::string, MetricSeries> series;

    CorpusCounts counts() const;
    bool operator==(const BenchmarkCorpus&) const;
};

struct Rejection {
    std::size_t line_no = 0;
    std::string reason;
};

struct IngestResult {
    BenchmarkCorpus corpus;
    std::vector<Rejection> rejections;
};

/// metric_name -> orientation, loaded from a two-column CSV.
using OrientationTable = std::map<std::string, MetricKind>;

OrientationTable load_orientation_table(const std::filesystem::path& path);

/// Pure lookup; nullopt means the name is unmapped and the record must be
/// rejected by the caller.
std::optional<MetricKind> classify_metric(const std::string& name, const OrientationTable& table);

/// Parses line-delimited records (flat JSON objects or 5-field CSV rows:
/// combo_id, date, metric_name, value, entry_id). Malformed lines land in
/// the rejection list with their 1-based line number; a repeated
/// (combo, entry_id) pair is dropped as a resubmission. Repeated
/// (combo, date, value) triples with fresh entry ids are kept: activity
/// weights count entries, not distinct values.
IngestResult parse_records(std::istream& stream, const OrientationTable& table);

/// Throws DataError when the file cannot be opened.
IngestResult parse_records_file(const std::filesystem::path& path, const OrientationTable& table);

/// Canonical JSONL form; metric_name carries the orientation token, so a
/// table that maps the tokens to themselves makes parse(serialize(c)) == c.
std::string serialize_corpus(const BenchmarkCorpus& corpus);

struct ValidationReport {
    CorpusCounts counts;
    // entry-count buckets, keyed "1", "2-4", "5-9", "10+"
    std::map<std::string, std::size_t> buckets;
    std::optional<Date> first_date;
    std::optional<Date> last_date;
    std::optional<Date> first_improvement; // day-aggregated running-best semantics
    std::optional<Date> reach_date;        // first date with >= reach_threshold combos seeded
    std::size_t reach_threshold = 50;
    std::size_t duplicate_triples = 0;     // extra (combo, date, value) repeats
};

ValidationReport validate_corpus(const BenchmarkCorpus& corpus, std::size_t reach_threshold = 50);

void write_rejections_csv(const std::filesystem::path& path, const std::vector<Rejection>& rejections);
void write_validation_csv(const std::filesystem::path& path, const ValidationReport& report);

} // namespace asota::ingest
