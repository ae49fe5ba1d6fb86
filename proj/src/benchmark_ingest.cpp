#include "asota/benchmark_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "asota/csv.hpp"
#include "asota/errors.hpp"

namespace asota::ingest {

const char* kind_token(MetricKind k) {
    return k == MetricKind::accuracy_like ? "accuracy" : "loss";
}

CorpusCounts BenchmarkCorpus::counts() const {
    CorpusCounts c;
    for (const auto& [_, s] : series) {
        if (s.observations.empty()) continue;
        ++c.combos;
        if (s.observations.size() >= 10) ++c.with_ten_plus;
        c.entries += s.observations.size();
    }
    return c;
}

bool BenchmarkCorpus::operator==(const BenchmarkCorpus& other) const {
    if (series.size() != other.series.size()) return false;
    for (auto it = series.begin(), jt = other.series.begin(); it != series.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        const MetricSeries& a = it->second;
        const MetricSeries& b = jt->second;
        if (a.kind != b.kind || a.observations.size() != b.observations.size()) return false;
        for (std::size_t i = 0; i < a.observations.size(); ++i) {
            const auto& x = a.observations[i];
            const auto& y = b.observations[i];
            if (x.date != y.date || x.value != y.value || x.entry_id != y.entry_id) return false;
        }
    }
    return true;
}

OrientationTable load_orientation_table(const std::filesystem::path& path) {
    const csv::Table table = csv::read_table(path);
    OrientationTable out;
    for (const auto& row : table.rows) {
        if (row.size() < 2) throw DataError("orientation table row needs two columns: " + path.string());
        const std::string& kind = row[1];
        if (kind == "accuracy") {
            out[row[0]] = MetricKind::accuracy_like;
        } else if (kind == "loss") {
            out[row[0]] = MetricKind::loss_like;
        } else {
            throw DataError("unknown orientation token '" + kind + "' in " + path.string());
        }
    }
    return out;
}

std::optional<MetricKind> classify_metric(const std::string& name, const OrientationTable& table) {
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

namespace {

struct RawRecord {
    std::string combo_id;
    std::string date;
    std::string metric_name;
    double value = 0.0;
    std::string entry_id;
};

// Returns false with `reason` set when the line cannot be decoded.
bool decode_line(const std::string& line, RawRecord& rec, std::string& reason) {
    if (!line.empty() && line.front() == '{') {
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            reason = "invalid JSON object";
            return false;
        }
        for (const char* field : {"combo_id", "date", "metric_name", "entry_id"}) {
            if (!j.contains(field) || !j[field].is_string()) {
                reason = std::string("missing or non-string field '") + field + "'";
                return false;
            }
        }
        if (!j.contains("value") || !j["value"].is_number()) {
            reason = "missing or non-numeric field 'value'";
            return false;
        }
        rec.combo_id = j["combo_id"].get<std::string>();
        rec.date = j["date"].get<std::string>();
        rec.metric_name = j["metric_name"].get<std::string>();
        rec.value = j["value"].get<double>();
        rec.entry_id = j["entry_id"].get<std::string>();
        return true;
    }
    const auto fields = csv::split_fields(line);
    if (fields.size() != 5) {
        reason = "expected 5 CSV fields, got " + std::to_string(fields.size());
        return false;
    }
    if (!csv::parse_double(fields[3], rec.value)) {
        reason = "unparsable value '" + fields[3] + "'";
        return false;
    }
    rec.combo_id = fields[0];
    rec.date = fields[1];
    rec.metric_name = fields[2];
    rec.entry_id = fields[4];
    return true;
}

} // namespace

IngestResult parse_records(std::istream& stream, const OrientationTable& table) {
    if (!stream) throw DataError("unreadable record stream");

    IngestResult result;
    // (combo, entry_id) pairs already accepted; repeats are resubmissions.
    std::set<std::pair<std::string, std::string>> seen_entries;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;

    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (csv::trim(line).empty()) continue;

        RawRecord rec;
        std::string reason;
        if (!decode_line(line, rec, reason)) {
            // A single leading header row is schema decoration, not data.
            if (!saw_header && line.rfind("combo_id", 0) == 0) {
                saw_header = true;
                continue;
            }
            result.rejections.push_back({line_no, reason});
            continue;
        }
        if (rec.combo_id.empty()) {
            result.rejections.push_back({line_no, "empty combo_id"});
            continue;
        }
        const auto date = Date::parse_iso(rec.date);
        if (!date) {
            result.rejections.push_back({line_no, "invalid date '" + rec.date + "'"});
            continue;
        }
        if (!std::isfinite(rec.value)) {
            result.rejections.push_back({line_no, "non-finite value"});
            continue;
        }
        const auto kind = classify_metric(rec.metric_name, table);
        if (!kind) {
            result.rejections.push_back({line_no, "unmapped metric '" + rec.metric_name + "'"});
            continue;
        }
        if (!seen_entries.emplace(rec.combo_id, rec.entry_id).second) {
            result.rejections.push_back({line_no, "duplicate entry_id '" + rec.entry_id + "'"});
            continue;
        }

        MetricSeries& series = result.corpus.series[rec.combo_id];
        if (series.observations.empty()) {
            series.combo_id = rec.combo_id;
            series.kind = *kind;
        } else if (series.kind != *kind) {
            result.rejections.push_back({line_no, "metric kind conflicts with earlier entries for '" +
                                                       rec.combo_id + "'"});
            continue;
        }
        series.observations.push_back(
            {rec.combo_id, *date, rec.value, *kind, std::move(rec.entry_id)});
    }

    for (auto& [_, series] : result.corpus.series) {
        std::stable_sort(series.observations.begin(), series.observations.end(),
                         [](const MetricObservation& a, const MetricObservation& b) {
                             return a.date < b.date;
                         });
    }
    return result;
}

IngestResult parse_records_file(const std::filesystem::path& path, const OrientationTable& table) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open benchmark dump: " + path.string());
    return parse_records(in, table);
}

std::string serialize_corpus(const BenchmarkCorpus& corpus) {
    std::ostringstream out;
    for (const auto& [_, series] : corpus.series) {
        for (const auto& obs : series.observations) {
            out << "{\"combo_id\":" << nlohmann::json(obs.combo_id).dump()
                << ",\"date\":\"" << obs.date.iso() << "\""
                << ",\"metric_name\":\"" << kind_token(obs.kind) << "\""
                << ",\"value\":" << csv::format_double(obs.value)
                << ",\"entry_id\":" << nlohmann::json(obs.entry_id).dump() << "}\n";
        }
    }
    return out.str();
}

ValidationReport validate_corpus(const BenchmarkCorpus& corpus, std::size_t reach_threshold) {
    ValidationReport report;
    report.reach_threshold = reach_threshold;
    report.counts = corpus.counts();
    report.buckets = {{"1", 0}, {"2-4", 0}, {"5-9", 0}, {"10+", 0}};

    std::vector<Date> first_dates;
    first_dates.reserve(corpus.series.size());

    for (const auto& [_, series] : corpus.series) {
        const std::size_t n = series.observations.size();
        if (n == 0) continue;
        if (n == 1) ++report.buckets["1"];
        else if (n <= 4) ++report.buckets["2-4"];
        else if (n <= 9) ++report.buckets["5-9"];
        else ++report.buckets["10+"];

        first_dates.push_back(series.observations.front().date);
        const Date last = series.observations.back().date;
        if (!report.first_date || first_dates.back() < *report.first_date)
            report.first_date = first_dates.back();
        if (!report.last_date || last > *report.last_date) report.last_date = last;

        // Duplicate (combo, date, value) triples beyond the first occurrence.
        std::map<std::pair<long, double>, std::size_t> triples;
        for (const auto& obs : series.observations) ++triples[{obs.date.serial(), obs.value}];
        for (const auto& [_, count] : triples)
            if (count > 1) report.duplicate_triples += count - 1;

        // First day whose aggregate beats the running best (seed day excluded).
        const bool acc = series.kind == MetricKind::accuracy_like;
        std::size_t i = 0;
        double best = 0.0;
        bool seeded = false;
        while (i < series.observations.size()) {
            const Date day = series.observations[i].date;
            double day_best = series.observations[i].value;
            while (i + 1 < series.observations.size() && series.observations[i + 1].date == day) {
                ++i;
                const double v = series.observations[i].value;
                day_best = acc ? std::max(day_best, v) : std::min(day_best, v);
            }
            ++i;
            if (!seeded) {
                best = day_best;
                seeded = true;
                continue;
            }
            const bool improved = acc ? day_best > best : day_best < best;
            if (improved && (!report.first_improvement || day < *report.first_improvement)) {
                report.first_improvement = day;
            }
            best = acc ? std::max(best, day_best) : std::min(best, day_best);
        }
    }

    std::sort(first_dates.begin(), first_dates.end());
    if (first_dates.size() >= reach_threshold && reach_threshold > 0) {
        report.reach_date = first_dates[reach_threshold - 1];
    }
    return report;
}

void write_rejections_csv(const std::filesystem::path& path, const std::vector<Rejection>& rejections) {
    std::vector<std::string> lines;
    lines.reserve(rejections.size() + 1);
    lines.push_back("line_no,reason");
    for (const auto& r : rejections) {
        std::string reason = r.reason;
        for (char& c : reason)
            if (c == ',') c = ';';
        lines.push_back(std::to_string(r.line_no) + "," + reason);
    }
    csv::write_lines(path, lines);
}

void write_validation_csv(const std::filesystem::path& path, const ValidationReport& report) {
    std::vector<std::string> lines;
    lines.push_back("key,value");
    lines.push_back("combos," + std::to_string(report.counts.combos));
    lines.push_back("combos_ten_plus," + std::to_string(report.counts.with_ten_plus));
    lines.push_back("entries," + std::to_string(report.counts.entries));
    for (const auto& [bucket, count] : report.buckets)
        lines.push_back("bucket_" + bucket + "," + std::to_string(count));
    lines.push_back("first_date," + (report.first_date ? report.first_date->iso() : ""));
    lines.push_back("last_date," + (report.last_date ? report.last_date->iso() : ""));
    lines.push_back("first_improvement," +
                    (report.first_improvement ? report.first_improvement->iso() : ""));
    lines.push_back("reach_" + std::to_string(report.reach_threshold) + "_date," +
                    (report.reach_date ? report.reach_date->iso() : ""));
    lines.push_back("duplicate_triples," + std::to_string(report.duplicate_triples));
    csv::write_lines(path, lines);
}

} // namespace asota::ingest
