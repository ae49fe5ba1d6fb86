#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "asota/benchmark_ingest.hpp"

namespace testutil {

inline std::filesystem::path fixtures_dir() { return ASOTA_FIXTURES_DIR; }

inline asota::ingest::OrientationTable basic_table() {
    using asota::ingest::MetricKind;
    return {
        {"accuracy", MetricKind::accuracy_like}, {"loss", MetricKind::loss_like},
        {"Top 5 Accuracy", MetricKind::accuracy_like}, {"Score", MetricKind::accuracy_like},
        {"Perplexity", MetricKind::loss_like},
    };
}

inline asota::ingest::IngestResult parse_text(const std::string& text) {
    std::istringstream in(text);
    return asota::ingest::parse_records(in, basic_table());
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline std::string record_line(const std::string& combo, const std::string& date,
                               const std::string& metric, double value, const std::string& id) {
    std::ostringstream out;
    out << "{\"combo_id\":\"" << combo << "\",\"date\":\"" << date << "\",\"metric_name\":\""
        << metric << "\",\"value\":" << value << ",\"entry_id\":\"" << id << "\"}\n";
    return out.str();
}

} // namespace testutil
