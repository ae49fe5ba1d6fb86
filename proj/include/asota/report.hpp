#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asota/manifest.hpp"

namespace asota::report {

enum class Command { ingest, index, inputs, fit, scaling, all };

Command parse_command(const std::string& name); // throws ManifestError on unknown names

struct RunOptions {
    std::optional<double> phi_ai;
    std::optional<bool> strict_formula;
    std::optional<std::string> out_dir;
    std::ostream* log = nullptr; // informational lines; not part of the bundle
};

struct BundleFile {
    std::string rel_path;
    std::uint64_t checksum = 0;
};

/// Everything a run emitted, with the checksum index that covers it.
struct ReportBundle {
    std::filesystem::path root;
    std::vector<BundleFile> files; // sorted by rel_path; checksums.txt itself excluded
};

std::uint64_t fnv1a64(std::string_view bytes);

/// Executes one pipeline command against the manifest and emits its tables
/// and figures under the output directory. Deterministic: identical
/// manifest and inputs produce byte-identical files.
ReportBundle run(Command command, Manifest& manifest, const RunOptions& options = {});

} // namespace asota::report
