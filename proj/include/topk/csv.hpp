#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace topk {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

/// Header plus rows, LF line endings. Fields containing ',', '"', CR or LF are quoted with
/// embedded quotes doubled. Throws DomainError if a row's width differs from the header's.
std::string to_csv(const CsvTable& table);

/// Inverse of to_csv; the first record is the header.
CsvTable parse_csv(std::string_view text);

void write_csv(const CsvTable& table, std::ostream& out);
/// Writes to a sibling temporary file and renames it into place, so a failure never leaves a
/// partial file at `path`. Throws std::runtime_error on I/O failure.
void write_csv(const CsvTable& table, const std::filesystem::path& path);

/// Writes `content` via a sibling temporary file renamed into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Fixed-point with `decimals` digits after the point ("0.7250").
std::string format_fixed(double value, int decimals);

}  // namespace topk
