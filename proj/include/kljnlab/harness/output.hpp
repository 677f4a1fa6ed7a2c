#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace kljnlab::harness {

using Cell = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;

/// A named result table with a fixed column set. Rows are written in the
/// order they were appended; producers append in deterministic key order.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Throws std::logic_error if the row width does not match.
    void add(std::vector<Cell> row);
};

enum class Format { Csv, Json };

Format parse_format(const std::string& name);
std::string extension(Format format);

/// Shortest representation that round-trips the double exactly.
std::string format_double(double value);
std::string format_cell(const Cell& cell);

std::string to_csv(const Table& table, bool header = true);
nlohmann::ordered_json to_json(const Table& table);

/// Writes <dir>/<table.name>.<ext>. With `append`, CSV rows are added after
/// the existing ones (the header is written only for a new file) and JSON
/// rows are appended to the existing array. The column set must match.
std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir, Format format,
                                  bool append = false);

}  // namespace kljnlab::harness
