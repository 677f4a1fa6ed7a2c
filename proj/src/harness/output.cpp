#include "kljnlab/harness/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kljnlab::harness {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("table " + name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                               std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw std::invalid_argument("--format must be csv or json, got " + name);
}

std::string extension(Format format) { return format == Format::Csv ? "csv" : "json"; }

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else {
                return std::to_string(v);
            }
        },
        cell);
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

nlohmann::ordered_json cell_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return format_double(v);
            }
            return v;
        },
        cell);
}

}  // namespace

std::string to_csv(const Table& table, bool header) {
    std::ostringstream os;
    if (header) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            os << (i ? "," : "") << csv_escape(table.columns[i]);
        }
        os << '\n';
    }
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << csv_escape(format_cell(row[i]));
        }
        os << '\n';
    }
    return os.str();
}

nlohmann::ordered_json to_json(const Table& table) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[table.columns[i]] = cell_json(row[i]);
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir, Format format,
                                  bool append) {
    std::filesystem::create_directories(dir);
    const auto path = dir / (table.name + "." + extension(format));
    const bool exists = std::filesystem::exists(path) && std::filesystem::file_size(path) > 0;

    if (format == Format::Csv) {
        if (append && exists) {
            std::ifstream in(path);
            std::string first;
            std::getline(in, first);
            if (first + '\n' != to_csv(Table{table.name, table.columns, {}})) {
                throw std::runtime_error(path.string() + ": existing columns differ, refusing to append");
            }
        }
        std::ofstream out(path, append ? std::ios::app | std::ios::binary : std::ios::trunc | std::ios::binary);
        out << to_csv(table, !(append && exists));
        if (!out) throw std::runtime_error("cannot write " + path.string());
        return path;
    }

    auto rows = to_json(table);
    if (append && exists) {
        std::ifstream in(path);
        auto existing = nlohmann::ordered_json::parse(in);
        if (!existing.is_array()) {
            throw std::runtime_error(path.string() + ": not a JSON array, refusing to append");
        }
        for (auto& r : rows) existing.push_back(std::move(r));
        rows = std::move(existing);
    }
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    out << rows.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return path;
}

}  // namespace kljnlab::harness
