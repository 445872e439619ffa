#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace cvrisk {

/// Empty cell (`null` in JSON, empty field in CSV).
struct Null {
    friend bool operator==(Null, Null) = default;
};

using Cell = std::variant<Null, std::string, std::int64_t, double, bool>;

/// A rectangular report. Doubles stay at full precision until emission.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class OutputFormat { Csv, Json };

/// CSV: header row then one line per row, doubles rounded half-up to
/// `decimals`. JSON: array of objects keyed by column name, same rounding.
void write_table(std::ostream& out, const Table& table, OutputFormat format, int decimals);

std::string render_table(const Table& table, OutputFormat format, int decimals);

}  // namespace cvrisk
