#include "cvrisk/table.hpp"

#include <ostream>
#include <sstream>

#include "cvrisk/decimal_format.hpp"
#include "json.hpp"

namespace cvrisk {
namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct CsvCell {
    int decimals;
    std::string operator()(Null) const { return {}; }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_half_up(v, decimals); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
};

struct JsonCell {
    int decimals;
    nlohmann::ordered_json operator()(Null) const { return nullptr; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const { return round_half_up(v, decimals); }
    nlohmann::ordered_json operator()(bool v) const { return v; }
};

}  // namespace

void write_table(std::ostream& out, const Table& table, OutputFormat format, int decimals) {
    if (format == OutputFormat::Csv) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << csv_escape(table.columns[c]);
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << std::visit(CsvCell{decimals}, row[c]);
            }
            out << '\n';
        }
        return;
    }

    auto doc = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
            obj[table.columns[c]] = std::visit(JsonCell{decimals}, row[c]);
        }
        doc.push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

std::string render_table(const Table& table, OutputFormat format, int decimals) {
    std::ostringstream os;
    write_table(os, table, format, decimals);
    return os.str();
}

}  // namespace cvrisk
