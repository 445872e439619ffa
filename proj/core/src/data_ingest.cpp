#include "cvrisk/data_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <tuple>

#include "cvrisk/decimal_format.hpp"
#include "cvrisk/errors.hpp"

namespace cvrisk {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

template <typename T>
T parse_number(std::string_view text, const char* column, std::size_t line) {
    T value{};
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ParseError("column '" + std::string(column) + "': cannot parse '" +
                             std::string(text) + "'",
                         line);
    }
    return value;
}

}  // namespace

RawPriceTable parse_price_table(std::istream& in) {
    RawPriceTable table;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) {
        throw ParseError("empty input: missing header", 1);
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // Tolerate a UTF-8 byte order mark.
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line == "id,year,month,close,factor") {
        table.has_factor_column = true;
    } else if (line != "id,year,month,close") {
        throw ParseError("header must be 'id,year,month,close[,factor]', got '" + line + "'", 1);
    }
    const std::size_t expected = table.has_factor_column ? 5 : 4;

    std::set<std::tuple<std::string, int, int>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != expected) {
            throw ParseError("expected " + std::to_string(expected) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        RawPriceRow row;
        row.line = line_no;
        row.id = std::string(fields[0]);
        if (row.id.empty()) {
            throw ParseError("empty security id", line_no);
        }
        row.month.year = parse_number<int>(fields[1], "year", line_no);
        row.month.month = parse_number<int>(fields[2], "month", line_no);
        if (!row.month.valid()) {
            throw ParseError("month must be 1..12, got " + std::to_string(row.month.month), line_no);
        }
        row.raw_close = parse_number<double>(fields[3], "close", line_no);
        if (table.has_factor_column && !fields[4].empty()) {
            row.factor = parse_number<double>(fields[4], "factor", line_no);
        }
        if (!(row.raw_close > 0.0) || !std::isfinite(row.raw_close)) {
            throw DomainError("line " + std::to_string(line_no) + ": close must be positive");
        }
        if (!(row.factor > 0.0) || !std::isfinite(row.factor)) {
            throw DomainError("line " + std::to_string(line_no) + ": factor must be positive");
        }
        if (!seen.emplace(row.id, row.month.year, row.month.month).second) {
            throw IntegrityError("line " + std::to_string(line_no) + ": duplicate row for " +
                                 row.id + " " + row.month.to_string());
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

RawPriceTable load_price_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'", 0);
    }
    return parse_price_table(in);
}

SeriesMap adjust_prices(const RawPriceTable& table) {
    std::map<std::string, std::vector<PriceObservation>> grouped;
    for (const auto& row : table.rows) {
        grouped[row.id].push_back({row.month, row.raw_close / row.factor});
    }
    SeriesMap out;
    for (auto& [id, obs] : grouped) {
        std::stable_sort(obs.begin(), obs.end(),
                         [](const auto& a, const auto& b) { return a.month < b.month; });
        out.emplace(id, PriceSeries(id, std::move(obs)));
    }
    return out;
}

CompletenessResult filter_complete(const SeriesMap& series, const AnalysisWindow& window) {
    CompletenessResult result;
    for (const auto& [id, s] : series) {
        std::vector<PriceObservation> inside;
        for (const auto& o : s.observations()) {
            if (window.contains(o.month)) {
                inside.push_back(o);
            }
        }
        std::vector<YearMonth> missing;
        std::size_t k = 0;
        for (auto ord = window.start.ordinal(); ord <= window.end.ordinal(); ++ord) {
            if (k < inside.size() && inside[k].month.ordinal() == ord) {
                ++k;
            } else {
                missing.push_back(YearMonth::from_ordinal(ord));
            }
        }
        if (missing.empty()) {
            result.kept.emplace(id, PriceSeries(id, std::move(inside)));
        } else {
            result.dropped.push_back({id, std::move(missing)});
        }
    }
    return result;
}

void write_price_table(std::ostream& out, const SeriesMap& series) {
    out << "id,year,month,close\n";
    for (const auto& [id, s] : series) {
        for (const auto& o : s.observations()) {
            out << id << ',' << o.month.year << ',' << o.month.month << ','
                << format_shortest(o.close) << '\n';
        }
    }
}

}  // namespace cvrisk
