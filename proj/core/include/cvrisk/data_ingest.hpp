#pragma once

/**
 * @file data_ingest.hpp
 * @brief Monthly price tables in long CSV form.
 *
 * Format: UTF-8, comma separated, header exactly `id,year,month,close` or
 * `id,year,month,close,factor`. One row per security and month. `factor` is
 * the cumulative price adjustment factor (CRSP CFACPR style); absent or
 * empty means 1. Adjusted close = close / factor.
 */

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cvrisk/calendar.hpp"
#include "cvrisk/returns_engine.hpp"

namespace cvrisk {

struct RawPriceRow {
    std::string id;
    YearMonth month;
    double raw_close = 0.0;
    double factor = 1.0;
    std::size_t line = 0;  ///< source line, 1-based
};

struct RawPriceTable {
    std::vector<RawPriceRow> rows;
    bool has_factor_column = false;
};

using SeriesMap = std::map<std::string, PriceSeries>;

/// Throws ParseError (with line number) for malformed rows or headers,
/// IntegrityError for a repeated (id, year, month) and DomainError for a
/// non-positive close or factor.
RawPriceTable parse_price_table(std::istream& in);
RawPriceTable load_price_table(const std::filesystem::path& path);

/// close / factor per row, grouped per security and sorted by month.
SeriesMap adjust_prices(const RawPriceTable& table);

struct DroppedSecurity {
    std::string id;
    std::vector<YearMonth> missing;
};

struct CompletenessResult {
    /// Securities with every window month present, trimmed to the window.
    SeriesMap kept;
    /// Everything else, with the window months it lacks; ordered by id.
    std::vector<DroppedSecurity> dropped;
};

/// Incomplete series are dropped, never interpolated.
CompletenessResult filter_complete(const SeriesMap& series, const AnalysisWindow& window);

/// Writes the series as long CSV (`id,year,month,close`), prices at full
/// round-trip precision. Reloading reproduces the series exactly.
void write_price_table(std::ostream& out, const SeriesMap& series);

}  // namespace cvrisk
