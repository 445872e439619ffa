#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cvrisk {

/// A calendar month. Ordered chronologically.
struct YearMonth {
    int year = 0;
    int month = 1;  // 1..12

    friend constexpr auto operator<=>(const YearMonth&, const YearMonth&) = default;

    /// Months since year 0, January. Consecutive months differ by exactly 1.
    constexpr std::int64_t ordinal() const noexcept {
        return static_cast<std::int64_t>(year) * 12 + (month - 1);
    }

    static constexpr YearMonth from_ordinal(std::int64_t ordinal) noexcept {
        auto y = ordinal / 12;
        auto m = ordinal % 12;
        if (m < 0) {
            m += 12;
            y -= 1;
        }
        return YearMonth{static_cast<int>(y), static_cast<int>(m) + 1};
    }

    constexpr YearMonth plus_months(std::int64_t n) const noexcept {
        return from_ordinal(ordinal() + n);
    }

    constexpr bool valid() const noexcept { return month >= 1 && month <= 12; }

    /// "YYYY-MM"
    std::string to_string() const;

    /// Parses "YYYY-MM". Throws ParseError.
    static YearMonth parse(std::string_view text);
};

/// Inclusive range of calendar months, start <= end.
struct AnalysisWindow {
    YearMonth start;
    YearMonth end;

    /// Throws DomainError if start > end or either month is invalid.
    AnalysisWindow(YearMonth start, YearMonth end);

    std::int64_t month_count() const noexcept { return end.ordinal() - start.ordinal() + 1; }

    bool contains(YearMonth ym) const noexcept { return start <= ym && ym <= end; }

    /// Parses "YYYY-MM:YYYY-MM".
    static AnalysisWindow parse(std::string_view text);
};

}  // namespace cvrisk
