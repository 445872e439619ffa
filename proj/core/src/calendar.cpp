#include "cvrisk/calendar.hpp"

#include <charconv>
#include <cstdio>

#include "cvrisk/errors.hpp"

namespace cvrisk {

std::string YearMonth::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

YearMonth YearMonth::parse(std::string_view text) {
    auto fail = [&] {
        return ParseError("expected YYYY-MM, got '" + std::string(text) + "'", 0);
    };
    auto dash = text.find('-');
    if (dash == std::string_view::npos || dash == 0 || dash + 1 >= text.size()) {
        throw fail();
    }
    YearMonth ym;
    auto ys = text.substr(0, dash);
    auto ms = text.substr(dash + 1);
    auto [yp, yec] = std::from_chars(ys.data(), ys.data() + ys.size(), ym.year);
    auto [mp, mec] = std::from_chars(ms.data(), ms.data() + ms.size(), ym.month);
    if (yec != std::errc{} || mec != std::errc{} || yp != ys.data() + ys.size() ||
        mp != ms.data() + ms.size() || !ym.valid()) {
        throw fail();
    }
    return ym;
}

AnalysisWindow::AnalysisWindow(YearMonth s, YearMonth e) : start(s), end(e) {
    if (!start.valid() || !end.valid()) {
        throw DomainError("analysis window contains an invalid month");
    }
    if (end < start) {
        throw DomainError("analysis window start " + start.to_string() + " is after end " +
                          end.to_string());
    }
}

AnalysisWindow AnalysisWindow::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("expected YYYY-MM:YYYY-MM, got '" + std::string(text) + "'", 0);
    }
    return AnalysisWindow(YearMonth::parse(text.substr(0, colon)),
                          YearMonth::parse(text.substr(colon + 1)));
}

}  // namespace cvrisk
