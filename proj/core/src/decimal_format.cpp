#include "cvrisk/decimal_format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <system_error>

#include "cvrisk/errors.hpp"

namespace cvrisk {

std::string format_shortest(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) {
        throw Error("format_shortest: conversion failed");
    }
    return std::string(buf, end);
}

std::string format_half_up(double x, int decimals) {
    if (decimals < 0) {
        throw DomainError("decimals must be >= 0");
    }
    if (!std::isfinite(x)) {
        return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    }

    // Shortest round-trip digits in scientific form: d.ddddde[+-]XX
    char buf[64];
    auto [end, ec] =
        std::to_chars(buf, buf + sizeof buf, std::abs(x), std::chars_format::scientific);
    if (ec != std::errc{}) {
        throw Error("format_half_up: conversion failed");
    }
    std::string sci(buf, end);
    const auto epos = sci.find('e');
    const int exponent = std::atoi(sci.c_str() + epos + 1);
    std::string digits;
    for (std::size_t i = 0; i < epos; ++i) {
        if (sci[i] != '.') digits.push_back(sci[i]);
    }

    // value = 0.digits * 10^(exponent + 1); keep (exponent + 1 + decimals) digits.
    const int keep = exponent + 1 + decimals;
    std::string kept;  // integer count of 10^-decimals units
    if (keep <= 0) {
        const bool round_up = keep == 0 && digits[0] >= '5';
        kept = round_up ? "1" : "0";
    } else {
        if (static_cast<int>(digits.size()) <= keep) {
            kept = digits + std::string(static_cast<std::size_t>(keep) - digits.size(), '0');
        } else {
            kept = digits.substr(0, static_cast<std::size_t>(keep));
            if (digits[static_cast<std::size_t>(keep)] >= '5') {
                int i = static_cast<int>(kept.size()) - 1;
                while (i >= 0 && kept[static_cast<std::size_t>(i)] == '9') {
                    kept[static_cast<std::size_t>(i)] = '0';
                    --i;
                }
                if (i < 0) {
                    kept.insert(kept.begin(), '1');
                } else {
                    ++kept[static_cast<std::size_t>(i)];
                }
            }
        }
    }

    if (static_cast<int>(kept.size()) <= decimals) {
        kept.insert(0, static_cast<std::size_t>(decimals) + 1 - kept.size(), '0');
    }
    std::string out = kept;
    if (decimals > 0) {
        out.insert(out.size() - static_cast<std::size_t>(decimals), ".");
    }
    const bool is_zero = out.find_first_not_of("0.") == std::string::npos;
    if (std::signbit(x) && !is_zero) {
        out.insert(out.begin(), '-');
    }
    return out;
}

double round_half_up(double x, int decimals) {
    const auto text = format_half_up(x, decimals);
    double value = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), value);
    return value;
}

}  // namespace cvrisk
