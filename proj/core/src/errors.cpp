#include "cvrisk/errors.hpp"

namespace cvrisk {

GapError::GapError(YearMonth missing)
    : Error("missing monthly observation for " + missing.to_string()), missing_(missing) {}

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

}  // namespace cvrisk
