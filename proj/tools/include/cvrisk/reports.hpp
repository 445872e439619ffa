#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cvrisk/calendar.hpp"
#include "cvrisk/data_ingest.hpp"
#include "cvrisk/errors.hpp"
#include "cvrisk/portfolio_frontier.hpp"
#include "cvrisk/returns_engine.hpp"
#include "cvrisk/table.hpp"

namespace cvrisk {

/// Bad command-line arguments (exit code 1).
class UsageError : public Error {
public:
    using Error::Error;
};

/// Input file could not be loaded or analyzed (exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

enum class Command { Analyze, Frontier, RiskCurve, Density };

const char* to_string(Command command) noexcept;

struct RunConfig {
    Command command = Command::Analyze;

    // analyze / density
    std::filesystem::path input;
    std::optional<AnalysisWindow> window;
    StdMode std_mode = StdMode::Sample;
    ClassifierConfig classifier;
    double cv_ceiling = 1.0;
    std::size_t time_bins = 11;
    std::size_t return_bins = 30;
    double return_lo = -100.0;
    double return_hi = 200.0;

    // frontier
    std::optional<SecurityParams> sec1;
    std::optional<SecurityParams> sec2;
    double rho = 0.0;
    std::optional<double> w_step;
    bool paper_grid = false;
    bool allow_short = false;

    // riskcurve
    std::vector<double> mu_list;
    double sigma_min = 0.0;
    double sigma_max = 30.0;
    std::size_t points = 61;

    // emission
    OutputFormat format = OutputFormat::Csv;
    int decimals = 2;
    std::optional<std::filesystem::path> out;
};

/// Checks the fields the command needs. Throws UsageError.
void validate(const RunConfig& config);

struct SecurityAnalysis {
    std::string id;
    ReturnMethod method;
    ReturnStats stats;
    PerformanceTier tier;
};

/// Both return methods for every series, ordered by id then method.
std::vector<SecurityAnalysis> analyze_securities(const SeriesMap& series, StdMode std_mode,
                                                 const ClassifierConfig& classifier);

/// Loads, adjusts and window-filters `config.input`; ingest failures surface
/// as InputError. Dropped securities are reported on `warnings`.
SeriesMap load_complete_series(const RunConfig& config, std::ostream& warnings);

/// Columns: id, method, n, sigma, mu, cv, risk, tier, bubble_flag.
Table cmd_analyze(const RunConfig& config, std::ostream& warnings);

/// Columns: w1, w2, sigma, mu, cv, risk.
Table cmd_frontier(const RunConfig& config);

/// Columns: mu, sigma, risk; one block of rows per requested mu.
Table cmd_riskcurve(const RunConfig& config);

/// Columns: time_bin, time_start, time_end, return_bin, return_lo, return_hi, count.
/// Uses monthly annual returns of securities with 0 <= CV <= cv_ceiling.
Table cmd_density(const RunConfig& config, std::ostream& warnings);

/// Dispatches on `config.command`.
Table run_command(const RunConfig& config, std::ostream& warnings);

}  // namespace cvrisk
