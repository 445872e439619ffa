#include "cvrisk/reports.hpp"

#include <cmath>
#include <ostream>

namespace cvrisk {
namespace {

Cell cv_cell(const CoefficientOfVariation& cv) {
    return cv.defined ? Cell{cv.value} : Cell{Null{}};
}

Cell optional_month(bool present, YearMonth ym) {
    return present ? Cell{ym.to_string()} : Cell{Null{}};
}

}  // namespace

const char* to_string(Command command) noexcept {
    switch (command) {
        case Command::Analyze: return "analyze";
        case Command::Frontier: return "frontier";
        case Command::RiskCurve: return "riskcurve";
        case Command::Density: return "density";
    }
    return "unknown";
}

void validate(const RunConfig& c) {
    if (c.decimals < 0) {
        throw UsageError("--decimals must be >= 0");
    }
    switch (c.command) {
        case Command::Analyze:
        case Command::Density:
            if (c.input.empty()) throw UsageError("--input is required");
            if (!c.window) throw UsageError("--window is required");
            if (c.command == Command::Density) {
                if (c.time_bins == 0 || c.return_bins == 0) {
                    throw UsageError("bin counts must be >= 1");
                }
                if (!(c.return_lo < c.return_hi)) {
                    throw UsageError("--return-range needs lo < hi");
                }
                if (!(c.cv_ceiling >= 0.0)) {
                    throw UsageError("--cv-ceiling must be >= 0");
                }
            }
            break;
        case Command::Frontier:
            if (!c.sec1 || !c.sec2) throw UsageError("--sec1 and --sec2 are required");
            for (const auto* s : {&*c.sec1, &*c.sec2}) {
                if (!std::isfinite(s->mu) || !(s->sigma >= 0.0) || !std::isfinite(s->sigma)) {
                    throw UsageError("security parameters need finite mu and sigma >= 0");
                }
            }
            if (!(std::abs(c.rho) <= 1.0)) throw UsageError("--rho must lie in [-1, 1]");
            if (c.paper_grid && c.w_step) {
                throw UsageError("--paper-grid and --w-step are mutually exclusive");
            }
            if (!c.paper_grid && !c.w_step) {
                throw UsageError("one of --paper-grid or --w-step is required");
            }
            if (c.w_step && (!(*c.w_step > 0.0) || *c.w_step > 0.5)) {
                throw UsageError("--w-step must lie in (0, 0.5]");
            }
            break;
        case Command::RiskCurve:
            if (c.mu_list.empty()) throw UsageError("--mu-list is required");
            for (double mu : c.mu_list) {
                if (mu == 0.0 || !std::isfinite(mu)) {
                    throw UsageError("--mu-list entries must be finite and non-zero");
                }
            }
            if (!(c.sigma_min >= 0.0) || !(c.sigma_min < c.sigma_max)) {
                throw UsageError("need 0 <= --sigma-min < --sigma-max");
            }
            if (c.points < 2) throw UsageError("--points must be >= 2");
            break;
    }
}

std::vector<SecurityAnalysis> analyze_securities(const SeriesMap& series, StdMode std_mode,
                                                 const ClassifierConfig& classifier) {
    std::vector<SecurityAnalysis> out;
    out.reserve(series.size() * 2);
    for (const auto& [id, prices] : series) {
        for (auto method : {ReturnMethod::MonthlyAnnual, ReturnMethod::EndOfYear}) {
            const auto returns = method == ReturnMethod::MonthlyAnnual
                                     ? monthly_annual_returns(prices)
                                     : end_of_year_returns(prices);
            const auto stats = return_stats(returns, std_mode);
            out.push_back({id, method, stats, classify_performance(stats, returns, classifier)});
        }
    }
    return out;
}

SeriesMap load_complete_series(const RunConfig& config, std::ostream& warnings) {
    SeriesMap all;
    try {
        all = adjust_prices(load_price_table(config.input));
    } catch (const Error& e) {
        throw InputError(config.input.string() + ": " + e.what());
    }
    auto result = filter_complete(all, *config.window);
    for (const auto& d : result.dropped) {
        warnings << "warning: dropped " << d.id << ": " << d.missing.size()
                 << " missing month(s), first " << d.missing.front().to_string() << '\n';
    }
    if (result.kept.empty()) {
        warnings << "warning: no security has complete monthly prices in the window\n";
    }
    return std::move(result.kept);
}

Table cmd_analyze(const RunConfig& config, std::ostream& warnings) {
    validate(config);
    const auto series = load_complete_series(config, warnings);

    std::vector<SecurityAnalysis> analyses;
    try {
        analyses = analyze_securities(series, config.std_mode, config.classifier);
    } catch (const InsufficientDataError& e) {
        throw InputError(e.what());
    } catch (const GapError& e) {
        throw InputError(e.what());
    }

    Table t;
    t.columns = {"id", "method", "n", "sigma", "mu", "cv", "risk", "tier", "bubble_flag"};
    for (const auto& a : analyses) {
        t.rows.push_back({a.id, std::string(to_string(a.method)),
                          static_cast<std::int64_t>(a.stats.n), a.stats.sigma, a.stats.mu,
                          cv_cell(a.stats.cv), a.stats.risk.value,
                          std::string(to_string(a.tier.tier)), a.tier.bubble_flag});
    }
    return t;
}

Table cmd_frontier(const RunConfig& config) {
    validate(config);
    const auto grid = config.paper_grid ? WeightGrid::published() : WeightGrid::uniform(*config.w_step);
    const auto mode = config.allow_short ? WeightMode::AllowShort : WeightMode::LongOnly;
    const auto rows = two_asset_frontier(*config.sec1, *config.sec2, config.rho, grid, mode);

    Table t;
    t.columns = {"w1", "w2", "sigma", "mu", "cv", "risk"};
    for (const auto& r : rows) {
        t.rows.push_back({r.w1, r.w2, r.sigma, r.mu, cv_cell(r.cv), r.risk.value});
    }
    return t;
}

Table cmd_riskcurve(const RunConfig& config) {
    validate(config);
    Table t;
    t.columns = {"mu", "sigma", "risk"};
    for (double mu : config.mu_list) {
        for (const auto& p : risk_curve(mu, config.sigma_min, config.sigma_max, config.points)) {
            t.rows.push_back({mu, p.sigma, p.risk.value});
        }
    }
    return t;
}

Table cmd_density(const RunConfig& config, std::ostream& warnings) {
    validate(config);
    const auto series = load_complete_series(config, warnings);

    std::vector<ReturnSeries> cohort;
    try {
        for (const auto& [id, prices] : series) {
            auto returns = monthly_annual_returns(prices);
            const auto stats = return_stats(returns, config.std_mode);
            if (stats.cv.defined && stats.cv.value >= 0.0 && stats.cv.value <= config.cv_ceiling) {
                cohort.push_back(std::move(returns));
            }
        }
    } catch (const InsufficientDataError& e) {
        throw InputError(e.what());
    } catch (const GapError& e) {
        throw InputError(e.what());
    }
    if (!series.empty() && cohort.empty()) {
        warnings << "warning: no security has CV within [0, " << config.cv_ceiling << "]\n";
    }

    const auto grid = return_density_grid(cohort, config.time_bins, config.return_bins,
                                          config.return_lo, config.return_hi);
    const bool has_months = grid.first_month.has_value();
    const auto first = has_months ? grid.first_month->ordinal() : 0;
    const auto span = has_months ? grid.last_month->ordinal() - first + 1 : 1;
    const auto tb = static_cast<std::int64_t>(grid.time_bins());

    Table t;
    t.columns = {"time_bin", "time_start", "time_end", "return_bin",
                 "return_lo", "return_hi", "count"};
    for (std::size_t ti = 0; ti < grid.time_bins(); ++ti) {
        // Months m with floor((m - first) * tb / span) == ti.
        const auto ti64 = static_cast<std::int64_t>(ti);
        const auto start = (ti64 * span + tb - 1) / tb;
        const auto end = ((ti64 + 1) * span + tb - 1) / tb - 1;
        const bool covered = has_months && start <= end;
        for (std::size_t ri = 0; ri < grid.return_bins(); ++ri) {
            t.rows.push_back({static_cast<std::int64_t>(ti),
                              optional_month(covered, YearMonth::from_ordinal(first + start)),
                              optional_month(covered, YearMonth::from_ordinal(first + end)),
                              static_cast<std::int64_t>(ri), grid.return_edge(ri),
                              grid.return_edge(ri + 1),
                              static_cast<std::int64_t>(grid.at(ti, ri))});
        }
    }
    return t;
}

Table run_command(const RunConfig& config, std::ostream& warnings) {
    switch (config.command) {
        case Command::Analyze: return cmd_analyze(config, warnings);
        case Command::Frontier: return cmd_frontier(config);
        case Command::RiskCurve: return cmd_riskcurve(config);
        case Command::Density: return cmd_density(config, warnings);
    }
    throw UsageError("unknown command");
}

}  // namespace cvrisk
