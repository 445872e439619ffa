#include "cvrisk/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "cvrisk/reports.hpp"
#include "json.hpp"

namespace cvrisk {
namespace {

double parse_double(std::string_view text, const std::string& flag) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw UsageError(flag + ": cannot parse '" + std::string(text) + "' as a number");
    }
    return v;
}

// "MU,SIGMA"
SecurityParams parse_security(const std::string& text, const std::string& flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw UsageError(flag + " expects MU,SIGMA");
    }
    return {parse_double(std::string_view(text).substr(0, comma), flag),
            parse_double(std::string_view(text).substr(comma + 1), flag)};
}

// {"sec1": {"mu": 12, "sigma": 20}, "sec2": {...}, "rho": 0}
void apply_params_file(const std::string& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open parameter file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
        auto sec = [&](const char* key) {
            const auto& s = doc.at(key);
            return SecurityParams{s.at("mu").get<double>(), s.at("sigma").get<double>()};
        };
        if (!config.sec1) config.sec1 = sec("sec1");
        if (!config.sec2) config.sec2 = sec("sec2");
        if (doc.contains("rho")) config.rho = doc["rho"].get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError("parameter file '" + path + "': " + e.what());
    }
}

std::string extension(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

void emit(const RunConfig& config, const Table& table, std::ostream& out) {
    std::optional<std::filesystem::path> target = config.out;
    if (!target) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
            target = std::filesystem::path(dir) /
                     (std::string(to_string(config.command)) + "." + extension(config.format));
        }
    }
    if (!target) {
        write_table(out, table, config.format, config.decimals);
        return;
    }
    std::ofstream file(*target, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw InputError("cannot write '" + target->string() + "'");
    }
    write_table(file, table, config.format, config.decimals);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    std::string format = "csv";
    std::string std_mode = "sample";
    std::string window;
    std::string input;
    std::string out_path;
    std::string sec1;
    std::string sec2;
    std::string params;
    std::string return_range;
    double w_step = 0.0;

    CLI::App app{"Coefficient-of-variation risk analysis", "cvrisk"};
    app.require_subcommand(1);

    auto add_emission = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--decimals", config.decimals, "Decimal places in the output")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--out", out_path, "Output file (default: stdout or $" +
                                               std::string(kOutputDirEnv) + ")");
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", input, "Long CSV price table: id,year,month,close[,factor]")
            ->required();
        sub->add_option("--window", window, "Analysis window YYYY-MM:YYYY-MM")->required();
        sub->add_option("--std", std_mode, "Standard deviation denominator")
            ->check(CLI::IsMember({"sample", "population"}));
    };

    auto* analyze = app.add_subcommand("analyze", "Per-security CV and risk for both return methods");
    add_input(analyze);
    analyze->add_option("--slope-threshold", config.classifier.slope_threshold,
                        "Bubble trend threshold, percentage points per month");
    add_emission(analyze);

    auto* frontier = app.add_subcommand("frontier", "Two-security frontier with CV and risk");
    frontier->add_option("--sec1", sec1, "Security 1 as MU,SIGMA (percent)");
    frontier->add_option("--sec2", sec2, "Security 2 as MU,SIGMA (percent)");
    frontier->add_option("--params", params, "JSON file with sec1, sec2 and rho");
    frontier->add_option("--rho", config.rho, "Correlation of the two securities");
    auto* step_opt = frontier->add_option("--w-step", w_step, "Uniform weight step in (0, 0.5]");
    auto* grid_opt = frontier->add_flag("--paper-grid", config.paper_grid,
                                        "Weights 0, 0.10, 0.15, 0.20, ..., 1.00");
    step_opt->excludes(grid_opt);
    frontier->add_flag("--allow-short", config.allow_short, "Permit weights outside [0, 1]");
    add_emission(frontier);

    auto* riskcurve = app.add_subcommand("riskcurve", "Risk against volatility for fixed returns");
    riskcurve->add_option("--mu-list", config.mu_list, "Comma separated mean returns (percent)")
        ->delimiter(',')
        ->required();
    riskcurve->add_option("--sigma-min", config.sigma_min, "Smallest volatility");
    riskcurve->add_option("--sigma-max", config.sigma_max, "Largest volatility");
    riskcurve->add_option("--points", config.points, "Points per curve");
    add_emission(riskcurve);

    auto* density = app.add_subcommand("density", "Time/return density of low-CV securities");
    add_input(density);
    density->add_option("--cv-ceiling", config.cv_ceiling, "Largest CV admitted to the cohort");
    density->add_option("--time-bins", config.time_bins, "Bins along time");
    density->add_option("--return-bins", config.return_bins, "Bins along return");
    density->add_option("--return-range", return_range, "Return range LO:HI (percent)");
    add_emission(density);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze->parsed()) config.command = Command::Analyze;
        if (frontier->parsed()) config.command = Command::Frontier;
        if (riskcurve->parsed()) config.command = Command::RiskCurve;
        if (density->parsed()) config.command = Command::Density;

        config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        config.std_mode = std_mode == "population" ? StdMode::Population : StdMode::Sample;
        config.input = input;
        if (!out_path.empty()) config.out = out_path;
        if (!window.empty()) {
            try {
                config.window = AnalysisWindow::parse(window);
            } catch (const Error& e) {
                throw UsageError(std::string("--window: ") + e.what());
            }
        }
        if (!return_range.empty()) {
            const auto colon = return_range.find(':');
            if (colon == std::string::npos) throw UsageError("--return-range expects LO:HI");
            config.return_lo =
                parse_double(std::string_view(return_range).substr(0, colon), "--return-range");
            config.return_hi =
                parse_double(std::string_view(return_range).substr(colon + 1), "--return-range");
        }
        if (!sec1.empty()) config.sec1 = parse_security(sec1, "--sec1");
        if (!sec2.empty()) config.sec2 = parse_security(sec2, "--sec2");
        if (*step_opt) config.w_step = w_step;
        if (!params.empty()) {
            const bool rho_given = frontier->count("--rho") > 0;
            const double rho_flag = config.rho;
            apply_params_file(params, config);
            if (rho_given) config.rho = rho_flag;
        }

        const Table table = run_command(config, err);
        emit(config, table, out);
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}

}  // namespace cvrisk
