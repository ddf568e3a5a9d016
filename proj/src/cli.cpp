#include "tsloss/cli.hpp"

#include "tsloss/elmodel.hpp"
#include "tsloss/error.hpp"
#include "tsloss/oracle.hpp"
#include "tsloss/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace tsloss::cli {

namespace {

struct RunConfig {
    std::string command;
    ModelParams::Values params;
    double h = 1.0;
    std::string data;
    std::optional<int> year;
    std::size_t n_min = 12;
    std::size_t n_max = 200;
    std::uint64_t seed = 42;
    std::size_t instances = 200;
    std::string format = "markdown";
    std::string out;
};

constexpr double kValidateTolerance = 1e-9;

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string run_solve(const RunConfig& cfg) {
    const ModelParams params(cfg.params);
    const ClosedFormPath path = optimal_path_hz(params, cfg.h);
    const GridFunction grid = path.sample();
    std::ostringstream out;
    out << "t\tpi\n";
    for (std::size_t k = 0; k < grid.size(); ++k) out << num(grid.scale().at(k)) << '\t' << num(grid[k]) << '\n';
    out << "lambda_h\t" << num(social_loss_hz(params, cfg.h, grid)) << '\n';
    return out.str();
}

std::string run_sweep(const RunConfig& cfg, pipeline::ReportFormat format) {
    std::ifstream in(cfg.data, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + cfg.data);
    const auto series = pipeline::load_series(in, pipeline::MonthRange::calendar_year(*cfg.year));
    const auto steps = pipeline::step_range(cfg.n_min, cfg.n_max);
    const auto report = pipeline::sweep_h(series, ModelParams(cfg.params), steps, std::to_string(*cfg.year));
    return pipeline::render_report(report, format);
}

std::string run_validate(const RunConfig& cfg, bool& passed) {
    std::mt19937_64 rng(cfg.seed);
    oracle::CrossCheck worst{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < cfg.instances; ++i) {
        const auto inst = oracle::random_instance(rng);
        const auto check = oracle::cross_check(inst.params, inst.h);
        worst.deviation = std::max(worst.deviation, check.deviation);
        worst.residual = std::max(worst.residual, check.residual);
        worst.objective_gap = std::max(worst.objective_gap, check.objective_gap);
    }
    passed = worst.deviation <= kValidateTolerance && worst.residual <= kValidateTolerance;
    std::ostringstream out;
    out << "instances " << cfg.instances << " seed " << cfg.seed << '\n';
    out << "max deviation " << num(worst.deviation) << '\n';
    out << "max el residual " << num(worst.residual) << '\n';
    out << "max objective gap " << num(worst.objective_gap) << '\n';
    out << "max deviation " << (passed ? "<= 1e-9" : "> 1e-9") << '\n';
    return out.str();
}

std::string run_report(const RunConfig& cfg, pipeline::ReportFormat format) {
    std::ifstream in(cfg.data, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + cfg.data);
    std::ostringstream buf;
    buf << in.rdbuf();
    return pipeline::render_report(pipeline::report_from_json(buf.str()), format);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Time-scale social loss model: closed-form minimizers, oracle checks and h-sweeps", "tsloss"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.add_option("command", cfg.command, "solve | sweep | validate | report")
        ->required()
        ->check(CLI::IsMember({"solve", "sweep", "validate", "report"}));
    app.add_option("--alpha", cfg.params.alpha, "Weight of inflation in the loss")->capture_default_str();
    app.add_option("--beta", cfg.params.beta, "Phillips slope")->capture_default_str();
    app.add_option("--j", cfg.params.j, "Expectation adjustment rate, 0 < j <= 1")->capture_default_str();
    app.add_option("--delta", cfg.params.delta, "Discount rate")->capture_default_str();
    app.add_option("--pi0", cfg.params.pi0, "Initial expected inflation (solve)")->capture_default_str();
    app.add_option("--piT", cfg.params.piT, "Terminal expected inflation (solve)")->capture_default_str();
    app.add_option("--T", cfg.params.T, "Horizon, T = N h (solve)")->capture_default_str();
    app.add_option("--h", cfg.h, "Graininess of the time scale hZ (solve)")->capture_default_str();
    app.add_option("--data", cfg.data, "Input CSV (sweep) or stored JSON report (report)");
    app.add_option("--year", cfg.year, "Calendar year to analyse (sweep)");
    app.add_option("--n-min", cfg.n_min, "Smallest step count N, h = T/N (sweep)")->capture_default_str();
    app.add_option("--n-max", cfg.n_max, "Largest step count N (sweep)")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for random instances (validate)")->capture_default_str();
    app.add_option("--instances", cfg.instances, "Number of random instances (validate)")->capture_default_str();
    app.add_option("--format", cfg.format, "markdown | csv | plotdata | json")
        ->capture_default_str()
        ->check(CLI::IsMember({"markdown", "md", "csv", "plotdata", "tsv", "json"}));
    app.add_option("--out", cfg.out, "Write the result to this file instead of stdout");

    std::vector<const char*> argv{"tsloss"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << "run 'tsloss --help' for the flag list\n";
        return kExitUsage;
    }

    const auto usage = [&err](const std::string& what) {
        err << "usage error: " << what << '\n';
        return kExitUsage;
    };
    try {
        ModelParams{cfg.params};
    } catch (const Error& e) {
        return usage(e.what());
    }
    const auto format = pipeline::parse_format(cfg.format);
    if ((cfg.command == "sweep" || cfg.command == "report") && cfg.data.empty()) {
        return usage("--data is required for " + cfg.command);
    }
    if (cfg.command == "sweep" && !cfg.year) return usage("--year is required for sweep");
    if (cfg.command == "sweep") {
        try {
            pipeline::step_range(cfg.n_min, cfg.n_max);
        } catch (const Error& e) {
            return usage(std::string("--n-min/--n-max: ") + e.what());
        }
    }
    if (cfg.command == "report" && format == pipeline::ReportFormat::Json) {
        return usage("--format json is only meaningful for sweep");
    }

    try {
        std::string result;
        bool passed = true;
        if (cfg.command == "solve") {
            result = run_solve(cfg);
        } else if (cfg.command == "sweep") {
            result = run_sweep(cfg, *format);
        } else if (cfg.command == "validate") {
            result = run_validate(cfg, passed);
        } else {
            result = run_report(cfg, *format);
        }
        if (cfg.out.empty()) {
            out << result;
        } else {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!file || !(file << result)) {
                err << "error: cannot write " << cfg.out << '\n';
                return kExitComputation;
            }
        }
        return passed ? kExitOk : kExitComputation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
}

} // namespace tsloss::cli
