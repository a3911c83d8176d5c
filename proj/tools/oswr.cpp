// Command-line driver: oswr run|sweep|check <config>

#include "oswr/experiment.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

struct Overrides {
    std::string output;
    std::size_t threads = 0;
    bool threads_set = false;
};

oswr::ExperimentConfig load(const std::string& path, const Overrides& overrides)
{
    auto config = oswr::load_config(path);
    if (!overrides.output.empty())
        config.output = overrides.output;
    if (overrides.threads_set)
        config.threads = overrides.threads;
    return config;
}

int check(const oswr::ExperimentConfig& config)
{
    using namespace oswr;
    auto problem = build_problem(config);
    auto grid = build_grid(config.domain, config.nx_cross, config.nx_axis, config.nt);
    std::vector<double> times, crosses;
    for (std::size_t n = 0; n < grid.levels(); ++n)
        times.push_back(grid.time(n));
    for (std::size_t i = 0; i < grid.nx_cross; ++i)
        crosses.push_back(grid.cross(i));
    const auto report = check_assumptions(problem.coeffs, times, crosses);
    for (const auto& run : schedule(config)) {
        auto layout = snap(build_decomposition(config, run), grid);
        for (const auto& w : layout.warnings)
            std::cout << run.name() << ": warning: " << w << '\n';
    }
    std::cout << "ok: " << config.run_count() << " run(s), nu0 = " << format_number(report.nu0) << '\n';
    return kExitSuccess;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Overlapping optimized Schwarz waveform relaxation experiments"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides overrides;
    bool gnuplot = false;
    bool quiet = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "experiment file")->required()->check(CLI::ExistingFile);
        cmd->add_option("-o,--output", overrides.output, "output directory (overrides the file)");
        cmd->add_option("-j,--threads", overrides.threads, "1 = serial subdomain solves")
            ->each([&](const std::string&) { overrides.threads_set = true; });
    };
    auto* run = app.add_subcommand("run", "run the configured experiment");
    auto* sweep = app.add_subcommand("sweep", "run a p/overlap sweep (lists required)");
    auto* chk = app.add_subcommand("check", "validate the configuration only");
    for (auto* cmd : {run, sweep, chk})
        add_common(cmd);
    for (auto* cmd : {run, sweep}) {
        cmd->add_flag("--gnuplot-stub", gnuplot, "write plot.gp next to the CSV files");
        cmd->add_flag("-q,--quiet", quiet, "no progress output");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : oswr::kExitValidation;
    }

    try {
        const auto config = load(config_path, overrides);
        if (chk->parsed())
            return check(config);
        if (sweep->parsed() && !config.is_sweep())
            throw oswr::Error(oswr::ErrorCode::ValidationError,
                              "solver.p: sweep needs a list in solver.p or decomposition.overlap");
        oswr::RunOptions options;
        options.gnuplot_stub = gnuplot;
        options.log = quiet ? nullptr : &std::cerr;
        const auto result = oswr::run_experiment(config, options);
        if (!quiet)
            std::cerr << "results in " << config.output.string() << '\n';
        return result.exit_code;
    } catch (const oswr::Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return oswr::exit_code_for(err.code());
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return oswr::kExitNumerical;
    }
}
