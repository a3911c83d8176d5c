// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include "dense_sweep.hpp"
#include "oswr/experiment.hpp"
#include "oswr/monolithic_oracle.hpp"
#include "oswr/swr_engine.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace oswr;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kAxisNodes = 101;
constexpr std::size_t kSteps = 50;
constexpr double kOverlap = 0.2;
constexpr double kP = 1.0;

struct Case {
    const char* preset;
    std::size_t strips;
};

const std::vector<Case> kCases = {{"heat1d", 2}, {"heat1d", 3}, {"varcoef1d", 2}, {"varcoef1d", 3}};

std::string label(const Case& c)
{
    return std::string(c.preset) + " I=" + std::to_string(c.strips);
}

std::string num(double v)
{
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.3g", v);
    return buffer;
}

struct CaseRun {
    IterationHistory history;
    double seconds = 0.0;
};

// Default orientation and varphi == 1; `stop_tol` <= 0 runs every sweep.
CaseRun run_case(const Case& c, InitialGuess guess, std::size_t max_iters, double stop_tol)
{
    auto problem = make_preset_problem(c.preset, test::unit_domain());
    auto grid = build_grid(problem.domain, 1, kAxisNodes, kSteps);
    auto layout = test::uniform_layout(grid, c.strips, kOverlap);
    auto oracle = solve_global(problem, grid);

    SWRConfig cfg;
    cfg.p = kP;
    cfg.max_iters = max_iters;
    cfg.stop_tol = stop_tol > 0.0 ? stop_tol : std::numeric_limits<double>::min();
    cfg.guess = guess;
    const auto start = std::chrono::steady_clock::now();
    SWREngine engine(problem, grid, layout, cfg);
    CaseRun run;
    run.history = engine.run(oracle);
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

struct Line {
    bool pass = true;
    std::string detail;

    void add(bool ok, const std::string& text)
    {
        pass = pass && ok;
        detail += (detail.empty() ? "" : "; ") + text;
    }
};

int failures = 0;

void report(int id, const char* title, const Line& line)
{
    std::cout << (line.pass ? "PASS" : "FAIL") << " C" << id << ' ' << title << ": " << line.detail
              << std::endl;
    if (!line.pass)
        ++failures;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("oswr_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

double final_error(const ParabolicProblem& problem, std::size_t nx, std::size_t nt)
{
    auto grid = build_grid(problem.domain, 1, nx, nt);
    auto sol = solve_global(problem, grid);
    double err = 0.0;
    for (std::size_t j = 0; j < nx; ++j)
        err = std::max(err, std::abs(sol.at(nt, j, 0) - problem.exact->u(problem.domain.T, 0.0, grid.axis(j))));
    return err;
}

} // namespace

int main()
{
    // Zero initial guess, 60 sweeps without early stop; shared by C1, C3 and C4.
    std::map<std::string, CaseRun> plain;
    for (const auto& c : kCases)
        plain[label(c)] = run_case(c, InitialGuess::zero(), 60, 0.0);

    {
        Line line;
        for (const auto& c : kCases) {
            const auto& run = plain[label(c)];
            double best = std::numeric_limits<double>::infinity();
            std::size_t at = 0;
            for (const auto& row : run.history.rows)
                if (row.sup_e_max < best) {
                    best = row.sup_e_max;
                    at = row.k;
                }
            const bool ok = best <= 1e-8;
            line.add(ok && run.seconds <= 10.0, label(c) + " min sup|e| " + num(best) +
                                                    (ok ? " at k=" + std::to_string(at) : "") + " in " +
                                                    num(run.seconds) + " s");
        }
        report(1, "oracle equivalence (sup|e| <= 1e-8 within 60 sweeps, <= 10 s)", line);
    }

    {
        Line line;
        for (const auto& c : kCases) {
            auto run = run_case(c, InitialGuess::random_smooth(7), 60, 1e-10);
            const auto& report = run.history.contraction;
            if (!report) {
                line.add(false, label(c) + " too few sweeps for a verdict");
                continue;
            }
            const bool ok = report->verdict == Verdict::Converged ||
                            (report->verdict == Verdict::Pass && report->geometric_mean < 0.9);
            line.add(ok, label(c) + " max gamma " + num(report->max_ratio) + " mean " +
                             num(report->geometric_mean) + " over " + std::to_string(report->judged) +
                             " windows");
        }
        report(2, "window contraction (gamma <= 0.99, mean < 0.9)", line);
    }

    {
        Line line;
        for (const auto& c : kCases) {
            const auto& rows = plain[label(c)].history.rows;
            std::size_t bad = 0;
            std::size_t first_bad = 0;
            for (const auto& row : rows)
                if (row.k <= 20 && !row.phi_boundary_ok && bad++ == 0)
                    first_bad = row.k;
            line.add(bad == 0, label(c) + (bad == 0 ? " ok" : " " + std::to_string(bad) +
                                                                  " sweeps violate, first k=" +
                                                                  std::to_string(first_bad)));
        }
        report(3, "Phi boundary maximum (gamma = 5, k <= 20)", line);
    }

    {
        Line line;
        for (const auto& c : kCases) {
            const auto& rows = plain[label(c)].history.rows;
            double peak = 0.0;
            for (std::size_t k = 0; k < 40 && k < rows.size(); ++k)
                peak = std::max(peak, rows[k].sup_e_max);
            const double last = rows.size() >= 40 ? rows[39].sup_e_max : std::numeric_limits<double>::infinity();
            const double drop = last > 0.0 ? peak / last : std::numeric_limits<double>::infinity();
            line.add(drop >= 100.0, label(c) + " drop " + num(drop));
        }
        report(4, "pointwise decay (>= 100x from peak over 40 sweeps)", line);
    }

    {
        Line line;
        auto dir = scratch("overlap");
        std::ofstream(dir / "overlap.ini") << "[problem]\npreset = heat1d\n[grid]\nnx_axis = 101\nnt = 50\n"
                                              "[decomposition]\nsubdomains = 2\noverlap = [0.1, 0.2]\n"
                                              "[solver]\np = 1\nmax_iters = 300\nstop_tol = 1e-10\n";
        auto config = load_config(dir / "overlap.ini");
        run_experiment(config);
        std::istringstream summary(slurp(config.output / "summary.csv"));
        std::string row;
        std::getline(summary, row);
        std::map<std::string, std::string> counts;
        while (std::getline(summary, row)) {
            std::vector<std::string> fields;
            std::istringstream cells(row);
            for (std::string cell; std::getline(cells, cell, ',');)
                fields.push_back(cell);
            if (fields.size() >= 4)
                counts[fields[2]] = fields[3];
        }
        const auto small = counts["0.1"];
        const auto large = counts["0.2"];
        bool ok = false;
        if (!large.empty())
            ok = small.empty() || std::stoul(large) <= std::stoul(small);
        line.add(ok, "iterations to E <= 1e-10: overlap 0.1 -> " + (small.empty() ? "not reached" : small) +
                         ", overlap 0.2 -> " + (large.empty() ? "not reached" : large));
        report(5, "overlap monotonicity", line);
    }

    {
        Line line;
        for (const char* preset : {"heat1d", "varcoef1d"}) {
            const double gap = test::compare_sweeps(preset, RobinOrientation::Forward, 1, kP);
            line.add(gap <= 1e-10, std::string(preset) + " max diff " + num(gap));
        }
        report(6, "brute-force equivalence (one sweep, 1e-10)", line);
    }

    {
        Line line;
        auto problem = make_preset_problem("heat1d", test::unit_domain());
        const double space = final_error(problem, 11, 20000) / final_error(problem, 21, 20000);
        const double time = final_error(problem, 801, 10) / final_error(problem, 801, 20);
        line.add(space >= 3.4 && space <= 4.6, "space factor " + num(space));
        line.add(time >= 1.7 && time <= 2.3, "time factor " + num(time));
        report(7, "discretization convergence", line);
    }

    {
        Line line;
        const std::vector<std::string> configs = {
            "[problem]\npreset = varcoef1d\n[grid]\nnx_axis = 101\nnt = 50\n[decomposition]\nsubdomains = 3\n"
            "[guess]\nkind = random-smooth\nseed = 7\n",
            "[problem]\npreset = varcoef2d\n[grid]\nnx_axis = 31\nnx_cross = 11\nnt = 10\n[decomposition]\n"
            "subdomains = 3\n[solver]\nmax_iters = 15\n[guess]\nkind = random-smooth\nseed = 7\n"};
        for (std::size_t c = 0; c < configs.size(); ++c) {
            auto dir = scratch("determinism" + std::to_string(c));
            std::ofstream(dir / "run.ini") << configs[c];
            auto config = load_config(dir / "run.ini");
            std::vector<std::string> copies;
            for (std::size_t threads : {0, 0, 1}) {
                config.threads = threads;
                run_experiment(config);
                copies.push_back(slurp(config.output / "run_000" / "history.csv"));
            }
            const bool ok = !copies[0].empty() && copies[0] == copies[1] && copies[0] == copies[2];
            line.add(ok, config.preset + (ok ? " identical" : " differs"));
        }
        report(8, "determinism (history.csv across reruns and thread settings)", line);
    }

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
