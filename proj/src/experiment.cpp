#include "oswr/experiment.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <boost/version.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#ifndef OSWR_VERSION
#define OSWR_VERSION "unknown"
#endif

namespace oswr {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys = {
        {"problem", {"preset", "coefficients", "solution"}},
        {"domain", {"alpha", "beta", "T", "cross_lo", "cross_hi"}},
        {"grid", {"nx_axis", "nx_cross", "nt"}},
        {"decomposition", {"subdomains", "overlap", "a", "b"}},
        {"solver", {"p", "orientation", "max_iters", "stop_tol", "threads"}},
        {"guess", {"kind", "value", "seed"}},
        {"weights", {"gamma", "time_weight_rate", "gamma_max", "trend_factor"}},
        {"output", {"directory"}},
    };
    return keys;
}

[[noreturn]] void invalid(const std::string& field, const std::string& message)
{
    throw Error(ErrorCode::ValidationError, field + ": " + message);
}

std::string trim(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = text.find_last_not_of(" \t\r");
    return std::string(text.substr(first, last - first + 1));
}

// Drops a trailing "; comment" or "# comment".
std::string strip_comment(const std::string& value)
{
    const auto pos = value.find_first_of(";#");
    return trim(pos == std::string::npos ? value : value.substr(0, pos));
}

double to_double(const std::string& field, const std::string& text)
{
    const std::string s = trim(text);
    double value = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(value))
        invalid(field, "expected a number, got '" + s + "'");
    return value;
}

std::size_t to_count(const std::string& field, const std::string& text)
{
    const std::string s = trim(text);
    unsigned long long value = 0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc() || ptr != end)
        invalid(field, "expected a non-negative integer, got '" + s + "'");
    return static_cast<std::size_t>(value);
}

std::vector<double> to_list(const std::string& field, const std::string& text)
{
    std::string s = trim(text);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']')
            invalid(field, "unterminated list '" + s + "'");
        s = s.substr(1, s.size() - 2);
    }
    std::vector<double> out;
    std::stringstream stream(s);
    std::string item;
    while (std::getline(stream, item, ','))
        out.push_back(to_double(field, item));
    if (out.empty())
        invalid(field, "list is empty");
    return out;
}

std::string list_text(const std::vector<double>& values)
{
    if (values.size() == 1)
        return format_number(values.front());
    std::string out = "[";
    for (std::size_t k = 0; k < values.size(); ++k)
        out += (k ? ", " : "") + format_number(values[k]);
    return out + "]";
}

std::string guess_kind_text(InitialGuess::Kind kind)
{
    switch (kind) {
    case InitialGuess::Kind::Zero: return "zero";
    case InitialGuess::Kind::Constant: return "constant";
    case InitialGuess::Kind::RandomSmooth: return "random-smooth";
    }
    return "zero";
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::ValidationError, "cannot write '" + path.string() + "'");
    out << text;
}

std::string optional_number(const std::optional<double>& value)
{
    return value ? format_number(*value) : std::string();
}

} // namespace

// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const
{
    if (coefficients.empty()) {
        try {
            coefficient_preset(preset);
        } catch (const Error&) {
            invalid("problem.preset", "unknown preset '" + preset + "'");
        }
    } else if (!std::filesystem::exists(coefficients)) {
        invalid("problem.coefficients", "file '" + coefficients.string() + "' does not exist");
    }
    if (!(domain.alpha < domain.beta))
        invalid("domain.beta", "must exceed domain.alpha");
    if (!(domain.T > 0.0))
        invalid("domain.T", "must be positive");
    if (domain.dim == 2 && !(domain.cross_lo < domain.cross_hi))
        invalid("domain.cross_hi", "must exceed domain.cross_lo");
    if (nx_axis < 3)
        invalid("grid.nx_axis", "must be at least 3");
    if (nt < 1)
        invalid("grid.nt", "must be at least 1");
    if (domain.dim == 2 && nx_cross < 3)
        invalid("grid.nx_cross", "must be at least 3");

    if (explicit_strips()) {
        if (a.size() != b.size())
            invalid("decomposition.b", "must have as many entries as decomposition.a");
        if (overlaps.size() > 1)
            invalid("decomposition.overlap", "an overlap sweep needs uniform strips, not explicit a/b");
        if (auto problem = oswr::validate(DecompositionSpec{domain.alpha, domain.beta, a, b}))
            invalid("decomposition.a", *problem);
    } else {
        if (subdomains < 2)
            invalid("decomposition.subdomains", "subdomains must be at least 2");
        for (double overlap : overlaps)
            if (!(overlap > 0.0))
                invalid("decomposition.overlap", "overlap must be positive");
    }
    for (double p : p_values)
        if (!(p > 0.0))
            invalid("solver.p", "p must be positive");
    if (max_iters < 1)
        invalid("solver.max_iters", "must be at least 1");
    if (!(stop_tol > 0.0))
        invalid("solver.stop_tol", "must be positive");
    if (!(gamma > 0.0))
        invalid("weights.gamma", "must be positive");
    if (!(gamma_max > 0.0))
        invalid("weights.gamma_max", "must be positive");
    if (!(trend_factor > 0.0))
        invalid("weights.trend_factor", "must be positive");
    if (output.empty())
        invalid("output.directory", "must not be empty");
}

std::string ExperimentConfig::to_ini() const
{
    std::ostringstream os;
    os << "[problem]\n";
    if (coefficients.empty())
        os << "preset = " << preset << '\n';
    else
        os << "coefficients = " << coefficients.string() << '\n';
    if (!solution.empty())
        os << "solution = " << solution << '\n';
    os << "\n[domain]\n"
       << "alpha = " << format_number(domain.alpha) << '\n'
       << "beta = " << format_number(domain.beta) << '\n'
       << "T = " << format_number(domain.T) << '\n';
    if (domain.dim == 2)
        os << "cross_lo = " << format_number(domain.cross_lo) << '\n'
           << "cross_hi = " << format_number(domain.cross_hi) << '\n';
    os << "\n[grid]\n"
       << "nx_axis = " << nx_axis << '\n';
    if (domain.dim == 2)
        os << "nx_cross = " << nx_cross << '\n';
    os << "nt = " << nt << '\n';
    os << "\n[decomposition]\n";
    if (explicit_strips())
        os << "a = " << list_text(a) << '\n' << "b = " << list_text(b) << '\n';
    else
        os << "subdomains = " << subdomains << '\n' << "overlap = " << list_text(overlaps) << '\n';
    os << "\n[solver]\n"
       << "p = " << list_text(p_values) << '\n'
       << "orientation = " << (orientation == RobinOrientation::Forward ? "forward" : "outward") << '\n'
       << "max_iters = " << max_iters << '\n'
       << "stop_tol = " << format_number(stop_tol) << '\n'
       << "threads = " << threads << '\n';
    os << "\n[guess]\n"
       << "kind = " << guess_kind_text(guess.kind) << '\n';
    if (guess.kind == InitialGuess::Kind::Constant)
        os << "value = " << format_number(guess.value) << '\n';
    if (guess.kind == InitialGuess::Kind::RandomSmooth)
        os << "seed = " << guess.seed << '\n';
    os << "\n[weights]\n"
       << "gamma = " << format_number(gamma) << '\n'
       << "time_weight_rate = " << format_number(time_weight_rate) << '\n'
       << "gamma_max = " << format_number(gamma_max) << '\n'
       << "trend_factor = " << format_number(trend_factor) << '\n';
    os << "\n[output]\n"
       << "directory = " << output.string() << '\n';
    return os.str();
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ValidationError, "cannot open config '" + path.string() + "'");
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& err) {
        throw Error(ErrorCode::ParseError,
                    path.string() + ":" + std::to_string(err.line()) + ": " + err.message());
    }

    for (const auto& [section, body] : tree) {
        if (!body.data().empty())
            invalid(section, "key outside any section");
        auto known = known_keys().find(section);
        if (known == known_keys().end())
            invalid(section, "unknown section");
        for (const auto& [key, value] : body) {
            if (!known->second.count(key))
                invalid(section + "." + key, "unknown key");
        }
    }

    auto get = [&](const std::string& field) -> std::optional<std::string> {
        // '/' keeps dotted section.key lookups literal
        auto node = tree.get_optional<std::string>(pt::ptree::path_type(
            field.substr(0, field.find('.')) + '/' + field.substr(field.find('.') + 1), '/'));
        if (!node)
            return std::nullopt;
        return strip_comment(*node);
    };
    const std::filesystem::path base = path.parent_path();
    auto resolve = [&](const std::string& text) {
        std::filesystem::path p(text);
        return p.is_relative() ? base / p : p;
    };

    ExperimentConfig config;
    if (auto v = get("problem.preset"))
        config.preset = *v;
    if (auto v = get("problem.coefficients"))
        config.coefficients = resolve(*v);
    if (auto v = get("problem.solution"))
        config.solution = *v;

    if (config.coefficients.empty()) {
        try {
            config.domain.dim = preset_dimension(config.preset);
        } catch (const Error&) {
            invalid("problem.preset", "unknown preset '" + config.preset + "'");
        }
    } else {
        if (!std::filesystem::exists(config.coefficients))
            invalid("problem.coefficients", "file '" + config.coefficients.string() + "' does not exist");
        config.domain.dim = CoefficientSet::load_csv(config.coefficients.string()).dim;
    }

    auto number = [&](const char* field, double& target) {
        if (auto v = get(field))
            target = to_double(field, *v);
    };
    auto count = [&](const char* field, std::size_t& target) {
        if (auto v = get(field))
            target = to_count(field, *v);
    };
    number("domain.alpha", config.domain.alpha);
    number("domain.beta", config.domain.beta);
    number("domain.T", config.domain.T);
    number("domain.cross_lo", config.domain.cross_lo);
    number("domain.cross_hi", config.domain.cross_hi);
    count("grid.nx_axis", config.nx_axis);
    count("grid.nx_cross", config.nx_cross);
    count("grid.nt", config.nt);
    count("decomposition.subdomains", config.subdomains);
    if (auto v = get("decomposition.overlap"))
        config.overlaps = to_list("decomposition.overlap", *v);
    if (auto v = get("decomposition.a"))
        config.a = to_list("decomposition.a", *v);
    if (auto v = get("decomposition.b"))
        config.b = to_list("decomposition.b", *v);
    if (config.a.empty() != config.b.empty())
        invalid(config.a.empty() ? "decomposition.a" : "decomposition.b", "a and b must be given together");
    if (config.explicit_strips()) {
        if (get("decomposition.overlap") || get("decomposition.subdomains"))
            invalid("decomposition.overlap", "explicit a/b exclude subdomains and overlap");
        config.subdomains = config.a.size();
    }

    if (auto v = get("solver.p"))
        config.p_values = to_list("solver.p", *v);
    if (auto v = get("solver.orientation")) {
        if (*v == "forward")
            config.orientation = RobinOrientation::Forward;
        else if (*v == "outward")
            config.orientation = RobinOrientation::Outward;
        else
            invalid("solver.orientation", "expected 'forward' or 'outward', got '" + *v + "'");
    }
    count("solver.max_iters", config.max_iters);
    number("solver.stop_tol", config.stop_tol);
    count("solver.threads", config.threads);

    if (auto v = get("guess.kind")) {
        if (*v == "zero")
            config.guess = InitialGuess::zero();
        else if (*v == "constant")
            config.guess = InitialGuess::constant(1.0);
        else if (*v == "random-smooth")
            config.guess = InitialGuess::random_smooth(7);
        else
            invalid("guess.kind", "expected zero, constant or random-smooth, got '" + *v + "'");
    }
    if (auto v = get("guess.value")) {
        if (config.guess.kind != InitialGuess::Kind::Constant)
            invalid("guess.value", "only used with kind = constant");
        config.guess.value = to_double("guess.value", *v);
    }
    if (auto v = get("guess.seed")) {
        if (config.guess.kind != InitialGuess::Kind::RandomSmooth)
            invalid("guess.seed", "only used with kind = random-smooth");
        config.guess.seed = to_count("guess.seed", *v);
    }

    config.gamma = default_gamma(config.domain.alpha, config.domain.beta);
    number("weights.gamma", config.gamma);
    number("weights.time_weight_rate", config.time_weight_rate);
    number("weights.gamma_max", config.gamma_max);
    number("weights.trend_factor", config.trend_factor);

    if (auto v = get("output.directory"))
        config.output = resolve(*v);
    else
        config.output = base / config.output;

    config.validate();
    return config;
}

// ---------------------------------------------------------------------------

std::string RunSpec::name() const
{
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "run_%03zu", index);
    return buffer;
}

std::vector<RunSpec> schedule(const ExperimentConfig& config)
{
    std::vector<RunSpec> runs;
    for (double p : config.p_values) {
        if (config.explicit_strips()) {
            runs.push_back({runs.size(), p, std::nullopt});
            continue;
        }
        for (double overlap : config.overlaps)
            runs.push_back({runs.size(), p, overlap});
    }
    return runs;
}

ParabolicProblem build_problem(const ExperimentConfig& config)
{
    if (config.coefficients.empty()) {
        if (config.solution.empty())
            return make_preset_problem(config.preset, config.domain);
        auto coeffs = coefficient_preset(config.preset);
        return make_manufactured_problem(config.preset, config.domain, coeffs,
                                         ManufacturedSolution::preset(config.solution, coeffs.dim));
    }
    auto coeffs = CoefficientSet::load_csv(config.coefficients.string());
    const std::string solution = config.solution.empty() ? "sine" : config.solution;
    return make_manufactured_problem(config.coefficients.filename().string(), config.domain, coeffs,
                                     ManufacturedSolution::preset(solution, coeffs.dim));
}

DecompositionSpec build_decomposition(const ExperimentConfig& config, const RunSpec& run)
{
    if (config.explicit_strips())
        return DecompositionSpec{config.domain.alpha, config.domain.beta, config.a, config.b};
    return DecompositionSpec::uniform(config.domain.alpha, config.domain.beta, config.subdomains,
                                      run.overlap.value_or(config.overlaps.front()));
}

SWRConfig build_engine_config(const ExperimentConfig& config, const RunSpec& run)
{
    SWRConfig cfg;
    cfg.p = run.p;
    cfg.orientation = config.orientation;
    cfg.max_iters = config.max_iters;
    cfg.stop_tol = config.stop_tol;
    cfg.guess = config.guess;
    cfg.gamma = config.gamma;
    cfg.time_weight_rate = config.time_weight_rate;
    cfg.gamma_max = config.gamma_max;
    cfg.threads = config.threads;
    return cfg;
}

int exit_code_for(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::SingularSystem:
    case ErrorCode::DataMismatch:
    case ErrorCode::NodeOutOfRange:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::TooShort:
        return kExitNumerical;
    default:
        return kExitValidation;
    }
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options)
{
    config.validate();
    auto log = [&](const std::string& line) {
        if (options.log)
            *options.log << line << '\n';
    };
    std::filesystem::create_directories(config.output);

    ExperimentResult result;
    std::optional<ParabolicProblem> problem;
    std::optional<SpaceTimeGrid> grid;
    std::optional<GlobalSolution> oracle;

    for (const RunSpec& spec : schedule(config)) {
        RunOutcome outcome;
        outcome.spec = spec;
        const auto dir = config.output / spec.name();
        std::filesystem::create_directories(dir);
        try {
            if (!oracle) {
                problem = build_problem(config);
                grid = build_grid(config.domain, config.nx_cross, config.nx_axis, config.nt);
                oracle = solve_global(*problem, *grid);
            }
            auto layout = snap(build_decomposition(config, spec), *grid);
            outcome.warnings = layout.warnings;
            for (const auto& w : layout.warnings)
                log(spec.name() + ": warning: " + w);
            SWREngine engine(*problem, *grid, std::move(layout), build_engine_config(config, spec));
            engine.run(*oracle, outcome.history);
            const auto& contraction = outcome.history.contraction;
            if (contraction && contraction->verdict == Verdict::Fail)
                outcome.exit_code = kExitContraction;
        } catch (const Error& err) {
            outcome.error = err.what();
            outcome.exit_code = exit_code_for(err.code());
        } catch (const std::exception& err) {
            outcome.error = err.what();
            outcome.exit_code = kExitNumerical;
        }
        write_file(dir / "history.csv", outcome.history.to_csv());

        const auto& h = outcome.history;
        std::string line = spec.name() + ": p=" + format_number(spec.p);
        if (spec.overlap)
            line += " overlap=" + format_number(*spec.overlap);
        if (outcome.error) {
            line += " error: " + *outcome.error;
        } else {
            line += " sweeps=" + std::to_string(h.rows.size()) +
                    " E=" + format_number(h.rows.empty() ? 0.0 : h.rows.back().E) +
                    " termination=" + std::string(to_string(h.termination));
            if (h.contraction)
                line += " contraction=" + std::string(to_string(h.contraction->verdict));
        }
        log(line);
        result.exit_code = std::max(result.exit_code, outcome.exit_code);
        result.runs.push_back(std::move(outcome));
    }

    // summary.csv
    std::ostringstream summary;
    summary << kSummaryHeader << '\n';
    for (const auto& run : result.runs) {
        const auto& h = run.history;
        const bool reached = !run.error && h.termination == Termination::Tolerance;
        std::string verdict = "UNJUDGED";
        std::string mean;
        if (run.error)
            verdict = "ERROR";
        else if (h.contraction) {
            verdict = std::string(to_string(h.contraction->verdict));
            if (h.contraction->judged > 0)
                mean = format_number(h.contraction->geometric_mean);
        } else if (reached)
            verdict = "CONVERGED";
        summary << run.spec.name() << ',' << format_number(run.spec.p) << ',' << optional_number(run.spec.overlap)
                << ',' << (reached ? std::to_string(h.rows.size()) : std::string()) << ','
                << (h.rows.empty() ? std::string() : format_number(h.rows.back().E)) << ',' << mean << ','
                << verdict << ',' << (run.error ? "error" : std::string(to_string(h.termination))) << '\n';
        if (reached && (!result.fastest || h.rows.size() < result.runs[*result.fastest].history.rows.size()))
            result.fastest = run.spec.index;
    }
    write_file(config.output / "summary.csv", summary.str());

    // meta.txt
    std::ostringstream meta;
    meta << "# oswr " << OSWR_VERSION << '\n'
         << "# compiler " << __VERSION__ << '\n'
         << "# boost " << BOOST_LIB_VERSION << '\n'
         << "# runs " << result.runs.size() << '\n';
    for (const auto& run : result.runs) {
        meta << "# " << run.spec.name() << " p=" << format_number(run.spec.p);
        if (run.spec.overlap)
            meta << " overlap=" << format_number(*run.spec.overlap);
        meta << " exit=" << run.exit_code << '\n';
        for (const auto& w : run.warnings)
            meta << "#   warning: " << w << '\n';
        if (run.error)
            meta << "#   error: " << *run.error << '\n';
    }
    if (result.fastest) {
        const auto& best = result.runs[*result.fastest];
        meta << "# fastest " << best.spec.name() << " p=" << format_number(best.spec.p);
        if (best.spec.overlap)
            meta << " overlap=" << format_number(*best.spec.overlap);
        meta << " iterations=" << best.history.rows.size() << '\n';
    }
    meta << '\n' << config.to_ini();
    write_file(config.output / "meta.txt", meta.str());

    if (options.gnuplot_stub) {
        std::ostringstream gp;
        gp << "set datafile separator ','\n"
           << "set logscale y\n"
           << "set format y '%.0e'\n"
           << "set xlabel 'sweep k'\n"
           << "set ylabel 'E_k'\n"
           << "set key outside right\n"
           << "plot \\\n";
        for (std::size_t k = 0; k < result.runs.size(); ++k) {
            const auto& spec = result.runs[k].spec;
            std::string title = "p=" + format_number(spec.p);
            if (spec.overlap)
                title += " overlap=" + format_number(*spec.overlap);
            gp << "  '" << spec.name() << "/history.csv' using 1:2 skip 1 with linespoints title '" << title
               << "'" << (k + 1 < result.runs.size() ? ", \\\n" : "\n");
        }
        write_file(config.output / "plot.gp", gp.str());
    }
    return result;
}

} // namespace oswr
