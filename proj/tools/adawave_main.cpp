// adawave command line: experiment runner and figure/table reproduction.
//
//   adawave run           one configuration, per-replication results CSV
//   adawave compare       uniform vs adaptive medians over the test grid
//   adawave sweep         medians across sample sizes (log-log series)
//   adawave dump-design   design / stage / coefficient dumps of one run
//   adawave dump-function test-signal samples as CSV
//   adawave plot          render a sweep CSV as an SVG chart
//
// Exit codes: 0 success, 2 configuration error, 3 infeasible stage schedule.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "adawave/errors.hpp"
#include "adawave/harness.hpp"
#include "adawave/io.hpp"
#include "plot.hpp"

namespace {

using namespace adawave;

struct Options {
    std::string function = "doppler";
    double sigma = 1.0;
    std::size_t n = std::size_t{1} << 14;
    std::string design = "adaptive";
    int reps = 250;
    std::uint64_t seed = 0;
    double kappa = 1.0;
    double lambda = 0.5;
    double tau = 0.5;
    std::size_t n0 = 64;
    int j0 = 5;
    int vanishing_moments = 8;
    int jerr = 17;
    int jobs = 1;
    int nmin_exp = 10;
    int nmax_exp = 14;
    int level = 12;
    std::string out;
    std::string in;
    std::string format = "svg";
    std::string filter_file;
    std::string config_file;
    bool print_config = false;
};

// Plain `key = value` configuration file; command-line flags override it.
void apply_config_file(Options& opt, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw InvalidInput("config line " + std::to_string(lineno) +
                                   ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "function") opt.function = value;
            else if (key == "sigma") opt.sigma = std::stod(value);
            else if (key == "n") opt.n = std::stoull(value);
            else if (key == "design") opt.design = value;
            else if (key == "reps") opt.reps = std::stoi(value);
            else if (key == "seed") opt.seed = std::stoull(value);
            else if (key == "kappa") opt.kappa = std::stod(value);
            else if (key == "lambda") opt.lambda = std::stod(value);
            else if (key == "tau") opt.tau = std::stod(value);
            else if (key == "n0") opt.n0 = std::stoull(value);
            else if (key == "j0") opt.j0 = std::stoi(value);
            else if (key == "vanishing-moments") opt.vanishing_moments = std::stoi(value);
            else if (key == "jerr") opt.jerr = std::stoi(value);
            else if (key == "jobs") opt.jobs = std::stoi(value);
            else if (key == "nmin") opt.nmin_exp = std::stoi(value);
            else if (key == "nmax") opt.nmax_exp = std::stoi(value);
            else if (key == "level") opt.level = std::stoi(value);
            else if (key == "out") opt.out = value;
            else if (key == "format") opt.format = value;
            else if (key == "filter-file") opt.filter_file = value;
            else throw InvalidInput("config line " + std::to_string(lineno) +
                                    ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw InvalidInput("config line " + std::to_string(lineno) + ": bad value for '" +
                               key + "'");
        }
    }
}

void add_experiment_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--function", opt.function, "Test signal: blocks|bumps|heavisine|doppler")
        ->capture_default_str();
    cmd->add_option("--sigma", opt.sigma, "Noise standard deviation")->capture_default_str();
    cmd->add_option("--n", opt.n, "Total observation budget")->capture_default_str();
    cmd->add_option("--design", opt.design, "Design mode: uniform|adaptive")
        ->capture_default_str();
    cmd->add_option("--reps", opt.reps, "Replications")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Master seed")->envname("AWS_SEED")
        ->capture_default_str();
    cmd->add_option("--kappa", opt.kappa, "Threshold multiplier")->capture_default_str();
    cmd->add_option("--lambda", opt.lambda, "Target density floor")->capture_default_str();
    cmd->add_option("--tau", opt.tau, "Stage growth exponent")->capture_default_str();
    cmd->add_option("--n0", opt.n0, "Initial uniform stage size (power of two)")
        ->capture_default_str();
    cmd->add_option("--j0", opt.j0, "Coarsest wavelet level")->capture_default_str();
    cmd->add_option("--vanishing-moments", opt.vanishing_moments, "Daubechies vanishing moments")
        ->capture_default_str();
    cmd->add_option("--jerr", opt.jerr, "Error evaluation grid level")->capture_default_str();
    cmd->add_option("--jobs", opt.jobs, "Concurrent replications")->capture_default_str();
    cmd->add_option("--filter-file", opt.filter_file,
                    "Optional filter table (header 'N L', one tap per line)");
    cmd->add_flag("--print-config", opt.print_config, "Print the resolved configuration");
    cmd->add_option("--config", opt.config_file,
                    "Configuration file (key = value), overridden by flags");
}

ExperimentConfig to_config(const Options& opt) {
    ExperimentConfig cfg;
    const auto fn = parse_test_function(opt.function);
    if (!fn) throw InvalidInput("unknown function: " + opt.function);
    cfg.function = *fn;
    if (opt.design == "uniform")
        cfg.design = DesignMode::uniform;
    else if (opt.design == "adaptive")
        cfg.design = DesignMode::adaptive;
    else
        throw InvalidInput("unknown design mode: " + opt.design);
    cfg.sigma = opt.sigma;
    cfg.n_total = opt.n;
    cfg.replications = opt.reps;
    cfg.master_seed = opt.seed;
    cfg.error_grid_level = opt.jerr;
    cfg.jobs = opt.jobs;
    cfg.kappa = opt.kappa;
    cfg.lambda = opt.lambda;
    cfg.tau = opt.tau;
    cfg.n0 = opt.n0;
    cfg.coarsest_level = opt.j0;
    cfg.vanishing_moments = opt.vanishing_moments;
    if (!opt.filter_file.empty()) cfg.filter_file = opt.filter_file;
    return cfg;
}

void print_config(const Options& opt, std::ostream& os) {
    os << "function = " << opt.function << "\n"
       << "sigma = " << format_double(opt.sigma) << "\n"
       << "n = " << opt.n << "\n"
       << "design = " << opt.design << "\n"
       << "reps = " << opt.reps << "\n"
       << "seed = " << opt.seed << "\n"
       << "kappa = " << format_double(opt.kappa) << "\n"
       << "lambda = " << format_double(opt.lambda) << "\n"
       << "tau = " << format_double(opt.tau) << "\n"
       << "n0 = " << opt.n0 << "\n"
       << "j0 = " << opt.j0 << "\n"
       << "vanishing-moments = " << opt.vanishing_moments << "\n"
       << "jerr = " << opt.jerr << "\n"
       << "jobs = " << opt.jobs << "\n";
}

int cmd_run(const Options& opt) {
    if (opt.print_config) {
        print_config(opt, std::cout);
        return 0;
    }
    const ExperimentConfig cfg = to_config(opt);
    cfg.validate();
    const std::vector<RunResult> runs = replicate(cfg);
    const std::string path = opt.out.empty() ? "results.csv" : opt.out;
    atomic_write_file(path, results_csv(cfg, runs));
    std::vector<double> errors;
    errors.reserve(runs.size());
    for (const auto& r : runs) errors.push_back(r.max_error);
    const MedianCi ci = median_ci(errors);
    std::cout << design_mode_name(cfg.design) << " " << test_function_name(cfg.function)
              << " sigma=" << format_double(cfg.sigma) << " n=" << cfg.n_total
              << ": median max-error " << format_double(ci.median) << " [" << format_double(ci.lo)
              << ", " << format_double(ci.hi) << "] -> " << path << "\n";
    return 0;
}

int cmd_compare(const Options& opt) {
    if (opt.print_config) {
        print_config(opt, std::cout);
        return 0;
    }
    std::vector<ComparisonRow> rows;
    for (TestFunction fn : {TestFunction::blocks, TestFunction::bumps, TestFunction::heavisine,
                            TestFunction::doppler})
        for (double sigma : {0.5, 1.0, 2.0}) {
            Options one = opt;
            one.function = test_function_name(fn);
            one.sigma = sigma;
            ExperimentConfig cfg = to_config(one);
            cfg.validate();
            rows.push_back(compare_designs(cfg));
            std::cerr << "compare: " << test_function_name(fn) << " sigma=" << sigma << " done\n";
        }
    const std::string path = opt.out.empty() ? "report.csv" : opt.out;
    atomic_write_file(path, report_csv(rows));
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_sweep(const Options& opt) {
    if (opt.print_config) {
        print_config(opt, std::cout);
        return 0;
    }
    if (opt.nmin_exp > opt.nmax_exp) throw InvalidInput("sweep: empty size range");
    std::vector<SweepRow> rows;
    for (int e = opt.nmin_exp; e <= opt.nmax_exp; ++e) {
        Options one = opt;
        one.n = std::size_t{1} << e;
        ExperimentConfig cfg = to_config(one);
        cfg.validate();
        const ComparisonRow row = compare_designs(cfg);
        SweepRow uniform_row{row.function, row.sigma, row.n, DesignMode::uniform,
                             row.replications, row.uniform, row.p_value};
        SweepRow adaptive_row{row.function, row.sigma, row.n, DesignMode::adaptive,
                              row.replications, row.adaptive, row.p_value};
        rows.push_back(uniform_row);
        rows.push_back(adaptive_row);
        std::cerr << "sweep: n=" << one.n << " done\n";
    }
    const std::string path = opt.out.empty() ? "sweep.csv" : opt.out;
    atomic_write_file(path, sweep_csv(rows));
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_dump_design(const Options& opt) {
    if (opt.print_config) {
        print_config(opt, std::cout);
        return 0;
    }
    const ExperimentConfig cfg = to_config(opt);
    cfg.validate();
    const std::string prefix = opt.out.empty() ? "dump" : opt.out;

    if (cfg.design == DesignMode::uniform) {
        const PointOracle oracle =
            make_noise_oracle(cfg.function, cfg.sigma, cfg.master_seed, DesignMode::uniform, 0);
        Design design = Design::uniform(cfg.n_total);
        Observations obs;
        for (const DyadicPoint& p : design.points()) obs.set(p, oracle(p));
        const int data_level = static_cast<int>(std::countr_zero(cfg.n_total));
        const EstimatorConfig est = cfg.make_estimator();
        const CoefficientSet coeffs =
            apply_threshold(estimate_practical(design, obs, cfg.make_spec(), est, data_level), est);
        atomic_write_file(prefix + "_design.csv", design_csv(design));
        atomic_write_file(prefix + "_coeffs.csv", coefficients_csv(coeffs));
        StageRecord only;
        only.stage = 0;
        only.n = design.size();
        only.j_max = max_resolution_level(design.size(), cfg.coarsest_level);
        only.sigma_hat = coeffs.sigma_used;
        atomic_write_file(prefix + "_stages.csv", trajectory_csv({only}));
    } else {
        SensingConfig sensing{cfg.make_spec(), cfg.make_estimator(), cfg.lambda};
        const PointOracle oracle =
            make_noise_oracle(cfg.function, cfg.sigma, cfg.master_seed, DesignMode::adaptive, 0);
        const SensingResult run = run_sensing(oracle, cfg.make_schedule(), sensing, cfg.n_total);
        const CoefficientSet coeffs = apply_threshold(
            estimate_practical(run.design, run.observations, sensing.spec, sensing.estimator,
                               cfg.error_grid_level),
            sensing.estimator);
        atomic_write_file(prefix + "_design.csv", design_csv(run.design));
        atomic_write_file(prefix + "_coeffs.csv", coefficients_csv(coeffs));
        atomic_write_file(prefix + "_stages.csv", trajectory_csv(run.trajectory));
    }
    std::cout << "wrote " << prefix << "_{design,stages,coeffs}.csv\n";
    return 0;
}

int cmd_dump_function(const Options& opt) {
    const auto fn = parse_test_function(opt.function);
    if (!fn) throw InvalidInput("unknown function: " + opt.function);
    const std::string csv = function_csv(*fn, opt.level);
    if (opt.out.empty())
        std::cout << csv;
    else
        atomic_write_file(opt.out, csv);
    return 0;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

int cmd_plot(const Options& opt) {
    std::ifstream in(opt.in);
    if (!in) throw InvalidInput("plot: cannot open " + opt.in);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::string path = opt.out.empty() ? "plot." + opt.format : opt.out;

    if (opt.format == "csv") {
        atomic_write_file(path, content);
        std::cout << "wrote " << path << "\n";
        return 0;
    }
    if (opt.format != "svg") throw InvalidInput("plot: format must be csv or svg");

    // sweep schema: function,sigma,n,design,reps,median,ci_lo,ci_hi,mwu_p
    std::stringstream ss(content);
    std::string line;
    bool header_seen = false;
    plot::Series uniform{"uniform design", {}};
    plot::Series adaptive{"adaptive design", {}};
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("function,", 0) != 0 || line.find(",design,") == std::string::npos)
                throw InvalidInput("plot: input is not a sweep CSV");
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() < 9) throw InvalidInput("plot: malformed row: " + line);
        plot::Point p;
        p.x = std::stod(fields[2]);
        p.y = std::stod(fields[5]);
        p.y_lo = std::stod(fields[6]);
        p.y_hi = std::stod(fields[7]);
        if (fields[3] == "uniform")
            uniform.points.push_back(p);
        else if (fields[3] == "adaptive")
            adaptive.points.push_back(p);
        else
            throw InvalidInput("plot: unknown design mode: " + fields[3]);
    }
    if (!header_seen) throw InvalidInput("plot: empty input");
    atomic_write_file(path, plot::svg_loglog({uniform, adaptive}, "sample size n",
                                             "median max error"));
    std::cout << "wrote " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive sampling and wavelet-threshold regression experiments"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* run = app.add_subcommand("run", "Run one experiment configuration");
    add_experiment_flags(run, opt);
    run->add_option("--out", opt.out, "Results CSV path (default results.csv)");

    CLI::App* compare = app.add_subcommand("compare", "Uniform vs adaptive over the test grid");
    add_experiment_flags(compare, opt);
    compare->add_option("--out", opt.out, "Report CSV path (default report.csv)");

    CLI::App* sweep = app.add_subcommand("sweep", "Medians across sample sizes");
    add_experiment_flags(sweep, opt);
    sweep->add_option("--nmin", opt.nmin_exp, "Smallest size exponent")->capture_default_str();
    sweep->add_option("--nmax", opt.nmax_exp, "Largest size exponent")->capture_default_str();
    sweep->add_option("--out", opt.out, "Sweep CSV path (default sweep.csv)");

    CLI::App* dump_design = app.add_subcommand("dump-design", "Dump one run's design and stages");
    add_experiment_flags(dump_design, opt);
    dump_design->add_option("--out", opt.out, "Output prefix (default dump)");

    CLI::App* dump_function = app.add_subcommand("dump-function", "Dump test-signal samples");
    dump_function->add_option("--name,--function", opt.function, "Test signal name")
        ->capture_default_str();
    dump_function->add_option("--level", opt.level, "Grid level")->capture_default_str();
    dump_function->add_option("--out", opt.out, "Output path (default stdout)");

    CLI::App* plot_cmd = app.add_subcommand("plot", "Render a sweep CSV");
    plot_cmd->add_option("--in", opt.in, "Input sweep CSV")->required();
    plot_cmd->add_option("--format", opt.format, "svg or csv")->capture_default_str();
    plot_cmd->add_option("--out", opt.out, "Output path");

    // The config file supplies defaults, so it is applied before the flag
    // parse; flags then override.
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc)
                apply_config_file(opt, argv[i + 1]);
            else if (arg.rfind("--config=", 0) == 0)
                apply_config_file(opt, arg.substr(9));
        }
    } catch (const adawave::InvalidInput& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(opt);
        if (compare->parsed()) return cmd_compare(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (dump_design->parsed()) return cmd_dump_design(opt);
        if (dump_function->parsed()) return cmd_dump_function(opt);
        if (plot_cmd->parsed()) return cmd_plot(opt);
    } catch (const adawave::ScheduleInfeasible& e) {
        std::cerr << "schedule infeasible: " << e.what() << "\n";
        return 3;
    } catch (const adawave::InvalidInput& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
