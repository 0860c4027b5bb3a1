// ifskit: batch diagnostics for iterated function systems on an interval.
//
// Subcommands cover the library end to end: exhaustive reversal checks
// (verify), diameter series and decay estimators (diagnose), transfer-
// operator fixed points (invariant), chaos-game averages (chaos), and
// certified attractor sampling (attractor). Every run writes a CSV whose
// "#" metadata lines record the full parameter set, so identical inputs
// reproduce identical files byte for byte.
//
// Exit codes: 0 success, 1 usage or config error, 2 fixed-point iteration
// finished without reaching the requested tolerance.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ifskit/ifskit.hpp"

namespace {

struct ModelOptions {
    std::string preset;
    std::string config;
};

void add_model_options(CLI::App* cmd, ModelOptions& opts) {
    auto* preset =
        cmd->add_option("--preset", opts.preset, "Built-in model name (see `ifskit presets`)");
    auto* config = cmd->add_option("--config", opts.config, "Path to a JSON model config");
    preset->excludes(config);
    config->excludes(preset);
}

std::string model_label(const ModelOptions& opts) {
    return opts.preset.empty() ? "config:" + opts.config : "preset:" + opts.preset;
}

ifskit::IfsModel resolve_model(const ModelOptions& opts) {
    if (opts.preset.empty() == opts.config.empty()) {
        throw ifskit::ConfigError("exactly one of --preset or --config is required");
    }
    if (!opts.preset.empty()) {
        if (auto model = ifskit::find_preset(opts.preset)) {
            return *model;
        }
        std::string names;
        for (std::string_view name : ifskit::preset_names()) {
            names += names.empty() ? "" : ", ";
            names += name;
        }
        throw ifskit::ConfigError("unknown preset \"" + opts.preset + "\" (available: " + names +
                                  ")");
    }
    return ifskit::load_model(opts.config);
}

void warn_zero_weights(const ifskit::IfsModel& model) {
    for (std::size_t k = 0; k < model.map_count(); ++k) {
        if (model.weight(k) == 0.0) {
            std::cerr << "warning: map " << k
                      << " has zero weight; it is never sampled and contributes nothing to the "
                         "transfer operator\n";
        }
    }
}

// Explicit --output wins; otherwise the per-subcommand default file name,
// placed in $IFSKIT_OUTPUT_DIR when that is set.
std::string output_path(const std::string& explicit_path, const char* default_name) {
    if (!explicit_path.empty()) {
        return explicit_path;
    }
    if (const char* dir = std::getenv("IFSKIT_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
        return (std::filesystem::path(dir) / default_name).string();
    }
    return default_name;
}

int run_presets() {
    for (std::string_view name : ifskit::preset_names()) {
        std::cout << name << "\n";
    }
    return 0;
}

int run_verify(const ModelOptions& source, std::size_t depth, std::size_t cap,
               const std::string& out_path) {
    const ifskit::IfsModel model = resolve_model(source);
    ifskit::CsvWriter csv(out_path);
    csv.metadata("subcommand", "verify");
    csv.metadata("model", model_label(source));
    csv.metadata("depth", depth);
    csv.metadata("enumeration_cap", cap);
    csv.metadata("seed", "none (exhaustive enumeration)");
    csv.header({"n", "words", "sum_f", "sum_h", "abs_diff", "max_termwise_diff"});
    ifskit::ReversalCheck last;
    for (std::size_t n = 1; n <= depth; ++n) {
        last = ifskit::reversal_integral_check(model, n, cap);
        csv.row(n, last.word_count,
                last.forward_integral, last.backward_integral,
                std::abs(last.forward_integral - last.backward_integral),
                last.max_pointwise_diff);
    }
    std::cout << "depth " << depth << ": sum_f = " << ifskit::format_double(last.forward_integral)
              << ", sum_h = " << ifskit::format_double(last.backward_integral)
              << ", |sum_f - sum_h| = "
              << ifskit::format_double(std::abs(last.forward_integral - last.backward_integral))
              << ", max termwise reversal diff = "
              << ifskit::format_double(last.max_pointwise_diff) << "\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_series(const ModelOptions& source, std::size_t length, std::uint64_t seed,
               const std::string& out_path) {
    const ifskit::IfsModel model = resolve_model(source);
    warn_zero_weights(model);
    const ifskit::Word word = ifskit::sample_word(model, seed, length);
    const ifskit::DiamSeries series = ifskit::diam_series(model, word);
    ifskit::CsvWriter csv(out_path);
    csv.metadata("subcommand", "diagnose");
    csv.metadata("mode", "series");
    csv.metadata("model", model_label(source));
    csv.metadata("word_length", length);
    csv.metadata("seed", seed);
    csv.header({"k", "h_k", "f_k", "cesaro_k"});
    for (std::size_t k = 0; k < length; ++k) {
        csv.row(k + 1, series.backward[k], series.forward[k], series.cesaro[k]);
    }
    std::cout << "word of length " << length << " (seed " << seed
              << "): h_n = " << ifskit::format_double(series.backward.back())
              << ", f_n = " << ifskit::format_double(series.forward.back())
              << ", cesaro_n = " << ifskit::format_double(series.cesaro.back()) << "\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_sweep(const ModelOptions& source, const std::string& stat,
              const std::vector<std::size_t>& depths, double eps, std::size_t trials,
              std::size_t window_start, std::uint64_t seed, const std::string& out_path) {
    const ifskit::IfsModel model = resolve_model(source);
    warn_zero_weights(model);
    if (depths.empty()) {
        throw ifskit::ConfigError("--stat sweeps need at least one --depths value");
    }
    ifskit::CsvWriter csv(out_path);
    csv.metadata("subcommand", "diagnose");
    csv.metadata("mode", "sweep");
    csv.metadata("model", model_label(source));
    csv.metadata("stat", stat);
    csv.metadata("eps", eps);
    csv.metadata("trials", trials);
    csv.metadata("window_start", window_start == 0 ? std::string("n/2 (default)")
                                                   : std::to_string(window_start));
    csv.metadata("seed", seed);
    csv.header({"n", "eps", "estimate", "stderr", "trials", "seed"});
    for (std::size_t n : depths) {
        ifskit::MassEstimate estimate;
        if (stat == "contraction") {
            estimate = ifskit::estimate_backward_contraction(model, n, eps, trials, seed);
        } else if (stat == "cesaro") {
            estimate = ifskit::estimate_cesaro_decay(model, n, eps, trials, seed);
        } else {
            const std::size_t start = window_start == 0 ? n / 2 : window_start;
            estimate = ifskit::estimate_forward_window_decay(model, n, start, eps, trials, seed);
        }
        csv.row(n, eps, estimate.value, estimate.std_error, trials, seed);
        std::cout << "n=" << n << ": estimate = " << ifskit::format_double(estimate.value)
                  << " +/- " << ifskit::format_double(estimate.std_error) << " (stderr, "
                  << trials << " trials)\n";
    }
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_invariant(const ModelOptions& source, double grid, double tol, std::size_t max_iter,
                  std::size_t atoms, const std::string& out_path,
                  const std::string& measure_out) {
    const ifskit::IfsModel model = resolve_model(source);
    warn_zero_weights(model);
    const ifskit::DiscreteMeasure start =
        atoms <= 1 ? ifskit::DiscreteMeasure::dirac(model.domain().midpoint())
                   : ifskit::DiscreteMeasure::uniform(model.domain(), atoms);
    const ifskit::FixedPointResult result =
        ifskit::fixed_point(model, start, tol, max_iter, grid);

    ifskit::CsvWriter csv(out_path);
    csv.metadata("subcommand", "invariant");
    csv.metadata("model", model_label(source));
    csv.metadata("grid", grid);
    csv.metadata("tol", tol);
    csv.metadata("max_iter", max_iter);
    csv.metadata("start_atoms", atoms);
    csv.metadata("seed", "none (deterministic iteration)");
    csv.header({"iteration", "distance", "atom_count"});
    for (std::size_t i = 0; i < result.iterations; ++i) {
        csv.row(i + 1, result.step_distances[i], result.atom_counts[i]);
    }

    if (!measure_out.empty()) {
        ifskit::CsvWriter mcsv(measure_out);
        mcsv.metadata("subcommand", "invariant");
        mcsv.metadata("model", model_label(source));
        mcsv.metadata("grid", grid);
        mcsv.metadata("tol", tol);
        mcsv.metadata("max_iter", max_iter);
        mcsv.metadata("start_atoms", atoms);
        mcsv.metadata("seed", "none (deterministic iteration)");
        mcsv.header({"position", "weight"});
        for (const ifskit::Atom& atom : result.measure.atoms()) {
            mcsv.row(atom.position, atom.weight);
        }
        std::cout << "wrote " << measure_out << "\n";
    }

    std::cout << (result.converged ? "converged" : "did not converge") << " after "
              << result.iterations << " iterations; last step distance = "
              << ifskit::format_double(result.step_distances.back())
              << ", atoms = " << result.measure.size() << "\n";
    std::cout << "first moment = " << ifskit::format_double(ifskit::moment(result.measure, 1))
              << ", second moment = " << ifskit::format_double(ifskit::moment(result.measure, 2))
              << "\n";
    std::cout << "wrote " << out_path << "\n";
    if (!result.converged) {
        std::cerr << "error: distance " << ifskit::format_double(result.step_distances.back())
                  << " still above tol " << ifskit::format_double(tol) << " after " << max_iter
                  << " iterations\n";
        return 2;
    }
    return 0;
}

int run_chaos(const ModelOptions& source, std::size_t steps, std::uint64_t seed,
              std::optional<double> start, const std::string& observable_text,
              std::size_t discard, std::size_t stride, const std::string& out_path) {
    const ifskit::IfsModel model = resolve_model(source);
    warn_zero_weights(model);
    if (discard >= steps) {
        throw ifskit::ConfigError("--discard must leave at least one averaged step");
    }
    const double x0 = start.value_or(model.domain().midpoint());
    if (!model.domain().contains(x0)) {
        throw ifskit::ConfigError("--start must lie inside the phase space");
    }
    const ifskit::Observable observable = ifskit::parse_observable(observable_text);
    const std::size_t effective_stride = stride == 0 ? std::max<std::size_t>(1, steps / 1000)
                                                     : stride;
    const ifskit::Word word = ifskit::sample_word(model, seed, steps);

    ifskit::CsvWriter csv(out_path);
    csv.metadata("subcommand", "chaos");
    csv.metadata("model", model_label(source));
    csv.metadata("steps", steps);
    csv.metadata("start", x0);
    csv.metadata("observable", observable.describe());
    csv.metadata("discard", discard);
    csv.metadata("stride", effective_stride);
    csv.metadata("seed", seed);
    csv.header({"j", "x_j", "running_average"});

    double x = x0;
    ifskit::KahanSum sum;
    double average = 0.0;
    for (std::size_t j = 1; j <= steps; ++j) {
        x = model.map(word[j - 1]).evaluate(x);
        if (j <= discard) {
            continue;
        }
        sum.add(observable(x));
        average = sum.value() / static_cast<double>(j - discard);
        if ((j - discard) % effective_stride == 0 || j == steps) {
            csv.row(j, x, average);
        }
    }
    std::cout << "final running average = " << ifskit::format_double(average) << " over "
              << (steps - discard) << " points (seed " << seed << ")\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_attractor(const ModelOptions& source, std::size_t trials, std::size_t depth, double eps,
                  std::uint64_t seed, const std::string& out_path) {
    const ifskit::IfsModel model = resolve_model(source);
    warn_zero_weights(model);
    const ifskit::AttractorSample sample =
        ifskit::attractor_sample(model, trials, depth, eps, seed);
    ifskit::CsvWriter csv(out_path);
    csv.metadata("subcommand", "attractor");
    csv.metadata("model", model_label(source));
    csv.metadata("trials", trials);
    csv.metadata("depth", depth);
    csv.metadata("eps", eps);
    csv.metadata("seed", seed);
    csv.header({"point", "radius"});
    for (const ifskit::CodedPoint& coded : sample.points) {
        csv.row(coded.point, coded.radius);
    }
    std::cout << "certified " << sample.points.size() << "/" << sample.trials
              << " words (fraction " << ifskit::format_double(sample.certified_fraction())
              << "); " << sample.rejected << " rejected with radius >= "
              << ifskit::format_double(eps) << "\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iterated-function-system diagnostics on a compact interval: diameter "
                 "statistics, decay estimators, invariant measures, ergodic averages, and "
                 "certified attractor samples"};
    app.require_subcommand(1);
    int exit_code = 0;

    app.add_subcommand("presets", "List the built-in models")->callback([&]() {
        exit_code = run_presets();
    });

    {
        auto* cmd = app.add_subcommand(
            "verify", "Exhaustively cross-check forward and backward diameter integrals");
        auto opts = std::make_shared<ModelOptions>();
        auto depth = std::make_shared<std::size_t>(8);
        auto cap = std::make_shared<std::size_t>(ifskit::default_enumeration_cap);
        auto output = std::make_shared<std::string>();
        add_model_options(cmd, *opts);
        cmd->add_option("--depth", *depth, "Check every word length up to this depth")
            ->capture_default_str();
        cmd->add_option("--cap", *cap, "Abort if a depth would enumerate more words than this")
            ->capture_default_str();
        cmd->add_option("--output", *output, "CSV output path (default verify.csv)");
        cmd->callback([=, &exit_code]() {
            exit_code = run_verify(*opts, *depth, *cap, output_path(*output, "verify.csv"));
        });
    }

    {
        auto* cmd = app.add_subcommand(
            "diagnose", "Diameter series for one sampled word, or decay-estimator sweeps");
        auto opts = std::make_shared<ModelOptions>();
        auto length = std::make_shared<std::size_t>(256);
        auto stat = std::make_shared<std::string>();
        auto depths = std::make_shared<std::vector<std::size_t>>();
        auto eps = std::make_shared<double>(0.01);
        auto trials = std::make_shared<std::size_t>(10000);
        auto window_start = std::make_shared<std::size_t>(0);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto output = std::make_shared<std::string>();
        add_model_options(cmd, *opts);
        auto* length_opt =
            cmd->add_option("--word-length", *length, "Series mode: length of the sampled word")
                ->capture_default_str();
        auto* stat_opt =
            cmd->add_option("--stat", *stat,
                            "Sweep mode: contraction = backward diameter below eps, cesaro = "
                            "running mean of forward diameters below eps, window = forward "
                            "diameters below eps on the whole window")
                ->check(CLI::IsMember({"contraction", "cesaro", "window"}));
        stat_opt->excludes(length_opt);
        cmd->add_option("--depths", *depths, "Sweep mode: word lengths to estimate at")
            ->delimiter(',');
        cmd->add_option("--eps", *eps, "Decay threshold")->capture_default_str();
        cmd->add_option("--trials", *trials, "Monte-Carlo trials per depth")
            ->capture_default_str();
        cmd->add_option("--window-start", *window_start,
                        "First index of the window for --stat window (default n/2)");
        cmd->add_option("--seed", *seed, "Base seed; trial t uses seed + t")
            ->capture_default_str();
        cmd->add_option("--output", *output, "CSV output path (default series.csv / sweep.csv)");
        cmd->callback([=, &exit_code]() {
            if (stat->empty()) {
                exit_code =
                    run_series(*opts, *length, *seed, output_path(*output, "series.csv"));
            } else {
                exit_code = run_sweep(*opts, *stat, *depths, *eps, *trials, *window_start, *seed,
                                      output_path(*output, "sweep.csv"));
            }
        });
    }

    {
        auto* cmd = app.add_subcommand(
            "invariant", "Iterate the transfer operator to its stationary measure");
        auto opts = std::make_shared<ModelOptions>();
        auto grid = std::make_shared<double>(1e-5);
        auto tol = std::make_shared<double>(1e-6);
        auto max_iter = std::make_shared<std::size_t>(2000);
        auto atoms = std::make_shared<std::size_t>(1);
        auto output = std::make_shared<std::string>();
        auto measure_output = std::make_shared<std::string>();
        add_model_options(cmd, *opts);
        cmd->add_option("--grid", *grid, "Consolidation grid spacing (atom positions snap to it)")
            ->capture_default_str();
        cmd->add_option("--tol", *tol, "Stop when consecutive iterates are this close")
            ->capture_default_str();
        cmd->add_option("--max-iter", *max_iter, "Iteration budget")->capture_default_str();
        cmd->add_option("--atoms", *atoms,
                        "Starting measure: 1 = point mass at the midpoint, k>1 = uniform k atoms")
            ->capture_default_str();
        cmd->add_option("--output", *output, "Convergence CSV path (default invariant.csv)");
        cmd->add_option("--measure-output", *measure_output,
                        "Also write the final measure's atoms to this CSV");
        cmd->callback([=, &exit_code]() {
            exit_code = run_invariant(*opts, *grid, *tol, *max_iter, *atoms,
                                      output_path(*output, "invariant.csv"), *measure_output);
        });
    }

    {
        auto* cmd = app.add_subcommand(
            "chaos", "Run a chaos-game orbit and report running averages of an observable");
        auto opts = std::make_shared<ModelOptions>();
        auto steps = std::make_shared<std::size_t>(100000);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto start = std::make_shared<double>(0.0);
        auto observable = std::make_shared<std::string>("x");
        auto discard = std::make_shared<std::size_t>(0);
        auto stride = std::make_shared<std::size_t>(0);
        auto output = std::make_shared<std::string>();
        add_model_options(cmd, *opts);
        cmd->add_option("--steps", *steps, "Orbit length")->capture_default_str();
        cmd->add_option("--seed", *seed, "Seed for the driving letter sequence")
            ->capture_default_str();
        auto* start_opt =
            cmd->add_option("--start", *start, "Starting point (default: domain midpoint)");
        cmd->add_option("--observable", *observable,
                        "\"x\", \"x^k\", or inline JSON {\"type\":\"pwl\",...}")
            ->capture_default_str();
        cmd->add_option("--discard", *discard, "Burn-in steps excluded from the average")
            ->capture_default_str();
        cmd->add_option("--stride", *stride,
                        "Emit every k-th averaged step (default: about 1000 rows)");
        cmd->add_option("--output", *output, "CSV output path (default chaos.csv)");
        cmd->callback([=, &exit_code]() {
            std::optional<double> x0;
            if (start_opt->count() > 0) {
                x0 = *start;
            }
            exit_code = run_chaos(*opts, *steps, *seed, x0, *observable, *discard, *stride,
                                  output_path(*output, "chaos.csv"));
        });
    }

    {
        auto* cmd = app.add_subcommand(
            "attractor", "Sample attractor points with certified error radii");
        auto opts = std::make_shared<ModelOptions>();
        auto trials = std::make_shared<std::size_t>(1000);
        auto depth = std::make_shared<std::size_t>(50);
        auto eps = std::make_shared<double>(1e-6);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto output = std::make_shared<std::string>();
        add_model_options(cmd, *opts);
        cmd->add_option("--trials", *trials, "Number of sampled words")->capture_default_str();
        cmd->add_option("--depth", *depth, "Word length per trial")->capture_default_str();
        cmd->add_option("--eps", *eps, "Certification threshold on the backward-image diameter")
            ->capture_default_str();
        cmd->add_option("--seed", *seed, "Base seed; trial t uses seed + t")
            ->capture_default_str();
        cmd->add_option("--output", *output, "CSV output path (default attractor.csv)");
        cmd->callback([=, &exit_code]() {
            exit_code = run_attractor(*opts, *trials, *depth, *eps, *seed,
                                      output_path(*output, "attractor.csv"));
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ifskit::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
